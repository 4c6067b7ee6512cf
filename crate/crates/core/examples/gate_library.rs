// SPDX-License-Identifier: Apache-2.0

//! Built-in gates, their truth tables and quantum costs.

use revtest::{builtin_gate, CostTable};

fn main() -> revtest::Result<()> {
    let table = CostTable::standard();
    for (name, arity) in [("NOT", 1), ("FEYNMAN", 2), ("TOFFOLI", 3), ("TOFFOLI", 5), ("FREDKIN", 3), ("PERES", 3), ("MFRG", 3)] {
        let g = builtin_gate(name, arity)?;
        let rows: Vec<String> = (0..1u32 << arity).map(|x| g.apply(x).to_string()).collect();
        println!(
            "{:<12} cost {:>3}  self-inverse {:<5}  [{}]",
            g.to_string(),
            table.cost_of(&g)?,
            g.is_self_inverse(),
            rows.join(" ")
        );
    }

    // MFRG on (A, B=1, C) puts A OR C on its third output
    let mfrg = builtin_gate("MFRG", 3)?;
    for (a, c) in [(false, false), (false, true), (true, false), (true, true)] {
        let out = mfrg.eval(&[a, true, c])?;
        println!("MFRG({}, 1, {}) -> R = {}", a as u8, c as u8, out[2] as u8);
    }
    Ok(())
}

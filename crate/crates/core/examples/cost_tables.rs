// SPDX-License-Identifier: Apache-2.0

//! Checker and whole-circuit cost formulas for the compared designs, plus a
//! custom cost table.

use revtest::report::Design;
use revtest::{builtin_gate, CostTable};

fn main() -> revtest::Result<()> {
    println!("{:<14} {:>8} {:>8} {:>8}   (checker, n = 10)", "design", "gates", "garbage", "qc");
    for d in Design::ALL {
        let f = d.checker(10);
        let qc = f.quantum_cost.map_or("n/a".into(), |q| q.to_string());
        println!("{:<14} {:>8} {:>8} {:>8}", d.label(), f.gates, f.garbage, qc);
    }
    println!();
    println!("{:<14} {:>8} {:>8}   (circuit, n = 10)", "design", "gates", "garbage");
    for d in Design::ALL {
        let f = d.circuit(10);
        println!("{:<14} {:>8} {:>8}", d.label(), f.gates, f.garbage);
    }

    let mut table = CostTable::standard();
    table.set("TOFFOLI", 3, 7);
    println!();
    println!("TOFFOLI(3) under a custom table: {}", table.cost_of(&builtin_gate("TOFFOLI", 3)?)?);
    Ok(())
}

// SPDX-License-Identifier: Apache-2.0

//! The MFRG cascade that ORs parity lines into E.

use revtest::simulator::apply_gates;
use revtest::testability::make_checker;
use revtest::CostTable;

fn main() -> revtest::Result<()> {
    let table = CostTable::standard();
    for n in [1usize, 2, 3, 5, 8, 16] {
        let parity: Vec<usize> = (0..n).collect();
        let ones: Vec<usize> = (n..2 * n - 1).collect();
        let ch = make_checker(&parity, &ones)?;
        let cost: u32 = ch.gates().iter().map(|g| table.cost_of(g.kind())).sum::<revtest::Result<_>>()?;
        println!("n = {n:>2}: {:>2} gates, {:>2} garbage, quantum cost {cost:>2}, E on line {}", ch.gates().len(), ch.garbage().len(), ch.error_line());
    }

    let ch = make_checker(&[0, 1, 2], &[3, 4])?;
    for g in ch.gates() {
        println!("  {} {:?}", g.kind(), g.lines());
    }
    for pattern in 0u8..8 {
        let mut state: Vec<bool> = (0..3).map(|i| pattern >> i & 1 == 1).collect();
        state.extend([true, true]);
        apply_gates(ch.gates(), &mut state);
        println!("  parity {pattern:03b} -> E = {}", state[ch.error_line()] as u8);
    }
    Ok(())
}

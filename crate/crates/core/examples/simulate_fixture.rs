// SPDX-License-Identifier: Apache-2.0

//! Parse a netlist and print its truth table over the free input lines.

use revtest::bench::fixture;
use revtest::real::parse_real;
use revtest::simulator::{is_reversible, run, Assignment};
use revtest::ConstantMode;

fn main() -> revtest::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "rd32".into());
    let text = match fixture(&name) {
        Some(f) => f.text().to_string(),
        None => std::fs::read_to_string(&name)?,
    };
    let c = parse_real(&text)?;
    println!("{name}: {} lines, {} gates, reversible {}", c.num_lines(), c.gate_count(), is_reversible(&c)?);
    println!("lines: {}", c.labels().join(" "));
    for data in 0..1u64 << c.free_lines().len() {
        let input = Assignment::from_data(&c, data);
        println!("{input} -> {}", run(&c, &input, ConstantMode::Enforce)?);
    }
    Ok(())
}

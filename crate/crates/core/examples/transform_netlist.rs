// SPDX-License-Identifier: Apache-2.0

//! Make a netlist online testable and print the result as `.real`.

use revtest::bench::fixture;
use revtest::real::{emit_real, parse_real};
use revtest::report::count_report;
use revtest::testability::preserves_function;
use revtest::transform;

fn main() -> revtest::Result<()> {
    let c = parse_real(fixture("4mod5").expect("bundled").text())?;
    let tc = transform(&c)?;

    print!("{}", count_report(&tc)?);
    println!("function preserved: {}", preserves_function(&tc)?);
    for (i, b) in tc.blocks().iter().enumerate() {
        println!("block {i}: {} on {:?}, parity line {}", b.base(), b.data_lines(), b.parity_line());
    }
    println!();
    print!("{}", emit_real(tc.circuit())?);
    Ok(())
}

// SPDX-License-Identifier: Apache-2.0

//! Transform the bundled benchmark corpus and print the count table.

use revtest::bench::run_bench_embedded;

fn main() -> revtest::Result<()> {
    let table = run_bench_embedded()?;
    if std::env::args().any(|a| a == "--csv") {
        print!("{}", table.to_csv());
    } else {
        print!("{}", table.to_text());
    }
    Ok(())
}

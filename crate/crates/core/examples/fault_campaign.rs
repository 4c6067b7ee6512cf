// SPDX-License-Identifier: Apache-2.0

//! Single bit-flip campaigns, a sabotaged checker and a double-fault probe.

use revtest::bench::fixture;
use revtest::faultsim::{double_fault_probe, inject, run_campaign, Campaign, InputSpace};
use revtest::real::parse_real;
use revtest::simulator::Assignment;
use revtest::{transform, FaultSite};

fn main() -> revtest::Result<()> {
    let tc = transform(&parse_real(fixture("3_17").expect("bundled").text())?)?;

    let report = run_campaign(&Campaign::new(&tc, InputSpace::Exhaustive))?;
    print!("{}", report.summary());

    let sampled = run_campaign(&Campaign::new(&tc, InputSpace::Sampled { count: 4, seed: 7 }))?;
    println!("sampled: {} trials, coverage {}", sampled.total_trials(), sampled.coverage());

    let input = Assignment::from_data(tc.circuit(), 0b101);
    let site = FaultSite { block: 2, wire: 1 };
    let out = inject(&tc, site, &input)?;
    println!("flip at {site} on {input}: E = {}", out.get(tc.error_line()) as u8);

    let pair = (FaultSite { block: 2, wire: 0 }, FaultSite { block: 2, wire: 1 });
    println!("double flip in one block detected: {}", double_fault_probe(&tc, pair, &input)?);

    let broken = tc.without_last_checker_gate()?;
    let report = run_campaign(&Campaign::new(&broken, InputSpace::Exhaustive))?;
    println!("without last checker gate: coverage {:.4}", report.coverage());
    if let Some((site, input)) = report.undetected().first() {
        println!("first escape: {site} on {input}");
    }
    Ok(())
}

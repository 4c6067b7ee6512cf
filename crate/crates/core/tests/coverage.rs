// SPDX-License-Identifier: Apache-2.0

use revtest::bench::FIXTURES;
use revtest::faultsim::{run_campaign, Campaign, InputSpace};
use revtest::real::parse_real;
use revtest::transform;

#[test]
fn every_fixture_fully_covered() {
    for f in &FIXTURES {
        let tc = transform(&parse_real(f.text()).unwrap()).unwrap();
        assert!(tc.circuit().free_lines().len() <= 20);
        let report = run_campaign(&Campaign::new(&tc, InputSpace::Exhaustive)).unwrap();
        assert!(report.is_complete(), "{}: {:?}", f.name, report.undetected().first());
    }
}

#[test]
fn sampled_campaign_is_deterministic() {
    let tc = transform(&parse_real(FIXTURES[8].text()).unwrap()).unwrap();
    let inputs = InputSpace::Sampled { count: 40, seed: 11 };
    let a = run_campaign(&Campaign::new(&tc, inputs)).unwrap();
    let b = run_campaign(&Campaign::new(&tc, inputs)).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert!(a.is_complete());
}

// SPDX-License-Identifier: Apache-2.0

//! Single-bit fault injection at testable-block cuts.
//!
//! The fault model is a transient flip of one of the `n + 1` wires between
//! TRG(R) and TRG(identity) of one block. A trial is detected when the error
//! line E ends at 1.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, GateInstance};
use crate::error::{Error, Result};
use crate::gate::GateKind;
use crate::simulator::{apply_gate, check_constants, Assignment, LineState, EXHAUSTIVE_LIMIT};
use crate::testability::{FaultSite, TestableCircuit};

fn simulate_with_flips(tc: &TestableCircuit, flips: &[(usize, usize)], input: &Assignment) -> Assignment {
    // flips: (gate index after which to flip, line)
    let mut state = input.bits().to_vec();
    for (i, g) in tc.circuit().gates().iter().enumerate() {
        apply_gate(g, &mut state);
        for &(_, line) in flips.iter().filter(|(after, _)| *after == i) {
            state.flip(line);
        }
    }
    Assignment::new(state)
}

fn validate_input(tc: &TestableCircuit, input: &Assignment) -> Result<()> {
    let c = tc.circuit();
    if input.len() != c.num_lines() {
        return Err(Error::LengthMismatch {
            expected: c.num_lines(),
            actual: input.len(),
        });
    }
    check_constants(c, input)
}

fn flip_point(tc: &TestableCircuit, site: FaultSite) -> Result<(usize, usize)> {
    let line = tc.site_line(site)?;
    Ok((tc.blocks()[site.block].first_gate(), line))
}

/// Runs the circuit with one bit flipped at `site` and returns every line's
/// final value, E included.
pub fn inject(tc: &TestableCircuit, site: FaultSite, input: &Assignment) -> Result<Assignment> {
    let flip = flip_point(tc, site)?;
    validate_input(tc, input)?;
    Ok(simulate_with_flips(tc, &[flip], input))
}

/// Fault-free run.
pub fn run_clean(tc: &TestableCircuit, input: &Assignment) -> Result<Assignment> {
    validate_input(tc, input)?;
    Ok(simulate_with_flips(tc, &[], input))
}

/// The fault expressed structurally: a NOT gate inserted at the block cut.
pub fn faulty_circuit(tc: &TestableCircuit, site: FaultSite) -> Result<Circuit> {
    let (after, line) = flip_point(tc, site)?;
    let mut c = tc.circuit().clone();
    c.insert_gate(after + 1, GateInstance::new(GateKind::not().into(), &[line])?)?;
    Ok(c)
}

/// Flips two wires of the same block cut. Two flips cancel in the block
/// parity, so this is expected to go undetected; it marks the boundary of
/// the single-error guarantee.
pub fn double_fault_probe(tc: &TestableCircuit, sites: (FaultSite, FaultSite), input: &Assignment) -> Result<bool> {
    let (a, b) = sites;
    if a.block != b.block || a.wire == b.wire {
        return Err(Error::InvalidProbe);
    }
    let flips = [flip_point(tc, a)?, flip_point(tc, b)?];
    validate_input(tc, input)?;
    let out = simulate_with_flips(tc, &flips, input);
    Ok(out.get(tc.error_line()))
}

/// Which data inputs a campaign drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputSpace {
    /// Every assignment of the free (non-constant) lines.
    Exhaustive,
    /// `count` uniformly drawn free-line assignments from a seeded generator.
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct Campaign<'a> {
    pub target: &'a TestableCircuit,
    pub sites: Vec<FaultSite>,
    pub inputs: InputSpace,
}

impl<'a> Campaign<'a> {
    /// All cut sites of the target.
    pub fn new(target: &'a TestableCircuit, inputs: InputSpace) -> Self {
        Campaign {
            target,
            sites: target.fault_sites(),
            inputs,
        }
    }

    pub fn with_sites(mut self, sites: Vec<FaultSite>) -> Self {
        self.sites = sites;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trial {
    pub site: FaultSite,
    pub input: Assignment,
    pub detected: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub inputs: InputSpace,
    pub sites: usize,
    pub trials: Vec<Trial>,
}

impl CoverageReport {
    pub fn total_trials(&self) -> usize {
        self.trials.len()
    }

    pub fn detected(&self) -> usize {
        self.trials.iter().filter(|t| t.detected).count()
    }

    /// Witnesses for faults that left E at 0.
    pub fn undetected(&self) -> Vec<(FaultSite, Assignment)> {
        self.trials
            .iter()
            .filter(|t| !t.detected)
            .map(|t| (t.site, t.input.clone()))
            .collect()
    }

    pub fn coverage(&self) -> f64 {
        if self.trials.is_empty() {
            return 1.0;
        }
        self.detected() as f64 / self.total_trials() as f64
    }

    pub fn is_complete(&self) -> bool {
        self.trials.iter().all(|t| t.detected)
    }

    /// `site,input,detected` rows; inputs print line 0 first.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("block,wire,input,detected\n");
        for t in &self.trials {
            let _ = writeln!(out, "{},{},{},{}", t.site.block, t.site.wire, t.input, t.detected as u8);
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let mode = match self.inputs {
            InputSpace::Exhaustive => "exhaustive".to_string(),
            InputSpace::Sampled { count, seed } => format!("sampled ({count} inputs, seed {seed})"),
        };
        let undetected = self.undetected();
        let _ = writeln!(out, "mode: {mode}");
        let _ = writeln!(out, "sites: {}", self.sites);
        let _ = writeln!(out, "trials: {}", self.total_trials());
        let _ = writeln!(out, "detected: {}", self.detected());
        let _ = writeln!(out, "undetected: {}", undetected.len());
        let _ = writeln!(out, "coverage: {:.6}", self.coverage());
        for (site, input) in undetected.iter().take(10) {
            let _ = writeln!(out, "  escape: {site} on input {input}");
        }
        if undetected.len() > 10 {
            let _ = writeln!(out, "  ... {} more", undetected.len() - 10);
        }
        out
    }
}

pub fn run_campaign(campaign: &Campaign<'_>) -> Result<CoverageReport> {
    let tc = campaign.target;
    let c = tc.circuit();
    let flips = campaign
        .sites
        .iter()
        .map(|&s| flip_point(tc, s))
        .collect::<Result<Vec<_>>>()?;
    let free = c.free_lines();

    let inputs: Vec<Assignment> = match campaign.inputs {
        InputSpace::Exhaustive => {
            if free.len() > EXHAUSTIVE_LIMIT {
                return Err(Error::TooManyLines {
                    lines: free.len(),
                    limit: EXHAUSTIVE_LIMIT,
                });
            }
            (0..1u64 << free.len()).map(|d| Assignment::from_data(c, d)).collect()
        }
        InputSpace::Sampled { count, seed } => {
            if count == 0 {
                return Err(Error::NoSamples);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let bits: Vec<bool> = (0..free.len()).map(|_| rng.random()).collect();
                    Assignment::from_free_bits(c, &bits)
                })
                .collect::<Result<_>>()?
        }
    };

    let error_line = tc.error_line();
    let mut trials = Vec::with_capacity(inputs.len() * flips.len());
    for input in &inputs {
        for (&site, &flip) in campaign.sites.iter().zip(&flips) {
            let out = simulate_with_flips(tc, &[flip], input);
            trials.push(Trial {
                site,
                input: input.clone(),
                detected: out.get(error_line),
            });
        }
    }
    Ok(CoverageReport {
        inputs: campaign.inputs,
        sites: campaign.sites.len(),
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testability::transform;
    use std::sync::Arc;

    fn single_feynman() -> TestableCircuit {
        let mut c = Circuit::new(2).unwrap();
        c.push(Arc::new(GateKind::feynman()), &[0, 1]).unwrap();
        transform(&c).unwrap()
    }

    fn two_gates() -> TestableCircuit {
        let mut c = Circuit::new(3).unwrap();
        c.push(Arc::new(GateKind::toffoli(3)), &[0, 1, 2]).unwrap();
        c.push(Arc::new(GateKind::feynman()), &[2, 0]).unwrap();
        transform(&c).unwrap()
    }

    #[test]
    fn clean_run_has_no_error() {
        let tc = two_gates();
        for d in 0..8 {
            let out = run_clean(&tc, &Assignment::from_data(tc.circuit(), d)).unwrap();
            assert!(!out.get(tc.error_line()));
        }
    }

    #[test]
    fn toffoli_data_wire_flip() {
        let tc = two_gates();
        let input = Assignment::from_data(tc.circuit(), 0);
        let out = inject(&tc, FaultSite { block: 0, wire: 0 }, &input).unwrap();
        assert!(out.get(tc.error_line()));
    }

    #[test]
    fn parity_wire_flip_detected() {
        let tc = two_gates();
        for block in 0..2 {
            let wire = tc.blocks()[block].arity();
            for d in 0..8 {
                let input = Assignment::from_data(tc.circuit(), d);
                assert!(inject(&tc, FaultSite { block, wire }, &input).unwrap().get(tc.error_line()));
            }
        }
    }

    #[test]
    fn invalid_sites_and_inputs() {
        let tc = two_gates();
        let input = Assignment::from_data(tc.circuit(), 0);
        assert!(matches!(
            inject(&tc, FaultSite { block: 2, wire: 0 }, &input),
            Err(Error::InvalidSite { .. })
        ));
        assert!(matches!(
            inject(&tc, FaultSite { block: 1, wire: 3 }, &input),
            Err(Error::InvalidSite { .. })
        ));
        let mut bad = input.clone();
        bad.bits_mut()[tc.blocks()[0].parity_line()] = true;
        assert!(matches!(
            inject(&tc, FaultSite { block: 0, wire: 0 }, &bad),
            Err(Error::ConstantViolation { .. })
        ));
    }

    #[test]
    fn single_feynman_campaign() {
        let tc = single_feynman();
        let report = run_campaign(&Campaign::new(&tc, InputSpace::Exhaustive)).unwrap();
        assert_eq!(report.total_trials(), 12);
        assert_eq!(report.detected(), 12);
        assert!(report.undetected().is_empty());
        assert_eq!(report.coverage(), 1.0);
    }

    #[test]
    fn sabotage_leaves_witness() {
        let tc = two_gates().without_last_checker_gate().unwrap();
        let report = run_campaign(&Campaign::new(&tc, InputSpace::Exhaustive)).unwrap();
        assert!(report.coverage() < 1.0);
        let (site, _) = &report.undetected()[0];
        assert_eq!(site.block, 0);
    }

    #[test]
    fn sampled_is_deterministic() {
        let tc = two_gates();
        let run = |seed| run_campaign(&Campaign::new(&tc, InputSpace::Sampled { count: 50, seed })).unwrap();
        assert_eq!(run(42), run(42));
        assert_eq!(run(42).to_csv(), run(42).to_csv());
        assert_eq!(run(42).total_trials(), 50 * tc.fault_sites().len());
        assert!(matches!(
            run_campaign(&Campaign::new(&tc, InputSpace::Sampled { count: 0, seed: 1 })),
            Err(Error::NoSamples)
        ));
    }

    #[test]
    fn double_faults_cancel() {
        let tc = two_gates();
        let s = |wire| FaultSite { block: 0, wire };
        for d in 0..8 {
            let input = Assignment::from_data(tc.circuit(), d);
            assert!(!double_fault_probe(&tc, (s(0), s(1)), &input).unwrap());
            assert!(!double_fault_probe(&tc, (s(2), s(3)), &input).unwrap());
        }
        let input = Assignment::from_data(tc.circuit(), 0);
        assert!(matches!(double_fault_probe(&tc, (s(1), s(1)), &input), Err(Error::InvalidProbe)));
        assert!(matches!(
            double_fault_probe(&tc, (s(1), FaultSite { block: 1, wire: 0 }), &input),
            Err(Error::InvalidProbe)
        ));
    }

    #[test]
    fn structural_fault_matches_injection() {
        let tc = two_gates();
        for site in tc.fault_sites() {
            let faulty = faulty_circuit(&tc, site).unwrap();
            for d in 0..8 {
                let input = Assignment::from_data(tc.circuit(), d);
                let a = inject(&tc, site, &input).unwrap();
                let b = crate::simulator::run(&faulty, &input, crate::simulator::ConstantMode::Enforce).unwrap();
                assert_eq!(a, b);
            }
        }
    }
}

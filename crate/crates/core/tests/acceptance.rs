// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use revtest::bench::{fixture, run_bench, FIXTURES};
use revtest::cli::default_corpus;
use revtest::faultsim::{double_fault_probe, run_campaign, Campaign, InputSpace};
use revtest::real::{emit_real, parse_real, parse_testable};
use revtest::simulator::{apply_gates, is_reversible, Assignment};
use revtest::testability::{make_checker, make_trg, parity_zero_violation, preserves_function};
use revtest::{transform, Circuit, CostTable, FaultSite, GateKind, TestableCircuit};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn load(name: &str) -> Circuit {
    parse_real(fixture(name).expect("known fixture").text()).expect("fixture parses")
}

fn transformed(name: &str) -> TestableCircuit {
    transform(&load(name)).expect("fixture transforms")
}

const COVERAGE_SET: [&str; 5] = ["3_17", "ham3", "rd32", "xor5", "4mod5"];

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn benchmark_counts() -> Outcome {
    let expected: [(&str, u64, u64); 12] = [
        ("hwb4", 32, 20),
        ("mod5adder", 44, 28),
        ("xor5", 11, 10),
        ("ham7", 74, 48),
        ("4mod5", 14, 12),
        ("rd32", 11, 8),
        ("5mod5", 23, 19),
        ("4_49", 35, 22),
        ("hwb5", 71, 46),
        ("rd53", 35, 26),
        ("ham3", 11, 6),
        ("3_17", 17, 10),
    ];
    let start = Instant::now();
    let table = run_bench(&default_corpus()).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(1))?;
    for (name, gates, garbage) in expected {
        let row = table.row(name).ok_or_else(|| format!("{name} missing"))?;
        ensure((row.gates, row.garbage) == (gates, garbage), || {
            format!("{name}: got {}/{}, want {gates}/{garbage}", row.gates, row.garbage)
        })?;
    }
    Ok(format!("12/12 rows exact in {:?}", start.elapsed()))
}

fn full_coverage() -> Outcome {
    let start = Instant::now();
    let mut trials = 0;
    for name in COVERAGE_SET {
        let tc = transformed(name);
        let report = run_campaign(&Campaign::new(&tc, InputSpace::Exhaustive)).map_err(|e| e.to_string())?;
        let escaped = report.undetected();
        ensure(report.coverage() == 1.0 && escaped.is_empty(), || {
            format!("{name}: coverage {}, first witness {:?}", report.coverage(), escaped.first())
        })?;
        trials += report.total_trials();
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{trials} trials, coverage 1.0, no witnesses"))
}

fn builtin_kinds() -> Vec<GateKind> {
    let mut kinds = vec![GateKind::not(), GateKind::feynman(), GateKind::peres(), GateKind::mfrg()];
    kinds.extend((3..=8).map(GateKind::toffoli));
    kinds.extend((3..=8).map(GateKind::fredkin));
    kinds
}

fn reversibility() -> Outcome {
    let start = Instant::now();
    let kinds = builtin_kinds();
    for kind in &kinds {
        let trg = make_trg(Arc::new(kind.clone())).map_err(|e| e.to_string())?;
        let w = trg.wrapper();
        let mut c = Circuit::new(w.arity()).map_err(|e| e.to_string())?;
        c.push(w.clone(), &(0..w.arity()).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
        ensure(is_reversible(&c).map_err(|e| e.to_string())?, || format!("TRG({kind}) not bijective"))?;
    }
    let mut checked = Vec::new();
    for f in &FIXTURES {
        let tc = transformed(f.name);
        if tc.circuit().num_lines() > 20 {
            continue;
        }
        ensure(is_reversible(tc.circuit()).map_err(|e| e.to_string())?, || {
            format!("transformed {} not reversible", f.name)
        })?;
        checked.push(f.name);
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{} TRGs; transformed {}", kinds.len(), checked.join(", ")))
}

fn block_parity_zero() -> Outcome {
    let mut blocks = 0;
    for f in &FIXTURES {
        let tc = transformed(f.name);
        for (i, b) in tc.blocks().iter().enumerate() {
            ensure(b.parity_zero_holds(), || format!("{} block {i}", f.name))?;
            blocks += 1;
        }
        if tc.circuit().free_lines().len() <= 20 {
            let witness = parity_zero_violation(&tc).map_err(|e| e.to_string())?;
            ensure(witness.is_none(), || format!("{}: raised on {witness:?}", f.name))?;
        }
    }
    Ok(format!("{blocks} blocks, parity 0 on every fault-free input"))
}

fn checkers() -> Outcome {
    let table = CostTable::standard();
    for n in 1..=50usize {
        let parity: Vec<usize> = (0..n).collect();
        let ones: Vec<usize> = (n..2 * n - 1).collect();
        let ch = make_checker(&parity, &ones).map_err(|e| e.to_string())?;
        let cost: u64 = ch
            .gates()
            .iter()
            .map(|g| table.cost_of(g.kind()).map(u64::from))
            .sum::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure(
            ch.gates().len() == n - 1 && ch.garbage().len() == 2 * (n - 1) && cost == 4 * (n as u64 - 1),
            || format!("n = {n}: {} gates, {} garbage, cost {cost}", ch.gates().len(), ch.garbage().len()),
        )?;
        if n <= 10 {
            for pattern in 0u32..1 << n {
                let mut state: Vec<bool> = (0..n).map(|i| pattern >> i & 1 == 1).collect();
                state.extend(std::iter::repeat_n(true, n - 1));
                apply_gates(ch.gates(), &mut state);
                ensure(state[ch.error_line()] == (pattern != 0), || format!("n = {n}, pattern {pattern:b}"))?;
            }
        }
    }
    Ok("n = 1..50 exact; OR verified for n <= 10".into())
}

fn random_transforms() -> Outcome {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7e57);
    for i in 0..200 {
        let lines = rng.random_range(4..=8);
        let gates = rng.random_range(1..=50);
        let c = common::random_circuit(&mut rng, lines, gates);
        let tc = transform(&c).map_err(|e| e.to_string())?;
        let added = tc.circuit().garbage().len() - c.garbage().len();
        ensure(tc.circuit().gate_count() == 3 * gates - 1 && added == 2 * (gates - 1), || {
            format!("circuit {i} (n = {gates}): {} gates, {added} added garbage", tc.circuit().gate_count())
        })?;
    }
    Ok("200 circuits, 3n-1 gates and 2(n-1) added garbage".into())
}

fn function_preservation() -> Outcome {
    let mut checked = Vec::new();
    for f in &FIXTURES {
        let tc = transformed(f.name);
        if tc.circuit().num_lines() > 20 {
            continue;
        }
        ensure(preserves_function(&tc).map_err(|e| e.to_string())?, || format!("{} differs", f.name))?;
        checked.push(f.name);
    }
    Ok(format!("equivalent on data lines: {}", checked.join(", ")))
}

fn negative_controls() -> Outcome {
    let mut probes = 0;
    for name in COVERAGE_SET {
        let tc = transformed(name);
        let free = tc.circuit().free_lines().len();
        for (b, block) in tc.blocks().iter().enumerate() {
            let width = block.arity() + 1;
            for w1 in 0..width {
                for w2 in w1 + 1..width {
                    for data in 0..1u64 << free {
                        let input = Assignment::from_data(tc.circuit(), data);
                        let pair = (FaultSite { block: b, wire: w1 }, FaultSite { block: b, wire: w2 });
                        let detected = double_fault_probe(&tc, pair, &input).map_err(|e| e.to_string())?;
                        ensure(!detected, || format!("{name}: {pair:?} detected on {input}"))?;
                        probes += 1;
                    }
                }
            }
        }
        let sabotaged = tc.without_last_checker_gate().map_err(|e| e.to_string())?;
        let report = run_campaign(&Campaign::new(&sabotaged, InputSpace::Exhaustive)).map_err(|e| e.to_string())?;
        ensure(report.coverage() < 1.0, || format!("{name}: sabotaged checker still at full coverage"))?;
    }
    Ok(format!("{probes} same-block double faults undetected; sabotage drops coverage"))
}

fn round_trip() -> Outcome {
    for f in &FIXTURES {
        let c = load(f.name);
        let again = parse_real(&emit_real(&c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(again == c, || format!("{} changed on round trip", f.name))?;
        let tc = transform(&c).map_err(|e| e.to_string())?;
        let text = emit_real(tc.circuit()).map_err(|e| e.to_string())?;
        let back = parse_testable(&text).map_err(|e| e.to_string())?;
        ensure(back.circuit() == tc.circuit() && back.blocks() == tc.blocks(), || {
            format!("transformed {} changed on round trip", f.name)
        })?;
    }
    Ok("12 fixtures and 12 transformed outputs".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("benchmark table exact", benchmark_counts),
        ("single-fault coverage", full_coverage),
        ("reversibility of TRGs and transformed fixtures", reversibility),
        ("block parity zero", block_parity_zero),
        ("checker size, cost and OR function", checkers),
        ("random transform counts", random_transforms),
        ("function preservation", function_preservation),
        ("negative controls", negative_controls),
        ("parser round trip", round_trip),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

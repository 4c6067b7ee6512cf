// SPDX-License-Identifier: Apache-2.0

//! Online-testability transformation.
//!
//! Every n×n gate R becomes a testable block: the parity wrapper TRG(R)
//! followed by TRG(identity) on the same `n` data lines plus a fresh parity
//! line initialized to 0. Fault-free, the parity line leaves the block at 0;
//! a single flipped bit between the two wrappers leaves it at 1. A cascade
//! of MFRG gates ORs all block parity lines into one error line E.
//!
//! Line layout of a transformed circuit: the original lines keep their
//! indices, then one parity line per block in block order, then one
//! constant-1 line per checker gate.

use std::sync::Arc;

use crate::circuit::{Circuit, GateInstance};
use crate::error::{Error, Result};
use crate::gate::{Family, GateKind, MAX_ARITY};
use crate::simulator::{self, apply_gate, Assignment, LineState, EXHAUSTIVE_LIMIT};

/// Testable Reversible Gate: `(I_1..I_n, c) -> (O_1..O_n, c ^ O_1 ^ .. ^ O_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrgGate {
    base: Arc<GateKind>,
    wrapper: Arc<GateKind>,
}

impl TrgGate {
    pub fn base(&self) -> &Arc<GateKind> {
        &self.base
    }

    /// The `(n+1)`-bit kind, parity bit last.
    pub fn wrapper(&self) -> &Arc<GateKind> {
        &self.wrapper
    }
}

pub fn make_trg(base: Arc<GateKind>) -> Result<TrgGate> {
    let n = base.arity();
    if n >= MAX_ARITY {
        return Err(Error::ArityMismatch {
            name: format!("TRG({})", base.name()),
            arity: n + 1,
        });
    }
    if !base.verify_bijective() {
        return Err(Error::NotBijective(base.to_string()));
    }
    let mask = (1u32 << n) - 1;
    let table = (0..1u32 << (n + 1))
        .map(|x| {
            let out = base.apply(x & mask);
            let carried = x >> n;
            out | (carried ^ (out.count_ones() & 1)) << n
        })
        .collect();
    let cost = base.quantum_cost() + n as u32;
    let wrapper = Arc::new(GateKind::trg(base.clone(), table, cost));
    Ok(TrgGate { base, wrapper })
}

/// TRG(R) cascaded with TRG(identity) over the same lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestableBlock {
    trg_r: TrgGate,
    trg_s: TrgGate,
    data_lines: Vec<usize>,
    parity_line: usize,
    first_gate: usize,
}

pub fn make_tb(base: Arc<GateKind>, data_lines: &[usize], parity_line: usize) -> Result<TestableBlock> {
    if data_lines.len() != base.arity() {
        return Err(Error::LengthMismatch {
            expected: base.arity(),
            actual: data_lines.len(),
        });
    }
    for (i, l) in data_lines.iter().enumerate() {
        if data_lines[..i].contains(l) {
            return Err(Error::DuplicateLine(*l));
        }
    }
    if data_lines.contains(&parity_line) {
        return Err(Error::DuplicateLine(parity_line));
    }
    let n = base.arity();
    let trg_r = make_trg(base)?;
    let trg_s = make_trg(Arc::new(GateKind::identity(n)))?;
    Ok(TestableBlock {
        trg_r,
        trg_s,
        data_lines: data_lines.to_vec(),
        parity_line,
        first_gate: 0,
    })
}

impl TestableBlock {
    pub fn trg_r(&self) -> &TrgGate {
        &self.trg_r
    }

    pub fn trg_s(&self) -> &TrgGate {
        &self.trg_s
    }

    pub fn base(&self) -> &Arc<GateKind> {
        &self.trg_r.base
    }

    pub fn data_lines(&self) -> &[usize] {
        &self.data_lines
    }

    pub fn parity_line(&self) -> usize {
        self.parity_line
    }

    /// Number of data lines; the block has `arity() + 1` cut wires.
    pub fn arity(&self) -> usize {
        self.data_lines.len()
    }

    /// Index of TRG(R) in the enclosing circuit; TRG(S) follows it.
    pub fn first_gate(&self) -> usize {
        self.first_gate
    }

    /// Circuit line carried by cut wire `wire` (data wires, then parity).
    pub fn cut_line(&self, wire: usize) -> Option<usize> {
        match wire.cmp(&self.arity()) {
            std::cmp::Ordering::Less => Some(self.data_lines[wire]),
            std::cmp::Ordering::Equal => Some(self.parity_line),
            std::cmp::Ordering::Greater => None,
        }
    }

    fn wrapper_lines(&self) -> Vec<usize> {
        let mut lines = self.data_lines.clone();
        lines.push(self.parity_line);
        lines
    }

    /// The two wrapper gates as circuit instances, TRG(R) first.
    pub fn instances(&self) -> [GateInstance; 2] {
        let lines = self.wrapper_lines();
        [
            GateInstance::new(self.trg_r.wrapper.clone(), &lines).expect("block lines are distinct"),
            GateInstance::new(self.trg_s.wrapper.clone(), &lines).expect("block lines are distinct"),
        ]
    }

    /// Runs the block on its own `n + 1` wires for every data input with the
    /// parity wire at 0 and reports whether the parity output stayed 0.
    pub fn parity_zero_holds(&self) -> bool {
        let n = self.arity();
        (0..1u32 << n).all(|x| {
            let mid = self.trg_r.wrapper.apply(x);
            let out = self.trg_s.wrapper.apply(mid);
            out >> n == 0 && out & ((1 << n) - 1) == self.base().apply(x)
        })
    }
}

/// MFRG cascade ORing the block parity lines into a single error line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checker {
    gates: Vec<GateInstance>,
    error_line: usize,
    garbage: Vec<usize>,
}

impl Checker {
    pub fn gates(&self) -> &[GateInstance] {
        &self.gates
    }

    pub fn error_line(&self) -> usize {
        self.error_line
    }

    /// Lines whose final value is garbage: the P and Q outputs of every MFRG.
    pub fn garbage(&self) -> &[usize] {
        &self.garbage
    }
}

/// Left-fold cascade: gate `i` is MFRG(A = running error, B = constant 1,
/// C = next parity line), whose third output is `A | C`. With a single
/// parity line there are no gates and E is that line.
pub fn make_checker(parity_lines: &[usize], constant_one_lines: &[usize]) -> Result<Checker> {
    let n = parity_lines.len();
    if n == 0 {
        return Err(Error::CheckerShape {
            expected: 0,
            actual: constant_one_lines.len(),
        });
    }
    if constant_one_lines.len() != n - 1 {
        return Err(Error::CheckerShape {
            expected: n - 1,
            actual: constant_one_lines.len(),
        });
    }
    let all: Vec<usize> = parity_lines.iter().chain(constant_one_lines).copied().collect();
    for (i, l) in all.iter().enumerate() {
        if all[..i].contains(l) {
            return Err(Error::DuplicateLine(*l));
        }
    }

    let mfrg = Arc::new(GateKind::mfrg());
    let mut gates = Vec::with_capacity(n - 1);
    let mut garbage = Vec::with_capacity(2 * (n - 1));
    let mut running = parity_lines[0];
    for (&next, &one) in parity_lines[1..].iter().zip(constant_one_lines) {
        gates.push(GateInstance::new(mfrg.clone(), &[running, one, next])?);
        garbage.extend([running, one]);
        running = next;
    }
    Ok(Checker {
        gates,
        error_line: running,
        garbage,
    })
}

/// A transformed circuit together with the provenance of every added gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestableCircuit {
    circuit: Circuit,
    original_lines: usize,
    blocks: Vec<TestableBlock>,
    checker: Checker,
}

/// One single-bit fault location: wire `wire` of the cut inside block `block`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaultSite {
    pub block: usize,
    pub wire: usize,
}

impl std::fmt::Display for FaultSite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "tb{}.w{}", self.block, self.wire)
    }
}

/// Applies the testability transformation.
///
/// The result has `3n - 1` gates for `n` input gates, `n` extra constant-0
/// parity lines, `n - 1` extra constant-1 lines and `2(n - 1)` extra garbage
/// outputs. The error line is labeled `E` among the outputs.
pub fn transform(circuit: &Circuit) -> Result<TestableCircuit> {
    let n = circuit.gate_count();
    if n == 0 {
        return Err(Error::EmptyCircuit);
    }
    if let Some(g) = circuit.gates().iter().find(|g| !g.kind().verify_bijective()) {
        return Err(Error::NotBijective(g.kind().to_string()));
    }

    let original_lines = circuit.num_lines();
    let mut out = strip_gates(circuit);

    let parity: Vec<usize> = (0..n)
        .map(|i| {
            let label = out.fresh_label("p", i);
            let l = out.add_line(label);
            out.set_constant(l, false).expect("fresh line");
            l
        })
        .collect();
    let ones: Vec<usize> = (0..n - 1)
        .map(|i| {
            let label = out.fresh_label("k", i);
            let l = out.add_line(label);
            out.set_constant(l, true).expect("fresh line");
            l
        })
        .collect();

    let mut blocks = Vec::with_capacity(n);
    for (gate, &p) in circuit.gates().iter().zip(&parity) {
        let mut block = make_tb(gate.kind().clone(), gate.lines(), p)?;
        block.first_gate = out.gate_count();
        for g in block.instances() {
            out.push_gate(g)?;
        }
        blocks.push(block);
    }

    let checker = make_checker(&parity, &ones)?;
    for g in checker.gates() {
        out.push_gate(g.clone())?;
    }
    for &l in checker.garbage() {
        out.set_garbage(l)?;
    }
    extend_io_labels(&mut out, original_lines, checker.error_line);

    Ok(TestableCircuit {
        circuit: out,
        original_lines,
        blocks,
        checker,
    })
}

fn strip_gates(source: &Circuit) -> Circuit {
    let mut c = Circuit::new(source.num_lines()).expect("source has lines");
    c.set_labels(source.labels().to_vec()).expect("same width");
    for (&l, &v) in source.constants() {
        c.set_constant(l, v).expect("same width");
    }
    for &l in source.garbage() {
        c.set_garbage(l).expect("same width");
    }
    c.set_input_labels(source.input_labels().map(<[String]>::to_vec));
    c.set_output_labels(source.output_labels().map(<[String]>::to_vec));
    c.set_directives(source.directives().to_vec());
    c
}

fn extend_io_labels(c: &mut Circuit, original_lines: usize, error_line: usize) {
    let labels = c.labels().to_vec();
    let constants = c.constants().clone();
    if let Some(inputs) = c.input_labels_mut() {
        for l in original_lines..labels.len() {
            inputs.push(if constants[&l] { "1" } else { "0" }.to_string());
        }
    }
    let garbage = c.garbage().clone();
    let outputs = c
        .output_labels_mut()
        .get_or_insert_with(|| labels[..original_lines].to_vec());
    for (l, label) in labels.iter().enumerate().skip(original_lines) {
        outputs.push(if l == error_line {
            "E".to_string()
        } else if garbage.contains(&l) {
            "g".to_string()
        } else {
            label.clone()
        });
    }
}

impl TestableCircuit {
    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn into_circuit(self) -> Circuit {
        self.circuit
    }

    pub fn blocks(&self) -> &[TestableBlock] {
        &self.blocks
    }

    pub fn checker(&self) -> &Checker {
        &self.checker
    }

    pub fn error_line(&self) -> usize {
        self.checker.error_line
    }

    /// Number of lines of the source circuit; they keep their indices.
    pub fn original_lines(&self) -> usize {
        self.original_lines
    }

    /// Identity map from the source circuit's lines into this circuit.
    pub fn data_line_map(&self) -> Vec<usize> {
        (0..self.original_lines).collect()
    }

    /// Every cut wire of every block.
    pub fn fault_sites(&self) -> Vec<FaultSite> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(b, block)| (0..=block.arity()).map(move |wire| FaultSite { block: b, wire }))
            .collect()
    }

    pub fn site_line(&self, site: FaultSite) -> Result<usize> {
        self.blocks
            .get(site.block)
            .and_then(|b| b.cut_line(site.wire))
            .ok_or(Error::InvalidSite {
                block: site.block,
                wire: site.wire,
            })
    }

    /// Rebuilds the source circuit from the block bases.
    pub fn original(&self) -> Circuit {
        let l = self.original_lines;
        let src = &self.circuit;
        let mut c = Circuit::new(l).expect("at least one data line");
        c.set_labels(src.labels()[..l].to_vec()).expect("width");
        for (&line, &v) in src.constants().range(..l) {
            c.set_constant(line, v).expect("width");
        }
        for &line in src.garbage().range(..l) {
            c.set_garbage(line).expect("width");
        }
        c.set_input_labels(src.input_labels().map(|v| v[..l].to_vec()));
        c.set_output_labels(src.output_labels().map(|v| v[..l].to_vec()));
        c.set_directives(src.directives().to_vec());
        for b in &self.blocks {
            c.push(b.base().clone(), b.data_lines()).expect("block lines are data lines");
        }
        c
    }

    /// Negative control: the same circuit with the last checker gate removed,
    /// so E no longer sees blocks before the last one.
    pub fn without_last_checker_gate(&self) -> Result<TestableCircuit> {
        if self.checker.gates.is_empty() {
            return Err(Error::MissingProvenance("checker has no gates to drop".into()));
        }
        let mut tc = self.clone();
        tc.circuit.pop_gate();
        tc.checker.gates.pop();
        Ok(tc)
    }

    /// Re-derives block and checker provenance from a circuit laid out the way
    /// [`transform`] lays it out (e.g. one read back from a netlist).
    pub fn recover(circuit: Circuit) -> Result<TestableCircuit> {
        let missing = |m: &str| Error::MissingProvenance(m.to_string());
        let gates = circuit.gates();
        let mut blocks = Vec::new();
        let mut i = 0;
        while i < gates.len() {
            let Family::Trg(base) = gates[i].kind().family() else {
                break;
            };
            if matches!(base.family(), Family::Identity) {
                return Err(missing("TRG(identity) without a preceding TRG(R)"));
            }
            let next = gates
                .get(i + 1)
                .ok_or_else(|| missing("block is missing its TRG(identity)"))?;
            let is_s = matches!(next.kind().family(), Family::Trg(b) if matches!(b.family(), Family::Identity));
            if !is_s || next.lines() != gates[i].lines() {
                return Err(missing("TRG(R) is not followed by TRG(identity) on the same lines"));
            }
            let lines = gates[i].lines();
            let (parity, data) = lines.split_last().expect("wrapper has lines");
            let mut block = make_tb(base.clone(), data, *parity)?;
            block.first_gate = i;
            if block.instances()[0] != gates[i] || block.instances()[1] != *next {
                return Err(missing("wrapper table does not match its base"));
            }
            blocks.push(block);
            i += 2;
        }
        if blocks.is_empty() {
            return Err(missing("no testable blocks"));
        }
        let mut ones = Vec::new();
        for g in &gates[i..] {
            if !matches!(g.kind().family(), Family::Mfrg) {
                return Err(missing("non-MFRG gate after the testable blocks"));
            }
            ones.push(g.lines()[1]);
        }
        let parity: Vec<usize> = blocks.iter().map(|b| b.parity_line).collect();
        let checker = make_checker(&parity, &ones)?;
        if checker.gates() != &gates[i..] {
            return Err(missing("checker gates are not an MFRG cascade over the parity lines"));
        }

        let original_lines = parity.iter().chain(&ones).copied().min().expect("non-empty");
        let added = parity.len() + ones.len();
        if original_lines + added != circuit.num_lines() {
            return Err(missing("added lines do not follow the data lines"));
        }
        if blocks.iter().any(|b| b.data_lines.iter().any(|&l| l >= original_lines)) {
            return Err(missing("block touches a parity or checker line"));
        }
        if parity.iter().any(|&l| circuit.constant(l) != Some(false))
            || ones.iter().any(|&l| circuit.constant(l) != Some(true))
        {
            return Err(missing("parity lines must be constant 0 and checker lines constant 1"));
        }
        Ok(TestableCircuit {
            circuit,
            original_lines,
            blocks,
            checker,
        })
    }
}

/// Sweeps every free-line input of the transformed circuit and checks that
/// each block leaves its parity line at 0 and that E ends at 0.
///
/// Returns the first offending input, if any.
pub fn parity_zero_violation(tc: &TestableCircuit) -> Result<Option<Assignment>> {
    let c = tc.circuit();
    let free = c.free_lines().len();
    if free > EXHAUSTIVE_LIMIT {
        return Err(Error::TooManyLines {
            lines: free,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    // parity line to check after gate index
    let mut checks = vec![None; c.gate_count()];
    for b in tc.blocks() {
        checks[b.first_gate + 1] = Some(b.parity_line);
    }
    for data in 0..1u64 << free {
        let input = Assignment::from_data(c, data);
        let mut state = input.bits().to_vec();
        for (g, check) in c.gates().iter().zip(&checks) {
            apply_gate(g, &mut state);
            if let Some(p) = check {
                if state.get(*p) {
                    return Ok(Some(input));
                }
            }
        }
        if state.get(tc.error_line()) {
            return Ok(Some(input));
        }
    }
    Ok(None)
}

/// Exhaustive check that the transformed circuit computes the source
/// circuit's function on the data lines.
pub fn preserves_function(tc: &TestableCircuit) -> Result<bool> {
    simulator::equivalent_on_lines(
        &tc.original(),
        tc.circuit(),
        &tc.data_line_map(),
        simulator::ConstantMode::Enforce,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::{run, run_packed, ConstantMode};

    fn arc(k: GateKind) -> Arc<GateKind> {
        Arc::new(k)
    }

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn trg_rows() {
        let t = make_trg(arc(GateKind::toffoli(3))).unwrap();
        assert_eq!(t.wrapper().eval(&bits("1100")).unwrap(), bits("1111"));
        let f = make_trg(arc(GateKind::feynman())).unwrap();
        assert_eq!(f.wrapper().eval(&bits("100")).unwrap(), bits("110"));
        // carried 1 on zero data: 1 ^ parity(R(0))
        let p = make_trg(arc(GateKind::not())).unwrap();
        assert_eq!(p.wrapper().eval(&bits("01")).unwrap(), bits("10"));
        assert!(t.wrapper().verify_bijective());
        assert_eq!(t.wrapper().arity(), 4);
    }

    #[test]
    fn trg_rejects_non_bijective() {
        let broken = GateKind::from_table("BROKEN", 2, vec![0, 0, 2, 3], 0).unwrap();
        assert!(matches!(make_trg(arc(broken)), Err(Error::NotBijective(_))));
        assert!(make_trg(arc(GateKind::identity(16))).is_err());
    }

    #[test]
    fn tb_rows() {
        let tb = make_tb(arc(GateKind::toffoli(3)), &[0, 1, 2], 3).unwrap();
        let mut c = Circuit::new(4).unwrap();
        for g in tb.instances() {
            c.push_gate(g).unwrap();
        }
        let out = run(&c, &"1100".parse().unwrap(), ConstantMode::Free).unwrap();
        assert_eq!(out.to_string(), "1110");

        let fb = make_tb(arc(GateKind::feynman()), &[0, 1], 2).unwrap();
        assert!(fb.parity_zero_holds());
        let mut c = Circuit::new(3).unwrap();
        for g in fb.instances() {
            c.push_gate(g).unwrap();
        }
        for x in 0..4u64 {
            assert_eq!(run_packed(&c, x) >> 2, 0);
        }
    }

    #[test]
    fn tb_flip_at_cut_sets_parity() {
        let tb = make_tb(arc(GateKind::toffoli(3)), &[0, 1, 2], 3).unwrap();
        let [r, s] = tb.instances();
        for x in 0..8u64 {
            for wire in 0..4 {
                let mut state = x;
                apply_gate(&r, &mut state);
                state.flip(tb.cut_line(wire).unwrap());
                apply_gate(&s, &mut state);
                assert!(state.get(3), "input {x} wire {wire}");
            }
        }
    }

    #[test]
    fn tb_overlapping_lines() {
        assert!(matches!(
            make_tb(arc(GateKind::feynman()), &[0, 1], 1),
            Err(Error::DuplicateLine(1))
        ));
        assert!(make_tb(arc(GateKind::feynman()), &[0, 0], 2).is_err());
    }

    #[test]
    fn checker_shapes() {
        let c = make_checker(&[0, 1, 2, 3], &[4, 5, 6]).unwrap();
        assert_eq!(c.gates().len(), 3);
        assert_eq!(c.garbage().len(), 6);
        assert_eq!(c.error_line(), 3);

        let single = make_checker(&[7], &[]).unwrap();
        assert!(single.gates().is_empty());
        assert_eq!(single.error_line(), 7);

        assert!(matches!(make_checker(&[0, 1], &[]), Err(Error::CheckerShape { .. })));
        assert!(make_checker(&[], &[]).is_err());
        assert!(make_checker(&[0, 1], &[1]).is_err());
    }

    #[test]
    fn checker_or_small() {
        // parity lines 0..3, constant-one lines 3..5
        let chk = make_checker(&[0, 1, 2], &[3, 4]).unwrap();
        let mut c = Circuit::new(5).unwrap();
        for g in chk.gates() {
            c.push_gate(g.clone()).unwrap();
        }
        let e = |p: u64| run_packed(&c, p | 0b11000) >> chk.error_line() & 1;
        assert_eq!(e(0b000), 0);
        assert_eq!(e(0b010), 1);
        assert_eq!(e(0b101), 1);
    }

    fn sample() -> Circuit {
        let mut c = Circuit::new(3).unwrap();
        c.push(arc(GateKind::toffoli(3)), &[0, 1, 2]).unwrap();
        c.push(arc(GateKind::feynman()), &[2, 0]).unwrap();
        c.push(arc(GateKind::peres()), &[1, 2, 0]).unwrap();
        c.push(arc(GateKind::fredkin(3)), &[2, 1, 0]).unwrap();
        c
    }

    #[test]
    fn transform_counts_and_layout() {
        let tc = transform(&sample()).unwrap();
        let c = tc.circuit();
        assert_eq!(c.gate_count(), 11);
        assert_eq!(c.num_lines(), 3 + 4 + 3);
        assert_eq!(c.garbage().len(), 6);
        assert_eq!(c.constants().len(), 7);
        assert_eq!(tc.error_line(), 6);
        assert_eq!(c.output_labels().unwrap()[6], "E");
        assert_eq!(tc.fault_sites().len(), 4 + 3 + 4 + 4);
        assert_eq!(tc.original(), sample());
        assert!(preserves_function(&tc).unwrap());
        assert_eq!(parity_zero_violation(&tc).unwrap(), None);
    }

    #[test]
    fn single_gate_boundary() {
        let mut c = Circuit::new(2).unwrap();
        c.push(arc(GateKind::feynman()), &[0, 1]).unwrap();
        let tc = transform(&c).unwrap();
        assert_eq!(tc.circuit().gate_count(), 2);
        assert!(tc.checker().gates().is_empty());
        assert_eq!(tc.error_line(), tc.blocks()[0].parity_line());
        assert!(tc.without_last_checker_gate().is_err());
    }

    #[test]
    fn transform_errors() {
        assert!(matches!(transform(&Circuit::new(2).unwrap()), Err(Error::EmptyCircuit)));
        let broken = GateKind::from_table("BROKEN", 2, vec![0, 0, 2, 3], 0).unwrap();
        let mut c = Circuit::new(2).unwrap();
        c.push(arc(broken), &[0, 1]).unwrap();
        assert!(matches!(transform(&c), Err(Error::NotBijective(_))));
    }

    #[test]
    fn recover_round_trips() {
        let tc = transform(&sample()).unwrap();
        let back = TestableCircuit::recover(tc.circuit().clone()).unwrap();
        assert_eq!(back, tc);
        assert!(TestableCircuit::recover(sample()).is_err());
        let sabotaged = tc.without_last_checker_gate().unwrap();
        assert!(TestableCircuit::recover(sabotaged.into_circuit()).is_err());
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Bit-exact circuit evaluation.
//!
//! Row index convention: line 0 is the least significant bit. A truth table
//! row `i` is the circuit's response to the assignment whose line `l` holds
//! bit `l` of `i`.

use std::fmt;

use crate::circuit::{Circuit, GateInstance};
use crate::error::{Error, Result};

/// Largest line count accepted by exhaustive sweeps.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Storage for one value per circuit line.
pub trait LineState {
    fn get(&self, line: usize) -> bool;
    fn set(&mut self, line: usize, value: bool);

    fn flip(&mut self, line: usize) {
        let v = self.get(line);
        self.set(line, !v);
    }
}

impl LineState for u64 {
    #[inline]
    fn get(&self, line: usize) -> bool {
        (*self >> line) & 1 == 1
    }

    #[inline]
    fn set(&mut self, line: usize, value: bool) {
        *self = (*self & !(1 << line)) | (value as u64) << line;
    }
}

impl LineState for [bool] {
    fn get(&self, line: usize) -> bool {
        self[line]
    }

    fn set(&mut self, line: usize, value: bool) {
        self[line] = value;
    }
}

impl LineState for Vec<bool> {
    fn get(&self, line: usize) -> bool {
        self[line]
    }

    fn set(&mut self, line: usize, value: bool) {
        self[line] = value;
    }
}

#[inline]
pub fn apply_gate<S: LineState + ?Sized>(gate: &GateInstance, state: &mut S) {
    let lines = gate.lines();
    let x = lines
        .iter()
        .enumerate()
        .fold(0u32, |acc, (i, &l)| acc | (state.get(l) as u32) << i);
    let y = gate.kind().apply(x);
    if x != y {
        for (i, &l) in lines.iter().enumerate() {
            state.set(l, (y >> i) & 1 == 1);
        }
    }
}

pub fn apply_gates<'a, S, I>(gates: I, state: &mut S)
where
    S: LineState + ?Sized,
    I: IntoIterator<Item = &'a GateInstance>,
{
    for g in gates {
        apply_gate(g, state);
    }
}

/// A value for every line of a circuit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment(bits)
    }

    pub fn zeros(num_lines: usize) -> Self {
        Assignment(vec![false; num_lines])
    }

    /// Bits of `index`, line 0 first.
    pub fn from_index(num_lines: usize, index: u64) -> Self {
        Assignment((0..num_lines).map(|l| l < 64 && (index >> l) & 1 == 1).collect())
    }

    /// Fills constant lines with their declared values and spreads the bits
    /// of `data` (LSB first) over the free lines in index order.
    pub fn from_data(circuit: &Circuit, data: u64) -> Self {
        let mut bits = vec![false; circuit.num_lines()];
        let mut k = 0;
        for (l, bit) in bits.iter_mut().enumerate() {
            *bit = match circuit.constant(l) {
                Some(v) => v,
                None => {
                    let v = k < 64 && (data >> k) & 1 == 1;
                    k += 1;
                    v
                }
            };
        }
        Assignment(bits)
    }

    /// Like [`Assignment::from_data`] with explicit free-line values.
    pub fn from_free_bits(circuit: &Circuit, free: &[bool]) -> Result<Self> {
        let free_lines = circuit.free_lines();
        if free.len() != free_lines.len() {
            return Err(Error::LengthMismatch {
                expected: free_lines.len(),
                actual: free.len(),
            });
        }
        let mut a = Self::from_data(circuit, 0);
        for (&l, &v) in free_lines.iter().zip(free) {
            a.0[l] = v;
        }
        Ok(a)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, line: usize) -> bool {
        self.0[line]
    }

    /// Packs the first 64 lines into an integer, line 0 as LSB.
    pub fn to_index(&self) -> u64 {
        self.0
            .iter()
            .take(64)
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | (b as u64) << i)
    }

    pub(crate) fn bits_mut(&mut self) -> &mut Vec<bool> {
        &mut self.0
    }
}

/// Prints line 0 first.
impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Assignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Io(format!("invalid bit `{c}` in assignment"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Assignment)
    }
}

/// How `run` treats lines declared constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantMode {
    /// Constant annotations are ignored; every line is driven by the caller.
    Free,
    /// Constant lines must carry their declared value.
    Enforce,
}

pub(crate) fn check_constants(circuit: &Circuit, input: &Assignment) -> Result<()> {
    for (&line, &expected) in circuit.constants() {
        let actual = input.get(line);
        if actual != expected {
            return Err(Error::ConstantViolation {
                line,
                expected,
                actual,
            });
        }
    }
    Ok(())
}

pub fn run(circuit: &Circuit, input: &Assignment, mode: ConstantMode) -> Result<Assignment> {
    if input.len() != circuit.num_lines() {
        return Err(Error::LengthMismatch {
            expected: circuit.num_lines(),
            actual: input.len(),
        });
    }
    if mode == ConstantMode::Enforce {
        check_constants(circuit, input)?;
    }
    let mut state = input.clone();
    apply_gates(circuit.gates(), state.bits_mut());
    Ok(state)
}

/// Packed evaluation for circuits of at most 64 lines.
pub fn run_packed(circuit: &Circuit, input: u64) -> u64 {
    debug_assert!(circuit.num_lines() <= 64);
    let mut state = input;
    apply_gates(circuit.gates(), &mut state);
    state
}

fn guard(lines: usize) -> Result<()> {
    if lines > EXHAUSTIVE_LIMIT {
        return Err(Error::TooManyLines {
            lines,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    Ok(())
}

/// All `2^num_lines` outputs of a circuit, indexed by input row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    num_lines: usize,
    outputs: Vec<u32>,
}

impl TruthTable {
    pub fn from_outputs(num_lines: usize, outputs: Vec<u32>) -> Result<Self> {
        if outputs.len() != 1usize << num_lines {
            return Err(Error::LengthMismatch {
                expected: 1 << num_lines,
                actual: outputs.len(),
            });
        }
        Ok(TruthTable { num_lines, outputs })
    }

    pub fn num_lines(&self) -> usize {
        self.num_lines
    }

    pub fn outputs(&self) -> &[u32] {
        &self.outputs
    }

    pub fn row(&self, input: usize) -> u32 {
        self.outputs[input]
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.outputs.len()];
        for &y in &self.outputs {
            let y = y as usize;
            if y >= seen.len() || seen[y] {
                return false;
            }
            seen[y] = true;
        }
        true
    }
}

pub fn truth_table(circuit: &Circuit) -> Result<TruthTable> {
    guard(circuit.num_lines())?;
    let rows = 1u64 << circuit.num_lines();
    let outputs = (0..rows).map(|x| run_packed(circuit, x) as u32).collect();
    Ok(TruthTable {
        num_lines: circuit.num_lines(),
        outputs,
    })
}

pub fn is_reversible(circuit: &Circuit) -> Result<bool> {
    Ok(truth_table(circuit)?.is_permutation())
}

/// First input of `a` on which `a` and `b` disagree, if any.
///
/// `line_map[l]` is the line of `b` that mirrors line `l` of `a`. Every line
/// of `b` outside the image must be constant; those lines are filled from
/// `b`'s annotations. With [`ConstantMode::Enforce`] only the free lines of
/// `a` are swept and its constants are honored; with [`ConstantMode::Free`]
/// all `2^num_lines` assignments of `a` are swept.
///
/// The returned witness is the full input assignment of `a`.
pub fn find_mismatch(
    a: &Circuit,
    b: &Circuit,
    line_map: &[usize],
    mode: ConstantMode,
) -> Result<Option<Assignment>> {
    if line_map.len() != a.num_lines() {
        return Err(Error::LengthMismatch {
            expected: a.num_lines(),
            actual: line_map.len(),
        });
    }
    let mut used = vec![false; b.num_lines()];
    for &t in line_map {
        if t >= b.num_lines() {
            return Err(Error::LineOutOfRange {
                line: t,
                num_lines: b.num_lines(),
            });
        }
        if used[t] {
            return Err(Error::NonInjectiveMap(t));
        }
        used[t] = true;
    }
    if let Some(l) = (0..b.num_lines()).find(|&l| !used[l] && b.constant(l).is_none()) {
        return Err(Error::UnmappedFreeLine(l));
    }

    let swept = match mode {
        ConstantMode::Enforce => a.free_lines().len(),
        ConstantMode::Free => a.num_lines(),
    };
    guard(swept)?;

    let b_base = Assignment::from_data(b, 0);
    for data in 0..1u64 << swept {
        let input = match mode {
            ConstantMode::Enforce => Assignment::from_data(a, data),
            ConstantMode::Free => Assignment::from_index(a.num_lines(), data),
        };
        let mut b_in = b_base.clone();
        for (l, &t) in line_map.iter().enumerate() {
            b_in.bits_mut()[t] = input.get(l);
        }
        let a_out = run(a, &input, ConstantMode::Free)?;
        let b_out = run(b, &b_in, ConstantMode::Free)?;
        if line_map.iter().enumerate().any(|(l, &t)| a_out.get(l) != b_out.get(t)) {
            return Ok(Some(input));
        }
    }
    Ok(None)
}

pub fn equivalent_on_lines(
    a: &Circuit,
    b: &Circuit,
    line_map: &[usize],
    mode: ConstantMode,
) -> Result<bool> {
    Ok(find_mismatch(a, b, line_map, mode)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::GateKind;
    use std::sync::Arc;

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::new(4).unwrap();
        let x: Assignment = "1011".parse().unwrap();
        assert_eq!(run(&c, &x, ConstantMode::Free).unwrap(), x);
    }

    #[test]
    fn single_feynman() {
        let mut c = Circuit::new(3).unwrap();
        c.push(Arc::new(GateKind::feynman()), &[0, 1]).unwrap();
        let out = run(&c, &"100".parse().unwrap(), ConstantMode::Free).unwrap();
        assert_eq!(out.to_string(), "110");
    }

    #[test]
    fn truth_tables() {
        let mut c = Circuit::new(1).unwrap();
        c.push(Arc::new(GateKind::not()), &[0]).unwrap();
        assert_eq!(truth_table(&c).unwrap().outputs(), &[1, 0]);

        // line 0 (LSB) is the control
        let mut c = Circuit::new(2).unwrap();
        c.push(Arc::new(GateKind::feynman()), &[0, 1]).unwrap();
        let tt = truth_table(&c).unwrap();
        assert_eq!(tt.outputs(), &[0b00, 0b11, 0b10, 0b01]);
        assert!(tt.is_permutation());
    }

    #[test]
    fn duplicate_row_not_permutation() {
        let tt = TruthTable::from_outputs(2, vec![0, 1, 1, 3]).unwrap();
        assert!(!tt.is_permutation());
    }

    #[test]
    fn non_bijective_kind_breaks_reversibility() {
        let broken = GateKind::from_table("BROKEN", 2, vec![0, 0, 2, 3], 0).unwrap();
        let mut c = Circuit::new(2).unwrap();
        c.push(Arc::new(broken), &[0, 1]).unwrap();
        assert!(!is_reversible(&c).unwrap());
    }

    #[test]
    fn guard_rejects_wide_circuits() {
        let c = Circuit::new(21).unwrap();
        assert!(matches!(truth_table(&c), Err(Error::TooManyLines { .. })));
    }

    #[test]
    fn length_and_constant_checks() {
        let mut c = Circuit::new(2).unwrap();
        c.set_constant(1, false).unwrap();
        assert!(matches!(
            run(&c, &"1".parse().unwrap(), ConstantMode::Free),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            run(&c, &"11".parse().unwrap(), ConstantMode::Enforce),
            Err(Error::ConstantViolation { line: 1, .. })
        ));
        assert!(run(&c, &"11".parse().unwrap(), ConstantMode::Free).is_ok());
        assert_eq!(Assignment::from_data(&c, 1).to_string(), "10");
    }

    #[test]
    fn equivalence_maps() {
        let mut a = Circuit::new(2).unwrap();
        a.push(Arc::new(GateKind::feynman()), &[0, 1]).unwrap();
        assert!(equivalent_on_lines(&a, &a, &[0, 1], ConstantMode::Enforce).unwrap());
        assert!(matches!(
            equivalent_on_lines(&a, &a, &[0, 0], ConstantMode::Enforce),
            Err(Error::NonInjectiveMap(0))
        ));

        // b computes the same function on lines (2, 0) with a constant ancilla on 1
        let mut b = Circuit::new(3).unwrap();
        b.set_constant(1, false).unwrap();
        b.push(Arc::new(GateKind::feynman()), &[2, 0]).unwrap();
        b.push(Arc::new(GateKind::feynman()), &[2, 1]).unwrap();
        assert!(equivalent_on_lines(&a, &b, &[2, 0], ConstantMode::Free).unwrap());
        assert!(!equivalent_on_lines(&a, &b, &[0, 2], ConstantMode::Free).unwrap());

        let c = Circuit::new(3).unwrap();
        assert!(matches!(
            equivalent_on_lines(&a, &c, &[0, 1], ConstantMode::Free),
            Err(Error::UnmappedFreeLine(2))
        ));
    }
}

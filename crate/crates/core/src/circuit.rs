// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gate::GateKind;

/// One gate placed on specific circuit lines, in the kind's line order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateInstance {
    kind: Arc<GateKind>,
    lines: Vec<usize>,
}

impl GateInstance {
    pub fn new(kind: Arc<GateKind>, lines: &[usize]) -> Result<Self> {
        if lines.len() != kind.arity() {
            return Err(Error::LengthMismatch {
                expected: kind.arity(),
                actual: lines.len(),
            });
        }
        for (i, l) in lines.iter().enumerate() {
            if lines[..i].contains(l) {
                return Err(Error::DuplicateLine(*l));
            }
        }
        Ok(GateInstance {
            kind,
            lines: lines.to_vec(),
        })
    }

    pub fn kind(&self) -> &Arc<GateKind> {
        &self.kind
    }

    pub fn lines(&self) -> &[usize] {
        &self.lines
    }
}

/// An ordered gate list over a fixed set of lines.
///
/// Besides the gates, a circuit records which inputs are tied to constants,
/// which outputs are garbage, and the names used when reading or writing
/// netlists. Unrecognized netlist directives ride along in `directives`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    num_lines: usize,
    gates: Vec<GateInstance>,
    constants: BTreeMap<usize, bool>,
    garbage: BTreeSet<usize>,
    labels: Vec<String>,
    input_labels: Option<Vec<String>>,
    output_labels: Option<Vec<String>>,
    directives: Vec<String>,
}

impl Circuit {
    pub fn new(num_lines: usize) -> Result<Self> {
        if num_lines == 0 {
            return Err(Error::NoLines);
        }
        Ok(Circuit {
            num_lines,
            gates: Vec::new(),
            constants: BTreeMap::new(),
            garbage: BTreeSet::new(),
            labels: (0..num_lines).map(|i| format!("x{i}")).collect(),
            input_labels: None,
            output_labels: None,
            directives: Vec::new(),
        })
    }

    fn check_line(&self, line: usize) -> Result<()> {
        if line >= self.num_lines {
            return Err(Error::LineOutOfRange {
                line,
                num_lines: self.num_lines,
            });
        }
        Ok(())
    }

    pub fn push(&mut self, kind: Arc<GateKind>, lines: &[usize]) -> Result<()> {
        let gate = GateInstance::new(kind, lines)?;
        self.push_gate(gate)
    }

    pub fn push_gate(&mut self, gate: GateInstance) -> Result<()> {
        for &l in gate.lines() {
            self.check_line(l)?;
        }
        self.gates.push(gate);
        Ok(())
    }

    pub(crate) fn insert_gate(&mut self, index: usize, gate: GateInstance) -> Result<()> {
        for &l in gate.lines() {
            self.check_line(l)?;
        }
        self.gates.insert(index, gate);
        Ok(())
    }

    pub(crate) fn pop_gate(&mut self) -> Option<GateInstance> {
        self.gates.pop()
    }

    /// Appends a new line and returns its index.
    pub fn add_line(&mut self, label: impl Into<String>) -> usize {
        self.labels.push(label.into());
        self.num_lines += 1;
        self.num_lines - 1
    }

    pub fn set_constant(&mut self, line: usize, value: bool) -> Result<()> {
        self.check_line(line)?;
        self.constants.insert(line, value);
        Ok(())
    }

    pub fn set_garbage(&mut self, line: usize) -> Result<()> {
        self.check_line(line)?;
        self.garbage.insert(line);
        Ok(())
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.num_lines {
            return Err(Error::LengthMismatch {
                expected: self.num_lines,
                actual: labels.len(),
            });
        }
        self.labels = labels;
        Ok(())
    }

    /// Labels equal to the line labels are stored as `None`.
    pub fn set_input_labels(&mut self, labels: Option<Vec<String>>) {
        self.input_labels = labels.filter(|v| *v != self.labels);
    }

    pub fn set_output_labels(&mut self, labels: Option<Vec<String>>) {
        self.output_labels = labels.filter(|v| *v != self.labels);
    }

    pub fn set_directives(&mut self, directives: Vec<String>) {
        self.directives = directives;
    }

    pub(crate) fn input_labels_mut(&mut self) -> &mut Option<Vec<String>> {
        &mut self.input_labels
    }

    pub(crate) fn output_labels_mut(&mut self) -> &mut Option<Vec<String>> {
        &mut self.output_labels
    }

    pub fn num_lines(&self) -> usize {
        self.num_lines
    }

    pub fn gates(&self) -> &[GateInstance] {
        &self.gates
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn constants(&self) -> &BTreeMap<usize, bool> {
        &self.constants
    }

    pub fn constant(&self, line: usize) -> Option<bool> {
        self.constants.get(&line).copied()
    }

    pub fn garbage(&self) -> &BTreeSet<usize> {
        &self.garbage
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn input_labels(&self) -> Option<&[String]> {
        self.input_labels.as_deref()
    }

    pub fn output_labels(&self) -> Option<&[String]> {
        self.output_labels.as_deref()
    }

    pub fn directives(&self) -> &[String] {
        &self.directives
    }

    /// Lines that are not tied to a constant, in index order.
    pub fn free_lines(&self) -> Vec<usize> {
        (0..self.num_lines)
            .filter(|l| !self.constants.contains_key(l))
            .collect()
    }

    pub fn line_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Returns a label starting with `prefix` that no line uses yet.
    pub(crate) fn fresh_label(&self, prefix: &str, index: usize) -> String {
        let mut candidate = format!("{prefix}{index}");
        while self.labels.contains(&candidate) {
            candidate.insert(0, '_');
        }
        candidate
    }
}

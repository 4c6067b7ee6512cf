// SPDX-License-Identifier: Apache-2.0

//! RevLib `.real` netlists.
//!
//! Supported subset: `.version .numvars .variables .inputs .outputs
//! .constants .garbage .begin .end`, one gate per line, `#` comments. Gate
//! tokens: `t1` NOT, `t2` FEYNMAN, `t<k>` Toffoli with `k - 1` controls,
//! `f<k>` Fredkin with `k - 2` controls, plus the extensions `p3` (PERES)
//! and `mf3` (MFRG).
//!
//! Parity wrappers are written out as their expansion: TRG(R) is R followed
//! by one `t2 <data> <parity>` per data line, TRG(identity) is just the
//! `t2` gates. A `# tb <index>` comment precedes each TRG(R). When reading,
//! a marked group with exactly that shape is folded back into the two
//! wrapper gates; anything else stays as plain gates.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::circuit::{Circuit, GateInstance};
use crate::error::{RealError, Result};
use crate::gate::{Family, GateKind, MAX_ARITY};
use crate::testability::{make_trg, TestableCircuit};

/// One gate line: token plus variable names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealGate {
    pub token: String,
    pub vars: Vec<String>,
    /// Set when a `# tb <index>` comment precedes this gate.
    pub block: Option<usize>,
    /// 1-based source line, 0 for generated documents.
    pub source_line: usize,
}

/// Syntax-level view of a `.real` file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RealDocument {
    pub version: Option<String>,
    pub numvars: usize,
    pub variables: Vec<String>,
    pub inputs: Option<Vec<String>>,
    pub outputs: Option<Vec<String>>,
    pub constants: Option<String>,
    pub garbage: Option<String>,
    pub gates: Vec<RealGate>,
    /// Unrecognized header directives, verbatim.
    pub directives: Vec<String>,
}

fn syntax(line: usize, message: impl Into<String>) -> RealError {
    RealError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_block_marker(comment: &str) -> Option<usize> {
    let mut it = comment.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some("tb"), Some(idx), None) => idx.parse().ok(),
        _ => None,
    }
}

#[derive(PartialEq)]
enum Section {
    Header,
    Body,
    Done,
}

impl RealDocument {
    pub fn parse(text: &str) -> Result<Self, RealError> {
        let mut doc = RealDocument::default();
        let mut numvars = None;
        let mut variables = None;
        let mut section = Section::Header;
        let mut pending_block = None;
        let mut last_line = 0;

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            last_line = lineno;
            let raw = raw.trim_end_matches('\r');
            let (content, comment) = match raw.find('#') {
                Some(p) => (&raw[..p], Some(&raw[p + 1..])),
                None => (raw, None),
            };
            let content = content.trim();
            if content.is_empty() {
                if let Some(b) = comment.and_then(parse_block_marker) {
                    pending_block = Some(b);
                }
                continue;
            }
            let mut words = content.split_whitespace();
            let head = words.next().expect("non-empty");
            let rest: Vec<&str> = words.collect();

            if section == Section::Done {
                return Err(syntax(lineno, "content after .end"));
            }
            if let Some(directive) = head.strip_prefix('.') {
                let names = || rest.iter().map(|s| s.to_string()).collect::<Vec<_>>();
                let single = |what: &str| -> Result<String, RealError> {
                    match rest.as_slice() {
                        [v] => Ok(v.to_string()),
                        _ => Err(syntax(lineno, format!(".{what} takes exactly one value"))),
                    }
                };
                match (directive.to_ascii_lowercase().as_str(), &section) {
                    ("begin", Section::Header) => section = Section::Body,
                    ("end", Section::Body) => section = Section::Done,
                    ("begin" | "end", _) => {
                        return Err(syntax(lineno, format!("unexpected .{directive}")))
                    }
                    (_, Section::Body) => {
                        return Err(syntax(lineno, format!("directive .{directive} inside .begin/.end")))
                    }
                    ("version", _) => doc.version = Some(rest.join(" ")),
                    ("numvars", _) => {
                        let v = single("numvars")?;
                        let n: usize = v
                            .parse()
                            .map_err(|_| syntax(lineno, format!("invalid .numvars `{v}`")))?;
                        if n == 0 {
                            return Err(syntax(lineno, ".numvars must be positive"));
                        }
                        numvars = Some(n);
                    }
                    ("variables", _) => {
                        let vars = names();
                        for (i, v) in vars.iter().enumerate() {
                            if vars[..i].contains(v) {
                                return Err(syntax(lineno, format!("variable `{v}` declared twice")));
                            }
                        }
                        variables = Some(vars);
                    }
                    ("inputs", _) => doc.inputs = Some(names()),
                    ("outputs", _) => doc.outputs = Some(names()),
                    ("constants", _) => {
                        let v = single("constants")?;
                        if let Some(c) = v.chars().find(|c| !matches!(c, '0' | '1' | '-')) {
                            return Err(syntax(lineno, format!("invalid constant marker `{c}`")));
                        }
                        doc.constants = Some(v);
                    }
                    ("garbage", _) => {
                        let v = single("garbage")?;
                        if let Some(c) = v.chars().find(|c| !matches!(c, '1' | '-')) {
                            return Err(syntax(lineno, format!("invalid garbage marker `{c}`")));
                        }
                        doc.garbage = Some(v);
                    }
                    _ => doc.directives.push(content.to_string()),
                }
                continue;
            }
            if section != Section::Body {
                return Err(syntax(lineno, format!("gate `{head}` outside .begin/.end")));
            }
            doc.gates.push(RealGate {
                token: head.to_string(),
                vars: rest.iter().map(|s| s.to_string()).collect(),
                block: pending_block.take(),
                source_line: lineno,
            });
        }

        let numvars = numvars.ok_or_else(|| syntax(last_line, "missing .numvars"))?;
        let variables = variables.ok_or_else(|| syntax(last_line, "missing .variables"))?;
        if section != Section::Done {
            return Err(syntax(last_line, "missing .begin/.end"));
        }
        doc.numvars = numvars;
        doc.variables = variables;
        doc.check_counts()?;
        Ok(doc)
    }

    fn check_counts(&self) -> Result<(), RealError> {
        let n = self.numvars;
        let check = |directive: &str, actual: usize| {
            if actual == n {
                Ok(())
            } else {
                Err(RealError::CountMismatch {
                    directive: directive.to_string(),
                    expected: n,
                    actual,
                })
            }
        };
        check("variables", self.variables.len())?;
        if let Some(v) = &self.inputs {
            check("inputs", v.len())?;
        }
        if let Some(v) = &self.outputs {
            check("outputs", v.len())?;
        }
        if let Some(v) = &self.constants {
            check("constants", v.len())?;
        }
        if let Some(v) = &self.garbage {
            check("garbage", v.len())?;
        }
        Ok(())
    }

    pub fn to_circuit(&self) -> Result<Circuit> {
        let mut c = Circuit::new(self.numvars)?;
        c.set_labels(self.variables.clone())?;
        if let Some(cs) = &self.constants {
            for (l, ch) in cs.chars().enumerate() {
                match ch {
                    '0' => c.set_constant(l, false)?,
                    '1' => c.set_constant(l, true)?,
                    _ => {}
                }
            }
        }
        if let Some(gs) = &self.garbage {
            for (l, ch) in gs.chars().enumerate() {
                if ch == '1' {
                    c.set_garbage(l)?;
                }
            }
        }
        c.set_input_labels(self.inputs.clone());
        c.set_output_labels(self.outputs.clone());
        c.set_directives(self.directives.clone());

        let index: HashMap<&str, usize> = self
            .variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut resolved = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            resolved.push(resolve(g, &index)?);
        }

        let mut i = 0;
        while i < resolved.len() {
            if self.gates[i].block.is_some() {
                if let Some([r, s]) = fold_block(&resolved[i..]) {
                    let n = r.lines().len() - 1;
                    c.push_gate(r)?;
                    c.push_gate(s)?;
                    i += 1 + 2 * n;
                    continue;
                }
            }
            c.push_gate(resolved[i].clone())?;
            i += 1;
        }
        Ok(c)
    }

    pub fn from_circuit(circuit: &Circuit) -> Result<Self> {
        let labels = circuit.labels();
        let mut gates = Vec::new();
        let mut block = 0;
        for g in circuit.gates() {
            let start = gates.len();
            expand(g.kind(), g.lines(), &mut gates)?;
            let is_trg_r = matches!(g.kind().family(), Family::Trg(b) if !matches!(b.family(), Family::Identity));
            if is_trg_r && start < gates.len() {
                gates[start].2 = Some(block);
                block += 1;
            }
        }
        let constants: String = (0..circuit.num_lines())
            .map(|l| match circuit.constant(l) {
                Some(false) => '0',
                Some(true) => '1',
                None => '-',
            })
            .collect();
        let garbage: String = (0..circuit.num_lines())
            .map(|l| if circuit.garbage().contains(&l) { '1' } else { '-' })
            .collect();
        Ok(RealDocument {
            version: Some("1.0".to_string()),
            numvars: circuit.num_lines(),
            variables: labels.to_vec(),
            inputs: circuit.input_labels().map(<[String]>::to_vec),
            outputs: circuit.output_labels().map(<[String]>::to_vec),
            constants: Some(constants),
            garbage: Some(garbage),
            gates: gates
                .into_iter()
                .map(|(token, lines, block)| RealGate {
                    token,
                    vars: lines.iter().map(|&l| labels[l].clone()).collect(),
                    block,
                    source_line: 0,
                })
                .collect(),
            directives: circuit.directives().to_vec(),
        })
    }

    /// Renders the document with LF line endings.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let names = |v: &[String]| v.join(" ");
        if let Some(v) = &self.version {
            let _ = writeln!(out, ".version {v}");
        }
        let _ = writeln!(out, ".numvars {}", self.numvars);
        let _ = writeln!(out, ".variables {}", names(&self.variables));
        let _ = writeln!(out, ".inputs {}", names(self.inputs.as_ref().unwrap_or(&self.variables)));
        let _ = writeln!(out, ".outputs {}", names(self.outputs.as_ref().unwrap_or(&self.variables)));
        if let Some(v) = &self.constants {
            let _ = writeln!(out, ".constants {v}");
        }
        if let Some(v) = &self.garbage {
            let _ = writeln!(out, ".garbage {v}");
        }
        for d in &self.directives {
            let _ = writeln!(out, "{d}");
        }
        out.push_str(".begin\n");
        for g in &self.gates {
            if let Some(b) = g.block {
                let _ = writeln!(out, "# tb {b}");
            }
            let _ = writeln!(out, "{} {}", g.token, g.vars.join(" "));
        }
        out.push_str(".end\n");
        out
    }
}

fn kind_for_token(token: &str, line: usize) -> Result<GateKind, RealError> {
    let unknown = || RealError::UnknownToken {
        line,
        token: token.to_string(),
    };
    let split = token.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?;
    let (family, digits) = token.split_at(split);
    let arity: usize = digits.parse().map_err(|_| unknown())?;
    if arity == 0 || arity > MAX_ARITY {
        return Err(unknown());
    }
    match (family.to_ascii_lowercase().as_str(), arity) {
        ("t", k) => Ok(GateKind::toffoli(k)),
        ("f", k) if k >= 3 => Ok(GateKind::fredkin(k)),
        ("p", 3) => Ok(GateKind::peres()),
        ("mf", 3) => Ok(GateKind::mfrg()),
        _ => Err(unknown()),
    }
}

fn resolve(g: &RealGate, index: &HashMap<&str, usize>) -> Result<GateInstance> {
    let kind = kind_for_token(&g.token, g.source_line)?;
    if g.vars.len() != kind.arity() {
        return Err(syntax(
            g.source_line,
            format!("`{}` expects {} variables, got {}", g.token, kind.arity(), g.vars.len()),
        )
        .into());
    }
    let mut lines = Vec::with_capacity(g.vars.len());
    for v in &g.vars {
        let l = *index.get(v.as_str()).ok_or_else(|| RealError::UndeclaredVariable {
            line: g.source_line,
            name: v.clone(),
        })?;
        if lines.contains(&l) {
            return Err(RealError::DuplicateVariable {
                line: g.source_line,
                name: v.clone(),
            }
            .into());
        }
        lines.push(l);
    }
    GateInstance::new(Arc::new(kind), &lines)
}

fn token_for(kind: &GateKind) -> Option<String> {
    match kind.family() {
        Family::Not => Some("t1".into()),
        Family::Feynman => Some("t2".into()),
        Family::Toffoli => Some(format!("t{}", kind.arity())),
        Family::Fredkin => Some(format!("f{}", kind.arity())),
        Family::Peres => Some("p3".into()),
        Family::Mfrg => Some("mf3".into()),
        _ => None,
    }
}

type Emitted = (String, Vec<usize>, Option<usize>);

fn expand(kind: &GateKind, lines: &[usize], out: &mut Vec<Emitted>) -> Result<()> {
    match kind.family() {
        Family::Identity => Ok(()),
        Family::Trg(base) => {
            let (parity, data) = lines.split_last().expect("wrapper has lines");
            expand(base, data, out)?;
            for &d in data {
                out.push(("t2".into(), vec![d, *parity], None));
            }
            Ok(())
        }
        _ => {
            let token = token_for(kind).ok_or_else(|| RealError::Unmappable(kind.to_string()))?;
            out.push((token, lines.to_vec(), None));
            Ok(())
        }
    }
}

/// Folds `R, t2 d_i p (i < n), t2 d_i p (i < n)` into TRG(R), TRG(identity).
fn fold_block(gates: &[GateInstance]) -> Option<[GateInstance; 2]> {
    let r = gates.first()?;
    let data = r.lines();
    let n = data.len();
    let feeds = gates.get(1..1 + 2 * n)?;
    let parity = feeds[0].lines()[1];
    if data.contains(&parity) {
        return None;
    }
    let shaped = feeds.iter().enumerate().all(|(i, g)| {
        matches!(g.kind().family(), Family::Feynman) && g.lines() == [data[i % n], parity]
    });
    if !shaped {
        return None;
    }
    let mut lines = data.to_vec();
    lines.push(parity);
    let trg_r = make_trg(r.kind().clone()).ok()?;
    let trg_s = make_trg(Arc::new(GateKind::identity(n))).ok()?;
    Some([
        GateInstance::new(trg_r.wrapper().clone(), &lines).ok()?,
        GateInstance::new(trg_s.wrapper().clone(), &lines).ok()?,
    ])
}

pub fn parse_real(text: &str) -> Result<Circuit> {
    RealDocument::parse(text)?.to_circuit()
}

pub fn emit_real(circuit: &Circuit) -> Result<String> {
    Ok(RealDocument::from_circuit(circuit)?.render())
}

/// Reads a transformed netlist and recovers its block provenance.
pub fn parse_testable(text: &str) -> Result<TestableCircuit> {
    TestableCircuit::recover(parse_real(text)?)
}

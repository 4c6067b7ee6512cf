// SPDX-License-Identifier: Apache-2.0

//! Gate, garbage, constant and quantum-cost accounting.
//!
//! Besides measuring a transformed circuit, this module carries the closed
//! forms published for competing online-testing designs, as functions of
//! the number of testable blocks `n`. Those designs are not built here;
//! their rows are arithmetic only.

use std::fmt;

use crate::circuit::Circuit;
use crate::cost::{quantum_cost, CostTable};
use crate::error::Result;
use crate::testability::TestableCircuit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Tally {
    pub gates: u64,
    pub garbage: u64,
    pub constants: u64,
    pub quantum_cost: u64,
}

impl Tally {
    pub fn of(circuit: &Circuit, table: &CostTable) -> Result<Self> {
        Ok(Tally {
            gates: circuit.gate_count() as u64,
            garbage: circuit.garbage().len() as u64,
            constants: circuit.constants().len() as u64,
            quantum_cost: quantum_cost(circuit, table)?,
        })
    }
}

/// Online-testing designs with published cost formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Design {
    /// TRG blocks with an MFRG checker cascade (this crate).
    Proposed,
    /// R1/R2 testable blocks with an R-gate two-pair two-rail checker
    /// (Vasudevan, Lala, Jia and Parkerson, 2006).
    Vasudevan2006,
    /// OTG-based testable blocks (Thapliyal and Vinod, 2007).
    Thapliyal2007,
    /// Online-testable reversible sequential design (Hasan, Islam and
    /// Chowdhury, 2009).
    Hasan2009,
}

impl Design {
    pub const ALL: [Design; 4] = [
        Design::Proposed,
        Design::Vasudevan2006,
        Design::Thapliyal2007,
        Design::Hasan2009,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Design::Proposed => "proposed",
            Design::Vasudevan2006 => "vasudevan2006",
            Design::Thapliyal2007 => "thapliyal2007",
            Design::Hasan2009 => "hasan2009",
        }
    }

    /// n-bit checker cost. `quantum_cost` is `None` where no quantum
    /// realization was published.
    pub fn checker(self, n: u64) -> Formula {
        match self {
            Design::Proposed => Formula {
                gates: n.saturating_sub(1),
                garbage: 2 * n.saturating_sub(1),
                quantum_cost: Some(4 * n.saturating_sub(1)),
            },
            Design::Vasudevan2006 => Formula {
                gates: 6 * n,
                garbage: 8 * n,
                quantum_cost: None,
            },
            Design::Thapliyal2007 => Formula {
                gates: 6 * n,
                garbage: 8 * n,
                quantum_cost: Some(30 * n),
            },
            Design::Hasan2009 => Formula {
                gates: 2 * n,
                garbage: 3 * n,
                quantum_cost: Some(6 * n),
            },
        }
    }

    /// Whole-circuit cost for `n` testable blocks (gates and garbage only).
    pub fn circuit(self, n: u64) -> Formula {
        let (gates, garbage) = match self {
            Design::Proposed => ((3 * n).saturating_sub(1), 2 * n.saturating_sub(1)),
            Design::Vasudevan2006 | Design::Thapliyal2007 => (8 * n, 10 * n),
            Design::Hasan2009 => (4 * n, 5 * n),
        };
        Formula {
            gates,
            garbage,
            quantum_cost: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formula {
    pub gates: u64,
    pub garbage: u64,
    pub quantum_cost: Option<u64>,
}

/// Measured costs of a transformed circuit next to the published formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostReport {
    pub blocks: u64,
    pub original: Tally,
    pub transformed: Tally,
    pub checker: Tally,
    pub added_garbage: u64,
    pub added_constants: u64,
    pub checker_formulas: Vec<(Design, Formula)>,
    pub circuit_formulas: Vec<(Design, Formula)>,
}

pub fn count_report(tc: &TestableCircuit) -> Result<CostReport> {
    count_report_with(tc, &CostTable::standard())
}

pub fn count_report_with(tc: &TestableCircuit, table: &CostTable) -> Result<CostReport> {
    let original = Tally::of(&tc.original(), table)?;
    let transformed = Tally::of(tc.circuit(), table)?;
    let checker_qc = tc
        .checker()
        .gates()
        .iter()
        .try_fold(0u64, |acc, g| Ok::<_, crate::Error>(acc + table.cost_of(g.kind())? as u64))?;
    let checker = Tally {
        gates: tc.checker().gates().len() as u64,
        garbage: tc.checker().garbage().len() as u64,
        constants: tc.checker().gates().len() as u64,
        quantum_cost: checker_qc,
    };
    let n = tc.blocks().len() as u64;
    Ok(CostReport {
        blocks: n,
        original,
        transformed,
        checker,
        added_garbage: transformed.garbage - original.garbage,
        added_constants: transformed.constants - original.constants,
        checker_formulas: Design::ALL.iter().map(|&d| (d, d.checker(n))).collect(),
        circuit_formulas: Design::ALL.iter().map(|&d| (d, d.circuit(n))).collect(),
    })
}

fn qc(v: Option<u64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |v| v.to_string())
}

impl fmt::Display for CostReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (o, t) = (&self.original, &self.transformed);
        writeln!(f, "blocks: {}", self.blocks)?;
        writeln!(f, "gates: {} -> {}", o.gates, t.gates)?;
        writeln!(
            f,
            "garbage: {} -> {} (added {}, total {})",
            o.garbage, t.garbage, self.added_garbage, t.garbage
        )?;
        writeln!(f, "constants: {} -> {} (added {})", o.constants, t.constants, self.added_constants)?;
        writeln!(f, "quantum cost: {} -> {}", o.quantum_cost, t.quantum_cost)?;
        writeln!(
            f,
            "checker: {} gates, {} garbage, quantum cost {}",
            self.checker.gates, self.checker.garbage, self.checker.quantum_cost
        )?;
        writeln!(f, "checker formulas (n = {}):", self.blocks)?;
        for (d, fm) in &self.checker_formulas {
            writeln!(
                f,
                "  {:<14} gates {:>5}  garbage {:>5}  quantum cost {:>5}",
                d.label(),
                fm.gates,
                fm.garbage,
                qc(fm.quantum_cost)
            )?;
        }
        writeln!(f, "circuit formulas (n = {}):", self.blocks)?;
        for (d, fm) in &self.circuit_formulas {
            writeln!(f, "  {:<14} gates {:>5}  garbage {:>5}", d.label(), fm.gates, fm.garbage)?;
        }
        Ok(())
    }
}

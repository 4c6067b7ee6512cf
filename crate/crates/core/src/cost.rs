// SPDX-License-Identifier: Apache-2.0

//! Quantum cost tables.
//!
//! Defaults: NOT 1, FEYNMAN 1, TOFFOLI(3) 5, FREDKIN(3) 5, PERES 4, MFRG 4.
//! A Toffoli with `c >= 2` controls costs `2^(c+1) - 3`; a Fredkin with
//! `c >= 2` controls costs the Toffoli with `c + 1` controls plus two CNOTs.
//!
//! A parity wrapper TRG(R) over `n` data lines costs `cost(R) + n`: the
//! wrapper is realized as R followed by one FEYNMAN per data line. The
//! identity costs nothing, so TRG(identity) costs `n`.

use std::collections::BTreeMap;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Family, GateKind, MAX_ARITY};

fn mct_cost(controls: usize) -> u32 {
    if controls <= 1 {
        1
    } else {
        (1u32 << (controls + 1)) - 3
    }
}

fn fredkin_cost(controls: usize) -> u32 {
    if controls <= 1 {
        5
    } else {
        mct_cost(controls + 1) + 2
    }
}

pub(crate) fn default_cost(kind: &GateKind) -> u32 {
    match kind.family() {
        Family::Not | Family::Feynman => 1,
        Family::Toffoli => mct_cost(kind.arity() - 1),
        Family::Fredkin => fredkin_cost(kind.arity() - 2),
        Family::Peres | Family::Mfrg => 4,
        Family::Identity => 0,
        Family::Trg(base) => base.quantum_cost() + base.arity() as u32,
        Family::Custom => kind.quantum_cost(),
    }
}

/// Per-kind quantum costs, keyed by family name and arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostTable {
    entries: BTreeMap<(String, usize), u32>,
    parity_feed: u32,
}

impl Default for CostTable {
    fn default() -> Self {
        Self::standard()
    }
}

impl CostTable {
    /// Empty table; every lookup fails until entries are added.
    pub fn empty() -> Self {
        CostTable {
            entries: BTreeMap::new(),
            parity_feed: 1,
        }
    }

    pub fn standard() -> Self {
        let mut t = Self::empty();
        let mut add = |k: GateKind| {
            t.entries.insert((k.name().to_string(), k.arity()), k.quantum_cost());
        };
        add(GateKind::not());
        add(GateKind::feynman());
        add(GateKind::peres());
        add(GateKind::mfrg());
        for arity in 3..=MAX_ARITY {
            add(GateKind::toffoli(arity));
            add(GateKind::fredkin(arity));
        }
        t
    }

    pub fn set(&mut self, name: &str, arity: usize, cost: u32) {
        self.entries.insert((name.to_string(), arity), cost);
    }

    pub fn get(&self, name: &str, arity: usize) -> Option<u32> {
        self.entries.get(&(name.to_string(), arity)).copied()
    }

    /// Cost of the FEYNMAN gates that feed one data line into a parity line.
    pub fn parity_feed(&self) -> u32 {
        self.parity_feed
    }

    pub fn set_parity_feed(&mut self, cost: u32) {
        self.parity_feed = cost;
    }

    pub fn cost_of(&self, kind: &GateKind) -> Result<u32> {
        match kind.family() {
            Family::Identity => Ok(0),
            Family::Trg(base) => {
                Ok(self.cost_of(base)? + self.parity_feed * base.arity() as u32)
            }
            _ => self
                .get(kind.name(), kind.arity())
                .ok_or_else(|| Error::MissingCost(kind.to_string())),
        }
    }
}

/// Sum of per-gate costs over the circuit.
pub fn quantum_cost(circuit: &Circuit, table: &CostTable) -> Result<u64> {
    circuit
        .gates()
        .iter()
        .try_fold(0u64, |acc, g| Ok(acc + table.cost_of(g.kind())? as u64))
}

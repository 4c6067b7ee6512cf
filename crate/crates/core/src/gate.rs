// SPDX-License-Identifier: Apache-2.0

//! Reversible gate kinds.
//!
//! A [`GateKind`] is a bijection on `arity` bits. Bit `i` of a packed gate
//! word is the `i`-th line of the gate's line list, so for a 3-line gate
//! `(A, B, C)` the word is `A | B << 1 | C << 2`.
//!
//! Built-in kinds evaluate through closed-form rules. Kinds without a rule
//! (user tables and the parity wrappers built in [`crate::testability`]) are
//! evaluated through an explicit permutation table.

use std::fmt;
use std::sync::Arc;

use crate::cost;
use crate::error::{Error, Result};

/// Largest arity allowed for any gate kind; keeps exhaustive checks tractable.
pub const MAX_ARITY: usize = 16;

/// Which family a kind belongs to. Drives `.real` tokens and cost lookup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    Not,
    Feynman,
    /// Multiple-control Toffoli, controls first and target last.
    Toffoli,
    /// Controlled swap: all lines but the last two are controls.
    Fredkin,
    Peres,
    /// Modified Fredkin gate: Fredkin truth function, cheaper realization.
    Mfrg,
    /// The n×n gate whose outputs equal its inputs.
    Identity,
    /// `(n+1)`-bit parity wrapper around the contained base kind.
    Trg(Arc<GateKind>),
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Rule {
    Mct,
    ControlledSwap,
    Peres,
    Identity,
    Table(Arc<[u32]>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GateKind {
    name: String,
    arity: usize,
    family: Family,
    rule: Rule,
    quantum_cost: u32,
}

/// Looks up a built-in kind by family name (case-insensitive).
///
/// `TOFFOLI` takes any arity from 2 (where it is the Feynman gate) up to
/// [`MAX_ARITY`]; `FREDKIN` takes 3 and up. The other families have fixed
/// arity.
pub fn builtin_gate(name: &str, arity: usize) -> Result<GateKind> {
    let upper = name.to_ascii_uppercase();
    let mismatch = || Error::ArityMismatch {
        name: upper.clone(),
        arity,
    };
    match upper.as_str() {
        "NOT" if arity == 1 => Ok(GateKind::not()),
        "FEYNMAN" | "CNOT" if arity == 2 => Ok(GateKind::feynman()),
        "TOFFOLI" if (2..=MAX_ARITY).contains(&arity) => Ok(GateKind::toffoli(arity)),
        "FREDKIN" if (3..=MAX_ARITY).contains(&arity) => Ok(GateKind::fredkin(arity)),
        "PERES" if arity == 3 => Ok(GateKind::peres()),
        "MFRG" if arity == 3 => Ok(GateKind::mfrg()),
        "NOT" | "FEYNMAN" | "CNOT" | "TOFFOLI" | "FREDKIN" | "PERES" | "MFRG" => Err(mismatch()),
        _ => Err(Error::UnknownGate(name.to_string())),
    }
}

impl GateKind {
    fn closed(name: &str, arity: usize, family: Family, rule: Rule) -> Self {
        let mut kind = GateKind {
            name: name.to_string(),
            arity,
            family,
            rule,
            quantum_cost: 0,
        };
        kind.quantum_cost = cost::default_cost(&kind);
        kind
    }

    pub fn not() -> Self {
        Self::closed("NOT", 1, Family::Not, Rule::Mct)
    }

    pub fn feynman() -> Self {
        Self::closed("FEYNMAN", 2, Family::Feynman, Rule::Mct)
    }

    /// Multiple-control Toffoli on `arity` lines. Arity 1 and 2 collapse to
    /// NOT and FEYNMAN so each truth function has a single canonical kind.
    ///
    /// Panics if `arity` is 0 or above [`MAX_ARITY`].
    pub fn toffoli(arity: usize) -> Self {
        assert!((1..=MAX_ARITY).contains(&arity), "toffoli arity {arity}");
        match arity {
            1 => Self::not(),
            2 => Self::feynman(),
            _ => Self::closed("TOFFOLI", arity, Family::Toffoli, Rule::Mct),
        }
    }

    /// Panics if `arity` is below 3 or above [`MAX_ARITY`].
    pub fn fredkin(arity: usize) -> Self {
        assert!((3..=MAX_ARITY).contains(&arity), "fredkin arity {arity}");
        Self::closed("FREDKIN", arity, Family::Fredkin, Rule::ControlledSwap)
    }

    pub fn peres() -> Self {
        Self::closed("PERES", 3, Family::Peres, Rule::Peres)
    }

    pub fn mfrg() -> Self {
        Self::closed("MFRG", 3, Family::Mfrg, Rule::ControlledSwap)
    }

    /// Panics if `arity` is 0 or above [`MAX_ARITY`].
    pub fn identity(arity: usize) -> Self {
        assert!((1..=MAX_ARITY).contains(&arity), "identity arity {arity}");
        Self::closed("ID", arity, Family::Identity, Rule::Identity)
    }

    /// A user-defined kind given by its full output table. The table is not
    /// required to be a permutation; see [`GateKind::verify_bijective`].
    pub fn from_table(name: &str, arity: usize, table: Vec<u32>, quantum_cost: u32) -> Result<Self> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::ArityMismatch {
                name: name.to_string(),
                arity,
            });
        }
        let expected = 1usize << arity;
        if table.len() != expected || table.iter().any(|&v| (v as usize) >= expected) {
            return Err(Error::BadTable {
                name: name.to_string(),
                expected,
                actual: table.len(),
            });
        }
        Ok(GateKind {
            name: name.to_string(),
            arity,
            family: Family::Custom,
            rule: Rule::Table(table.into()),
            quantum_cost,
        })
    }

    /// Parity wrapper built by the testability pass. `table` must already be
    /// the `(n+1)`-bit wrapper of `base`.
    pub(crate) fn trg(base: Arc<GateKind>, table: Vec<u32>, quantum_cost: u32) -> Self {
        GateKind {
            name: format!("TRG({})", base.name),
            arity: base.arity + 1,
            family: Family::Trg(base),
            rule: Rule::Table(table.into()),
            quantum_cost,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn quantum_cost(&self) -> u32 {
        self.quantum_cost
    }

    /// Evaluates the gate on a packed word (bit `i` = gate line `i`).
    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        let n = self.arity;
        match &self.rule {
            Rule::Mct => {
                let controls = (1u32 << (n - 1)) - 1;
                if x & controls == controls {
                    x ^ (1 << (n - 1))
                } else {
                    x
                }
            }
            Rule::ControlledSwap => {
                let controls = (1u32 << (n - 2)) - 1;
                let (lo, hi) = ((x >> (n - 2)) & 1, (x >> (n - 1)) & 1);
                if x & controls == controls && lo != hi {
                    x ^ (0b11 << (n - 2))
                } else {
                    x
                }
            }
            Rule::Peres => {
                let (a, b, c) = (x & 1, (x >> 1) & 1, (x >> 2) & 1);
                a | (a ^ b) << 1 | ((a & b) ^ c) << 2
            }
            Rule::Identity => x,
            Rule::Table(t) => t[x as usize],
        }
    }

    /// Evaluates the gate on an explicit bit vector in line-list order.
    pub fn eval(&self, bits: &[bool]) -> Result<Vec<bool>> {
        if bits.len() != self.arity {
            return Err(Error::LengthMismatch {
                expected: self.arity,
                actual: bits.len(),
            });
        }
        let x = pack(bits);
        let y = self.apply(x);
        Ok((0..self.arity).map(|i| (y >> i) & 1 == 1).collect())
    }

    /// True iff all `2^arity` inputs map to distinct outputs.
    pub fn verify_bijective(&self) -> bool {
        let size = 1usize << self.arity;
        let mut seen = vec![false; size];
        for x in 0..size as u32 {
            let y = self.apply(x) as usize;
            if seen[y] {
                return false;
            }
            seen[y] = true;
        }
        true
    }

    /// Whether applying the gate twice is the identity. Decided from the
    /// family for closed forms, exhaustively otherwise.
    pub fn is_self_inverse(&self) -> bool {
        match self.family {
            Family::Not
            | Family::Feynman
            | Family::Toffoli
            | Family::Fredkin
            | Family::Mfrg
            | Family::Identity => true,
            Family::Peres => false,
            Family::Trg(_) | Family::Custom => {
                (0..1u32 << self.arity).all(|x| self.apply(self.apply(x)) == x)
            }
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Toffoli | Family::Fredkin | Family::Identity => {
                write!(f, "{}({})", self.name, self.arity)
            }
            _ => f.write_str(&self.name),
        }
    }
}

pub(crate) fn pack(bits: &[bool]) -> u32 {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | (b as u32) << i)
}

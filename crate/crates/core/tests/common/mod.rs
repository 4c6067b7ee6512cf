// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revtest::{Circuit, GateKind};

/// Built-in kinds used by the random generators.
pub fn mixed_kinds() -> Vec<Arc<GateKind>> {
    vec![
        GateKind::not().into(),
        GateKind::feynman().into(),
        GateKind::toffoli(3).into(),
        GateKind::toffoli(4).into(),
        GateKind::fredkin(3).into(),
        GateKind::peres().into(),
        GateKind::mfrg().into(),
    ]
}

/// Random circuit over `lines` lines (at least 4) with `gates` gates.
pub fn random_circuit(rng: &mut impl Rng, lines: usize, gates: usize) -> Circuit {
    let kinds = mixed_kinds();
    let mut c = Circuit::new(lines).unwrap();
    for _ in 0..gates {
        let kind = kinds[rng.random_range(0..kinds.len())].clone();
        let picked = sample(rng, lines, kind.arity()).into_vec();
        c.push(kind, &picked).unwrap();
    }
    c
}

pub fn seeded_circuit(seed: u64, lines: usize, gates: usize) -> Circuit {
    random_circuit(&mut ChaCha8Rng::seed_from_u64(seed), lines, gates)
}

pub fn popcount(x: u64) -> u64 {
    x.count_ones() as u64
}

#![allow(dead_code)]

pub mod dense;

use hamcycle_qaoa::circuit::{Angle, Gate};
use hamcycle_qaoa::{
    compile_graph, fixtures, strip_constant, Circuit64, ExactIsing, Graph, Rational64,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// Triangle model normalized to unit couplings (constant dropped, x2).
pub fn triangle_model() -> ExactIsing {
    strip_constant(
        &compile_graph(&fixtures::triangle(), r(1)).unwrap(),
        Some(r(2)),
    )
}

/// 4-cycle model with the same normalization.
pub fn square_model() -> ExactIsing {
    strip_constant(
        &compile_graph(&fixtures::square(), r(1)).unwrap(),
        Some(r(2)),
    )
}

/// Every simple graph on `n` vertices, indexed by its edge bitmask.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| *e);
            Graph::new(n, edges).unwrap()
        })
        .collect()
}

/// Random bound circuit over H, RX, RY, RZ and CNOT.
pub fn random_circuit(rng: &mut ChaCha8Rng, q: usize, len: usize) -> Circuit64 {
    let gates = (0..len)
        .map(|_| {
            let k = rng.gen_range(1..=q);
            let theta = Angle::Literal(rng.gen_range(-7.0..7.0));
            match rng.gen_range(0..5) {
                0 => Gate::H(k),
                1 => Gate::Rx(k, theta),
                2 => Gate::Ry(k, theta),
                3 => Gate::Rz(k, theta),
                _ if q > 1 => {
                    let mut t = rng.gen_range(1..=q);
                    while t == k {
                        t = rng.gen_range(1..=q);
                    }
                    Gate::Cnot {
                        control: k,
                        target: t,
                    }
                }
                _ => Gate::H(k),
            }
        })
        .collect();
    Circuit64::from_gates(q, gates).unwrap()
}

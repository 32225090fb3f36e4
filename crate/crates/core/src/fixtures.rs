//! Reference data: the published 31-term cost Hamiltonian for the 4-cycle
//! and the two small graphs used throughout the tests.

use crate::graph::Graph;
use crate::ising::{PauliTerm, PauliTermList};
use crate::scalar::Coefficient;

/// The 4-cycle Hamiltonian as published, integer coefficients, no constant.
pub const PAPER_SQUARE_TERMS: [(&str, i64); 31] = [
    ("ZZIIIIIII", 1),
    ("ZIZIIIIII", 1),
    ("ZIIZIIIII", 1),
    ("ZIIIIIZII", 1),
    ("ZIIIIIIZI", 1),
    ("ZIIIIIIII", -3),
    ("IZZIIIIII", 1),
    ("IZIIZIIII", 1),
    ("IZIIIIZII", 1),
    ("IZIIIIIZI", 1),
    ("IZIIIIIIZ", 1),
    ("IZIIIIIII", -4),
    ("IIZIIZIII", 1),
    ("IIZIIIIZI", 1),
    ("IIZIIIIIZ", 1),
    ("IIZIIIIII", -3),
    ("IIIZZIIII", 1),
    ("IIIZIZIII", 1),
    ("IIIZIIZII", 1),
    ("IIIZIIIII", -4),
    ("IIIIZZIII", 1),
    ("IIIIZIIZI", 1),
    ("IIIIZIIII", -2),
    ("IIIIIZIIZ", 1),
    ("IIIIIZIII", -4),
    ("IIIIIIZZI", 1),
    ("IIIIIIZIZ", 1),
    ("IIIIIIZII", -3),
    ("IIIIIIIZZ", 1),
    ("IIIIIIIZI", -4),
    ("IIIIIIIIZ", -3),
];

/// JSON copy of [`PAPER_SQUARE_TERMS`], loadable with `--terms`.
pub const PAPER_SQUARE_JSON: &str = include_str!("../fixtures/paper_square.json");
pub const TRIANGLE_JSON: &str = include_str!("../fixtures/triangle.json");
pub const SQUARE_JSON: &str = include_str!("../fixtures/square.json");

pub fn paper_square<C: Coefficient>() -> PauliTermList<C> {
    PauliTermList {
        num_qubits: 9,
        terms: PAPER_SQUARE_TERMS
            .iter()
            .map(|&(p, c)| PauliTerm {
                pauli: p.to_string(),
                coeff: C::ratio(c, 1),
            })
            .collect(),
        constant: None,
    }
}

pub fn triangle() -> Graph {
    Graph::complete(3).expect("valid")
}

/// The 4-cycle `1-2-3-4-1`.
pub fn square() -> Graph {
    Graph::cycle(4).expect("valid")
}

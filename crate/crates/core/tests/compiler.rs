mod common;

use std::collections::BTreeSet;

use common::{all_graphs, r};
use hamcycle_qaoa::graph::{encode_tour, hamiltonian_cycles};
use hamcycle_qaoa::{
    assemble, compile_graph, decode, strip_constant, to_ising, Assignment, DiagonalHamiltonian,
    Graph, PenaltyWeights, Rational64,
};
use num_traits::Signed;
use proptest::prelude::*;

fn assignments(q: usize) -> impl Iterator<Item = Assignment> {
    (0..1u64 << q).map(move |i| Assignment::from_index(i, q))
}

#[test]
fn compiled_energy_matches_qubo_and_oracle_exhaustively() {
    let w = PenaltyWeights::uniform(r(1));
    for n in [3, 4] {
        for g in all_graphs(n) {
            let qubo = assemble(&g, r(1)).unwrap();
            let ising = to_ising(&qubo, n).unwrap();
            let h = DiagonalHamiltonian::from_ising(&ising);
            for a in assignments(g.num_qubits()) {
                let oracle = hamcycle_qaoa::qubo_oracle(&g, &w, &a).unwrap();
                assert_eq!(qubo.evaluate(&a, n).unwrap(), oracle);
                assert_eq!(h.energy_of(&a).unwrap(), oracle, "graph {g:?} at {a}");
            }
        }
    }
}

#[test]
fn penalty_vanishes_exactly_on_valid_tours() {
    for n in [3, 4] {
        for g in all_graphs(n) {
            let qubo = assemble(&g, r(1)).unwrap();
            for a in assignments(g.num_qubits()) {
                let value = qubo.evaluate(&a, n).unwrap();
                assert!(value >= r(0));
                assert_eq!(
                    value == r(0),
                    decode(&a, &g).unwrap().is_valid(),
                    "{g:?} {a}"
                );
            }
        }
    }
}

#[test]
fn strip_constant_preserves_order_and_argmin() {
    for g in [common::all_graphs(3), common::all_graphs(4)].concat() {
        let m = compile_graph(&g, r(1)).unwrap();
        let stripped = strip_constant(&m, Some(r(2)));
        let h = DiagonalHamiltonian::from_ising(&m);
        let hs = DiagonalHamiltonian::from_ising(&stripped);
        let q = g.num_qubits() as u32;
        let e: Vec<Rational64> = (0..1u64 << q).map(|i| h.energy_at(i)).collect();
        let es: Vec<Rational64> = (0..1u64 << q).map(|i| hs.energy_at(i)).collect();
        for i in 0..e.len() {
            // affine map with positive slope
            assert_eq!(es[i], (e[i] - m.constant()) * r(2));
        }
        assert_eq!(
            h.full_spectrum().unwrap().ground().indices,
            hs.full_spectrum().unwrap().ground().indices
        );
    }
}

#[test]
fn ground_states_are_exactly_the_cycles() {
    for g in all_graphs(4) {
        let cycles = hamiltonian_cycles(&g);
        if cycles.is_empty() {
            continue;
        }
        let spectrum = DiagonalHamiltonian::from_ising(&compile_graph(&g, r(1)).unwrap())
            .full_spectrum()
            .unwrap();
        assert_eq!(*spectrum.ground_energy(), r(0));
        let expected: BTreeSet<String> = cycles
            .iter()
            .map(|c| encode_tour(c).unwrap().to_string())
            .collect();
        let got: BTreeSet<String> = spectrum.ground_states().into_iter().collect();
        assert_eq!(got, expected);
    }
}

#[test]
fn square_compiles_to_nine_linear_and_twenty_two_couplings() {
    let m = compile_graph(&hamcycle_qaoa::fixtures::square(), r(1)).unwrap();
    assert_eq!(m.linear().len(), 9);
    assert_eq!(m.quadratic().len(), 22);
    let h = DiagonalHamiltonian::from_ising(&m);
    let s = h.full_spectrum().unwrap();
    assert_eq!(s.ground_states(), vec!["001010100", "100010001"]);
}

#[test]
fn energies_bounded_by_l1_norm() {
    for g in all_graphs(4).into_iter().step_by(7) {
        let m = compile_graph(&g, r(1)).unwrap();
        let h = DiagonalHamiltonian::from_ising(&m);
        let bound = h.energy_bound();
        assert_eq!(bound, m.l1_norm());
        for i in 0..512 {
            assert!(h.energy_at(i).abs() <= bound);
        }
    }
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    // perm[v] is the new label of v; perm[1] == 1
    Graph::new(g.n(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

proptest! {
    #[test]
    fn affine_equivalence_on_random_graphs(
        mask in 0u32..64,
        bits in 0u64..512,
        weight in 1i64..5,
        den in 1i64..4,
    ) {
        let g = &all_graphs(4)[mask as usize];
        let a = Rational64::new(weight, den);
        let qubo = assemble(g, a).unwrap();
        let ising = to_ising(&qubo, 4).unwrap();
        let x = Assignment::from_index(bits, 9);
        prop_assert_eq!(qubo.evaluate(&x, 4).unwrap(), ising.energy(x.bits()).unwrap());
        let oracle = hamcycle_qaoa::qubo_oracle(g, &PenaltyWeights::uniform(a), &x).unwrap();
        prop_assert_eq!(oracle, ising.energy(x.bits()).unwrap());
    }

    #[test]
    fn relabeling_fixing_vertex_one_permutes_qubits(
        mask in 0u32..64,
        shuffle in Just(vec![2usize, 3, 4]).prop_shuffle(),
        bits in 0u64..512,
    ) {
        let g = &all_graphs(4)[mask as usize];
        let mut perm = vec![0, 1];
        perm.extend(&shuffle);
        let h = relabel(g, &perm);
        let mg = DiagonalHamiltonian::from_ising(&compile_graph(g, r(1)).unwrap());
        let mh = DiagonalHamiltonian::from_ising(&compile_graph(&h, r(1)).unwrap());
        // x'[perm[v], j] = x[v, j]
        let x = Assignment::from_index(bits, 9);
        let mut moved = vec![false; 9];
        #[allow(clippy::needless_range_loop)]
        for v in 2..=4 {
            for j in 2..=4 {
                let k = hamcycle_qaoa::qubit_index(perm[v], j, 4).unwrap();
                moved[k - 1] = x.var(v, j, 4);
            }
        }
        let y = Assignment::from_bits(moved);
        prop_assert_eq!(mg.energy_of(&x).unwrap(), mh.energy_of(&y).unwrap());
    }

    #[test]
    fn tours_round_trip_through_encoding(n in 3usize..=5, seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut rest: Vec<usize> = (2..=n).collect();
        rest.shuffle(&mut rng);
        let order: Vec<usize> = std::iter::once(1).chain(rest).collect();
        let a = encode_tour(&order).unwrap();
        let g = Graph::complete(n).unwrap();
        prop_assert_eq!(decode(&a, &g).unwrap(), hamcycle_qaoa::DecodedTour::Valid { order });
    }
}

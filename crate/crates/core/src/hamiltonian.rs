//! Diagonal cost Hamiltonians: basis-state energies, exhaustive spectra and a
//! direct evaluator of the Hamiltonian-cycle penalty used as an oracle.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{index_to_bitstring, Assignment, Graph};
use crate::ising::{IsingModel, PauliTermList};
use crate::qubo::PenaltyWeights;
use crate::scalar::Coefficient;

/// Default cap on qubits for exhaustive spectrum enumeration.
pub const DEFAULT_SPECTRUM_CAP: usize = 20;

/// `constant + sum_t c_t prod_{k in mask_t} Z_k`.
///
/// Bit `i` of a mask (and of a basis index) is qubit `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalHamiltonian<C> {
    num_qubits: usize,
    terms: Vec<(u64, C)>,
    constant: C,
}

impl<C: Coefficient> DiagonalHamiltonian<C> {
    /// Build from raw `(mask, coefficient)` terms; duplicate masks are merged
    /// and zero coefficients dropped.
    pub fn new(
        num_qubits: usize,
        constant: C,
        terms: impl IntoIterator<Item = (u64, C)>,
    ) -> Result<Self> {
        if num_qubits > 63 {
            return Err(Error::TooManyQubits {
                actual: num_qubits,
                cap: 63,
            });
        }
        let limit = if num_qubits == 0 {
            0
        } else {
            u64::MAX >> (64 - num_qubits)
        };
        let mut merged: std::collections::BTreeMap<u64, C> = Default::default();
        for (mask, c) in terms {
            if mask == 0 || mask & !limit != 0 {
                return Err(Error::MalformedInput(format!(
                    "term mask {mask:#b} is empty or outside {num_qubits} qubits"
                )));
            }
            let sum = merged.remove(&mask).unwrap_or_else(C::zero) + c;
            if !sum.is_zero() {
                merged.insert(mask, sum);
            }
        }
        Ok(DiagonalHamiltonian {
            num_qubits,
            terms: merged.into_iter().collect(),
            constant,
        })
    }

    pub fn from_ising(m: &IsingModel<C>) -> Self {
        let linear = m
            .linear()
            .iter()
            .map(|(&k, c)| (1u64 << (k - 1), c.clone()));
        let quadratic = m
            .quadratic()
            .iter()
            .map(|(&(j, k), c)| (1u64 << (j - 1) | 1u64 << (k - 1), c.clone()));
        DiagonalHamiltonian::new(
            m.num_qubits(),
            m.constant().clone(),
            linear.chain(quadratic),
        )
        .expect("Ising model masks are valid")
    }

    /// Any product of Z operators is allowed here, not just up to pairs.
    pub fn from_term_list(list: &PauliTermList<C>) -> Result<Self> {
        let mut constant = list.constant.clone().unwrap_or_else(C::zero);
        let mut terms = Vec::with_capacity(list.terms.len());
        for t in &list.terms {
            let mask = PauliTermList::<C>::z_positions(&t.pauli)?
                .into_iter()
                .fold(0u64, |m, k| m | 1 << (k - 1));
            if mask == 0 {
                constant = constant + t.coeff.clone();
            } else {
                terms.push((mask, t.coeff.clone()));
            }
        }
        DiagonalHamiltonian::new(list.num_qubits, constant, terms)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn terms(&self) -> &[(u64, C)] {
        &self.terms
    }

    pub fn constant(&self) -> &C {
        &self.constant
    }

    pub fn convert<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> DiagonalHamiltonian<D> {
        DiagonalHamiltonian {
            num_qubits: self.num_qubits,
            terms: self.terms.iter().map(|(m, c)| (*m, f(c))).collect(),
            constant: f(&self.constant),
        }
    }

    /// Energy of basis state `index`. Each Z contributes -1 where its bit is 1.
    pub fn energy_at(&self, index: u64) -> C {
        self.terms
            .iter()
            .fold(self.constant.clone(), |acc, (mask, c)| {
                if (mask & index).count_ones() % 2 == 1 {
                    acc - c.clone()
                } else {
                    acc + c.clone()
                }
            })
    }

    pub fn energy_of(&self, a: &Assignment) -> Result<C> {
        if a.len() != self.num_qubits {
            return Err(Error::LengthMismatch {
                expected: self.num_qubits,
                actual: a.len(),
            });
        }
        Ok(self.energy_at(a.to_index()))
    }

    /// All `2^q` basis energies in index order.
    pub fn diagonal(&self, cap: usize) -> Result<Vec<C>> {
        self.check_cap(cap)?;
        Ok((0..1u64 << self.num_qubits)
            .into_par_iter()
            .map(|i| self.energy_at(i))
            .collect())
    }

    /// Upper bound on `|energy|` over all basis states.
    pub fn energy_bound(&self) -> C {
        self.terms
            .iter()
            .fold(self.constant.abs(), |acc, (_, c)| acc + c.abs())
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.num_qubits > cap {
            Err(Error::TooManyQubits {
                actual: self.num_qubits,
                cap,
            })
        } else {
            Ok(())
        }
    }

    pub fn full_spectrum(&self) -> Result<Spectrum<C>> {
        self.full_spectrum_capped(DEFAULT_SPECTRUM_CAP)
    }

    /// Exhaustive spectrum grouped into degenerate levels, lowest first.
    /// States inside a level are listed in basis-index order.
    pub fn full_spectrum_capped(&self, cap: usize) -> Result<Spectrum<C>> {
        let energies = self.diagonal(cap)?;
        let mut order: Vec<u64> = (0..energies.len() as u64).collect();
        order.par_sort_by(|&a, &b| {
            energies[a as usize]
                .partial_cmp(&energies[b as usize])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });

        let mut levels: Vec<Level<C>> = Vec::new();
        for idx in order {
            let e = &energies[idx as usize];
            match levels.last_mut() {
                Some(level) if level.energy.same_level(e) => level.indices.push(idx),
                _ => levels.push(Level {
                    energy: e.clone(),
                    indices: vec![idx],
                }),
            }
        }
        for level in &mut levels {
            level.indices.sort_unstable();
        }
        Ok(Spectrum {
            num_qubits: self.num_qubits,
            levels,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Level<C> {
    pub energy: C,
    /// Basis indices at this energy.
    pub indices: Vec<u64>,
}

impl<C> Level<C> {
    pub fn states(&self, num_qubits: usize) -> Vec<String> {
        self.indices
            .iter()
            .map(|&i| index_to_bitstring(i, num_qubits))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<C> {
    pub num_qubits: usize,
    pub levels: Vec<Level<C>>,
}

impl<C: Coefficient> Spectrum<C> {
    pub fn ground(&self) -> &Level<C> {
        &self.levels[0]
    }

    pub fn ground_energy(&self) -> &C {
        &self.levels[0].energy
    }

    pub fn ground_states(&self) -> Vec<String> {
        self.ground().states(self.num_qubits)
    }

    /// First excited minus ground energy; `None` when every state is degenerate.
    pub fn gap(&self) -> Option<C> {
        self.levels
            .get(1)
            .map(|l| l.energy.clone() - self.levels[0].energy.clone())
    }

    pub fn multiplicity_total(&self) -> usize {
        self.levels.iter().map(|l| l.indices.len()).sum()
    }

    pub fn report(&self) -> SpectrumReport {
        SpectrumReport {
            num_qubits: self.num_qubits,
            ground_energy: self.ground_energy().to_f64_lossy(),
            ground_states: self.ground_states(),
            gap: self.gap().map(|g| g.to_f64_lossy()),
            levels: self
                .levels
                .iter()
                .map(|l| LevelReport {
                    energy: l.energy.to_f64_lossy(),
                    states: l.states(self.num_qubits),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelReport {
    pub energy: f64,
    pub states: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub num_qubits: usize,
    pub ground_energy: f64,
    pub ground_states: Vec<String>,
    pub gap: Option<f64>,
    pub levels: Vec<LevelReport>,
}

/// Direct evaluation of the penalty Hamiltonian on the full `n x n` variable
/// matrix, with `x[1,1] = 1` and the rest of row and column 1 zero. Positions
/// wrap cyclically (`n + 1` is position 1). Independent of the compiler.
pub fn qubo_oracle<C: Coefficient>(g: &Graph, w: &PenaltyWeights<C>, a: &Assignment) -> Result<C> {
    let n = g.n();
    if a.len() != g.num_qubits() {
        return Err(Error::LengthMismatch {
            expected: g.num_qubits(),
            actual: a.len(),
        });
    }
    let mut x = vec![vec![0i64; n + 1]; n + 1];
    x[1][1] = 1;
    #[allow(clippy::needless_range_loop)]
    for v in 2..=n {
        for j in 2..=n {
            x[v][j] = i64::from(a.bits()[(v - 2) * (n - 1) + (j - 2)]);
        }
    }
    let square = |s: i64| (1 - s) * (1 - s);
    let vertex: i64 = (1..=n)
        .map(|v| square((1..=n).map(|j| x[v][j]).sum()))
        .sum();
    let position: i64 = (1..=n)
        .map(|j| square((1..=n).map(|v| x[v][j]).sum()))
        .sum();
    let mut edge = 0i64;
    for u in 1..=n {
        for v in 1..=n {
            if u == v || g.has_edge(u, v) {
                continue;
            }
            for j in 1..=n {
                let next = if j == n { 1 } else { j + 1 };
                edge += x[u][j] * x[v][next];
            }
        }
    }
    let c = |k: i64| C::ratio(k, 1);
    Ok(w.vertex.clone() * c(vertex) + w.position.clone() * c(position) + w.edge.clone() * c(edge))
}

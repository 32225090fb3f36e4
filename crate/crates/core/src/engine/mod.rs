//! Dense statevector simulation of bound circuits.
//!
//! Basis index bit `i` is qubit `i + 1`; bitstrings print qubit 1 leftmost.

mod distribution;
mod noise;

pub use distribution::Distribution;
pub use noise::{simulate_noisy, trajectory_outcomes, NoiseModel};

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::circuit::{Angle, Gate, ParamCircuit};
use crate::error::{Error, Result};
use crate::hamiltonian::DiagonalHamiltonian;
use crate::scalar::Real;

/// Default cap on simulated qubits.
pub const DEFAULT_SIMULATION_CAP: usize = 24;

/// Shots used when none are specified.
pub const DEFAULT_SHOTS: usize = 10_000;

/// States at or above this many qubits apply gates in parallel blocks.
const PARALLEL_THRESHOLD: usize = 14;

/// Random stream for shot (or trajectory) `index` under `seed`.
pub(crate) fn shot_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

type Matrix2<T> = [[Complex<T>; 2]; 2];

fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

fn rotation_matrix<T: Real>(gate: &Gate<T>) -> Result<Option<Matrix2<T>>> {
    let angle = |a: &Angle<T>| match a {
        Angle::Literal(t) => Ok(*t),
        Angle::Symbolic { param, .. } => Err(Error::UnboundParameter(param.to_string())),
    };
    let z = T::zero();
    let half = T::lit(0.5);
    Ok(Some(match gate {
        Gate::H(_) => {
            let h = T::FRAC_1_SQRT_2();
            [[c(h, z), c(h, z)], [c(h, z), c(-h, z)]]
        }
        Gate::Rx(_, a) => {
            let (s, co) = (angle(a)? * half).sin_cos();
            [[c(co, z), c(z, -s)], [c(z, -s), c(co, z)]]
        }
        Gate::Ry(_, a) => {
            let (s, co) = (angle(a)? * half).sin_cos();
            [[c(co, z), c(-s, z)], [c(s, z), c(co, z)]]
        }
        Gate::Rz(_, a) => {
            let (s, co) = (angle(a)? * half).sin_cos();
            [[c(co, -s), c(z, z)], [c(z, z), c(co, s)]]
        }
        Gate::Cnot { .. } => return Ok(None),
    }))
}

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// 0 = I, 1 = X, 2 = Y, 3 = Z.
    pub fn from_code(code: u8) -> Self {
        match code & 3 {
            0 => Pauli::I,
            1 => Pauli::X,
            2 => Pauli::Y,
            _ => Pauli::Z,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector<T> {
    num_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> Statevector<T> {
    /// `|0...0>`
    pub fn zero_state(num_qubits: usize) -> Self {
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << num_qubits];
        amps[0] = Complex::new(T::one(), T::zero());
        Statevector { num_qubits, amps }
    }

    pub fn basis_state(num_qubits: usize, index: u64) -> Self {
        let mut s = Self::zero_state(num_qubits);
        s.amps[0] = Complex::new(T::zero(), T::zero());
        s.amps[index as usize] = Complex::new(T::one(), T::zero());
        s
    }

    /// Wrap raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::MalformedInput(format!(
                "{} amplitudes is not a power of two",
                amps.len()
            )));
        }
        Ok(Statevector {
            num_qubits: amps.len().trailing_zeros() as usize,
            amps,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn apply_matrix(&mut self, qubit: usize, m: &Matrix2<T>) {
        let bit = 1usize << (qubit - 1);
        let update = |block: &mut [Complex<T>]| {
            let (lo, hi) = block.split_at_mut(bit);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x0, x1) = (*a0, *a1);
                *a0 = m[0][0] * x0 + m[0][1] * x1;
                *a1 = m[1][0] * x0 + m[1][1] * x1;
            }
        };
        if self.num_qubits >= PARALLEL_THRESHOLD {
            self.amps.par_chunks_mut(bit << 1).for_each(update);
        } else {
            self.amps.chunks_mut(bit << 1).for_each(update);
        }
    }

    fn apply_cnot(&mut self, control: usize, target: usize) {
        let cbit = 1usize << (control - 1);
        let tbit = 1usize << (target - 1);
        for i in 0..self.amps.len() {
            if i & cbit != 0 && i & tbit == 0 {
                self.amps.swap(i, i | tbit);
            }
        }
    }

    /// Apply one literal gate.
    pub fn apply_gate(&mut self, gate: &Gate<T>) -> Result<()> {
        let (a, b) = gate.qubits();
        for q in std::iter::once(a).chain(b) {
            if q == 0 || q > self.num_qubits {
                return Err(Error::MalformedInput(format!(
                    "gate {gate} outside register"
                )));
            }
        }
        match rotation_matrix(gate)? {
            Some(m) => self.apply_matrix(a, &m),
            None => self.apply_cnot(a, b.expect("CNOT has a target")),
        }
        Ok(())
    }

    pub fn apply_pauli(&mut self, qubit: usize, p: Pauli) {
        let bit = 1usize << (qubit - 1);
        let i = Complex::new(T::zero(), T::one());
        match p {
            Pauli::I => {}
            Pauli::X => {
                for k in (0..self.amps.len()).filter(|k| k & bit == 0) {
                    self.amps.swap(k, k | bit);
                }
            }
            Pauli::Y => {
                for k in (0..self.amps.len()).filter(|k| k & bit == 0) {
                    let (a0, a1) = (self.amps[k], self.amps[k | bit]);
                    self.amps[k] = -i * a1;
                    self.amps[k | bit] = i * a0;
                }
            }
            Pauli::Z => {
                for (k, a) in self.amps.iter_mut().enumerate() {
                    if k & bit != 0 {
                        *a = -*a;
                    }
                }
            }
        }
    }

    /// `sum_x |amp(x)|^2 E(x)` for a precomputed diagonal.
    pub fn expectation_diagonal(&self, diagonal: &[T]) -> Result<T> {
        if diagonal.len() != self.amps.len() {
            return Err(Error::DimensionMismatch {
                state: self.num_qubits,
                observable: diagonal.len().trailing_zeros() as usize,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(diagonal)
            .map(|(a, &e)| a.norm_sqr() * e)
            .sum())
    }

    pub fn expectation(&self, h: &DiagonalHamiltonian<T>) -> Result<T> {
        if h.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                state: self.num_qubits,
                observable: h.num_qubits(),
            });
        }
        Ok(self
            .amps
            .iter()
            .enumerate()
            .map(|(i, a)| a.norm_sqr() * h.energy_at(i as u64))
            .sum())
    }

    /// Measure all qubits `shots` times. Shot `t` draws from its own random
    /// stream, so results depend only on `(state, shots, seed)`.
    pub fn sample(&self, shots: usize, seed: u64) -> Distribution {
        let cdf = Cdf::new(&self.probabilities());
        let outcomes: Vec<u64> = (0..shots as u64)
            .into_par_iter()
            .map(|t| cdf.draw(shot_rng(seed, t).gen::<f64>()))
            .collect();
        Distribution::from_outcomes(self.num_qubits, &outcomes)
    }
}

/// Cumulative distribution over basis indices.
pub(crate) struct Cdf {
    cumulative: Vec<f64>,
    last_nonzero: u64,
}

impl Cdf {
    pub(crate) fn new<T: Real>(probs: &[T]) -> Self {
        let mut acc = 0.0;
        let mut last_nonzero = 0;
        let cumulative = probs
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let p = p.to_f64_lossy();
                if p > 0.0 {
                    last_nonzero = i as u64;
                }
                acc += p;
                acc
            })
            .collect();
        Cdf {
            cumulative,
            last_nonzero,
        }
    }

    /// Index `i` with `cdf[i-1] <= u < cdf[i]`; rounding shortfall at the top
    /// maps to the last index with positive probability.
    pub(crate) fn draw(&self, u: f64) -> u64 {
        let i = self.cumulative.partition_point(|&c| c <= u) as u64;
        i.min(self.last_nonzero)
    }
}

/// Run a bound circuit from `|0...0>`.
pub fn simulate<T: Real>(c: &ParamCircuit<T>) -> Result<Statevector<T>> {
    simulate_capped(c, DEFAULT_SIMULATION_CAP)
}

pub fn simulate_capped<T: Real>(c: &ParamCircuit<T>, cap: usize) -> Result<Statevector<T>> {
    check_circuit(c, cap)?;
    let mut s = Statevector::zero_state(c.num_qubits());
    for g in c.gates() {
        s.apply_gate(g)?;
    }
    Ok(s)
}

pub(crate) fn check_circuit<T: Real>(c: &ParamCircuit<T>, cap: usize) -> Result<()> {
    if c.num_qubits() > cap {
        return Err(Error::TooManyQubits {
            actual: c.num_qubits(),
            cap,
        });
    }
    if let Some(p) = c.parameters().into_iter().next() {
        return Err(Error::UnboundParameter(p.to_string()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_ansatz, MixerKind};
    use crate::ising::IsingModel;

    fn eq20() -> IsingModel<f64> {
        let mut m = IsingModel::new(4);
        for (j, k) in [(1, 2), (3, 4), (1, 3), (2, 4)] {
            m.add_zz(j, k, 1.0);
        }
        m
    }

    #[test]
    fn hadamard_row_is_uniform() {
        let c = build_ansatz::<_, f64>(&eq20(), 0, MixerKind::Rx).unwrap();
        let s = simulate(&c).unwrap();
        for a in s.amplitudes() {
            assert!((a.re - 0.25).abs() < 1e-12 && a.im.abs() < 1e-12);
        }
    }

    #[test]
    fn zero_beta_keeps_uniform_probabilities() {
        let c = build_ansatz::<_, f64>(&eq20(), 1, MixerKind::Rx).unwrap();
        let s = simulate(&c.bind(&[0.77], &[0.0]).unwrap()).unwrap();
        for p in s.probabilities() {
            assert!((p - 1.0 / 16.0).abs() < 1e-12);
        }
    }

    #[test]
    fn unbound_and_capped() {
        let c = build_ansatz::<_, f64>(&eq20(), 1, MixerKind::Rx).unwrap();
        assert!(matches!(simulate(&c), Err(Error::UnboundParameter(_))));
        let b = c.bind(&[0.1], &[0.1]).unwrap();
        assert_eq!(
            simulate_capped(&b, 3).unwrap_err(),
            Error::TooManyQubits { actual: 4, cap: 3 }
        );
    }

    #[test]
    fn expectation_cases() {
        let h = DiagonalHamiltonian::from_ising(&eq20());
        let c = build_ansatz::<_, f64>(&eq20(), 0, MixerKind::Rx).unwrap();
        let uniform = simulate(&c).unwrap();
        assert!(uniform.expectation(&h).unwrap().abs() < 1e-12);
        let ground = Statevector::<f64>::basis_state(4, 0b1001);
        assert!((ground.expectation(&h).unwrap() + 4.0).abs() < 1e-12);
        let doubled = h.convert(|c| 2.0 * c);
        let s = simulate(
            &build_ansatz::<_, f64>(&eq20(), 1, MixerKind::Rx)
                .unwrap()
                .bind(&[0.4], &[0.3])
                .unwrap(),
        )
        .unwrap();
        let e1 = s.expectation(&h).unwrap();
        let e2 = s.expectation(&doubled).unwrap();
        assert!((e2 - 2.0 * e1).abs() < 1e-12);
        let small = DiagonalHamiltonian::new(3, 0.0, [(1, 1.0)]).unwrap();
        assert!(matches!(
            s.expectation(&small),
            Err(Error::DimensionMismatch { .. })
        ));
        let diag = h.diagonal(20).unwrap();
        assert!((s.expectation_diagonal(&diag).unwrap() - e1).abs() < 1e-12);
    }

    #[test]
    fn sampling_basis_state_and_determinism() {
        let s = Statevector::<f64>::basis_state(4, 0b1001);
        let d = s.sample(100, 7);
        assert_eq!(d.counts().len(), 1);
        assert_eq!(d.count("1001"), 100);

        let c = build_ansatz::<_, f64>(&eq20(), 1, MixerKind::Rx).unwrap();
        let s = simulate(&c.bind(&[0.4], &[0.3]).unwrap()).unwrap();
        assert_eq!(s.sample(500, 11), s.sample(500, 11));
        assert_ne!(s.sample(500, 11), s.sample(500, 12));
    }

    #[test]
    fn uniform_sampling_within_five_sigma() {
        let c = build_ansatz::<_, f64>(&eq20(), 0, MixerKind::Rx).unwrap();
        let d = simulate(&c).unwrap().sample(10_000, 2024);
        // binomial(10000, 1/16): mean 625, sigma = sqrt(10000 * 1/16 * 15/16)
        let sigma = (10_000.0f64 * (1.0 / 16.0) * (15.0 / 16.0)).sqrt();
        assert_eq!(d.counts().len(), 16);
        for &count in d.counts().values() {
            assert!((count as f64 - 625.0).abs() < 5.0 * sigma, "count {count}");
        }
    }

    #[test]
    fn pauli_errors_act_as_expected() {
        let mut s = Statevector::<f64>::zero_state(2);
        s.apply_pauli(2, Pauli::X);
        assert_eq!(s.probabilities()[0b10], 1.0);
        s.apply_pauli(2, Pauli::Y);
        assert_eq!(s.probabilities()[0], 1.0);
        assert!((s.amplitudes()[0] - Complex::new(0.0, -1.0)).norm() < 1e-15);
        s.apply_pauli(1, Pauli::Z);
        assert!((s.amplitudes()[0] - Complex::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn cdf_top_rounding() {
        let cdf = Cdf::new(&[0.5f64, 0.4999999, 0.0]);
        assert_eq!(cdf.draw(0.0), 0);
        assert_eq!(cdf.draw(0.7), 1);
        assert_eq!(cdf.draw(0.99999999), 1);
    }

    #[test]
    fn runs_in_single_precision() {
        let m = eq20().map_coefficients(|c| *c as f32);
        let c = build_ansatz::<_, f32>(&m, 1, MixerKind::Rx).unwrap();
        let s = simulate(&c.bind(&[0.4], &[0.3]).unwrap()).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-5);
    }
}

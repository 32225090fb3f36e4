//! End-to-end QAOA: build the ansatz, optimize the `2p` angles, sample the
//! optimized circuit and score it against the exact spectrum.

use std::f64::consts::TAU;

use rand::Rng;
use serde::Serialize;

use super::nelder_mead::{minimize, OptimizationResult, OptimizerConfig};
use crate::circuit::{build_ansatz, MixerKind, ParamCircuit};
use crate::engine::{
    shot_rng, simulate, trajectory_outcomes, Distribution, NoiseModel, DEFAULT_SHOTS,
};
use crate::error::Result;
use crate::hamiltonian::DiagonalHamiltonian;
use crate::ising::IsingModel;
use crate::scalar::{Coefficient, Real};

/// Stream indices reserved inside the solver seed.
const STREAM_INITIAL_POINT: u64 = u64::MAX;
const STREAM_FINAL_SAMPLE: u64 = u64::MAX - 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveOptions {
    pub layers: usize,
    pub mixer: MixerKind,
    /// `None` runs noiseless.
    pub noise: Option<NoiseModel>,
    /// Shots for the final distribution and for sampled objectives.
    pub shots: usize,
    /// Use the sampled mean energy as objective even without noise.
    pub sampled_objective: bool,
    pub optimizer: OptimizerConfig,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            layers: 2,
            mixer: MixerKind::Rx,
            noise: None,
            shots: DEFAULT_SHOTS,
            sampled_objective: false,
            optimizer: OptimizerConfig::default(),
        }
    }
}

impl SolveOptions {
    fn uses_sampling(&self) -> bool {
        self.sampled_objective || self.noise.is_some_and(|n| !n.is_noiseless())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReference {
    pub ground_energy: f64,
    pub ground_states: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub optimization: OptimizationResult<f64>,
    pub final_distribution: Distribution,
    /// Empirical probability of the ground states in `final_distribution`.
    pub ground_state_mass: f64,
    /// Exact `<H>` at the optimum (noiseless), or the sampled mean energy
    /// of `final_distribution` when noise or sampling is on.
    pub expectation_final: f64,
    /// Ground-state probability of the noiseless optimized state.
    pub exact_ground_mass: f64,
    pub spectrum_reference: SpectrumReference,
}

impl SolveReport {
    /// The `k` most frequent measured bitstrings.
    pub fn top_outcomes(&self, k: usize) -> Vec<String> {
        self.final_distribution
            .most_probable(k)
            .into_iter()
            .map(|(s, _)| s.to_string())
            .collect()
    }
}

/// Seed for a sampled objective evaluation, derived from the point itself so
/// that results do not depend on evaluation order.
fn point_seed<T: Real>(base: u64, x: &[T]) -> u64 {
    x.iter().fold(base ^ 0x9e37_79b9_7f4a_7c15, |h, v| {
        let mut z = h ^ v.to_f64_lossy().to_bits();
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    })
}

/// Optimizer objective for one solve.
struct Objective<'a, T> {
    circuit: &'a ParamCircuit<T>,
    diagonal: &'a [T],
    opts: &'a SolveOptions,
}

impl<T: Real> Objective<'_, T> {
    fn value(&self, x: &[T]) -> Result<T> {
        let bound = self.circuit.bind_flat(x)?;
        if self.opts.uses_sampling() {
            let nm = self.opts.noise.unwrap_or_default();
            let seed = point_seed(self.opts.optimizer.seed, x);
            let outcomes = trajectory_outcomes(&bound, &nm, self.opts.shots, seed)?;
            let total: T = outcomes.iter().map(|&o| self.diagonal[o as usize]).sum();
            Ok(total / T::lit(outcomes.len().max(1) as f64))
        } else {
            simulate(&bound)?.expectation_diagonal(self.diagonal)
        }
    }
}

/// Run QAOA on `m`. Angles start uniformly in `[0, 2pi)` drawn from the
/// optimizer seed; the final distribution is sampled at the best angles.
pub fn qaoa_solve<C, T>(m: &IsingModel<C>, opts: &SolveOptions) -> Result<SolveReport>
where
    C: Coefficient,
    T: Real,
{
    if let Some(nm) = &opts.noise {
        nm.validate()?;
    }
    opts.optimizer.validate()?;
    let exact = DiagonalHamiltonian::from_ising(m);
    let spectrum = exact.full_spectrum()?;
    let ground_states = spectrum.ground_states();
    let diagonal: Vec<T> = exact
        .diagonal(crate::engine::DEFAULT_SIMULATION_CAP)?
        .iter()
        .map(T::from_coefficient)
        .collect();

    let circuit: ParamCircuit<T> = build_ansatz(m, opts.layers, opts.mixer)?;
    let objective = Objective {
        circuit: &circuit,
        diagonal: &diagonal,
        opts,
    };

    let dims = 2 * opts.layers;
    let optimization = if dims == 0 {
        let v = objective.value(&[])?;
        OptimizationResult {
            best_params: vec![],
            best_value: v,
            trace: vec![(0, v)],
            evals_used: 1,
            converged: true,
        }
    } else {
        let mut rng = shot_rng(opts.optimizer.seed, STREAM_INITIAL_POINT);
        let x0: Vec<T> = (0..dims).map(|_| T::lit(TAU * rng.gen::<f64>())).collect();
        // binding cannot fail for the right arity, so errors surface as NaN
        minimize(
            |x| objective.value(x).unwrap_or_else(|_| T::nan()),
            &x0,
            &opts.optimizer,
        )?
    };

    let bound = circuit.bind_flat(&optimization.best_params)?;
    let state = simulate(&bound)?;
    let probs = state.probabilities();
    let exact_ground_mass: f64 = spectrum
        .ground()
        .indices
        .iter()
        .map(|&i| probs[i as usize].to_f64_lossy())
        .sum();

    let final_seed = shot_rng(opts.optimizer.seed, STREAM_FINAL_SAMPLE).gen::<u64>();
    let (final_distribution, expectation_final) = if opts.uses_sampling() {
        let nm = opts.noise.unwrap_or_default();
        let outcomes = trajectory_outcomes(&bound, &nm, opts.shots, final_seed)?;
        let mean = outcomes
            .iter()
            .map(|&o| diagonal[o as usize].to_f64_lossy())
            .sum::<f64>()
            / outcomes.len().max(1) as f64;
        (
            Distribution::from_outcomes(bound.num_qubits(), &outcomes),
            mean,
        )
    } else {
        let e = state.expectation_diagonal(&diagonal)?.to_f64_lossy();
        (state.sample(opts.shots, final_seed), e)
    };

    Ok(SolveReport {
        ground_state_mass: final_distribution.mass(&ground_states),
        optimization: OptimizationResult {
            best_params: optimization
                .best_params
                .iter()
                .map(|v| v.to_f64_lossy())
                .collect(),
            best_value: optimization.best_value.to_f64_lossy(),
            trace: optimization
                .trace
                .iter()
                .map(|&(i, v)| (i, v.to_f64_lossy()))
                .collect(),
            evals_used: optimization.evals_used,
            converged: optimization.converged,
        },
        final_distribution,
        expectation_final,
        exact_ground_mass,
        spectrum_reference: SpectrumReference {
            ground_energy: spectrum.ground_energy().to_f64_lossy(),
            ground_states,
        },
    })
}

/// Re-run the circuit of a finished solve at its optimized angles under a
/// different noise model, returning the resulting distribution.
pub fn resample_optimized<C, T>(
    m: &IsingModel<C>,
    opts: &SolveOptions,
    report: &SolveReport,
    noise: &NoiseModel,
    seed: u64,
) -> Result<Distribution>
where
    C: Coefficient,
    T: Real,
{
    let circuit: ParamCircuit<T> = build_ansatz(m, opts.layers, opts.mixer)?;
    let params: Vec<T> = report
        .optimization
        .best_params
        .iter()
        .map(|&v| T::lit(v))
        .collect();
    let bound = circuit.bind_flat(&params)?;
    let outcomes = trajectory_outcomes(&bound, noise, opts.shots, seed)?;
    Ok(Distribution::from_outcomes(bound.num_qubits(), &outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn eq20() -> IsingModel<Rational64> {
        let mut m = IsingModel::new(4);
        for (j, k) in [(1, 2), (3, 4), (1, 3), (2, 4)] {
            m.add_zz(j, k, Rational64::from_integer(1));
        }
        m
    }

    #[test]
    fn zero_layers_gives_spectrum_mean() {
        let opts = SolveOptions {
            layers: 0,
            shots: 1000,
            ..Default::default()
        };
        let r = qaoa_solve::<_, f64>(&eq20(), &opts).unwrap();
        // each ZZ term averages to zero over the uniform state
        assert!(r.expectation_final.abs() < 1e-12);
        assert_eq!(r.optimization.evals_used, 1);
        assert_eq!(r.final_distribution.shots(), 1000);
    }

    #[test]
    fn evaluated_energies_stay_above_ground() {
        let opts = SolveOptions {
            layers: 1,
            shots: 200,
            optimizer: OptimizerConfig {
                max_evals: 300,
                restarts: 2,
                seed: 3,
                ..Default::default()
            },
            ..Default::default()
        };
        let r = qaoa_solve::<_, f64>(&eq20(), &opts).unwrap();
        assert!(r.optimization.trace.iter().all(|&(_, v)| v >= -4.0 - 1e-9));
        assert!(r.optimization.best_value < 0.0);
        assert!((0.0..=1.0).contains(&r.ground_state_mass));
    }

    #[test]
    fn point_seed_depends_on_point() {
        assert_eq!(
            point_seed(1, &[0.5f64, 0.25]),
            point_seed(1, &[0.5f64, 0.25])
        );
        assert_ne!(
            point_seed(1, &[0.5f64, 0.25]),
            point_seed(1, &[0.25f64, 0.5])
        );
        assert_ne!(point_seed(1, &[0.5f64]), point_seed(2, &[0.5f64]));
    }
}

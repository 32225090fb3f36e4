//! Nelder-Mead simplex search with seeded random restarts.

use std::f64::consts::TAU;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::shot_rng;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[default]
    NelderMead,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub method: Method,
    /// Evaluation budget shared by all restarts.
    pub max_evals: usize,
    pub xtol: f64,
    pub ftol: f64,
    /// Number of independent starts, at least 1. Start 0 uses the caller's
    /// initial point, the others are drawn uniformly from `bounds`.
    pub restarts: usize,
    pub seed: u64,
    /// Box `[lower, upper]` applied to every coordinate; trial points are
    /// clamped into it. `None` leaves the search unconstrained.
    pub bounds: Option<(f64, f64)>,
    /// Edge length of the initial simplex.
    pub initial_step: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            method: Method::NelderMead,
            max_evals: 4000,
            xtol: 1e-6,
            ftol: 1e-9,
            restarts: 4,
            seed: 0,
            bounds: Some((0.0, TAU)),
            initial_step: 0.5,
        }
    }
}

impl OptimizerConfig {
    pub fn unbounded() -> Self {
        OptimizerConfig {
            bounds: None,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.max_evals == 0 {
            return bad("max_evals must be at least 1");
        }
        if !(self.xtol > 0.0 && self.ftol > 0.0) {
            return bad("tolerances must be positive");
        }
        if self.restarts == 0 {
            return bad("restarts must be at least 1");
        }
        if self.initial_step.is_nan() || self.initial_step <= 0.0 {
            return bad("initial_step must be positive");
        }
        if let Some((lo, hi)) = self.bounds {
            if lo.is_nan() || hi.is_nan() || lo >= hi {
                return bad("bounds must satisfy lower < upper");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult<T> {
    pub best_params: Vec<T>,
    pub best_value: T,
    /// `(evaluation index, value)` for every evaluation, restarts in order.
    pub trace: Vec<(usize, T)>,
    pub evals_used: usize,
    /// True when at least one restart met both tolerances.
    pub converged: bool,
}

impl<T: Real> OptimizationResult<T> {
    /// Running minimum of the trace values.
    pub fn best_so_far(&self) -> Vec<T> {
        let mut best = T::infinity();
        self.trace
            .iter()
            .map(|&(_, v)| {
                best = best.min(v);
                best
            })
            .collect()
    }
}

struct Run<T> {
    best_params: Vec<T>,
    best_value: T,
    values: Vec<T>,
    converged: bool,
}

/// Minimize `f` from `x0`. Deterministic for a fixed configuration; restarts
/// run in parallel and the best one wins, lowest restart index on ties.
pub fn minimize<T, F>(f: F, x0: &[T], cfg: &OptimizerConfig) -> Result<OptimizationResult<T>>
where
    T: Real,
    F: Fn(&[T]) -> T + Sync,
{
    cfg.validate()?;
    if x0.is_empty() {
        return Err(Error::InvalidConfig(
            "cannot optimize over zero parameters".into(),
        ));
    }
    let d = x0.len();
    let restarts = cfg.restarts.min(cfg.max_evals);
    let budget = |r: usize| cfg.max_evals / restarts + usize::from(r < cfg.max_evals % restarts);

    let starts: Vec<Vec<T>> = (0..restarts)
        .map(|r| {
            if r == 0 {
                return x0.to_vec();
            }
            let mut rng = shot_rng(cfg.seed, r as u64);
            (0..d)
                .map(|i| {
                    let (lo, hi) = cfg.bounds.unwrap_or_else(|| {
                        (x0[i].to_f64_lossy() - 1.0, x0[i].to_f64_lossy() + 1.0)
                    });
                    T::lit(rng.gen_range(lo..hi))
                })
                .collect()
        })
        .collect();

    let runs: Vec<Run<T>> = starts
        .par_iter()
        .enumerate()
        .map(|(r, start)| nelder_mead(&f, start, budget(r), cfg))
        .collect();

    let mut trace = Vec::new();
    let mut winner = 0;
    for (r, run) in runs.iter().enumerate() {
        for &v in &run.values {
            trace.push((trace.len(), v));
        }
        if run.best_value < runs[winner].best_value {
            winner = r;
        }
    }
    Ok(OptimizationResult {
        best_params: runs[winner].best_params.clone(),
        best_value: runs[winner].best_value,
        evals_used: trace.len(),
        trace,
        converged: runs.iter().any(|r| r.converged),
    })
}

fn nelder_mead<T, F>(f: &F, x0: &[T], max_evals: usize, cfg: &OptimizerConfig) -> Run<T>
where
    T: Real,
    F: Fn(&[T]) -> T,
{
    let d = x0.len();
    let dim = T::lit(d as f64);
    // dimension-adaptive coefficients; the classic 1, 2, 1/2, 1/2 at d = 2
    let reflect = T::one();
    let expand = T::one() + T::lit(2.0) / dim;
    let contract = T::lit(0.75) - T::lit(0.5) / dim;
    let shrink = T::one() - T::one() / dim.max(T::lit(2.0));

    let clamp = |x: &mut Vec<T>| {
        if let Some((lo, hi)) = cfg.bounds {
            for xi in x.iter_mut() {
                *xi = xi.max(T::lit(lo)).min(T::lit(hi));
            }
        }
    };
    let mut values = Vec::new();
    let eval = |x: &[T], values: &mut Vec<T>| -> T {
        let v = f(x);
        // NaN objectives rank last
        let v = if v.is_nan() { T::infinity() } else { v };
        values.push(v);
        v
    };

    let step = T::lit(cfg.initial_step);
    let mut first = x0.to_vec();
    clamp(&mut first);
    let mut simplex: Vec<(Vec<T>, T)> = Vec::with_capacity(d + 1);
    let f0 = eval(&first, &mut values);
    simplex.push((first.clone(), f0));
    for i in 0..d {
        if values.len() >= max_evals {
            break;
        }
        let mut x = first.clone();
        x[i] = x[i] + step;
        if let Some((_, hi)) = cfg.bounds {
            if x[i] > T::lit(hi) {
                x[i] = first[i] - step;
            }
        }
        clamp(&mut x);
        let fx = eval(&x, &mut values);
        simplex.push((x, fx));
    }

    let mut converged = false;
    let order = |s: &mut Vec<(Vec<T>, T)>| {
        s.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
    };

    while simplex.len() == d + 1 {
        order(&mut simplex);
        let (best_x, best_f) = (&simplex[0].0, simplex[0].1);
        let fspread = simplex
            .iter()
            .map(|s| (s.1 - best_f).abs())
            .fold(T::zero(), T::max);
        let xspread = simplex
            .iter()
            .flat_map(|s| s.0.iter().zip(best_x).map(|(a, b)| (*a - *b).abs()))
            .fold(T::zero(), T::max);
        if fspread <= T::lit(cfg.ftol) && xspread <= T::lit(cfg.xtol) {
            converged = true;
            break;
        }
        if values.len() >= max_evals {
            break;
        }

        let worst = simplex[d].clone();
        let centroid: Vec<T> = (0..d)
            .map(|i| simplex[..d].iter().map(|s| s.0[i]).sum::<T>() / dim)
            .collect();
        let toward = |coef: T| -> Vec<T> {
            let mut x: Vec<T> = centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| *c + coef * (*c - *w))
                .collect();
            clamp(&mut x);
            x
        };

        let xr = toward(reflect);
        let fr = eval(&xr, &mut values);
        if fr < simplex[0].1 {
            if values.len() >= max_evals {
                simplex[d] = (xr, fr);
                continue;
            }
            let xe = toward(reflect * expand);
            let fe = eval(&xe, &mut values);
            simplex[d] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[d - 1].1 {
            simplex[d] = (xr, fr);
            continue;
        }
        if values.len() >= max_evals {
            break;
        }
        // outside contraction when the reflection beat the worst point
        let (xc, fc) = if fr < worst.1 {
            let xc = toward(reflect * contract);
            let fc = eval(&xc, &mut values);
            (xc, fc)
        } else {
            let xc = toward(-contract);
            let fc = eval(&xc, &mut values);
            (xc, fc)
        };
        if fc < fr.min(worst.1) {
            simplex[d] = (xc, fc);
            continue;
        }
        let anchor = simplex[0].0.clone();
        for s in simplex.iter_mut().skip(1) {
            if values.len() >= max_evals {
                break;
            }
            let mut x: Vec<T> = anchor
                .iter()
                .zip(&s.0)
                .map(|(a, xi)| *a + shrink * (*xi - *a))
                .collect();
            clamp(&mut x);
            let fx = eval(&x, &mut values);
            *s = (x, fx);
        }
    }
    order(&mut simplex);
    Run {
        best_params: simplex[0].0.clone(),
        best_value: simplex[0].1,
        values,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowl(x: &[f64]) -> f64 {
        x.iter().map(|v| (v - 1.0) * (v - 1.0)).sum()
    }

    fn rosenbrock(x: &[f64]) -> f64 {
        (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2)
    }

    #[test]
    fn quadratic_bowl() {
        let cfg = OptimizerConfig {
            restarts: 1,
            xtol: 1e-8,
            ftol: 1e-12,
            ..OptimizerConfig::unbounded()
        };
        let res = minimize(bowl, &[0.0; 4], &cfg).unwrap();
        assert!(res.best_value < 1e-6, "{}", res.best_value);
        assert!(res.best_params.iter().all(|p| (p - 1.0).abs() < 1e-3));
        assert!(res.converged);
    }

    #[test]
    fn rosenbrock_2d() {
        let cfg = OptimizerConfig {
            restarts: 1,
            max_evals: 5000,
            xtol: 1e-8,
            ftol: 1e-12,
            ..OptimizerConfig::unbounded()
        };
        let res = minimize(rosenbrock, &[-1.2, 1.0], &cfg).unwrap();
        assert!(res.best_value < 1e-3, "{}", res.best_value);
        assert!(res.evals_used <= 5000);
    }

    #[test]
    fn constant_objective_collapses() {
        let res = minimize(|_: &[f64]| 3.5, &[0.2, 0.4], &OptimizerConfig::default()).unwrap();
        assert!(res.converged);
        assert_eq!(res.best_value, 3.5);
    }

    #[test]
    fn respects_budget_and_bounds() {
        let cfg = OptimizerConfig {
            max_evals: 37,
            restarts: 3,
            bounds: Some((0.0, 1.0)),
            ..OptimizerConfig::default()
        };
        let seen = std::sync::Mutex::new(Vec::new());
        let res = minimize(
            |x: &[f64]| {
                seen.lock().unwrap().push(x.to_vec());
                -(x[0] + x[1])
            },
            &[0.5, 0.5],
            &cfg,
        )
        .unwrap();
        assert!(res.evals_used <= 37);
        assert!(seen
            .into_inner()
            .unwrap()
            .iter()
            .flatten()
            .all(|v| (0.0..=1.0).contains(v)));
        assert!((res.best_value + 2.0).abs() < 1e-2);
    }

    #[test]
    fn best_matches_trace_and_is_deterministic() {
        let cfg = OptimizerConfig {
            max_evals: 500,
            restarts: 3,
            seed: 9,
            ..OptimizerConfig::default()
        };
        let f = |x: &[f64]| (x[0] - 2.0).sin() + (x[1] * 0.5).cos();
        let a = minimize(f, &[1.0, 1.0], &cfg).unwrap();
        let b = minimize(f, &[1.0, 1.0], &cfg).unwrap();
        assert_eq!(a, b);
        let min = a.trace.iter().map(|t| t.1).fold(f64::INFINITY, f64::min);
        assert_eq!(a.best_value, min);
        let running = a.best_so_far();
        assert!(running.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn invalid_configs() {
        let zero = OptimizerConfig {
            max_evals: 0,
            ..Default::default()
        };
        assert!(minimize(bowl, &[0.0], &zero).is_err());
        assert!(minimize(bowl, &[], &OptimizerConfig::default()).is_err());
        let tol = OptimizerConfig {
            xtol: 0.0,
            ..Default::default()
        };
        assert!(minimize(bowl, &[0.0], &tol).is_err());
    }
}

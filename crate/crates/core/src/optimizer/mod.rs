//! Derivative-free parameter search and the QAOA solve loop.

mod nelder_mead;
mod solve;

pub use nelder_mead::{minimize, Method, OptimizationResult, OptimizerConfig};
pub use solve::{qaoa_solve, resample_optimized, SolveOptions, SolveReport, SpectrumReference};

//! Hamiltonian-cycle QAOA toolkit.
//!
//! A graph is compiled into a QUBO penalty with vertex 1 pinned to the first
//! cycle position, then into an Ising model over `(n-1)^2` qubits. The
//! resulting diagonal Hamiltonian can be checked by exhaustive spectrum
//! enumeration and solved with a QAOA loop on a dense statevector simulator,
//! optionally under Pauli-trajectory noise.
//!
//! Compilation is exact over [`Rational64`](num_rational::Rational64);
//! simulation is generic over `f32` and `f64`.

pub mod circuit;
pub mod engine;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod hamiltonian;
pub mod ising;
pub mod optimizer;
pub mod qubo;
pub mod scalar;

pub use num_rational::Rational64;

pub use circuit::{build_ansatz, Gate, MixerKind, ParamCircuit};
pub use engine::{simulate, simulate_noisy, Distribution, NoiseModel, Statevector};
pub use error::{Error, Result};
pub use graph::{decode, non_edges, parse_graph, qubit_index, Assignment, DecodedTour, Graph};
pub use hamiltonian::{qubo_oracle, DiagonalHamiltonian, Spectrum};
pub use ising::{maxcut_ising, strip_constant, to_ising, to_term_list, IsingModel, PauliTermList};
pub use optimizer::{
    minimize, qaoa_solve, OptimizationResult, OptimizerConfig, SolveOptions, SolveReport,
};
pub use qubo::{assemble, assemble_weighted, PenaltyWeights, QuboPolynomial};
pub use scalar::{Coefficient, Real};

/// Exact QUBO polynomial.
pub type ExactQubo = QuboPolynomial<Rational64>;
/// Exact Ising model, the compiler's output.
pub type ExactIsing = IsingModel<Rational64>;
pub type ExactHamiltonian = DiagonalHamiltonian<Rational64>;
pub type Hamiltonian64 = DiagonalHamiltonian<f64>;
pub type Hamiltonian32 = DiagonalHamiltonian<f32>;
pub type Statevector64 = Statevector<f64>;
pub type Statevector32 = Statevector<f32>;
pub type Circuit64 = ParamCircuit<f64>;
pub type Circuit32 = ParamCircuit<f32>;

/// Compile a graph into its exact Ising cost model with uniform weight `A`.
pub fn compile_graph(g: &Graph, weight: Rational64) -> Result<ExactIsing> {
    to_ising(&assemble(g, weight)?, g.n())
}

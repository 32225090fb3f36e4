//! Parameterized QAOA ansatz as a flat gate list.
//!
//! Rotations follow `R_P(theta) = exp(-i theta P / 2)`, so a cost layer with
//! angles `2 w gamma` implements `exp(-i gamma H_C)` and a mixer layer with
//! angle `2 beta` implements `exp(-i beta sum_k P_k)`, both up to global phase.
//! Qubits in gates are 1-indexed.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ising::IsingModel;
use crate::scalar::{Coefficient, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MixerKind {
    #[default]
    Rx,
    Ry,
}

impl FromStr for MixerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rx" | "x" => Ok(MixerKind::Rx),
            "ry" | "y" => Ok(MixerKind::Ry),
            other => Err(Error::MalformedInput(format!("unknown mixer {other:?}"))),
        }
    }
}

impl fmt::Display for MixerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MixerKind::Rx => "rx",
            MixerKind::Ry => "ry",
        })
    }
}

/// Symbolic parameter; layers are 1-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Gamma(usize),
    Beta(usize),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Gamma(l) => write!(f, "g{l}"),
            Param::Beta(l) => write!(f, "b{l}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle<T> {
    Literal(T),
    /// `scale * param`
    Symbolic {
        param: Param,
        scale: T,
    },
}

impl<T: Real> Angle<T> {
    pub fn literal(&self) -> Option<T> {
        match self {
            Angle::Literal(t) => Some(*t),
            Angle::Symbolic { .. } => None,
        }
    }
}

impl<T: Real> fmt::Display for Angle<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Literal(t) => write!(f, "{:.6}", t.to_f64_lossy()),
            Angle::Symbolic { param, scale } if *scale == T::one() => write!(f, "{param}"),
            Angle::Symbolic { param, scale } => write!(f, "{:.6}*{param}", scale.to_f64_lossy()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate<T> {
    H(usize),
    Rx(usize, Angle<T>),
    Ry(usize, Angle<T>),
    Rz(usize, Angle<T>),
    Cnot { control: usize, target: usize },
}

impl<T: Real> Gate<T> {
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(q) | Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Rz(q, _) => (q, None),
            Gate::Cnot { control, target } => (control, Some(target)),
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cnot { .. })
    }

    pub fn angle(&self) -> Option<&Angle<T>> {
        match self {
            Gate::Rx(_, a) | Gate::Ry(_, a) | Gate::Rz(_, a) => Some(a),
            _ => None,
        }
    }

    fn map_angle(&self, f: impl Fn(&Angle<T>) -> Angle<T>) -> Self {
        match self {
            Gate::Rx(q, a) => Gate::Rx(*q, f(a)),
            Gate::Ry(q, a) => Gate::Ry(*q, f(a)),
            Gate::Rz(q, a) => Gate::Rz(*q, f(a)),
            other => *other,
        }
    }
}

impl<T: Real> fmt::Display for Gate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H(q) => write!(f, "H {q}"),
            Gate::Rx(q, a) => write!(f, "RX {q} {a}"),
            Gate::Ry(q, a) => write!(f, "RY {q} {a}"),
            Gate::Rz(q, a) => write!(f, "RZ {q} {a}"),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamCircuit<T> {
    num_qubits: usize,
    gates: Vec<Gate<T>>,
    layers: usize,
    mixer: MixerKind,
}

impl<T: Real> ParamCircuit<T> {
    /// Assemble a circuit from raw gates, validating qubit ranges.
    pub fn from_gates(num_qubits: usize, gates: Vec<Gate<T>>) -> Result<Self> {
        for g in &gates {
            let (a, b) = g.qubits();
            let bad = |q: usize| q == 0 || q > num_qubits;
            if bad(a) || b.is_some_and(bad) || b == Some(a) {
                return Err(Error::MalformedInput(format!("invalid gate {g}")));
            }
        }
        Ok(ParamCircuit {
            num_qubits,
            gates,
            layers: 0,
            mixer: MixerKind::Rx,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn mixer(&self) -> MixerKind {
        self.mixer
    }

    /// Distinct symbolic parameters still present.
    pub fn parameters(&self) -> BTreeSet<Param> {
        self.gates
            .iter()
            .filter_map(|g| match g.angle() {
                Some(Angle::Symbolic { param, .. }) => Some(*param),
                _ => None,
            })
            .collect()
    }

    pub fn is_bound(&self) -> bool {
        self.parameters().is_empty()
    }

    /// Substitute `gamma_l`, `beta_l` for every symbolic angle.
    pub fn bind(&self, gamma: &[T], beta: &[T]) -> Result<ParamCircuit<T>> {
        for v in [gamma, beta] {
            if v.len() != self.layers {
                return Err(Error::ArityMismatch {
                    expected: self.layers,
                    actual: v.len(),
                });
            }
        }
        let gates = self
            .gates
            .iter()
            .map(|g| {
                g.map_angle(|a| match *a {
                    Angle::Symbolic { param, scale } => Angle::Literal(
                        scale
                            * match param {
                                Param::Gamma(l) => gamma[l - 1],
                                Param::Beta(l) => beta[l - 1],
                            },
                    ),
                    lit => lit,
                })
            })
            .collect();
        Ok(ParamCircuit {
            gates,
            ..self.clone()
        })
    }

    /// Bind from a flat `[gamma_1..gamma_p, beta_1..beta_p]` vector.
    pub fn bind_flat(&self, params: &[T]) -> Result<ParamCircuit<T>> {
        if params.len() != 2 * self.layers {
            return Err(Error::ArityMismatch {
                expected: 2 * self.layers,
                actual: params.len(),
            });
        }
        let (gamma, beta) = params.split_at(self.layers);
        self.bind(gamma, beta)
    }

    /// One gate per line, e.g. `CNOT 1 2`, `RZ 2 0.600000`, `RX 3 2.000000*b1`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for g in &self.gates {
            let _ = writeln!(out, "{g}");
        }
        out
    }
}

/// Hadamard row followed by `p` repetitions of (cost block, mixer block).
///
/// The cost block lists linear terms by qubit as `RZ(2 w gamma_l)`, then each
/// coupling `(j, k)` as `CNOT(j,k) RZ_k(2 w gamma_l) CNOT(j,k)`. The constant
/// only contributes a global phase and is ignored.
pub fn build_ansatz<C: Coefficient, T: Real>(
    m: &IsingModel<C>,
    p: usize,
    mixer: MixerKind,
) -> Result<ParamCircuit<T>> {
    let q = m.num_qubits();
    if q == 0 {
        return Err(Error::EmptyModel);
    }
    let two = T::lit(2.0);
    let mut gates: Vec<Gate<T>> = (1..=q).map(Gate::H).collect();
    for l in 1..=p {
        let cost = |w: &C| Angle::Symbolic {
            param: Param::Gamma(l),
            scale: two * T::from_coefficient(w),
        };
        for (&k, w) in m.linear() {
            gates.push(Gate::Rz(k, cost(w)));
        }
        for (&(j, k), w) in m.quadratic() {
            gates.push(Gate::Cnot {
                control: j,
                target: k,
            });
            gates.push(Gate::Rz(k, cost(w)));
            gates.push(Gate::Cnot {
                control: j,
                target: k,
            });
        }
        let angle = Angle::Symbolic {
            param: Param::Beta(l),
            scale: two,
        };
        for k in 1..=q {
            gates.push(match mixer {
                MixerKind::Rx => Gate::Rx(k, angle),
                MixerKind::Ry => Gate::Ry(k, angle),
            });
        }
    }
    Ok(ParamCircuit {
        num_qubits: q,
        gates,
        layers: p,
        mixer,
    })
}

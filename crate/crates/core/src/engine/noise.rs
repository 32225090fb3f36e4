//! Pauli-trajectory noise: every shot is one stochastic trajectory in which
//! a uniformly random non-identity Pauli follows a gate with the gate's
//! depolarizing probability, then the register is measured and each bit is
//! flipped with the readout probability.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    check_circuit, shot_rng, Cdf, Distribution, Pauli, Statevector, DEFAULT_SIMULATION_CAP,
};
use crate::circuit::ParamCircuit;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest number of stored amplitudes for the noiseless gate checkpoints.
const CHECKPOINT_BUDGET: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct NoiseModel {
    /// Depolarizing probability after each single-qubit gate.
    pub p1: f64,
    /// Depolarizing probability after each two-qubit gate.
    pub p2: f64,
    /// Per-bit classical flip probability at readout.
    pub readout: f64,
}

impl NoiseModel {
    pub fn new(p1: f64, p2: f64, readout: f64) -> Result<Self> {
        let nm = NoiseModel { p1, p2, readout };
        nm.validate()?;
        Ok(nm)
    }

    pub fn noiseless() -> Self {
        NoiseModel::default()
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("p1", self.p1), ("p2", self.p2), ("ro", self.readout)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidNoise(format!(
                    "{name} = {p} is not in [0, 1]"
                )));
            }
        }
        Ok(())
    }

    pub fn is_noiseless(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0 && self.readout == 0.0
    }
}

/// Parses `p1=0.001,p2=0.01,ro=0.01`; omitted keys default to 0.
impl FromStr for NoiseModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut nm = NoiseModel::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidNoise(format!("expected key=value, got {part:?}")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidNoise(format!("bad number in {part:?}")))?;
            match key.trim() {
                "p1" => nm.p1 = value,
                "p2" => nm.p2 = value,
                "ro" | "readout" => nm.readout = value,
                other => return Err(Error::InvalidNoise(format!("unknown key {other:?}"))),
            }
        }
        nm.validate()?;
        Ok(nm)
    }
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p1={},p2={},ro={}", self.p1, self.p2, self.readout)
    }
}

/// Error inserted after gate `gate`: Pauli codes for the first and (for
/// two-qubit gates) second qubit.
#[derive(Debug, Clone, Copy)]
struct Fault {
    gate: usize,
    first: Pauli,
    second: Pauli,
}

/// Measured basis index of every trajectory, in shot order.
///
/// Shot `t` uses random stream `t`: first the measurement uniform, then one
/// uniform per gate with nonzero error probability (plus the Pauli choice when
/// it fires), then one uniform per bit when readout noise is on. With a
/// noiseless model this reproduces [`Statevector::sample`] exactly.
pub fn trajectory_outcomes<T: Real>(
    c: &ParamCircuit<T>,
    nm: &NoiseModel,
    shots: usize,
    seed: u64,
) -> Result<Vec<u64>> {
    nm.validate()?;
    check_circuit(c, DEFAULT_SIMULATION_CAP)?;
    let q = c.num_qubits();
    let gates = c.gates();

    // noiseless states after each gate, index 0 is |0...0>
    let dim = 1usize << q;
    let keep_all = (gates.len() + 1).saturating_mul(dim) <= CHECKPOINT_BUDGET;
    let mut checkpoints = vec![Statevector::zero_state(q)];
    let mut state = Statevector::zero_state(q);
    for g in gates {
        state.apply_gate(g)?;
        if keep_all {
            checkpoints.push(state.clone());
        }
    }
    let final_cdf = Cdf::new(&state.probabilities());

    let outcomes = (0..shots as u64)
        .into_par_iter()
        .map(|t| -> Result<u64> {
            let mut rng = shot_rng(seed, t);
            let u: f64 = rng.gen();
            let mut faults = Vec::new();
            for (i, g) in gates.iter().enumerate() {
                let p = if g.is_two_qubit() { nm.p2 } else { nm.p1 };
                if p > 0.0 && rng.gen::<f64>() < p {
                    let (first, second) = if g.is_two_qubit() {
                        let code: u8 = rng.gen_range(1..16);
                        (Pauli::from_code(code >> 2), Pauli::from_code(code))
                    } else {
                        (Pauli::from_code(rng.gen_range(1..4)), Pauli::I)
                    };
                    faults.push(Fault {
                        gate: i,
                        first,
                        second,
                    });
                }
            }

            let mut outcome = match faults.first() {
                None => final_cdf.draw(u),
                Some(first) => {
                    let start = if keep_all { first.gate } else { 0 };
                    let mut s = checkpoints[start].clone();
                    let mut pending = faults.iter().peekable();
                    for (i, g) in gates.iter().enumerate().skip(start) {
                        s.apply_gate(g)?;
                        while let Some(f) = pending.next_if(|f| f.gate == i) {
                            let (a, b) = g.qubits();
                            s.apply_pauli(a, f.first);
                            if let Some(b) = b {
                                s.apply_pauli(b, f.second);
                            }
                        }
                    }
                    Cdf::new(&s.probabilities()).draw(u)
                }
            };
            if nm.readout > 0.0 {
                for bit in 0..q {
                    if rng.gen::<f64>() < nm.readout {
                        outcome ^= 1 << bit;
                    }
                }
            }
            Ok(outcome)
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(outcomes)
}

/// Sample a bound circuit under `nm`, one trajectory per shot.
pub fn simulate_noisy<T: Real>(
    c: &ParamCircuit<T>,
    nm: &NoiseModel,
    shots: usize,
    seed: u64,
) -> Result<Distribution> {
    let outcomes = trajectory_outcomes(c, nm, shots, seed)?;
    Ok(Distribution::from_outcomes(c.num_qubits(), &outcomes))
}

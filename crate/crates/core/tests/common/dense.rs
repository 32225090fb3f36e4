//! Dense full-unitary reference simulator built from explicit Kronecker
//! products. Deliberately naive: O(8^q) per circuit.

use hamcycle_qaoa::circuit::{Angle, Gate, ParamCircuit};
use num_complex::Complex64;

pub type Matrix = Vec<Vec<Complex64>>;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { cx(1.0, 0.0) } else { cx(0.0, 0.0) })
                .collect()
        })
        .collect()
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![cx(0.0, 0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![cx(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == cx(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

fn scale(a: &Matrix, s: Complex64) -> Matrix {
    a.iter()
        .map(|r| r.iter().map(|x| x * s).collect())
        .collect()
}

pub fn pauli_x() -> Matrix {
    vec![
        vec![cx(0.0, 0.0), cx(1.0, 0.0)],
        vec![cx(1.0, 0.0), cx(0.0, 0.0)],
    ]
}

pub fn pauli_y() -> Matrix {
    vec![
        vec![cx(0.0, 0.0), cx(0.0, -1.0)],
        vec![cx(0.0, 1.0), cx(0.0, 0.0)],
    ]
}

pub fn pauli_z() -> Matrix {
    vec![
        vec![cx(1.0, 0.0), cx(0.0, 0.0)],
        vec![cx(0.0, 0.0), cx(-1.0, 0.0)],
    ]
}

/// `exp(-i theta P / 2) = cos(theta/2) I - i sin(theta/2) P`
pub fn rotation(p: &Matrix, theta: f64) -> Matrix {
    add(
        &scale(&identity(2), cx((theta / 2.0).cos(), 0.0)),
        &scale(p, cx(0.0, -(theta / 2.0).sin())),
    )
}

pub fn hadamard() -> Matrix {
    scale(
        &add(&pauli_x(), &pauli_z()),
        cx(std::f64::consts::FRAC_1_SQRT_2, 0.0),
    )
}

/// Embed single-qubit operators; qubit `k` is bit `k-1` of the basis index,
/// so the highest qubit is the leftmost Kronecker factor.
pub fn embed(q: usize, ops: &[(usize, Matrix)]) -> Matrix {
    let mut out = vec![vec![cx(1.0, 0.0)]];
    for k in (1..=q).rev() {
        let factor = ops
            .iter()
            .find(|(target, _)| *target == k)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| identity(2));
        out = kron(&out, &factor);
    }
    out
}

pub fn gate_unitary(q: usize, g: &Gate<f64>) -> Matrix {
    let lit = |a: &Angle<f64>| a.literal().expect("bound circuit");
    match g {
        Gate::H(k) => embed(q, &[(*k, hadamard())]),
        Gate::Rx(k, a) => embed(q, &[(*k, rotation(&pauli_x(), lit(a)))]),
        Gate::Ry(k, a) => embed(q, &[(*k, rotation(&pauli_y(), lit(a)))]),
        Gate::Rz(k, a) => embed(q, &[(*k, rotation(&pauli_z(), lit(a)))]),
        Gate::Cnot { control, target } => {
            let p0 = vec![
                vec![cx(1.0, 0.0), cx(0.0, 0.0)],
                vec![cx(0.0, 0.0), cx(0.0, 0.0)],
            ];
            let p1 = vec![
                vec![cx(0.0, 0.0), cx(0.0, 0.0)],
                vec![cx(0.0, 0.0), cx(1.0, 0.0)],
            ];
            add(
                &embed(q, &[(*control, p0)]),
                &embed(q, &[(*control, p1), (*target, pauli_x())]),
            )
        }
    }
}

pub fn circuit_unitary(c: &ParamCircuit<f64>) -> Matrix {
    let q = c.num_qubits();
    c.gates()
        .iter()
        .fold(identity(1 << q), |u, g| matmul(&gate_unitary(q, g), &u))
}

/// First column of the circuit unitary, i.e. the circuit applied to |0...0>.
pub fn oracle_state(c: &ParamCircuit<f64>) -> Vec<Complex64> {
    circuit_unitary(c).iter().map(|row| row[0]).collect()
}

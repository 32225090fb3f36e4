//! Ising models over Pauli-Z products and their Pauli-string term lists.

use std::collections::BTreeMap;

use num_traits::FromPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{qubit_index, Graph};
use crate::qubo::{QuboPolynomial, Var};
use crate::scalar::Coefficient;

/// `constant + sum_k h_k Z_k + sum_{j<k} J_jk Z_j Z_k` on qubits `1..=num_qubits`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel<C> {
    num_qubits: usize,
    constant: C,
    linear: BTreeMap<usize, C>,
    quadratic: BTreeMap<(usize, usize), C>,
}

impl<C: Coefficient> IsingModel<C> {
    pub fn new(num_qubits: usize) -> Self {
        IsingModel {
            num_qubits,
            constant: C::zero(),
            linear: BTreeMap::new(),
            quadratic: BTreeMap::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn constant(&self) -> &C {
        &self.constant
    }

    pub fn linear(&self) -> &BTreeMap<usize, C> {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), C> {
        &self.quadratic
    }

    /// True when there is no Z term at all (the constant may be nonzero).
    pub fn has_no_terms(&self) -> bool {
        self.linear.is_empty() && self.quadratic.is_empty()
    }

    pub fn add_constant(&mut self, c: C) {
        self.constant = self.constant.clone() + c;
    }

    /// Add `c Z_k`.
    pub fn add_z(&mut self, k: usize, c: C) {
        assert!(k >= 1 && k <= self.num_qubits, "qubit {k} out of range");
        add_entry(&mut self.linear, k, c);
    }

    /// Add `c Z_j Z_k`; `Z_k Z_k = I` folds into the constant.
    pub fn add_zz(&mut self, j: usize, k: usize, c: C) {
        assert!(j >= 1 && j <= self.num_qubits, "qubit {j} out of range");
        assert!(k >= 1 && k <= self.num_qubits, "qubit {k} out of range");
        if j == k {
            self.add_constant(c);
        } else {
            add_entry(&mut self.quadratic, (j.min(k), j.max(k)), c);
        }
    }

    /// Energy of a basis state given as qubit values (`true` = measured 1, Z = -1).
    pub fn energy(&self, bits: &[bool]) -> Result<C> {
        if bits.len() != self.num_qubits {
            return Err(Error::LengthMismatch {
                expected: self.num_qubits,
                actual: bits.len(),
            });
        }
        let z = |k: usize| if bits[k - 1] { -C::one() } else { C::one() };
        let mut e = self.constant.clone();
        for (&k, c) in &self.linear {
            e = e + c.clone() * z(k);
        }
        for (&(j, k), c) in &self.quadratic {
            e = e + c.clone() * z(j) * z(k);
        }
        Ok(e)
    }

    /// Coefficient-wise conversion into another scalar type.
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> IsingModel<D> {
        let mut out = IsingModel::new(self.num_qubits);
        out.constant = f(&self.constant);
        for (&k, c) in &self.linear {
            add_entry(&mut out.linear, k, f(c));
        }
        for (&jk, c) in &self.quadratic {
            add_entry(&mut out.quadratic, jk, f(c));
        }
        out
    }

    /// Sum of absolute values of all coefficients, constant included.
    pub fn l1_norm(&self) -> C {
        self.linear
            .values()
            .chain(self.quadratic.values())
            .fold(self.constant.abs(), |acc, c| acc + c.abs())
    }
}

fn add_entry<K: Ord, C: Coefficient>(map: &mut BTreeMap<K, C>, key: K, c: C) {
    if c.is_zero() {
        return;
    }
    let sum = map.get(&key).cloned().unwrap_or_else(C::zero) + c;
    if sum.is_zero() {
        map.remove(&key);
    } else {
        map.insert(key, sum);
    }
}

/// Substitute `x -> (1 - Z)/2` into a QUBO over the free block of an
/// order-`n` encoding. `Z^2 = I` is applied as products are formed, so the
/// result satisfies `qubo(a) == ising(a)` for every assignment.
pub fn to_ising<C: Coefficient>(q: &QuboPolynomial<C>, n: usize) -> Result<IsingModel<C>> {
    let qubit = |x: &Var| {
        qubit_index(x.vertex, x.position, n).map_err(|_| Error::UnmappedVariable {
            vertex: x.vertex,
            position: x.position,
            n,
        })
    };
    let half = C::half();
    let quarter = half.clone() * half.clone();
    let mut m = IsingModel::new((n - 1) * (n - 1));
    m.add_constant(q.constant().clone());
    for (x, c) in q.linear() {
        let k = qubit(x)?;
        m.add_constant(c.clone() * half.clone());
        m.add_z(k, -(c.clone() * half.clone()));
    }
    for ((x, y), c) in q.quadratic() {
        let (j, k) = (qubit(x)?, qubit(y)?);
        let w = c.clone() * quarter.clone();
        m.add_constant(w.clone());
        m.add_z(j, -w.clone());
        m.add_z(k, -w.clone());
        m.add_zz(j, k, w);
    }
    Ok(m)
}

/// Drop the identity term and optionally rescale every coefficient by a
/// positive factor. The energy ordering of basis states is preserved.
pub fn strip_constant<C: Coefficient>(m: &IsingModel<C>, rescale: Option<C>) -> IsingModel<C> {
    let factor = rescale.unwrap_or_else(C::one);
    assert!(factor > C::zero(), "rescale factor must be positive");
    let mut out = m.map_coefficients(|c| c.clone() * factor.clone());
    out.constant = C::zero();
    out
}

/// MaxCut as a minimization problem with one qubit per vertex (qubit `v`
/// is vertex `v`). Each edge contributes `w/2 (Z_u Z_v - 1)`, so the
/// energy of an assignment is exactly minus its cut weight.
pub fn maxcut_ising<C: Coefficient>(
    g: &Graph,
    weights: &BTreeMap<(usize, usize), C>,
) -> Result<IsingModel<C>> {
    let mut m = IsingModel::new(g.n());
    for (u, v) in g.edges() {
        let w = weights
            .get(&(u, v))
            .or_else(|| weights.get(&(v, u)))
            .ok_or(Error::WeightMissing(u, v))?;
        let half_w = w.clone() * C::half();
        m.add_zz(u, v, half_w.clone());
        m.add_constant(-half_w);
    }
    Ok(m)
}

/// Total weight of edges cut by a two-coloring (`bits[v-1]` is vertex `v`).
pub fn cut_value<C: Coefficient>(
    g: &Graph,
    weights: &BTreeMap<(usize, usize), C>,
    bits: &[bool],
) -> C {
    g.edges()
        .filter(|&(u, v)| bits[u - 1] != bits[v - 1])
        .map(|(u, v)| {
            weights
                .get(&(u, v))
                .or_else(|| weights.get(&(v, u)))
                .cloned()
                .unwrap_or_else(C::zero)
        })
        .fold(C::zero(), |a, b| a + b)
}

/// One Pauli string over `{I, Z}`, leftmost character = qubit 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm<C> {
    pub pauli: String,
    pub coeff: C,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PauliTermList<C> {
    pub num_qubits: usize,
    pub terms: Vec<PauliTerm<C>>,
    /// Identity coefficient, present only when retention was requested.
    pub constant: Option<C>,
}

fn pauli_string(num_qubits: usize, qubits: &[usize]) -> String {
    let mut s = vec!['I'; num_qubits];
    for &k in qubits {
        s[k - 1] = 'Z';
    }
    s.into_iter().collect()
}

/// Term list with linear terms by qubit, then quadratic terms in
/// lexicographic qubit-pair order. The constant is not included.
pub fn to_term_list<C: Coefficient>(m: &IsingModel<C>) -> PauliTermList<C> {
    let q = m.num_qubits();
    let terms = m
        .linear()
        .iter()
        .map(|(&k, c)| PauliTerm {
            pauli: pauli_string(q, &[k]),
            coeff: c.clone(),
        })
        .chain(m.quadratic().iter().map(|(&(j, k), c)| PauliTerm {
            pauli: pauli_string(q, &[j, k]),
            coeff: c.clone(),
        }))
        .collect();
    PauliTermList {
        num_qubits: q,
        terms,
        constant: None,
    }
}

impl<C: Coefficient> PauliTermList<C> {
    pub fn with_constant(mut self, c: C) -> Self {
        self.constant = Some(c);
        self
    }

    /// Qubits (1-indexed) acted on by Z in a Pauli string.
    pub fn z_positions(pauli: &str) -> Result<Vec<usize>> {
        pauli
            .chars()
            .enumerate()
            .filter_map(|(i, ch)| match ch {
                'I' => None,
                'Z' => Some(Ok(i + 1)),
                other => Some(Err(Error::MalformedInput(format!(
                    "Pauli string {pauli:?} contains {other:?}; only I and Z are diagonal"
                )))),
            })
            .collect()
    }

    /// Rebuild an Ising model. Fails on terms with more than two Z factors.
    pub fn to_ising(&self) -> Result<IsingModel<C>> {
        let mut m = IsingModel::new(self.num_qubits);
        if let Some(c) = &self.constant {
            m.add_constant(c.clone());
        }
        for t in &self.terms {
            match Self::z_positions(&t.pauli)?.as_slice() {
                [] => m.add_constant(t.coeff.clone()),
                [k] => m.add_z(*k, t.coeff.clone()),
                [j, k] => m.add_zz(*j, *k, t.coeff.clone()),
                more => {
                    return Err(Error::MalformedInput(format!(
                        "term {:?} has {} Z factors; Ising models are at most quadratic",
                        t.pauli,
                        more.len()
                    )))
                }
            }
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermEntry {
    pub pauli: String,
    pub coeff: f64,
}

/// On-disk term list. Both a bare `[{"pauli", "coeff"}, ...]` array and an
/// object with `terms` plus optional `constant` are accepted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermListFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num_qubits: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<f64>,
    pub terms: Vec<TermEntry>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TermListInput {
    Bare(Vec<TermEntry>),
    Object(TermListFile),
}

impl<C: Coefficient> PauliTermList<C> {
    pub fn to_file(&self) -> TermListFile {
        TermListFile {
            manifest: None,
            num_qubits: Some(self.num_qubits),
            constant: self.constant.as_ref().map(Coefficient::to_f64_lossy),
            terms: self
                .terms
                .iter()
                .map(|t| TermEntry {
                    pauli: t.pauli.clone(),
                    coeff: t.coeff.to_f64_lossy(),
                })
                .collect(),
        }
    }
}

impl<C: Coefficient + FromPrimitive> PauliTermList<C> {
    pub fn from_file(file: &TermListFile) -> Result<Self> {
        let num_qubits = match (file.num_qubits, file.terms.first()) {
            (Some(q), _) => q,
            (None, Some(t)) => t.pauli.chars().count(),
            (None, None) => 0,
        };
        let convert = |x: f64| {
            C::from_f64(x)
                .filter(|_| x.is_finite())
                .ok_or_else(|| Error::MalformedInput(format!("coefficient {x} not representable")))
        };
        let mut terms = Vec::with_capacity(file.terms.len());
        for t in &file.terms {
            if t.pauli.chars().count() != num_qubits {
                return Err(Error::MalformedInput(format!(
                    "Pauli string {:?} does not have length {num_qubits}",
                    t.pauli
                )));
            }
            Self::z_positions(&t.pauli)?;
            terms.push(PauliTerm {
                pauli: t.pauli.clone(),
                coeff: convert(t.coeff)?,
            });
        }
        Ok(PauliTermList {
            num_qubits,
            terms,
            constant: file.constant.map(convert).transpose()?,
        })
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let input: TermListInput =
            serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
        let file = match input {
            TermListInput::Bare(terms) => TermListFile {
                manifest: None,
                num_qubits: None,
                constant: None,
                terms,
            },
            TermListInput::Object(f) => f,
        };
        Self::from_file(&file)
    }
}

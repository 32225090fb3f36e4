//! Graphs, the position encoding with vertex 1 pinned to position 1, and
//! decoding of measured bitstrings back into candidate cycles.
//!
//! Variable `x[v,j]` is 1 when vertex `v` sits at position `j` of the cycle.
//! Row and column 1 are fixed (`x[1,1] = 1`, all other `x[1,j]`, `x[v,1]` are
//! 0), which leaves an `(n-1) x (n-1)` block of free variables. Qubit `k`
//! (1-indexed) holds `x[v,j]` with `k = (v-2)(n-1) + (j-1)`, and in every
//! bitstring the leftmost character is qubit 1.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Deserialize, Serialize)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Build a graph from 1-indexed edge pairs. Both orientations of an edge
    /// collapse into one; self-loops are rejected as malformed.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n < 3 {
            return Err(Error::InvalidOrder(n));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::EndpointOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::MalformedInput(format!("self-loop on vertex {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph { n, edges: set })
    }

    /// Cycle `1 - 2 - ... - n - 1`.
    pub fn cycle(n: usize) -> Result<Self> {
        Graph::new(n, (1..=n).map(|v| (v, v % n + 1)))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Graph::new(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Canonical edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Number of free binary variables, `(n-1)^2`.
    pub fn num_qubits(&self) -> usize {
        (self.n - 1) * (self.n - 1)
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        };
        serde_json::to_string(&file).expect("graph serializes")
    }
}

/// Parse the JSON graph format `{"n": 3, "edges": [[1,2],[2,3],[3,1]]}`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    Graph::new(file.n, file.edges.into_iter().map(|[u, v]| (u, v)))
}

/// All unordered pairs `{u, v}` (as `u < v`) that are not edges of `g`.
pub fn non_edges(g: &Graph) -> BTreeSet<(usize, usize)> {
    let n = g.n();
    (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect()
}

/// Qubit (1-indexed) that stores `x[v,j]`.
pub fn qubit_index(v: usize, j: usize, n: usize) -> Result<usize> {
    if v < 2 || j < 2 || v > n || j > n {
        return Err(Error::IndexOutOfRange {
            vertex: v,
            position: j,
            n,
        });
    }
    Ok((v - 2) * (n - 1) + (j - 1))
}

/// Inverse of [`qubit_index`]: the `(vertex, position)` pair held by qubit `k`.
pub fn variable_of_qubit(k: usize, n: usize) -> Option<(usize, usize)> {
    let side = n.checked_sub(1)?;
    if k == 0 || k > side * side {
        return None;
    }
    Some(((k - 1) / side + 2, (k - 1) % side + 2))
}

/// Binary assignment of the `(n-1)^2` free variables; character `i` is qubit `i+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn parse(text: &str) -> Result<Self> {
        let bits = text
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::MalformedInput(format!(
                    "assignment contains {other:?}; only '0' and '1' are allowed"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Assignment { bits })
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Assignment { bits }
    }

    /// Basis index whose bit `i` carries qubit `i+1`.
    pub fn from_index(index: u64, num_qubits: usize) -> Self {
        Assignment {
            bits: (0..num_qubits).map(|i| index >> i & 1 == 1).collect(),
        }
    }

    pub fn to_index(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | (u64::from(b) << i))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Value of qubit `k` (1-indexed).
    pub fn qubit(&self, k: usize) -> bool {
        self.bits[k - 1]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Full `n x n` value of `x[v,j]` including the pinned first row and column.
    pub fn var(&self, v: usize, j: usize, n: usize) -> bool {
        if v == 1 || j == 1 {
            return v == 1 && j == 1;
        }
        self.bits[(v - 2) * (n - 1) + (j - 2)]
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Bitstring of a basis index using the qubit-1-leftmost convention.
pub fn index_to_bitstring(index: u64, num_qubits: usize) -> String {
    (0..num_qubits)
        .map(|i| if index >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Encode a vertex order starting at vertex 1 as an assignment.
pub fn encode_tour(order: &[usize]) -> Result<Assignment> {
    let n = order.len();
    if n < 3 {
        return Err(Error::InvalidOrder(n));
    }
    if order[0] != 1 {
        return Err(Error::MalformedInput("tour must start at vertex 1".into()));
    }
    let mut bits = vec![false; (n - 1) * (n - 1)];
    let mut seen = vec![false; n + 1];
    for (pos, &v) in order.iter().enumerate() {
        if v == 0 || v > n || seen[v] {
            return Err(Error::MalformedInput(format!(
                "{order:?} is not a permutation of 1..={n}"
            )));
        }
        seen[v] = true;
        if pos > 0 {
            bits[qubit_index(v, pos + 1, n)? - 1] = true;
        }
    }
    Ok(Assignment { bits })
}

/// Which family of constraints a decoded bitstring violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstraintClass {
    PositionUniqueness,
    VertexUniqueness,
    EdgeValidity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum DecodedTour {
    /// Vertex order starting at 1; the closing edge back to 1 is implied.
    Valid { order: Vec<usize> },
    /// Positions or vertices (by class) that break the constraint, or for
    /// edge validity the consecutive vertex pairs that are not edges.
    Violation {
        class: ConstraintClass,
        offending: Vec<(usize, usize)>,
    },
}

impl DecodedTour {
    pub fn is_valid(&self) -> bool {
        matches!(self, DecodedTour::Valid { .. })
    }
}

/// Decode an assignment against `g`. Position uniqueness is checked first,
/// then vertex uniqueness, then edge validity; the first failing class is
/// reported with every offender in that class. For the uniqueness classes
/// each offender is `(index, count)`.
pub fn decode(a: &Assignment, g: &Graph) -> Result<DecodedTour> {
    let n = g.n();
    if a.len() != g.num_qubits() {
        return Err(Error::LengthMismatch {
            expected: g.num_qubits(),
            actual: a.len(),
        });
    }

    let column_counts: Vec<(usize, usize)> = (2..=n)
        .map(|j| (j, (2..=n).filter(|&v| a.var(v, j, n)).count()))
        .filter(|&(_, c)| c != 1)
        .collect();
    if !column_counts.is_empty() {
        return Ok(DecodedTour::Violation {
            class: ConstraintClass::PositionUniqueness,
            offending: column_counts,
        });
    }
    let row_counts: Vec<(usize, usize)> = (2..=n)
        .map(|v| (v, (2..=n).filter(|&j| a.var(v, j, n)).count()))
        .filter(|&(_, c)| c != 1)
        .collect();
    if !row_counts.is_empty() {
        return Ok(DecodedTour::Violation {
            class: ConstraintClass::VertexUniqueness,
            offending: row_counts,
        });
    }

    let order: Vec<usize> = std::iter::once(1)
        .chain((2..=n).map(|j| {
            (2..=n)
                .find(|&v| a.var(v, j, n))
                .expect("column has one entry")
        }))
        .collect();
    let bad_edges: Vec<(usize, usize)> = (0..n)
        .map(|i| (order[i], order[(i + 1) % n]))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    if !bad_edges.is_empty() {
        return Ok(DecodedTour::Violation {
            class: ConstraintClass::EdgeValidity,
            offending: bad_edges,
        });
    }
    Ok(DecodedTour::Valid { order })
}

/// Every Hamiltonian cycle of `g` as a vertex order starting at 1, both
/// directions included. Exhaustive over `(n-1)!` orders.
pub fn hamiltonian_cycles(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, order: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let n = g.n();
        if order.len() == n {
            if g.has_edge(order[n - 1], order[0]) {
                out.push(order.clone());
            }
            return;
        }
        let last = *order.last().expect("non-empty");
        for v in 2..=n {
            if !used[v] && g.has_edge(last, v) {
                used[v] = true;
                order.push(v);
                extend(g, order, used, out);
                order.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; g.n() + 1];
    used[1] = true;
    extend(g, &mut vec![1], &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        parse_graph(r#"{"n":3,"edges":[[1,2],[2,3],[3,1]]}"#).unwrap()
    }

    #[test]
    fn parses_triangle() {
        let g = triangle();
        assert_eq!(g.n(), 3);
        assert_eq!(g.num_edges(), 3);
    }

    #[test]
    fn merges_symmetric_duplicates() {
        let g = parse_graph(r#"{"n":4,"edges":[[1,2],[2,1]]}"#).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn rejects_small_and_bad_graphs() {
        assert_eq!(
            parse_graph(r#"{"n":2,"edges":[[1,2]]}"#),
            Err(Error::InvalidOrder(2))
        );
        assert_eq!(
            parse_graph(r#"{"n":3,"edges":[[1,4]]}"#),
            Err(Error::EndpointOutOfRange { vertex: 4, n: 3 })
        );
        assert!(matches!(
            parse_graph(r#"{"n":3,"edges":[[1,1]]}"#),
            Err(Error::MalformedInput(_))
        ));
        assert!(matches!(
            parse_graph("{\"n\":3"),
            Err(Error::MalformedInput(_))
        ));
    }

    #[test]
    fn non_edge_sets() {
        assert!(non_edges(&triangle()).is_empty());
        let square = Graph::cycle(4).unwrap();
        assert_eq!(
            non_edges(&square),
            [(1, 3), (2, 4)].into_iter().collect::<BTreeSet<_>>()
        );
        assert!(non_edges(&Graph::complete(4).unwrap()).is_empty());
    }

    #[test]
    fn qubit_indices() {
        assert_eq!(qubit_index(2, 2, 3), Ok(1));
        assert_eq!(qubit_index(3, 3, 3), Ok(4));
        assert_eq!(qubit_index(4, 4, 4), Ok(9));
        assert!(matches!(
            qubit_index(1, 2, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            qubit_index(2, 1, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn qubit_index_is_a_bijection() {
        for n in 3..=6 {
            let mut seen = BTreeSet::new();
            for v in 2..=n {
                for j in 2..=n {
                    let k = qubit_index(v, j, n).unwrap();
                    assert!((1..=(n - 1) * (n - 1)).contains(&k));
                    assert_eq!(variable_of_qubit(k, n), Some((v, j)));
                    seen.insert(k);
                }
            }
            assert_eq!(seen.len(), (n - 1) * (n - 1));
        }
    }

    #[test]
    fn decodes_triangle_states() {
        let g = triangle();
        let d = decode(&Assignment::parse("1001").unwrap(), &g).unwrap();
        assert_eq!(
            d,
            DecodedTour::Valid {
                order: vec![1, 2, 3]
            }
        );
        let d = decode(&Assignment::parse("0110").unwrap(), &g).unwrap();
        assert_eq!(
            d,
            DecodedTour::Valid {
                order: vec![1, 3, 2]
            }
        );
        match decode(&Assignment::parse("0000").unwrap(), &g).unwrap() {
            DecodedTour::Violation { class, offending } => {
                assert_eq!(class, ConstraintClass::PositionUniqueness);
                assert_eq!(offending[0].0, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn decode_reports_missing_edges() {
        let path = Graph::new(3, [(1, 2), (2, 3)]).unwrap();
        match decode(&Assignment::parse("1001").unwrap(), &path).unwrap() {
            DecodedTour::Violation { class, offending } => {
                assert_eq!(class, ConstraintClass::EdgeValidity);
                assert_eq!(offending, vec![(3, 1)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn decode_length_mismatch() {
        assert_eq!(
            decode(&Assignment::parse("101").unwrap(), &triangle()),
            Err(Error::LengthMismatch {
                expected: 4,
                actual: 3
            })
        );
    }

    #[test]
    fn tours_round_trip() {
        for n in 3..=5 {
            let g = Graph::complete(n).unwrap();
            let cycles = hamiltonian_cycles(&g);
            // (n-1)! orders on the complete graph
            assert_eq!(cycles.len(), (1..n).product::<usize>());
            for order in cycles {
                let a = encode_tour(&order).unwrap();
                assert_eq!(decode(&a, &g).unwrap(), DecodedTour::Valid { order });
            }
        }
    }

    #[test]
    fn index_conversion_uses_leftmost_qubit_one() {
        let a = Assignment::parse("1000").unwrap();
        assert_eq!(a.to_index(), 1);
        assert_eq!(index_to_bitstring(1, 4), "1000");
        assert_eq!(Assignment::from_index(9, 4).to_string(), "1001");
    }
}

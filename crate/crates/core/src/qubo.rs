//! Multilinear QUBO polynomials and the three Hamiltonian-cycle penalty terms.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Assignment, Graph};
use crate::scalar::Coefficient;

/// Binary variable `x[vertex, position]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub vertex: usize,
    pub position: usize,
}

impl Var {
    pub const fn new(vertex: usize, position: usize) -> Self {
        Var { vertex, position }
    }
}

/// Multilinear polynomial in binary variables. Squares are reduced with
/// `x^2 = x` on insertion and zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboPolynomial<C> {
    constant: C,
    linear: BTreeMap<Var, C>,
    quadratic: BTreeMap<(Var, Var), C>,
}

impl<C: Coefficient> Default for QuboPolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

fn accumulate<K: Ord, C: Coefficient>(map: &mut BTreeMap<K, C>, key: K, c: C) {
    match map.entry(key) {
        Entry::Occupied(mut e) => {
            let sum = e.get().clone() + c;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
    }
}

impl<C: Coefficient> QuboPolynomial<C> {
    pub fn zero() -> Self {
        QuboPolynomial {
            constant: C::zero(),
            linear: BTreeMap::new(),
            quadratic: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.is_empty() && self.quadratic.is_empty()
    }

    pub fn constant(&self) -> &C {
        &self.constant
    }

    pub fn linear(&self) -> &BTreeMap<Var, C> {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(Var, Var), C> {
        &self.quadratic
    }

    pub fn add_constant(&mut self, c: C) {
        self.constant = self.constant.clone() + c;
    }

    pub fn add_linear(&mut self, x: Var, c: C) {
        if !c.is_zero() {
            accumulate(&mut self.linear, x, c);
        }
    }

    /// Add `c * x * y`; a repeated variable collapses to the linear term.
    pub fn add_product(&mut self, x: Var, y: Var, c: C) {
        if c.is_zero() {
            return;
        }
        match x.cmp(&y) {
            std::cmp::Ordering::Equal => self.add_linear(x, c),
            std::cmp::Ordering::Less => accumulate(&mut self.quadratic, (x, y), c),
            std::cmp::Ordering::Greater => accumulate(&mut self.quadratic, (y, x), c),
        }
    }

    /// Add `(offset + sum c_i x_i)^2`, expanded and reduced.
    pub fn add_square_of_affine(&mut self, offset: C, terms: &[(Var, C)]) {
        self.add_constant(offset.clone() * offset.clone());
        let two = C::one() + C::one();
        for (i, (x, cx)) in terms.iter().enumerate() {
            self.add_linear(*x, two.clone() * offset.clone() * cx.clone());
            self.add_linear(*x, cx.clone() * cx.clone());
            for (y, cy) in &terms[i + 1..] {
                self.add_product(*x, *y, two.clone() * cx.clone() * cy.clone());
            }
        }
    }

    pub fn scaled(&self, factor: &C) -> Self {
        let mut out = Self::zero();
        out.add_constant(self.constant.clone() * factor.clone());
        for (x, c) in &self.linear {
            out.add_linear(*x, c.clone() * factor.clone());
        }
        for ((x, y), c) in &self.quadratic {
            out.add_product(*x, *y, c.clone() * factor.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.add_constant(other.constant.clone());
        for (x, c) in &other.linear {
            self.add_linear(*x, c.clone());
        }
        for ((x, y), c) in &other.quadratic {
            self.add_product(*x, *y, c.clone());
        }
    }

    /// Evaluate on an assignment of the free block of an order-`n` encoding.
    /// Pinned variables take their fixed values.
    pub fn evaluate(&self, a: &Assignment, n: usize) -> Result<C> {
        let expected = (n - 1) * (n - 1);
        if a.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: a.len(),
            });
        }
        let value = |x: &Var| -> Result<bool> {
            if x.vertex == 0 || x.position == 0 || x.vertex > n || x.position > n {
                return Err(Error::UnmappedVariable {
                    vertex: x.vertex,
                    position: x.position,
                    n,
                });
            }
            Ok(a.var(x.vertex, x.position, n))
        };
        let mut total = self.constant.clone();
        for (x, c) in &self.linear {
            if value(x)? {
                total = total + c.clone();
            }
        }
        for ((x, y), c) in &self.quadratic {
            if value(x)? && value(y)? {
                total = total + c.clone();
            }
        }
        Ok(total)
    }
}

/// Per-term penalty weights. The uniform default weights all three terms by `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct PenaltyWeights<C> {
    pub vertex: C,
    pub position: C,
    pub edge: C,
}

impl<C: Coefficient> PenaltyWeights<C> {
    pub fn uniform(a: C) -> Self {
        PenaltyWeights {
            vertex: a.clone(),
            position: a.clone(),
            edge: a,
        }
    }

    fn validate(&self) -> Result<()> {
        let positive = |c: &C| c > &C::zero();
        if positive(&self.vertex) && positive(&self.position) && positive(&self.edge) {
            Ok(())
        } else {
            Err(Error::NonPositiveWeight)
        }
    }
}

/// `sum_{v=2..n} (1 - sum_{j=2..n} x[v,j])^2`. Row 1 contributes nothing
/// because `x[1,1] = 1`.
pub fn vertex_uniqueness<C: Coefficient>(n: usize) -> QuboPolynomial<C> {
    let mut poly = QuboPolynomial::zero();
    for v in 2..=n {
        let row: Vec<(Var, C)> = (2..=n).map(|j| (Var::new(v, j), -C::one())).collect();
        poly.add_square_of_affine(C::one(), &row);
    }
    poly
}

/// `sum_{j=2..n} (1 - sum_{v=2..n} x[v,j])^2`.
pub fn position_uniqueness<C: Coefficient>(n: usize) -> QuboPolynomial<C> {
    let mut poly = QuboPolynomial::zero();
    for j in 2..=n {
        let column: Vec<(Var, C)> = (2..=n).map(|v| (Var::new(v, j), -C::one())).collect();
        poly.add_square_of_affine(C::one(), &column);
    }
    poly
}

/// Penalty for consecutive positions holding non-adjacent vertices.
///
/// Non-adjacent `u, v >= 2` contribute `x[u,j] x[v,j+1]` for `j = 2..n-1`
/// in both orders. A vertex `u` not adjacent to vertex 1 contributes the
/// linear terms `x[u,n]` (u closes the cycle) and `x[u,2]` (u follows 1).
pub fn edge_validity<C: Coefficient>(g: &Graph) -> QuboPolynomial<C> {
    let n = g.n();
    let mut poly = QuboPolynomial::zero();
    for u in 2..=n {
        if !g.has_edge(u, 1) {
            poly.add_linear(Var::new(u, n), C::one());
            poly.add_linear(Var::new(u, 2), C::one());
        }
        for v in 2..=n {
            if u == v || g.has_edge(u, v) {
                continue;
            }
            for j in 2..n {
                poly.add_product(Var::new(u, j), Var::new(v, j + 1), C::one());
            }
        }
    }
    poly
}

/// Full penalty Hamiltonian with a uniform weight `A`.
pub fn assemble<C: Coefficient>(g: &Graph, a: C) -> Result<QuboPolynomial<C>> {
    assemble_weighted(g, &PenaltyWeights::uniform(a))
}

pub fn assemble_weighted<C: Coefficient>(
    g: &Graph,
    w: &PenaltyWeights<C>,
) -> Result<QuboPolynomial<C>> {
    w.validate()?;
    let n = g.n();
    let mut total = vertex_uniqueness::<C>(n).scaled(&w.vertex);
    total.add_assign(&position_uniqueness::<C>(n).scaled(&w.position));
    total.add_assign(&edge_validity::<C>(g).scaled(&w.edge));
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    type Q = QuboPolynomial<Rational64>;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    fn at(p: &Q, bits: &str, n: usize) -> Rational64 {
        p.evaluate(&Assignment::parse(bits).unwrap(), n).unwrap()
    }

    #[test]
    fn vertex_uniqueness_triangle_expansion() {
        let p = vertex_uniqueness::<Rational64>(3);
        // (1 - a - b)^2 = 1 - a - b + 2ab after a^2 = a
        assert_eq!(*p.constant(), r(2));
        for v in [2, 3] {
            for j in [2, 3] {
                assert_eq!(p.linear()[&Var::new(v, j)], r(-1));
            }
        }
        assert_eq!(p.quadratic().len(), 2);
        assert_eq!(p.quadratic()[&(Var::new(2, 2), Var::new(2, 3))], r(2));
        assert_eq!(p.quadratic()[&(Var::new(3, 2), Var::new(3, 3))], r(2));
        assert_eq!(at(&p, "1001", 3), r(0));
        assert_eq!(at(&vertex_uniqueness(4), "000000000", 4), r(3));
    }

    #[test]
    fn position_uniqueness_values() {
        let p = position_uniqueness::<Rational64>(3);
        assert_eq!(p.quadratic()[&(Var::new(2, 2), Var::new(3, 2))], r(2));
        // x[2,2] = x[3,2] = 1 -> qubits 1 and 3
        assert_eq!(at(&p, "1010", 3), r(2));
        assert_eq!(at(&position_uniqueness(4), "100010001", 4), r(0));
    }

    #[test]
    fn edge_validity_cases() {
        let triangle = Graph::complete(3).unwrap();
        assert!(edge_validity::<Rational64>(&triangle).is_zero());

        let square = Graph::cycle(4).unwrap();
        let p = edge_validity::<Rational64>(&square);
        let mut expected = Q::zero();
        let x = Var::new;
        expected.add_product(x(2, 2), x(4, 3), r(1));
        expected.add_product(x(2, 3), x(4, 4), r(1));
        expected.add_product(x(4, 2), x(2, 3), r(1));
        expected.add_product(x(4, 3), x(2, 4), r(1));
        expected.add_linear(x(3, 2), r(1));
        expected.add_linear(x(3, 4), r(1));
        assert_eq!(p, expected);

        // path 1-2-3: vertex 3 may neither follow nor precede 1
        let path = Graph::new(3, [(1, 2), (2, 3)]).unwrap();
        let p = edge_validity::<Rational64>(&path);
        let mut expected = Q::zero();
        expected.add_linear(x(3, 3), r(1));
        expected.add_linear(x(3, 2), r(1));
        assert_eq!(p, expected);
    }

    #[test]
    fn assembled_values() {
        let triangle = Graph::complete(3).unwrap();
        let h = assemble(&triangle, r(1)).unwrap();
        assert_eq!(at(&h, "1001", 3), r(0));
        assert_eq!(at(&h, "0000", 3), r(4));
        let square = Graph::cycle(4).unwrap();
        assert_eq!(at(&assemble(&square, r(1)).unwrap(), "100010001", 4), r(0));
        assert_eq!(assemble(&square, r(0)), Err(Error::NonPositiveWeight));
        assert_eq!(assemble(&square, r(-2)), Err(Error::NonPositiveWeight));
    }

    #[test]
    fn weighted_assembly_scales_terms() {
        let g = Graph::cycle(4).unwrap();
        let w = PenaltyWeights {
            vertex: Rational64::new(3, 2),
            position: r(1),
            edge: r(1),
        };
        let h = assemble_weighted(&g, &w).unwrap();
        // all-zero: three empty rows at 1.5 each, three empty columns
        assert_eq!(at(&h, "000000000", 4), Rational64::new(15, 2));
    }

    #[test]
    fn cancellation_drops_entries() {
        let mut p = Q::zero();
        p.add_linear(Var::new(2, 2), r(1));
        p.add_linear(Var::new(2, 2), r(-1));
        p.add_product(Var::new(2, 2), Var::new(2, 2), r(0));
        assert!(p.is_zero());
    }
}

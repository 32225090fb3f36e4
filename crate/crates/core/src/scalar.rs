//! Scalar abstractions shared by the compiler, the spectrum tools and the simulator.
//!
//! Compilation runs over [`Coefficient`], which is implemented for exact
//! rationals as well as floats. Everything that touches amplitudes needs a
//! [`Real`], i.e. an IEEE float.

use std::fmt::Debug;
use std::iter::Sum;

use num_rational::Rational64;
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive};

/// A coefficient ring element usable for Hamiltonian coefficients.
pub trait Coefficient:
    Clone + Debug + PartialOrd + Num + Signed + ToPrimitive + Send + Sync + 'static
{
    /// The value `num / den`, exact where the type allows it.
    fn ratio(num: i64, den: i64) -> Self;

    /// Equality used to group spectrum levels. Exact for rationals.
    fn same_level(&self, other: &Self) -> bool;

    /// Lossy conversion into a float for reporting and simulation.
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn half() -> Self {
        Self::ratio(1, 2)
    }
}

impl Coefficient for Rational64 {
    fn ratio(num: i64, den: i64) -> Self {
        Rational64::new(num, den)
    }

    fn same_level(&self, other: &Self) -> bool {
        self == other
    }
}

macro_rules! impl_float_coefficient {
    ($f:ty, $tol:expr) => {
        impl Coefficient for $f {
            fn ratio(num: i64, den: i64) -> Self {
                num as $f / den as $f
            }

            fn same_level(&self, other: &Self) -> bool {
                let scale = self.abs().max(other.abs()).max(1.0);
                (self - other).abs() <= $tol * scale
            }
        }
    };
}

impl_float_coefficient!(f32, 1e-5);
impl_float_coefficient!(f64, 1e-9);

/// Floating point scalar used for amplitudes, angles and expectations.
pub trait Real: Coefficient + Float + FloatConst + FromPrimitive + Sum + Default {
    /// Convert any coefficient into this float type.
    fn from_coefficient<C: Coefficient>(c: &C) -> Self {
        Self::from_f64(c.to_f64_lossy()).unwrap_or_else(Self::nan)
    }

    fn lit(x: f64) -> Self {
        Self::from_f64(x).unwrap_or_else(Self::nan)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Parse a decimal or `p/q` literal into a coefficient.
pub fn parse_coefficient<C: Coefficient + FromPrimitive>(text: &str) -> Option<C> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(C::ratio(p, q));
    }
    if let Ok(i) = text.parse::<i64>() {
        return Some(C::ratio(i, 1));
    }
    let f: f64 = text.parse().ok()?;
    if !f.is_finite() {
        return None;
    }
    C::from_f64(f)
}

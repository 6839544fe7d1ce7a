//! Points of the nonnegative orthant and the componentwise order.
//!
//! For `x, y` in the orthant:
//!
//! * `x ≤ y` when every component of `y - x` is nonnegative,
//! * `x < y` when `x ≤ y` and `x ≠ y`,
//! * `x ≪ y` when every component of `x` is strictly below `y`'s.
//!
//! Comparisons are exact floating-point comparisons. No tolerance is
//! applied here; numerical slack lives in the labeling parameter of the
//! homotopy solver.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `R^n_+` with `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct OrthantVector(Vec<f64>);

impl OrthantVector {
    /// Builds a vector, rejecting empty input, negative components and NaN.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some((index, &value)) = components.iter().enumerate().find(|(_, v)| !(**v >= 0.0)) {
            return Err(Error::NegativeComponent { index, value });
        }
        Ok(Self(components))
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "orthant vectors have at least one component");
        Self(vec![0.0; n])
    }

    /// `scale * e_i`, the scaled `i`-th unit vector (0-based).
    pub fn unit(n: usize, i: usize, scale: f64) -> Self {
        assert!(i < n && scale >= 0.0);
        let mut v = vec![0.0; n];
        v[i] = scale;
        Self(v)
    }

    /// `value * e` where `e` is the all-ones vector.
    pub fn constant(n: usize, value: f64) -> Self {
        assert!(n >= 1 && value >= 0.0);
        Self(vec![value; n])
    }

    /// Wraps components known to be valid (produced by a monotone map).
    pub(crate) fn from_trusted(components: Vec<f64>) -> Self {
        debug_assert!(!components.is_empty());
        debug_assert!(components.iter().all(|v| !(*v < 0.0)));
        Self(components)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0.0)
    }

    /// Largest component.
    pub fn sup_norm(&self) -> f64 {
        sup_norm(&self.0)
    }

    /// Componentwise maximum `self ⊕ other`.
    pub fn join(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.max(*b))
                .collect(),
        ))
    }

    /// Multiplies every component by a nonnegative factor.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "scale factor must be nonnegative, got {factor}"
            )));
        }
        Ok(Self(self.0.iter().map(|v| v * factor).collect()))
    }
}

impl Index<usize> for OrthantVector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.0[index]
    }
}

impl TryFrom<Vec<f64>> for OrthantVector {
    type Error = Error;

    fn try_from(value: Vec<f64>) -> Result<Self> {
        Self::new(value)
    }
}

impl From<OrthantVector> for Vec<f64> {
    fn from(value: OrthantVector) -> Self {
        value.0
    }
}

impl fmt::Display for OrthantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of comparing two orthant vectors, reported as the strongest
/// relation that holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderRelation {
    /// `x ≤ y`
    Leq,
    /// `x < y`
    Lt,
    /// `x ≪ y`
    Ll,
    Eq,
    Incomparable,
    /// `x ≥ y`
    Geq,
    /// `x > y`
    Gt,
    /// `x ≫ y`
    Gg,
}

impl OrderRelation {
    /// Whether `x ≤ y` follows from this relation.
    pub fn is_leq(self) -> bool {
        matches!(self, Self::Leq | Self::Lt | Self::Ll | Self::Eq)
    }

    /// Whether `x ≥ y` follows from this relation.
    pub fn is_geq(self) -> bool {
        matches!(self, Self::Geq | Self::Gt | Self::Gg | Self::Eq)
    }

    /// The relation seen from the other side.
    pub fn reverse(self) -> Self {
        match self {
            Self::Leq => Self::Geq,
            Self::Lt => Self::Gt,
            Self::Ll => Self::Gg,
            Self::Geq => Self::Leq,
            Self::Gt => Self::Lt,
            Self::Gg => Self::Ll,
            Self::Eq => Self::Eq,
            Self::Incomparable => Self::Incomparable,
        }
    }
}

/// Compares `x` against `y` componentwise.
pub fn compare(x: &OrthantVector, y: &OrthantVector) -> Result<OrderRelation> {
    check_dims(x.dim(), y.dim())?;
    Ok(compare_slices(x.as_slice(), y.as_slice()))
}

pub(crate) fn compare_slices(x: &[f64], y: &[f64]) -> OrderRelation {
    let (mut below, mut above, mut equal) = (0usize, 0usize, 0usize);
    for (a, b) in x.iter().zip(y) {
        if a < b {
            below += 1;
        } else if a > b {
            above += 1;
        } else {
            equal += 1;
        }
    }
    let n = x.len();
    match (below, above) {
        (0, 0) => OrderRelation::Eq,
        (b, 0) if b == n => OrderRelation::Ll,
        (_, 0) => OrderRelation::Lt,
        (0, a) if a == n => OrderRelation::Gg,
        (0, _) => OrderRelation::Gt,
        _ => {
            debug_assert!(below + above + equal == n);
            OrderRelation::Incomparable
        }
    }
}

/// `x ≤ y` componentwise.
pub(crate) fn leq(x: &[f64], y: &[f64]) -> bool {
    x.iter().zip(y).all(|(a, b)| a <= b)
}

pub(crate) fn sup_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Sum of components. On the orthant this is the 1-norm.
pub fn one_norm(x: &OrthantVector) -> f64 {
    x.iter().sum()
}

/// Rescales `x` onto the sphere `S_r = { s ≥ 0 : ‖s‖₁ = r }`.
pub fn sphere_project(x: &OrthantVector, r: f64) -> Result<OrthantVector> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "radius must be positive, got {r}"
        )));
    }
    let norm = one_norm(x);
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(OrthantVector(x.iter().map(|v| v * (r / norm)).collect()))
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

//! Monotone self-maps of the nonnegative orthant.
//!
//! A [`MonotoneMap`] is a pure rule `s ↦ Ts` with `T(0) = 0` and
//! `x ≤ y ⇒ Tx ≤ Ty`. Monotonicity is a contract of the implementor; the
//! built-in families satisfy it by construction and the test suite
//! samples it. [`MapSpec`] is the serializable description used by map
//! files.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maxpreserving::{GainTable, MaxPreservingMap};
use crate::order::{check_dims, OrthantVector};
use crate::scalar::{pow, validation_grid, ScalarFn};

/// A monotone, continuous map `T: R^n_+ → R^n_+` with `T(0) = 0`.
pub trait MonotoneMap: Send + Sync {
    fn dim(&self) -> usize;

    /// Writes `Ts` into `out`. Both slices have length [`dim`](Self::dim)
    /// and `s` is nonnegative.
    fn apply(&self, s: &[f64], out: &mut [f64]);

    /// Evaluates `Ts`, validating the input.
    fn eval(&self, s: &OrthantVector) -> Result<OrthantVector> {
        check_dims(self.dim(), s.dim())?;
        let mut out = vec![0.0; self.dim()];
        self.apply(s.as_slice(), &mut out);
        OrthantVector::new(out)
    }
}

impl<M: MonotoneMap + ?Sized> MonotoneMap for &M {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn apply(&self, s: &[f64], out: &mut [f64]) {
        (**self).apply(s, out)
    }
}

impl<M: MonotoneMap + ?Sized> MonotoneMap for Box<M> {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn apply(&self, s: &[f64], out: &mut [f64]) {
        (**self).apply(s, out)
    }
}

impl<M: MonotoneMap + ?Sized> MonotoneMap for Arc<M> {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn apply(&self, s: &[f64], out: &mut [f64]) {
        (**self).apply(s, out)
    }
}

/// Wraps a closure as a map. The caller is responsible for monotonicity.
pub struct FnMap<F> {
    n: usize,
    f: F,
}

impl<F> FnMap<F>
where
    F: Fn(&[f64], &mut [f64]) + Send + Sync,
{
    pub fn new(n: usize, f: F) -> Self {
        Self { n, f }
    }
}

impl<F> MonotoneMap for FnMap<F>
where
    F: Fn(&[f64], &mut [f64]) + Send + Sync,
{
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, s: &[f64], out: &mut [f64]) {
        (self.f)(s, out)
    }
}

/// `s ↦ A s` for a nonnegative square matrix `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    n: usize,
    // row-major
    entries: Vec<f64>,
}

impl LinearMap {
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.n + col]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(<[f64]>::to_vec).collect()
    }
}

impl MonotoneMap for LinearMap {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, s: &[f64], out: &mut [f64]) {
        for (row, o) in self.entries.chunks_exact(self.n).zip(out.iter_mut()) {
            *o = row.iter().zip(s).map(|(a, x)| a * x).sum();
        }
    }
}

/// Builds `s ↦ A s` from the rows of a nonnegative matrix.
pub fn make_linear_map(rows: &[Vec<f64>]) -> Result<LinearMap> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::InvalidParameter("matrix has no rows".into()));
    }
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        check_dims(n, row.len())?;
        for (j, &value) in row.iter().enumerate() {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(Error::NegativeEntry {
                    row: i,
                    col: j,
                    value,
                });
            }
            entries.push(value);
        }
    }
    Ok(LinearMap { n, entries })
}

/// The chain map `(Ts)ᵢ = ¼(s_{i−1}^{1/i} + s_{i+1}^{i+1})` (1-based
/// indices, `s₀ = s_{n+1} = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainMap {
    n: usize,
}

impl MonotoneMap for ChainMap {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, s: &[f64], out: &mut [f64]) {
        let n = self.n;
        for k in 0..n {
            // 1-based index i = k + 1
            let from_below = if k > 0 {
                pow(s[k - 1], 1.0 / (k + 1) as f64)
            } else {
                0.0
            };
            let from_above = if k + 1 < n {
                s[k + 1].powi(k as i32 + 2)
            } else {
                0.0
            };
            out[k] = 0.25 * (from_below + from_above);
        }
    }
}

pub fn make_chain_map(n: usize) -> Result<ChainMap> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "chain map needs n >= 2, got {n}"
        )));
    }
    Ok(ChainMap { n })
}

/// `p(r) = (r, r^{1/2!}, r^{1/3!}, …, r^{1/n!})`, a point with
/// `T p(r) ≪ p(r)` for the chain map.
pub fn chain_feasible_point(n: usize, r: f64) -> Result<OrthantVector> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "r must be positive, got {r}"
        )));
    }
    let mut exponent = 1.0;
    let components = (1..=n)
        .map(|k| {
            exponent /= k as f64;
            r.powf(exponent)
        })
        .collect();
    OrthantVector::new(components)
}

/// The two-dimensional map `T(x) = (√x₂, λ x₁²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlipFlopMap {
    lambda: f64,
}

impl FlipFlopMap {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

impl MonotoneMap for FlipFlopMap {
    fn dim(&self) -> usize {
        2
    }

    fn apply(&self, s: &[f64], out: &mut [f64]) {
        out[0] = s[1].sqrt();
        out[1] = self.lambda * s[0] * s[0];
    }
}

pub fn make_flipflop_map(lambda: f64) -> Result<FlipFlopMap> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "flip-flop parameter must lie in (0, 1), got {lambda}"
        )));
    }
    Ok(FlipFlopMap { lambda })
}

/// `(Ts)ᵢ = maxⱼ γᵢⱼ(sⱼ)`.
pub fn make_max_preserving(gains: GainTable) -> Result<MaxPreservingMap> {
    gains.validate(&validation_grid())?;
    Ok(MaxPreservingMap::new(gains))
}

/// `D = diag(ρ₁, …, ρₙ)` with `(Ds)ᵢ = ρᵢ(sᵢ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalMap {
    functions: Vec<ScalarFn>,
}

impl MonotoneMap for DiagonalMap {
    fn dim(&self) -> usize {
        self.functions.len()
    }

    fn apply(&self, s: &[f64], out: &mut [f64]) {
        for ((o, x), f) in out.iter_mut().zip(s).zip(&self.functions) {
            *o = f.eval(*x);
        }
    }
}

/// Builds a diagonal map; every entry must pass the K∞ sample checks.
pub fn make_diagonal(functions: Vec<ScalarFn>) -> Result<DiagonalMap> {
    if functions.is_empty() {
        return Err(Error::InvalidParameter(
            "diagonal map needs at least one entry".into(),
        ));
    }
    let grid = validation_grid();
    for f in &functions {
        f.check_class_k_inf(&grid)?;
    }
    Ok(DiagonalMap { functions })
}

/// `outer ∘ inner`.
pub struct Composed<O, I> {
    outer: O,
    inner: I,
}

impl<O: MonotoneMap, I: MonotoneMap> MonotoneMap for Composed<O, I> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn apply(&self, s: &[f64], out: &mut [f64]) {
        let mut mid = vec![0.0; self.inner.dim()];
        self.inner.apply(s, &mut mid);
        self.outer.apply(&mid, out);
    }
}

pub fn compose<O: MonotoneMap, I: MonotoneMap>(outer: O, inner: I) -> Result<Composed<O, I>> {
    check_dims(outer.dim(), inner.dim())?;
    Ok(Composed { outer, inner })
}

/// One entry `γᵢⱼ` of a gain table in a map file, with 1-based indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainEntry {
    pub i: usize,
    pub j: usize,
    pub gain: ScalarFn,
}

/// Declarative description of a monotone map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MapSpec {
    Linear {
        matrix: Vec<Vec<f64>>,
    },
    Chain {
        n: usize,
    },
    Flipflop {
        lambda: f64,
    },
    Maxpreserving {
        n: usize,
        gains: Vec<GainEntry>,
    },
    Diagonal {
        functions: Vec<ScalarFn>,
    },
    Composition {
        outer: Box<MapSpec>,
        inner: Box<MapSpec>,
    },
}

impl MapSpec {
    /// Dimension of the described map (not validated).
    pub fn dim(&self) -> usize {
        match self {
            Self::Linear { matrix } => matrix.len(),
            Self::Chain { n } | Self::Maxpreserving { n, .. } => *n,
            Self::Flipflop { .. } => 2,
            Self::Diagonal { functions } => functions.len(),
            Self::Composition { inner, .. } => inner.dim(),
        }
    }

    pub fn gain_table(&self) -> Result<GainTable> {
        let Self::Maxpreserving { n, gains } = self else {
            return Err(Error::InvalidParameter("not a max-preserving spec".into()));
        };
        let mut table = GainTable::new(*n)?;
        for GainEntry { i, j, gain } in gains {
            if *i == 0 || *j == 0 || *i > *n || *j > *n {
                return Err(Error::InvalidParameter(format!(
                    "gain index ({i}, {j}) outside 1..={n}"
                )));
            }
            table.set(i - 1, j - 1, gain.clone());
        }
        Ok(table)
    }

    /// Validates the description and builds the evaluatable map.
    pub fn build(&self) -> Result<Box<dyn MonotoneMap>> {
        Ok(match self {
            Self::Linear { matrix } => Box::new(make_linear_map(matrix)?),
            Self::Chain { n } => Box::new(make_chain_map(*n)?),
            Self::Flipflop { lambda } => Box::new(make_flipflop_map(*lambda)?),
            Self::Maxpreserving { .. } => Box::new(make_max_preserving(self.gain_table()?)?),
            Self::Diagonal { functions } => Box::new(make_diagonal(functions.clone())?),
            Self::Composition { outer, inner } => {
                Box::new(compose(outer.build()?, inner.build()?)?)
            }
        })
    }
}

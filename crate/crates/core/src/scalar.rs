//! A small closed vocabulary of scalar gain functions `R_+ → R_+`.
//!
//! Gains of max-preserving maps and the entries of diagonal maps are
//! described declaratively so that map files stay serializable. Class-K
//! and class-K∞ properties are checked on a sample grid, not proven.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for `f(0) = 0`.
const ZERO_TOLERANCE: f64 = 1e-12;

/// A scalar function built from linear maps and powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarFn {
    /// `t ↦ c·t`
    Linear(f64),
    /// `t ↦ t^a`
    Power(f64),
    /// `t ↦ c·t^a`
    ScaledPower { coeff: f64, exponent: f64 },
    /// Pointwise sum.
    Sum(Vec<ScalarFn>),
    /// Pointwise maximum.
    Max(Vec<ScalarFn>),
}

impl ScalarFn {
    pub fn identity() -> Self {
        Self::Linear(1.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Self::Linear(c) => c * t,
            Self::Power(a) => pow(t, *a),
            Self::ScaledPower { coeff, exponent } => coeff * pow(t, *exponent),
            Self::Sum(parts) => parts.iter().map(|f| f.eval(t)).sum(),
            Self::Max(parts) => parts.iter().fold(0.0, |m, f| m.max(f.eval(t))),
        }
    }

    /// The zero function in this vocabulary.
    pub fn is_zero(&self) -> bool {
        match self {
            Self::Linear(c) => *c == 0.0,
            Self::ScaledPower { coeff, .. } => *coeff == 0.0,
            Self::Power(_) => false,
            Self::Sum(parts) | Self::Max(parts) => parts.iter().all(Self::is_zero),
        }
    }

    fn unbounded(&self) -> bool {
        match self {
            Self::Linear(c) => *c > 0.0,
            Self::Power(a) => *a > 0.0,
            Self::ScaledPower { coeff, exponent } => *coeff > 0.0 && *exponent > 0.0,
            Self::Sum(parts) | Self::Max(parts) => parts.iter().any(Self::unbounded),
        }
    }

    /// Checks `f(0) = 0`, `f ≥ 0` and that `f` is nondecreasing on `grid`.
    pub fn check_class_k0(&self, grid: &[f64]) -> Result<()> {
        let at_zero = self.eval(0.0);
        if !(at_zero.abs() <= ZERO_TOLERANCE) {
            return Err(Error::InvalidFunction(format!(
                "{self:?} evaluates to {at_zero} at 0"
            )));
        }
        let mut prev = (0.0, at_zero);
        for &t in grid {
            let value = self.eval(t);
            if !(value >= 0.0) || !value.is_finite() {
                return Err(Error::InvalidFunction(format!(
                    "{self:?} evaluates to {value} at {t}"
                )));
            }
            if value < prev.1 {
                return Err(Error::InvalidFunction(format!(
                    "{self:?} decreases between {} and {t}",
                    prev.0
                )));
            }
            prev = (t, value);
        }
        Ok(())
    }

    /// Checks the K∞ properties: zero at zero, strictly increasing on
    /// `grid`, and unbounded. Unboundedness is read off the descriptor.
    pub fn check_class_k_inf(&self, grid: &[f64]) -> Result<()> {
        self.check_class_k0(grid)?;
        let mut prev = (0.0, self.eval(0.0));
        for &t in grid {
            let value = self.eval(t);
            if value <= prev.1 {
                return Err(Error::InvalidFunction(format!(
                    "{self:?} is not strictly increasing between {} and {t}",
                    prev.0
                )));
            }
            prev = (t, value);
        }
        if !self.unbounded() {
            return Err(Error::InvalidFunction(format!("{self:?} is bounded")));
        }
        Ok(())
    }
}

/// Real power on the positive branch with `0^a = 0` for `a > 0`.
pub(crate) fn pow(t: f64, a: f64) -> f64 {
    if t == 0.0 {
        if a > 0.0 {
            0.0
        } else if a == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else if a == a.trunc() && a.abs() <= i32::MAX as f64 {
        t.powi(a as i32)
    } else {
        t.powf(a)
    }
}

/// `points` log-spaced values from `lo` to `hi`, both included.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && points >= 2);
    let (a, b) = (lo.log10(), hi.log10());
    (0..points)
        .map(|k| {
            if k + 1 == points {
                hi
            } else {
                10f64.powf(a + (b - a) * k as f64 / (points - 1) as f64)
            }
        })
        .collect()
}

/// The sampling grid used to validate map descriptors: 25 log-spaced
/// points on `[1e-3, 1e3]`.
pub fn validation_grid() -> Vec<f64> {
    log_grid(1e-3, 1e3, 25)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_vocabulary() {
        assert_eq!(ScalarFn::Linear(2.0).eval(3.0), 6.0);
        assert_eq!(ScalarFn::Power(2.0).eval(3.0), 9.0);
        assert_eq!(
            ScalarFn::ScaledPower {
                coeff: 0.5,
                exponent: 3.0
            }
            .eval(2.0),
            4.0
        );
        let sum = ScalarFn::Sum(vec![ScalarFn::identity(), ScalarFn::identity()]);
        assert_eq!(sum.eval(1.0), 2.0);
        let max = ScalarFn::Max(vec![ScalarFn::Linear(0.5), ScalarFn::Power(2.0)]);
        assert_eq!(max.eval(0.25), 0.125);
        assert_eq!(max.eval(4.0), 16.0);
    }

    #[test]
    fn fractional_power_of_zero_is_zero() {
        assert_eq!(ScalarFn::Power(1.0 / 3.0).eval(0.0), 0.0);
        assert_eq!(pow(0.0, 0.5), 0.0);
        assert_eq!(pow(8.0, 1.0 / 3.0), 2.0);
    }

    #[test]
    fn class_checks() {
        let grid = validation_grid();
        assert_eq!(grid.len(), 25);
        assert!(ScalarFn::Linear(0.0).check_class_k0(&grid).is_ok());
        assert!(ScalarFn::Linear(0.0).check_class_k_inf(&grid).is_err());
        assert!(ScalarFn::Linear(-1.0).check_class_k0(&grid).is_err());
        assert!(ScalarFn::Power(0.0).check_class_k0(&grid).is_err());
        assert!(ScalarFn::Power(0.5).check_class_k_inf(&grid).is_ok());
        assert!(ScalarFn::Max(vec![ScalarFn::Linear(0.0)])
            .check_class_k_inf(&grid)
            .is_err());
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1e-3, 1e3, 49);
        assert_eq!(g.len(), 49);
        assert!((g[0] - 1e-3).abs() < 1e-18);
        assert_eq!(g[48], 1e3);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }
}

//! Linear monotone maps: spectral radius, Perron vector, Neumann series
//! and a seeded generator of contractive random matrices.
//!
//! For a nonnegative matrix `A` the following are equivalent: `ρ(A) < 1`;
//! some `s ≫ 0` has `As ≪ s`; `(I − A)⁻¹ = Σ A^k` exists and is
//! nonnegative. The functions here compute each side independently so
//! the equivalences can be cross-checked.
//!
//! Random matrices use the ChaCha8 generator (`rand_chacha`) seeded with
//! `seed_from_u64`, drawing entries row by row, uniform on `[0, 1)`.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::maps::{make_linear_map, LinearMap};
use crate::order::OrthantVector;

const PLAIN_ITERATIONS: usize = 1_000;
const MAX_ITERATIONS: usize = 100_000;
/// Shift used when plain power iteration oscillates.
const SHIFT: f64 = 1e-3;
const MAX_REDRAWS: usize = 16;
const NEUMANN_MAX_TERMS: usize = 100_000;
/// Residual bound for [`perron_direction`].
pub const PERRON_RESIDUAL: f64 = 1e-8;

/// A square matrix with nonnegative entries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonnegativeMatrix(#[serde(serialize_with = "serialize_rows")] DMatrix<f64>);

fn serialize_rows<S: serde::Serializer>(
    m: &DMatrix<f64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.nrows()))?;
    for row in m.row_iter() {
        seq.serialize_element(&row.iter().copied().collect::<Vec<_>>())?;
    }
    seq.end()
}

impl NonnegativeMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        // same validation as the linear map
        let map = make_linear_map(rows)?;
        let n = rows.len();
        Ok(Self(DMatrix::from_fn(n, n, |i, j| map.entry(i, j))))
    }

    pub fn from_matrix(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() || m.nrows() == 0 {
            return Err(Error::InvalidParameter(format!(
                "matrix must be square and nonempty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        for row in 0..m.nrows() {
            for col in 0..m.ncols() {
                let value = m[(row, col)];
                if !(value >= 0.0) || !value.is_finite() {
                    return Err(Error::NegativeEntry { row, col, value });
                }
            }
        }
        Ok(Self(m))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.0
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect()
    }

    pub fn to_map(&self) -> LinearMap {
        make_linear_map(&self.rows()).expect("entries already validated")
    }

    /// `factor · A` for `factor ≥ 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor >= 0.0) || !factor.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "scale must be nonnegative, got {factor}"
            )));
        }
        Ok(Self(&self.0 * factor))
    }
}

/// Dominant eigenvalue with a nonnegative eigenvector (1-norm one).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronPair {
    pub value: f64,
    pub vector: OrthantVector,
}

struct PowerResult {
    value: f64,
    vector: Vec<f64>,
    converged: bool,
    iterations: usize,
}

fn power_iteration(a: &DMatrix<f64>, shift: f64, tol: f64, max_iterations: usize) -> PowerResult {
    let n = a.nrows();
    let mut v = vec![1.0 / n as f64; n];
    let mut w = vec![0.0; n];
    let mut prev = f64::NAN;
    let mut calm_steps = 0;
    for it in 1..=max_iterations {
        for (i, wi) in w.iter_mut().enumerate() {
            *wi = shift * v[i] + (0..n).map(|j| a[(i, j)] * v[j]).sum::<f64>();
        }
        // ‖v‖₁ = 1, so ‖Av‖₁ estimates the eigenvalue
        let value: f64 = w.iter().sum();
        if value == 0.0 {
            return PowerResult {
                value: 0.0,
                vector: v,
                converged: true,
                iterations: it,
            };
        }

        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for (wi, vi) in w.iter().zip(&v) {
            if *vi > 0.0 {
                let q = wi / vi;
                lo = lo.min(q);
                hi = hi.max(q);
            } else if *wi > 0.0 {
                hi = f64::INFINITY;
            }
        }
        let bracket_tight = v.iter().all(|x| *x > 0.0) && hi - lo <= tol * hi;

        if (value - prev).abs() <= tol * value {
            calm_steps += 1;
        } else {
            calm_steps = 0;
        }
        prev = value;

        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / value;
        }
        if bracket_tight {
            return PowerResult {
                value: 0.5 * (lo + hi),
                vector: v,
                converged: true,
                iterations: it,
            };
        }
        if calm_steps >= 2 {
            return PowerResult {
                value,
                vector: v,
                converged: true,
                iterations: it,
            };
        }
    }
    PowerResult {
        value: prev,
        vector: v,
        converged: false,
        iterations: max_iterations,
    }
}

fn dominant(a: &NonnegativeMatrix, tol: f64) -> Result<PowerResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let m = a.as_matrix();
    let plain = power_iteration(m, 0.0, tol, PLAIN_ITERATIONS);
    if plain.converged {
        return Ok(plain);
    }
    let shifted = power_iteration(m, SHIFT, tol, MAX_ITERATIONS - PLAIN_ITERATIONS);
    if !shifted.converged {
        return Err(Error::NotConverged {
            iterations: MAX_ITERATIONS,
        });
    }
    Ok(PowerResult {
        value: (shifted.value - SHIFT).max(0.0),
        iterations: plain.iterations + shifted.iterations,
        ..shifted
    })
}

/// `ρ(A)` by power iteration from `e/n`, with a shifted restart for
/// periodic matrices.
pub fn spectral_radius(a: &NonnegativeMatrix, tol: f64) -> Result<f64> {
    Ok(dominant(a, tol)?.value)
}

/// Perron eigenpair `A v = ρ v`, `v ≥ 0`, `‖v‖₁ = 1`.
pub fn perron_direction(a: &NonnegativeMatrix) -> Result<PerronPair> {
    let result = dominant(a, 1e-14)?;
    if result.value == 0.0 {
        return Err(Error::Precondition("spectral radius is zero".into()));
    }
    let m = a.as_matrix();
    let v = &result.vector;
    let residual = (0..a.dim())
        .map(|i| ((0..a.dim()).map(|j| m[(i, j)] * v[j]).sum::<f64>() - result.value * v[i]).abs())
        .fold(0.0, f64::max);
    if !(residual < PERRON_RESIDUAL) {
        return Err(Error::NotConverged {
            iterations: result.iterations,
        });
    }
    Ok(PerronPair {
        value: result.value,
        vector: OrthantVector::new(result.vector)?,
    })
}

/// Uniform `[0,1)` entries from `seed`, rescaled to spectral radius `rho_target`.
pub fn random_contractive(n: usize, rho_target: f64, seed: u64) -> Result<NonnegativeMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if !(rho_target > 0.0) || !rho_target.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "target radius must be positive, got {rho_target}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REDRAWS {
        let mut m = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = rng.gen::<f64>();
            }
        }
        let draw = NonnegativeMatrix(m);
        let rho = spectral_radius(&draw, 1e-15)?;
        if rho > 0.0 {
            return draw.scaled(rho_target / rho);
        }
    }
    Err(Error::NotConverged {
        iterations: MAX_REDRAWS,
    })
}

/// `(I − A)⁻¹ = Σ_{k≥0} A^k`, summed until the next term has row-sum norm
/// below `tol`. Then `‖(I − A)M − I‖∞ < tol`.
pub fn neumann_inverse(a: &NonnegativeMatrix, tol: f64) -> Result<DMatrix<f64>> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let rho = spectral_radius(a, 1e-12)?;
    if rho >= 1.0 {
        return Err(Error::Precondition(format!(
            "spectral radius {rho} is not below 1"
        )));
    }
    let n = a.dim();
    let m = a.as_matrix();
    let mut sum = DMatrix::<f64>::identity(n, n);
    let mut term = DMatrix::<f64>::identity(n, n);
    for _ in 0..NEUMANN_MAX_TERMS {
        term = m * &term;
        if inf_norm(&term) < tol {
            return Ok(sum);
        }
        sum += &term;
    }
    Err(Error::NotConverged {
        iterations: NEUMANN_MAX_TERMS,
    })
}

/// Maximum row sum of absolute values.
pub fn inf_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    fn mat(rows: &[&[f64]]) -> NonnegativeMatrix {
        NonnegativeMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn spectral_radius_examples() {
        assert_eq!(
            spectral_radius(&mat(&[&[0., 0.], &[0., 0.]]), 1e-12).unwrap(),
            0.0
        );
        assert_relative_eq!(
            spectral_radius(&mat(&[&[0., 0.5], &[0.5, 0.]]), 1e-12).unwrap(),
            0.5,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            spectral_radius(&mat(&[&[0.8]]), 1e-12).unwrap(),
            0.8,
            max_relative = 1e-12
        );
    }

    #[test]
    fn periodic_matrix_uses_shift() {
        // eigenvalues ±0.5
        let a = mat(&[&[0., 1.], &[0.25, 0.]]);
        assert_relative_eq!(
            spectral_radius(&a, 1e-12).unwrap(),
            0.5,
            max_relative = 1e-8
        );
        let cyclic = mat(&[&[0., 0.3, 0.], &[0., 0., 0.3], &[0.3, 0., 0.]]);
        assert_relative_eq!(
            spectral_radius(&cyclic, 1e-12).unwrap(),
            0.3,
            max_relative = 1e-8
        );
    }

    #[test]
    fn reducible_and_nilpotent() {
        let diag = mat(&[&[0.5, 0.], &[0., 0.2]]);
        assert_relative_eq!(
            spectral_radius(&diag, 1e-12).unwrap(),
            0.5,
            max_relative = 1e-9
        );
        let nil = mat(&[&[0., 1.], &[0., 0.]]);
        assert_eq!(spectral_radius(&nil, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn random_contractive_hits_target() {
        for seed in 0..5 {
            let a = random_contractive(5, 0.8, seed).unwrap();
            let rho = spectral_radius(&a, 1e-13).unwrap();
            assert!((rho - 0.8).abs() <= 0.8e-6, "seed {seed}: {rho}");
        }
        assert_eq!(
            random_contractive(6, 0.8, 42).unwrap(),
            random_contractive(6, 0.8, 42).unwrap()
        );
        assert_ne!(
            random_contractive(6, 0.8, 42).unwrap(),
            random_contractive(6, 0.8, 43).unwrap()
        );
        let one = random_contractive(1, 0.8, 7).unwrap();
        assert_relative_eq!(one.as_matrix()[(0, 0)], 0.8, max_relative = 1e-15);
        assert!(random_contractive(0, 0.8, 1).is_err());
        assert!(random_contractive(3, 0.0, 1).is_err());
    }

    #[test]
    fn neumann_examples() {
        let m = neumann_inverse(&mat(&[&[0.5]]), 1e-12).unwrap();
        assert_relative_eq!(m[(0, 0)], 2.0, max_relative = 1e-11);
        let m = neumann_inverse(&mat(&[&[0., 0.], &[0., 0.]]), 1e-12).unwrap();
        assert_eq!(m, DMatrix::identity(2, 2));
        let m = neumann_inverse(&mat(&[&[0., 0.5], &[0.5, 0.]]), 1e-12).unwrap();
        let expected = DMatrix::from_row_slice(2, 2, &[4. / 3., 2. / 3., 2. / 3., 4. / 3.]);
        assert!((m - expected).amax() < 1e-11);
    }

    #[test]
    fn neumann_residual_and_rejection() {
        let a = random_contractive(6, 0.9, 11).unwrap();
        let m = neumann_inverse(&a, 1e-9).unwrap();
        let residual = (DMatrix::identity(6, 6) - a.as_matrix()) * &m - DMatrix::identity(6, 6);
        assert!(inf_norm(&residual) < 1e-8);
        assert!(m.iter().all(|x| *x >= 0.0));
        assert!(matches!(
            neumann_inverse(&mat(&[&[1.0]]), 1e-9),
            Err(Error::Precondition(_))
        ));
        assert!(neumann_inverse(&random_contractive(4, 1.2, 3).unwrap(), 1e-9).is_err());
    }

    #[test]
    fn perron_examples() {
        let p = perron_direction(&mat(&[&[0., 0.5], &[0.5, 0.]])).unwrap();
        assert_relative_eq!(p.value, 0.5, max_relative = 1e-12);
        assert_relative_eq!(p.vector[0], 0.5, max_relative = 1e-12);
        assert_relative_eq!(p.vector[1], 0.5, max_relative = 1e-12);

        let p = perron_direction(&mat(&[&[0.8]])).unwrap();
        assert_eq!(p.vector.as_slice(), &[1.0]);

        // characteristic polynomial λ² − 1.1λ + 0.24: λ = 0.8, v ∝ (1, 1)
        let p = perron_direction(&mat(&[&[0.4, 0.4], &[0.1, 0.7]])).unwrap();
        assert_relative_eq!(p.value, 0.8, max_relative = 1e-10);
        assert_relative_eq!(p.vector[0], 0.5, max_relative = 1e-8);
        assert_relative_eq!(p.vector[1], 0.5, max_relative = 1e-8);

        assert!(perron_direction(&mat(&[&[0.]])).is_err());
    }

    #[test]
    fn matrix_validation() {
        assert!(NonnegativeMatrix::from_rows(&[vec![-1.0]]).is_err());
        assert!(NonnegativeMatrix::from_matrix(DMatrix::from_element(2, 3, 1.0)).is_err());
        assert!(NonnegativeMatrix::from_matrix(DMatrix::from_element(2, 2, -1.0)).is_err());
    }
}

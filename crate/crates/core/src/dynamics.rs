//! Trajectories of `s⁺ = Ts` and the two-step certificate: find a decay
//! point `s*` on `S_r`, then check that `T^k s*` is a null sequence.
//!
//! If the trajectory from `s*` tends to zero, monotonicity confines every
//! trajectory starting in `[0, s*]` below it, so the whole order interval
//! lies in the region of attraction.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homotopy::{find_decay_point, SolveReport, SolverConfig};
use crate::maps::MonotoneMap;
use crate::order::{check_dims, leq, sup_norm, OrthantVector};

pub const DEFAULT_STOP_TOL: f64 = 1e-6;
pub const DEFAULT_K_MAX: usize = 10_000;

/// Every state is stored up to this step, afterwards every tenth.
const DENSE_PREFIX: usize = 100;
const SPARSE_STRIDE: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub step: usize,
    pub state: OrthantVector,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryReport {
    /// Decimated states `φ(k)`, always including the first and last.
    pub states: Vec<TrajectoryPoint>,
    pub converged: bool,
    pub steps_used: usize,
    pub final_sup_norm: f64,
    /// Whether every step satisfied `φ(k+1) ≤ φ(k)`.
    pub nonincreasing: bool,
}

impl TrajectoryReport {
    pub fn initial(&self) -> &OrthantVector {
        &self.states[0].state
    }

    pub fn last(&self) -> &OrthantVector {
        &self
            .states
            .last()
            .expect("trajectory has an initial state")
            .state
    }
}

/// Iterates `s⁺ = Ts` from `s0` until the sup-norm drops below `stop_tol`
/// or `k_max` steps have been taken.
pub fn iterate(
    map: &dyn MonotoneMap,
    s0: &OrthantVector,
    k_max: usize,
    stop_tol: f64,
) -> Result<TrajectoryReport> {
    check_dims(map.dim(), s0.dim())?;
    if k_max == 0 {
        return Err(Error::InvalidParameter("k_max must be at least 1".into()));
    }
    if !(stop_tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "stop_tol must be positive, got {stop_tol}"
        )));
    }

    let mut states = vec![TrajectoryPoint {
        step: 0,
        state: s0.clone(),
    }];
    let mut current = s0.as_slice().to_vec();
    let mut next = vec![0.0; current.len()];
    let mut nonincreasing = true;
    let mut step = 0;
    let mut norm = sup_norm(&current);
    while norm >= stop_tol && step < k_max {
        map.apply(&current, &mut next);
        step += 1;
        nonincreasing &= leq(&next, &current);
        std::mem::swap(&mut current, &mut next);
        norm = sup_norm(&current);
        if norm.is_nan() {
            return Err(Error::InvalidParameter(format!(
                "map produced NaN at step {step}"
            )));
        }
        if step <= DENSE_PREFIX || step % SPARSE_STRIDE == 0 {
            states.push(TrajectoryPoint {
                step,
                state: OrthantVector::new(current.clone())?,
            });
        }
    }
    if states.last().map(|p| p.step) != Some(step) {
        states.push(TrajectoryPoint {
            step,
            state: OrthantVector::new(current)?,
        });
    }
    Ok(TrajectoryReport {
        states,
        converged: norm < stop_tol,
        steps_used: step,
        final_sup_norm: norm,
        nonincreasing,
    })
}

/// Runs the trajectory from `s_star` and reports whether it is a null
/// sequence (down to `stop_tol`).
pub fn verify_attraction(
    map: &dyn MonotoneMap,
    s_star: &OrthantVector,
    stop_tol: f64,
    k_max: usize,
) -> Result<(bool, TrajectoryReport)> {
    let trajectory = iterate(map, s_star, k_max, stop_tol)?;
    Ok((trajectory.converged, trajectory))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub solve: SolveReport,
    pub trajectory: Option<TrajectoryReport>,
    /// `[0, s*]` is certified to lie in the region of attraction.
    pub problem1_satisfied: bool,
}

impl CertificateReport {
    /// Upper corner `s*` of the certified interval `[0, s*]`.
    pub fn certified_corner(&self) -> Option<&OrthantVector> {
        if self.problem1_satisfied {
            self.solve.s_star.as_ref()
        } else {
            None
        }
    }
}

/// Finds a decay point and certifies `[0, s*]` by iterating from `s*`.
pub fn solve_problem1(
    map: &dyn MonotoneMap,
    cfg: &SolverConfig,
    stop_tol: f64,
    k_max: usize,
) -> Result<CertificateReport> {
    let solve = find_decay_point(map, cfg)?;
    let Some(s_star) = solve.s_star.clone().filter(|_| solve.success) else {
        return Ok(CertificateReport {
            solve,
            trajectory: None,
            problem1_satisfied: false,
        });
    };
    let (converged, trajectory) = verify_attraction(map, &s_star, stop_tol, k_max)?;
    Ok(CertificateReport {
        solve,
        trajectory: Some(trajectory),
        problem1_satisfied: converged,
    })
}

/// Checks `φ(j, s0) ≤ φ(j, v0)` for `j = 0..=k`. Requires `s0 ≤ v0`.
pub fn ordering_check(
    map: &dyn MonotoneMap,
    s0: &OrthantVector,
    v0: &OrthantVector,
    k: usize,
) -> Result<bool> {
    check_dims(map.dim(), s0.dim())?;
    check_dims(map.dim(), v0.dim())?;
    if !leq(s0.as_slice(), v0.as_slice()) {
        return Err(Error::Precondition("ordering check needs s0 <= v0".into()));
    }
    let n = map.dim();
    let (mut lower, mut upper) = (s0.as_slice().to_vec(), v0.as_slice().to_vec());
    let mut scratch = vec![0.0; n];
    for _ in 0..k {
        map.apply(&lower, &mut scratch);
        std::mem::swap(&mut lower, &mut scratch);
        map.apply(&upper, &mut scratch);
        std::mem::swap(&mut upper, &mut scratch);
        if !leq(&lower, &upper) {
            return Ok(false);
        }
    }
    Ok(true)
}

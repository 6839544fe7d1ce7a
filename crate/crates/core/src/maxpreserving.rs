//! Max-preserving maps `(Ts)ᵢ = maxⱼ γᵢⱼ(sⱼ)`, the cycle condition and
//! the path `q(t) = max{te, T(te), …, T^{n−1}(te)}`.
//!
//! The cycle condition asks that every cyclic composition of gains stays
//! below the identity. It is checked on a finite grid of arguments, so a
//! `true` answer is a sampled statement, not a proof.
//!
//! The condition is sometimes written with a trailing self-loop,
//! `γ_{i₁i₂} ∘ … ∘ γ_{i_{k−1}i_k} ∘ γ_{i_k i_k} < id`. Both readings are
//! available through [`CycleReading`]. For nondecreasing gains that pass
//! the self-loop check the extra compositions are implied by the plain
//! cycles, so the two readings agree.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::MonotoneMap;
use crate::order::{one_norm, OrthantVector};
use crate::scalar::{log_grid, ScalarFn};

/// Largest dimension for which simple cycles are enumerated.
pub const MAX_CYCLE_DIM: usize = 12;

/// Square table of gains `γᵢⱼ` (0-based). Absent entries are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GainTable {
    n: usize,
    gains: Vec<Option<ScalarFn>>,
}

impl GainTable {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("gain table needs n >= 1".into()));
        }
        Ok(Self {
            n,
            gains: vec![None; n * n],
        })
    }

    /// Table with `γ_{i,i+1} = f` around the cycle `0 → 1 → … → n−1 → 0`.
    pub fn ring(n: usize, f: ScalarFn) -> Result<Self> {
        let mut table = Self::new(n)?;
        for i in 0..n {
            table.set(i, (i + 1) % n, f.clone());
        }
        Ok(table)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize, gain: ScalarFn) {
        assert!(i < self.n && j < self.n, "gain index out of range");
        self.gains[i * self.n + j] = if gain.is_zero() { None } else { Some(gain) };
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&ScalarFn> {
        self.gains[i * self.n + j].as_ref()
    }

    /// Evaluates `γᵢⱼ(t)`, zero for absent entries.
    pub fn eval(&self, i: usize, j: usize, t: f64) -> f64 {
        self.get(i, j).map_or(0.0, |f| f.eval(t))
    }

    /// Checks every gain for `γ(0) = 0` and monotonicity on `grid`.
    pub fn validate(&self, grid: &[f64]) -> Result<()> {
        for (idx, gain) in self.gains.iter().enumerate() {
            if let Some(f) = gain {
                f.check_class_k0(grid).map_err(|e| {
                    Error::InvalidFunction(format!(
                        "gain ({}, {}): {e}",
                        idx / self.n + 1,
                        idx % self.n + 1
                    ))
                })?;
            }
        }
        Ok(())
    }

    /// Present entries as `(i, j, γᵢⱼ)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &ScalarFn)> {
        self.gains
            .iter()
            .enumerate()
            .filter_map(move |(idx, g)| g.as_ref().map(|f| (idx / self.n, idx % self.n, f)))
    }
}

/// The map `(Ts)ᵢ = maxⱼ γᵢⱼ(sⱼ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxPreservingMap {
    table: GainTable,
}

impl MaxPreservingMap {
    pub(crate) fn new(table: GainTable) -> Self {
        Self { table }
    }

    pub fn table(&self) -> &GainTable {
        &self.table
    }
}

impl MonotoneMap for MaxPreservingMap {
    fn dim(&self) -> usize {
        self.table.n
    }

    fn apply(&self, s: &[f64], out: &mut [f64]) {
        let n = self.table.n;
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.table.gains[i * n..(i + 1) * n]
                .iter()
                .zip(s)
                .filter_map(|(g, x)| g.as_ref().map(|f| f.eval(*x)))
                .fold(0.0, f64::max);
        }
    }
}

/// Which compositions the cycle condition inspects.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum CycleReading {
    /// `γ_{i₁i₂} ∘ … ∘ γ_{i_k i₁}` for every simple cycle.
    #[default]
    Pure,
    /// Additionally each cycle composed with the self-loop at its start.
    TrailingSelfLoop,
}

/// A cycle whose composition reaches the identity at some grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleWitness {
    /// Visited indices `i₁, …, i_k` (0-based); the cycle closes back to `i₁`.
    pub cycle: Vec<usize>,
    /// Whether the self-loop `γ_{i₁i₁}` was appended to the composition.
    pub trailing_self_loop: bool,
    pub t: f64,
    /// The composition evaluated at `t`, which is `≥ t`.
    pub value: f64,
}

/// Default grid for the cycle condition: 49 log-spaced points on `[1e-3, 1e3]`.
pub fn default_cycle_grid() -> Vec<f64> {
    log_grid(1e-3, 1e3, 49)
}

/// Checks the cycle condition on `grid`. Returns `Ok(None)` when every
/// composition stays strictly below the identity, or the first violating
/// cycle.
pub fn cycle_condition(
    gains: &GainTable,
    grid: &[f64],
    reading: CycleReading,
) -> Result<Option<CycleWitness>> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("cycle grid is empty".into()));
    }
    if gains.n > MAX_CYCLE_DIM {
        return Err(Error::InvalidParameter(format!(
            "cycle enumeration supports n <= {MAX_CYCLE_DIM}, got {}",
            gains.n
        )));
    }
    let mut witness = None;
    for_each_simple_cycle(gains, &mut |cycle| {
        witness = check_cycle(gains, cycle, grid, reading);
        witness.is_none()
    });
    Ok(witness)
}

fn check_cycle(
    gains: &GainTable,
    cycle: &[usize],
    grid: &[f64],
    reading: CycleReading,
) -> Option<CycleWitness> {
    let start = cycle[0];
    let self_loop = match reading {
        CycleReading::TrailingSelfLoop if cycle.len() > 1 => gains.get(start, start),
        _ => None,
    };
    for &t in grid {
        let value = compose_cycle(gains, cycle, t);
        if value >= t {
            return Some(CycleWitness {
                cycle: cycle.to_vec(),
                trailing_self_loop: false,
                t,
                value,
            });
        }
        if let Some(f) = self_loop {
            let value = compose_cycle(gains, cycle, f.eval(t));
            if value >= t {
                return Some(CycleWitness {
                    cycle: cycle.to_vec(),
                    trailing_self_loop: true,
                    t,
                    value,
                });
            }
        }
    }
    None
}

/// `γ_{i₁i₂}(γ_{i₂i₃}(… γ_{i_k i₁}(t)))`
fn compose_cycle(gains: &GainTable, cycle: &[usize], t: f64) -> f64 {
    let k = cycle.len();
    (0..k).rev().fold(t, |acc, pos| {
        gains.eval(cycle[pos], cycle[(pos + 1) % k], acc)
    })
}

/// Visits each simple cycle once, rotated to start at its smallest index.
/// Edges with absent gains are skipped. The visitor returns `false` to stop.
fn for_each_simple_cycle(gains: &GainTable, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn extend(
        gains: &GainTable,
        path: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let start = path[0];
        let last = *path.last().unwrap();
        for next in start..gains.n {
            if gains.get(last, next).is_none() {
                continue;
            }
            if next == start {
                if !visit(path) {
                    return false;
                }
            } else if !used[next] {
                used[next] = true;
                path.push(next);
                let go_on = extend(gains, path, used, visit);
                path.pop();
                used[next] = false;
                if !go_on {
                    return false;
                }
            }
        }
        true
    }

    let mut used = vec![false; gains.n];
    for start in 0..gains.n {
        let mut path = vec![start];
        used[start] = true;
        let go_on = extend(gains, &mut path, &mut used, visit);
        used[start] = false;
        if !go_on {
            return;
        }
    }
}

/// `q(t) = max{te, T(te), …, T^{n−1}(te)}` for the max-preserving map of `gains`.
pub fn path_q(gains: &GainTable, t: f64) -> Result<OrthantVector> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "t must be positive, got {t}"
        )));
    }
    let map = MaxPreservingMap::new(gains.clone());
    let n = gains.n;
    let mut q = vec![t; n];
    let mut current = q.clone();
    let mut next = vec![0.0; n];
    for _ in 1..n {
        map.apply(&current, &mut next);
        for (qi, x) in q.iter_mut().zip(&next) {
            *qi = qi.max(*x);
        }
        std::mem::swap(&mut current, &mut next);
    }
    OrthantVector::new(q)
}

/// Maximum number of halvings when bracketing the lower end of `t`.
const MAX_BRACKET_STEPS: usize = 60;
const MAX_BISECTIONS: usize = 200;

/// Finds `t` with `‖q(t)‖₁ = r` by bisection and returns `q(t)`.
///
/// Since `q(t) ≥ te`, `t = r/n` is always an upper bracket; the lower end
/// is found by halving.
pub fn reparametrize_path(gains: &GainTable, r: f64, tol: f64) -> Result<OrthantVector> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "r must be positive, got {r}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tol must be positive, got {tol}"
        )));
    }
    let norm_at = |t: f64| path_q(gains, t).map(|q| one_norm(&q));

    let mut hi = r / gains.n as f64;
    let hi_norm = norm_at(hi)?;
    if (hi_norm - r).abs() <= tol {
        return path_q(gains, hi);
    }
    let mut lo = hi;
    let mut found = false;
    for _ in 0..MAX_BRACKET_STEPS {
        lo *= 0.5;
        if norm_at(lo)? <= r {
            found = true;
            break;
        }
        hi = lo;
    }
    if !found {
        return Err(Error::NotConverged {
            iterations: MAX_BRACKET_STEPS,
        });
    }

    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let q = path_q(gains, mid)?;
        let norm = one_norm(&q);
        if (norm - r).abs() <= tol || mid <= lo || mid >= hi {
            return Ok(q);
        }
        if norm < r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NotConverged {
        iterations: MAX_BISECTIONS,
    })
}

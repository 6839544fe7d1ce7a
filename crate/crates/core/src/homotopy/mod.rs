//! Simplicial homotopy search for a decay point `s* ∈ S_r` with `Ts* ≪ s*`.
//!
//! The search keeps a complete set of `n` labeled vertices and walks
//! door-in-door-out: a new vertex is adjoined, and the old vertex sharing
//! its label is dropped, which leaves a complete set again. Vertices come
//! from a Freudenthal triangulation of the cone over `S_r` (see
//! [`kuhn`]), whose level `t` subdivides `S_r` with mesh `r/t`. The walk
//! starts from the corners `{r·eᵢ}` on level 1, cannot return there and
//! cannot leave through the faces of `S_r` (a point with `sᵢ = 0` never
//! carries label `i`), so it descends to ever finer levels.
//!
//! A run succeeds as soon as a vertex satisfies `(Tv)ᵢ + ε ≤ vᵢ` for all
//! `i`, which makes every reported point self-certifying.

mod kuhn;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeling::{label_from_image, labels_complete, Label, LabeledVertexSet, TieBreak};
use crate::maps::MonotoneMap;
use crate::order::{check_dims, OrthantVector};

use kuhn::KuhnSimplex;

pub const DEFAULT_EPSILON: f64 = 1e-2;
pub const DEFAULT_MAX_ITERATIONS: usize = 1000;
/// Relative to the radius.
pub const DEFAULT_MESH_TOLERANCE: f64 = 1e-8;
/// Labels are computed at `DEFAULT_LABEL_SLACK · ε`.
pub const DEFAULT_LABEL_SLACK: f64 = 2.0;

/// Parameters of a decay-point search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Radius `r` of the sphere `S_r`.
    pub radius: f64,
    /// Slack `ε` of the labeling.
    pub epsilon: f64,
    pub max_iterations: usize,
    /// Diameter below which the barycentre of a complete set is tested.
    pub mesh_tolerance: f64,
    pub tie_break: TieBreak,
    /// Labels use slack `label_slack · ε` while success is tested at `ε`.
    /// With a factor above one the complete sets close in on points with
    /// margin above `ε`, so their vertices pass the test once the mesh is
    /// fine enough. A factor of one labels at `ε` itself.
    pub label_slack: f64,
}

impl SolverConfig {
    /// Defaults: `ε = 1e-2`, 1000 iterations, mesh tolerance `1e-8·r`.
    pub fn new(radius: f64) -> Self {
        Self {
            radius,
            epsilon: DEFAULT_EPSILON,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            mesh_tolerance: DEFAULT_MESH_TOLERANCE * radius,
            tie_break: TieBreak::Max,
            label_slack: DEFAULT_LABEL_SLACK,
        }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn with_mesh_tolerance(mut self, mesh_tolerance: f64) -> Self {
        self.mesh_tolerance = mesh_tolerance;
        self
    }

    pub fn with_label_slack(mut self, label_slack: f64) -> Self {
        self.label_slack = label_slack;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        positive("radius", self.radius)?;
        positive("epsilon", self.epsilon)?;
        positive("mesh tolerance", self.mesh_tolerance)?;
        if !(self.label_slack >= 1.0) || !self.label_slack.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "label slack must be at least 1, got {}",
                self.label_slack
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter(
                "max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Why a search ended without a decay point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    IterationCap,
    /// A vertex carried no label: the covering fails at this `ε`.
    LabelNone,
    /// The map returned a value outside the orthant.
    NotApplicable,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::IterationCap => "iteration_cap",
            Self::LabelNone => "label_none",
            Self::NotApplicable => "not_applicable",
        })
    }
}

/// Outcome of [`find_decay_point`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub success: bool,
    pub s_star: Option<OrthantVector>,
    /// Number of vertices labeled after the entry set.
    pub iterations: usize,
    /// `minᵢ (s*ᵢ − (Ts*)ᵢ)`.
    pub margin: Option<f64>,
    pub failure_reason: Option<FailureReason>,
    /// The vertex that triggered a failure, when there is one.
    pub failure_point: Option<OrthantVector>,
    /// Finest triangulation level reached.
    pub level: u64,
    /// Diameter of the last complete set.
    pub diameter: f64,
}

impl SolveReport {
    fn failed(
        reason: FailureReason,
        point: Option<Vec<f64>>,
        iterations: usize,
        level: u64,
        diameter: f64,
    ) -> Self {
        Self {
            success: false,
            s_star: None,
            iterations,
            margin: None,
            failure_reason: Some(reason),
            failure_point: point.map(OrthantVector::from_trusted),
            level,
            diameter,
        }
    }
}

/// One door-in-door-out step as seen by an observer.
#[derive(Debug, Clone, PartialEq)]
pub struct PivotEvent {
    pub iteration: usize,
    /// Label of the vertex just adjoined.
    pub label: Label,
    /// Position of the dropped vertex within the simplex.
    pub dropped: usize,
    /// Lowest and highest level among the vertices of the complete set.
    pub levels: (u64, u64),
    /// Euclidean diameter of the complete set after the step.
    pub diameter: f64,
}

/// The corners `{r·eᵢ}` of `S_r`, unlabeled.
pub fn entry_set(r: f64, n: usize) -> Result<LabeledVertexSet> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "radius must be positive, got {r}"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
    }
    let vertices = (0..n).map(|i| OrthantVector::unit(n, i, r)).collect();
    LabeledVertexSet::new(vertices, vec![Label::NONE; n])
}

/// All complete `n`-vertex subsets of an `(n+1)`-vertex set.
///
/// With labels drawn from `0..n` the answer has zero or two entries: the
/// two subsets drop either vertex of the unique duplicated label. A set
/// whose only defect is one `NONE` label has exactly one complete subset.
pub fn complete_subsets(tau: &LabeledVertexSet, n: usize) -> Result<Vec<LabeledVertexSet>> {
    Ok(complete_subset_drops(tau.labels(), n)?
        .into_iter()
        .map(|drop| {
            let vertices = tau
                .vertices()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, v)| v.clone());
            let labels = tau
                .labels()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, l)| *l);
            LabeledVertexSet::new(vertices.collect(), labels.collect())
                .expect("subset of a valid set is valid")
        })
        .collect())
}

/// Positions whose removal leaves a complete set, in increasing order.
pub fn complete_subset_drops(labels: &[Label], n: usize) -> Result<Vec<usize>> {
    if labels.len() != n + 1 {
        return Err(Error::WrongCardinality {
            expected: n + 1,
            found: labels.len(),
        });
    }
    let mut first_seen = vec![None; n];
    let mut none_at = None;
    let mut duplicate = None;
    for (pos, label) in labels.iter().enumerate() {
        match label.get() {
            None => {
                if none_at.replace(pos).is_some() {
                    return Ok(Vec::new());
                }
            }
            Some(i) if i >= n => {
                return Err(Error::InvalidParameter(format!(
                    "label {label} outside 1..={n}"
                )))
            }
            Some(i) => match first_seen[i] {
                None => first_seen[i] = Some(pos),
                Some(earlier) => {
                    if duplicate.replace((earlier, pos)).is_some() {
                        return Ok(Vec::new());
                    }
                }
            },
        }
    }
    if first_seen.iter().any(Option::is_none) {
        return Ok(Vec::new());
    }
    Ok(match (none_at, duplicate) {
        (Some(pos), None) => vec![pos],
        (None, Some((a, b))) => vec![a, b],
        _ => Vec::new(),
    })
}

/// Adjoins `new_vertex` to a complete set and drops the old vertex with
/// the same label.
pub fn pivot_step(
    current: &LabeledVertexSet,
    new_vertex: OrthantVector,
    new_label: Label,
) -> Result<LabeledVertexSet> {
    let mut next = current.clone();
    next.pivot(new_vertex, new_label)?;
    Ok(next)
}

/// Searches `S_r` for a point `s*` with `(Ts*)ᵢ + ε ≤ s*ᵢ` for all `i`.
pub fn find_decay_point(map: &dyn MonotoneMap, cfg: &SolverConfig) -> Result<SolveReport> {
    find_decay_point_observed(map, cfg, &mut |_| {})
}

struct Node {
    lattice: Vec<i64>,
    point: Vec<f64>,
    label: Label,
}

enum Probe {
    Decay { margin: f64 },
    Labeled(Label),
    Invalid,
}

fn probe(
    map: &dyn MonotoneMap,
    s: &[f64],
    image: &mut [f64],
    cfg: &SolverConfig,
    label_eps: f64,
) -> Probe {
    map.apply(s, image);
    if image.iter().any(|v| v.is_nan() || *v < 0.0) {
        return Probe::Invalid;
    }
    let margin = s
        .iter()
        .zip(image.iter())
        .map(|(a, b)| a - b)
        .fold(f64::INFINITY, f64::min);
    if s.iter()
        .zip(image.iter())
        .all(|(a, b)| b + cfg.epsilon <= *a)
    {
        Probe::Decay { margin }
    } else {
        Probe::Labeled(label_from_image(s, image, label_eps, cfg.tie_break))
    }
}

fn diameter<'a>(points: impl Iterator<Item = &'a [f64]> + Clone) -> f64 {
    let mut best: f64 = 0.0;
    for (i, a) in points.clone().enumerate() {
        for b in points.clone().skip(i + 1) {
            let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
            best = best.max(d2);
        }
    }
    best.sqrt()
}

/// [`find_decay_point`] reporting every pivot to `observer`.
///
/// When labeling at the widened slack runs into a `NONE` label, the search
/// is repeated with labels at `ε`; iteration counts of both runs add up.
pub fn find_decay_point_observed(
    map: &dyn MonotoneMap,
    cfg: &SolverConfig,
    observer: &mut dyn FnMut(&PivotEvent),
) -> Result<SolveReport> {
    cfg.validate()?;
    let n = map.dim();
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
    }
    let first = walk(
        map,
        cfg,
        cfg.epsilon * cfg.label_slack,
        cfg.max_iterations,
        0,
        observer,
    );
    if cfg.label_slack == 1.0 || first.failure_reason != Some(FailureReason::LabelNone) {
        return Ok(first);
    }
    let remaining = cfg.max_iterations.saturating_sub(first.iterations);
    if remaining == 0 {
        return Ok(first);
    }
    Ok(walk(
        map,
        cfg,
        cfg.epsilon,
        remaining,
        first.iterations,
        observer,
    ))
}

fn walk(
    map: &dyn MonotoneMap,
    cfg: &SolverConfig,
    label_eps: f64,
    max_iterations: usize,
    offset: usize,
    observer: &mut dyn FnMut(&PivotEvent),
) -> SolveReport {
    let n = map.dim();
    let r = cfg.radius;
    let mut image = vec![0.0; n];
    let mut simplex = KuhnSimplex::cone_entry(n);

    let mut nodes = Vec::with_capacity(n + 1);
    for k in 0..n {
        let lattice = simplex.vertex(k);
        let point = kuhn::project(&lattice, r);
        let label = match probe(map, &point, &mut image, cfg, label_eps) {
            Probe::Labeled(label) => label,
            Probe::Decay { .. } => unreachable!("corners have n - 1 zero components"),
            Probe::Invalid => {
                return SolveReport::failed(
                    FailureReason::NotApplicable,
                    Some(point),
                    offset,
                    1,
                    f64::NAN,
                )
            }
        };
        if label.is_none() {
            return SolveReport::failed(
                FailureReason::LabelNone,
                Some(point),
                offset,
                1,
                r * 2f64.sqrt(),
            );
        }
        nodes.push(Node {
            lattice,
            point,
            label,
        });
    }
    debug_assert!(labels_complete(
        &nodes.iter().map(|nd| nd.label).collect::<Vec<_>>(),
        n
    ));

    let mut open = n;
    let new_lattice = simplex.vertex(n);
    nodes.push(Node {
        point: kuhn::project(&new_lattice, r),
        lattice: new_lattice,
        label: Label::NONE,
    });

    let mut iterations = offset;
    let mut finest = 2u64;
    let mut current_diameter = r * 2f64.sqrt();
    loop {
        iterations += 1;
        let level = kuhn::level(&nodes[open].lattice) as u64;
        finest = finest.max(level);
        let label = match probe(map, &nodes[open].point, &mut image, cfg, label_eps) {
            Probe::Decay { margin } => {
                return SolveReport {
                    success: true,
                    s_star: Some(OrthantVector::from_trusted(nodes[open].point.clone())),
                    iterations,
                    margin: Some(margin),
                    failure_reason: None,
                    failure_point: None,
                    level: finest,
                    diameter: current_diameter,
                };
            }
            Probe::Invalid => {
                let point = nodes[open].point.clone();
                return SolveReport::failed(
                    FailureReason::NotApplicable,
                    Some(point),
                    iterations,
                    finest,
                    current_diameter,
                );
            }
            Probe::Labeled(label) if label.is_none() => {
                let point = nodes[open].point.clone();
                return SolveReport::failed(
                    FailureReason::LabelNone,
                    Some(point),
                    iterations,
                    finest,
                    current_diameter,
                );
            }
            Probe::Labeled(label) => label,
        };
        nodes[open].label = label;

        let dropped = nodes
            .iter()
            .enumerate()
            .position(|(pos, nd)| pos != open && nd.label == label)
            .expect("a complete set holds every label");

        let facet = || {
            nodes
                .iter()
                .enumerate()
                .filter(move |(pos, _)| *pos != dropped)
                .map(|(_, nd)| nd)
        };
        current_diameter = diameter(facet().map(|nd| nd.point.as_slice()));
        let levels = facet().fold((u64::MAX, 0), |(lo, hi), nd| {
            let t = kuhn::level(&nd.lattice) as u64;
            (lo.min(t), hi.max(t))
        });
        observer(&PivotEvent {
            iteration: iterations,
            label,
            dropped,
            levels,
            diameter: current_diameter,
        });

        if current_diameter < cfg.mesh_tolerance {
            let mut centre = vec![0.0; n];
            for nd in facet() {
                for (c, x) in centre.iter_mut().zip(&nd.point) {
                    *c += x / n as f64;
                }
            }
            if let Probe::Decay { margin } = probe(map, &centre, &mut image, cfg, label_eps) {
                return SolveReport {
                    success: true,
                    s_star: Some(OrthantVector::from_trusted(centre)),
                    iterations,
                    margin: Some(margin),
                    failure_reason: None,
                    failure_point: None,
                    level: finest,
                    diameter: current_diameter,
                };
            }
        }

        if iterations - offset >= max_iterations {
            return SolveReport::failed(
                FailureReason::IterationCap,
                None,
                iterations,
                finest,
                current_diameter,
            );
        }

        open = simplex.reflect(dropped);
        let lattice = simplex.vertex(open);
        debug_assert!(kuhn::in_cone(&lattice), "left the cone at {lattice:?}");
        let node = Node {
            point: kuhn::project(&lattice, r),
            lattice,
            label: Label::NONE,
        };
        let d = simplex.dim();
        if dropped == 0 {
            nodes.remove(0);
            nodes.push(node);
        } else if dropped == d {
            nodes.pop();
            nodes.insert(0, node);
        } else {
            nodes[dropped] = node;
        }
    }
}

/// `min_i (s_i − (Ts)_i)`; positive exactly when `Ts ≪ s`.
pub fn decay_margin(map: &dyn MonotoneMap, s: &OrthantVector) -> Result<f64> {
    check_dims(map.dim(), s.dim())?;
    let ts = map.eval(s)?;
    Ok(s.iter()
        .zip(ts.iter())
        .map(|(a, b)| a - b)
        .fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{make_chain_map, make_linear_map, FnMap};
    use crate::order::one_norm;

    fn labels(ls: &[usize]) -> Vec<Label> {
        ls.iter().map(|&l| Label::index(l)).collect()
    }

    #[test]
    fn entry_set_examples() {
        let e = entry_set(10.0, 3).unwrap();
        let expected: Vec<Vec<f64>> = vec![vec![10., 0., 0.], vec![0., 10., 0.], vec![0., 0., 10.]];
        let got: Vec<Vec<f64>> = e.vertices().iter().map(|v| v.as_slice().to_vec()).collect();
        assert_eq!(got, expected);
        let e = entry_set(1.0, 2).unwrap();
        assert_eq!(e.vertices()[0].as_slice(), &[1.0, 0.0]);
        assert_eq!(e.vertices()[1].as_slice(), &[0.0, 1.0]);
        assert!(e.vertices().iter().all(|v| one_norm(v) == 1.0));
        assert!(entry_set(1.0, 1).is_err());
        assert!(entry_set(0.0, 2).is_err());
    }

    #[test]
    fn complete_subset_examples() {
        assert_eq!(
            complete_subset_drops(&labels(&[0, 1, 1]), 2).unwrap(),
            vec![1, 2]
        );
        assert!(complete_subset_drops(&labels(&[0, 0, 0]), 2)
            .unwrap()
            .is_empty());
        assert_eq!(
            complete_subset_drops(&labels(&[0, 1, 2, 1]), 3).unwrap(),
            vec![1, 3]
        );
        assert!(complete_subset_drops(&labels(&[0, 1]), 2).is_err());
        let with_none = [Label::index(0), Label::NONE, Label::index(1)];
        assert_eq!(complete_subset_drops(&with_none, 2).unwrap(), vec![1]);
    }

    #[test]
    fn complete_subsets_returns_sets() {
        let vertices = (0..4)
            .map(|i| OrthantVector::unit(3, i % 3, 1.0 + i as f64))
            .collect();
        let tau = LabeledVertexSet::new(vertices, labels(&[0, 1, 2, 1])).unwrap();
        let subsets = complete_subsets(&tau, 3).unwrap();
        assert_eq!(subsets.len(), 2);
        for s in &subsets {
            assert!(crate::labeling::is_complete(s, 3).unwrap());
        }
    }

    fn pts(n: usize) -> Vec<OrthantVector> {
        (0..n)
            .map(|i| OrthantVector::new(vec![i as f64, 1.0]).unwrap())
            .collect()
    }

    #[test]
    fn pivot_step_examples() {
        let set = LabeledVertexSet::new(pts(2), labels(&[0, 1])).unwrap();
        let new = OrthantVector::new(vec![7.0, 7.0]).unwrap();
        let next = pivot_step(&set, new.clone(), Label::index(0)).unwrap();
        assert_eq!(next.vertices()[0], new);
        assert_eq!(next.vertices()[1], set.vertices()[1]);

        let set = LabeledVertexSet::new(pts(3), labels(&[0, 1, 2])).unwrap();
        let next = pivot_step(&set, new.clone(), Label::index(1)).unwrap();
        assert_eq!(next.vertices()[1], new);
        assert_eq!(next.labels(), set.labels());

        assert_eq!(
            pivot_step(&set, new.clone(), Label::NONE),
            Err(Error::MissingLabel)
        );
        let dup = set.vertices()[2].clone();
        assert_eq!(
            pivot_step(&set, dup, Label::index(0)),
            Err(Error::DuplicateVertex)
        );
        let incomplete = LabeledVertexSet::new(pts(3), labels(&[0, 1, 1])).unwrap();
        assert_eq!(
            pivot_step(&incomplete, new, Label::index(0)),
            Err(Error::NotComplete)
        );
    }

    #[test]
    fn consecutive_pivots_never_undo_each_other() {
        let mut set = LabeledVertexSet::new(pts(3), labels(&[0, 1, 2])).unwrap();
        let script = [1, 0, 0, 2, 1, 2, 0];
        let mut history = vec![set.clone()];
        for (k, &l) in script.iter().enumerate() {
            let v = OrthantVector::new(vec![10.0 + k as f64, 2.0]).unwrap();
            set = pivot_step(&set, v, Label::index(l)).unwrap();
            assert!(crate::labeling::is_complete(&set, 3).unwrap());
            if history.len() >= 2 {
                assert_ne!(set, history[history.len() - 2]);
            }
            assert_ne!(&set, history.last().unwrap());
            history.push(set.clone());
        }
    }

    #[test]
    fn contraction_succeeds_immediately() {
        let a = make_linear_map(&[vec![0., 0.5], vec![0.5, 0.]]).unwrap();
        let report = find_decay_point(&a, &SolverConfig::new(10.0)).unwrap();
        assert!(report.success);
        let s = report.s_star.unwrap();
        assert!((one_norm(&s) - 10.0).abs() <= 1e-9 * 10.0);
        assert!(report.margin.unwrap() >= 0.01 - 1e-12);
        assert_eq!(report.iterations, 1);
    }

    #[test]
    fn identity_fails_at_the_corners() {
        let id = FnMap::new(3, |s: &[f64], out: &mut [f64]| out.copy_from_slice(s));
        let report = find_decay_point(&id, &SolverConfig::new(1.0)).unwrap();
        assert!(!report.success);
        assert_eq!(report.failure_reason, Some(FailureReason::LabelNone));
        assert_eq!(report.iterations, 0);
        assert!(report.failure_point.is_some());
    }

    #[test]
    fn chain_map_two_dimensional() {
        let t = make_chain_map(2).unwrap();
        let report = find_decay_point(&t, &SolverConfig::new(10.0).with_epsilon(0.1)).unwrap();
        assert!(report.success, "{report:?}");
        assert!(report.margin.unwrap() >= 0.1 - 1e-12);
    }

    #[test]
    fn negative_output_is_not_applicable() {
        let bad = FnMap::new(2, |_: &[f64], out: &mut [f64]| out.fill(-1.0));
        let report = find_decay_point(&bad, &SolverConfig::new(1.0)).unwrap();
        assert_eq!(report.failure_reason, Some(FailureReason::NotApplicable));
    }

    #[test]
    fn iteration_cap_is_respected() {
        let t = make_chain_map(4).unwrap();
        let cfg = SolverConfig::new(10.0)
            .with_epsilon(1e-3)
            .with_max_iterations(3);
        let report = find_decay_point(&t, &cfg).unwrap();
        assert!(!report.success);
        assert_eq!(report.failure_reason, Some(FailureReason::IterationCap));
        assert_eq!(report.iterations, 3);
    }

    #[test]
    fn rejects_bad_config() {
        let t = make_chain_map(2).unwrap();
        assert!(find_decay_point(&t, &SolverConfig::new(0.0)).is_err());
        assert!(find_decay_point(&t, &SolverConfig::new(1.0).with_epsilon(0.0)).is_err());
        assert!(find_decay_point(&t, &SolverConfig::new(1.0).with_max_iterations(0)).is_err());
        assert!(find_decay_point(&t, &SolverConfig::new(1.0).with_label_slack(0.5)).is_err());
        let scalar = make_linear_map(&[vec![0.5]]).unwrap();
        assert!(find_decay_point(&scalar, &SolverConfig::new(1.0)).is_err());
    }

    #[test]
    fn falls_back_to_plain_slack_on_none() {
        // corner e0 has no label at 2ε but does at ε; (0.6, 0.4) decays at ε
        let a = make_linear_map(&[vec![0.5, 0.], vec![0., 0.]]).unwrap();
        let cfg = SolverConfig::new(1.0).with_epsilon(0.26);
        let widened_only = find_decay_point_observed(&a, &cfg, &mut |_| {}).unwrap();
        assert!(widened_only.success, "{widened_only:?}");
        assert!(widened_only.margin.unwrap() >= 0.26 - 1e-12);
        let plain = find_decay_point(&a, &cfg.with_label_slack(1.0)).unwrap();
        assert!(plain.success);
    }

    #[test]
    fn widened_labels_reach_high_dimension() {
        let t = make_chain_map(10).unwrap();
        let cfg = SolverConfig::new(10.0)
            .with_epsilon(0.1)
            .with_max_iterations(100_000);
        let report = find_decay_point(&t, &cfg).unwrap();
        assert!(report.success);
        assert!(decay_margin(&t, report.s_star.as_ref().unwrap()).unwrap() >= 0.1 - 1e-12);
    }
}

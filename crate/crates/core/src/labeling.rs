//! Integer labels of simplex points and complete vertex sets.
//!
//! A point `s` gets label `i` when `(Ts)ᵢ + ε ≤ sᵢ`; among several
//! qualifying indices the largest one is taken (or the smallest, with
//! [`TieBreak::Min`]). Indices are 0-based throughout.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::MonotoneMap;
use crate::order::{check_dims, OrthantVector};

/// An integer label, or `NONE` when no index qualifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Label(Option<usize>);

impl Label {
    pub const NONE: Label = Label(None);

    pub fn index(i: usize) -> Self {
        Self(Some(i))
    }

    pub fn get(self) -> Option<usize> {
        self.0
    }

    pub fn is_none(self) -> bool {
        self.0.is_none()
    }
}

impl From<Option<usize>> for Label {
    fn from(value: Option<usize>) -> Self {
        Self(value)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(i) => write!(f, "{}", i + 1),
            None => write!(f, "NONE"),
        }
    }
}

/// Which qualifying index becomes the label.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    #[default]
    Max,
    Min,
}

impl std::str::FromStr for TieBreak {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(Self::Max),
            "min" => Ok(Self::Min),
            other => Err(Error::InvalidParameter(format!(
                "tie-break must be `max` or `min`, got `{other}`"
            ))),
        }
    }
}

/// Label of `s` given its image `ts = Ts`.
pub(crate) fn label_from_image(s: &[f64], ts: &[f64], eps: f64, tie_break: TieBreak) -> Label {
    let mut qualifying = s
        .iter()
        .zip(ts)
        .enumerate()
        .filter(|(_, (si, ti))| **ti + eps <= **si)
        .map(|(i, _)| i);
    match tie_break {
        TieBreak::Max => Label(qualifying.next_back()),
        TieBreak::Min => Label(qualifying.next()),
    }
}

/// `l_ε(s) = max{ i : (Ts)ᵢ + ε ≤ sᵢ }`.
pub fn label_eps(map: &dyn MonotoneMap, s: &OrthantVector, eps: f64) -> Result<Label> {
    label_eps_with(map, s, eps, TieBreak::Max)
}

pub fn label_eps_with(
    map: &dyn MonotoneMap,
    s: &OrthantVector,
    eps: f64,
    tie_break: TieBreak,
) -> Result<Label> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive, got {eps}"
        )));
    }
    let ts = map.eval(s)?;
    Ok(label_from_image(
        s.as_slice(),
        ts.as_slice(),
        eps,
        tie_break,
    ))
}

/// `{ i : (Ts)ᵢ < sᵢ }`, the covering sets containing `s`.
pub fn omega_membership(map: &dyn MonotoneMap, s: &OrthantVector) -> Result<Vec<usize>> {
    let ts = map.eval(s)?;
    Ok(s.iter()
        .zip(ts.iter())
        .enumerate()
        .filter(|(_, (si, ti))| ti < si)
        .map(|(i, _)| i)
        .collect())
}

/// Label without slack: the largest index of [`omega_membership`].
pub fn label_exact(map: &dyn MonotoneMap, s: &OrthantVector) -> Result<Label> {
    Ok(Label(omega_membership(map, s)?.last().copied()))
}

/// Vertices with parallel labels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledVertexSet {
    vertices: Vec<OrthantVector>,
    labels: Vec<Label>,
}

impl LabeledVertexSet {
    /// Builds a set; vertices must be pairwise distinct and share a dimension.
    pub fn new(vertices: Vec<OrthantVector>, labels: Vec<Label>) -> Result<Self> {
        check_dims(vertices.len(), labels.len())?;
        if let Some(first) = vertices.first() {
            for v in &vertices[1..] {
                check_dims(first.dim(), v.dim())?;
            }
        }
        for (i, a) in vertices.iter().enumerate() {
            if vertices[i + 1..].contains(a) {
                return Err(Error::DuplicateVertex);
            }
        }
        Ok(Self { vertices, labels })
    }

    /// Labels every vertex with `l_ε`.
    pub fn label_all(
        map: &dyn MonotoneMap,
        vertices: Vec<OrthantVector>,
        eps: f64,
        tie_break: TieBreak,
    ) -> Result<Self> {
        let labels = vertices
            .iter()
            .map(|v| label_eps_with(map, v, eps, tie_break))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices, labels)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[OrthantVector] {
        &self.vertices
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Slot holding `label`, if any.
    pub fn slot_of(&self, label: Label) -> Option<usize> {
        self.labels.iter().position(|l| *l == label)
    }

    /// Replaces the vertex carrying `new_label` by `new_vertex` and
    /// returns the slot that changed. The set must be complete.
    pub fn pivot(&mut self, new_vertex: OrthantVector, new_label: Label) -> Result<usize> {
        let n = self.len();
        if !labels_complete(&self.labels, n) {
            return Err(Error::NotComplete);
        }
        if new_label.is_none() {
            return Err(Error::MissingLabel);
        }
        let slot = self
            .slot_of(new_label)
            .ok_or_else(|| Error::InvalidParameter(format!("label {new_label} outside 1..={n}")))?;
        if let Some(first) = self.vertices.first() {
            check_dims(first.dim(), new_vertex.dim())?;
        }
        if self
            .vertices
            .iter()
            .enumerate()
            .any(|(i, v)| i != slot && *v == new_vertex)
        {
            return Err(Error::DuplicateVertex);
        }
        self.vertices[slot] = new_vertex;
        self.labels[slot] = new_label;
        Ok(slot)
    }
}

/// `true` iff `labels` is a permutation of `0..n`.
pub(crate) fn labels_complete(labels: &[Label], n: usize) -> bool {
    if labels.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for label in labels {
        match label.get() {
            Some(i) if i < n && !seen[i] => seen[i] = true,
            _ => return false,
        }
    }
    true
}

/// Whether `vs` (exactly `n` vertices) carries each label `0..n` once.
pub fn is_complete(vs: &LabeledVertexSet, n: usize) -> Result<bool> {
    if vs.len() != n {
        return Err(Error::WrongCardinality {
            expected: n,
            found: vs.len(),
        });
    }
    Ok(labels_complete(&vs.labels, n))
}

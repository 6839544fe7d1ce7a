//! Freudenthal (Kuhn) triangulation of `Zⁿ` and the cone over the simplex.
//!
//! A simplex is stored as a base vertex `x⁰` and a permutation `π`; its
//! vertices are `x^{k+1} = x^k + u_{π(k)}` for unit vectors `u`.
//!
//! The cone `C = { x : 0 ≤ x₀ ≤ x₁ ≤ … ≤ x_{n−1}, x_{n−1} ≥ 1 }` is a union
//! of such simplices because its walls are Freudenthal hyperplanes. A
//! lattice point `x` at level `t = x_{n−1}` stands for the point
//! `s = r·(x₀, x₁ − x₀, …, x_{n−1} − x_{n−2}) / t` of `S_r`, so level `t`
//! carries the uniform subdivision of `S_r` with mesh `r/t`. Level 1 holds
//! exactly the corners `r·eᵢ`.

/// A full-dimensional simplex of the Freudenthal triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct KuhnSimplex {
    base: Vec<i64>,
    perm: Vec<usize>,
}

impl KuhnSimplex {
    pub(crate) fn new(base: Vec<i64>, perm: Vec<usize>) -> Self {
        debug_assert_eq!(base.len(), perm.len());
        debug_assert!({
            let mut p = perm.clone();
            p.sort_unstable();
            p.iter().enumerate().all(|(i, &v)| i == v)
        });
        Self { base, perm }
    }

    /// The simplex of the cone whose bottom facet is the level-1 simplex
    /// `{r·eᵢ}`. Its vertex `k < n` projects to `r·e_{n−1−k}` and vertex `n`
    /// lies on level 2.
    pub(crate) fn cone_entry(n: usize) -> Self {
        assert!(n >= 2);
        let mut base = vec![0; n];
        base[n - 1] = 1;
        let perm = (0..n - 1).rev().chain(std::iter::once(n - 1)).collect();
        Self::new(base, perm)
    }

    pub(crate) fn dim(&self) -> usize {
        self.base.len()
    }

    /// Vertex `k ∈ 0..=dim`.
    pub(crate) fn vertex(&self, k: usize) -> Vec<i64> {
        let mut x = self.base.clone();
        for &axis in &self.perm[..k] {
            x[axis] += 1;
        }
        x
    }

    #[cfg(test)]
    pub(crate) fn vertices(&self) -> Vec<Vec<i64>> {
        (0..=self.dim()).map(|k| self.vertex(k)).collect()
    }

    /// Moves to the neighbouring simplex across the facet opposite vertex
    /// `k`. Returns the position of the vertex that replaced it. Vertices
    /// other than `k` keep their relative order: for `k = 0` they shift
    /// down by one, for `k = dim` they shift up by one.
    pub(crate) fn reflect(&mut self, k: usize) -> usize {
        let d = self.dim();
        assert!(k <= d);
        if k == 0 {
            self.base[self.perm[0]] += 1;
            self.perm.rotate_left(1);
            d
        } else if k == d {
            self.base[self.perm[d - 1]] -= 1;
            self.perm.rotate_right(1);
            0
        } else {
            self.perm.swap(k - 1, k);
            k
        }
    }
}

/// Whether the lattice point lies in the cone over the simplex.
pub(crate) fn in_cone(x: &[i64]) -> bool {
    x[0] >= 0 && x.windows(2).all(|w| w[0] <= w[1]) && *x.last().unwrap() >= 1
}

/// Level `t` of a cone point.
pub(crate) fn level(x: &[i64]) -> i64 {
    *x.last().unwrap()
}

/// Projects a cone point onto `S_r`.
///
/// Each component is `r · (Δ / t)` so points on the same ray project to
/// bit-identical vectors.
pub(crate) fn project(x: &[i64], r: f64) -> Vec<f64> {
    let t = level(x) as f64;
    let mut prev = 0;
    x.iter()
        .map(|&c| {
            let delta = c - prev;
            prev = c;
            r * (delta as f64 / t)
        })
        .collect()
}

//! Benchmark fixtures shared by the criterion benches.

use decaypoint::{make_chain_map, random_contractive, ChainMap, LinearMap, SolverConfig};

/// Chain map of dimension `n`.
pub fn chain(n: usize) -> ChainMap {
    make_chain_map(n).expect("n >= 1")
}

/// Random nonnegative map with spectral radius 0.8.
pub fn linear(n: usize, seed: u64) -> LinearMap {
    random_contractive(n, 0.8, seed)
        .expect("valid size")
        .to_map()
}

pub fn config(epsilon: f64) -> SolverConfig {
    SolverConfig::new(10.0)
        .with_epsilon(epsilon)
        .with_max_iterations(100_000)
}

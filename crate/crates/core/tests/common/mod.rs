#![allow(dead_code)]

use decaypoint::{
    compose, make_chain_map, make_diagonal, make_flipflop_map, make_linear_map,
    make_max_preserving, GainTable, MonotoneMap, ScalarFn,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const FAMILIES: [&str; 6] = [
    "linear",
    "chain",
    "flipflop",
    "maxpreserving",
    "diagonal",
    "composition",
];

pub fn random_gain(rng: &mut ChaCha8Rng) -> ScalarFn {
    match rng.gen_range(0..3) {
        0 => ScalarFn::Linear(rng.gen_range(0.1..2.0)),
        1 => ScalarFn::Power(rng.gen_range(0.3..3.0)),
        _ => ScalarFn::ScaledPower {
            coeff: rng.gen_range(0.1..2.0),
            exponent: rng.gen_range(0.3..3.0),
        },
    }
}

pub fn random_table(rng: &mut ChaCha8Rng, n: usize) -> GainTable {
    let mut table = GainTable::new(n).unwrap();
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(0.5) {
                table.set(i, j, random_gain(rng));
            }
        }
    }
    table
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(0.0..1.0)).collect())
        .collect()
}

/// A random member of `family` in dimension `n`. The flip-flop map is
/// always two-dimensional and the chain map needs `n ≥ 2`.
pub fn family_map(family: &str, n: usize, rng: &mut ChaCha8Rng) -> Box<dyn MonotoneMap> {
    match family {
        "linear" => Box::new(make_linear_map(&random_matrix(rng, n)).unwrap()),
        "chain" => Box::new(make_chain_map(n.max(2)).unwrap()),
        "flipflop" => Box::new(make_flipflop_map(rng.gen_range(0.05..0.95)).unwrap()),
        "maxpreserving" => Box::new(make_max_preserving(random_table(rng, n)).unwrap()),
        "diagonal" => Box::new(make_diagonal((0..n).map(|_| random_gain(rng)).collect()).unwrap()),
        "composition" => {
            let outer = make_linear_map(&random_matrix(rng, n)).unwrap();
            let inner = make_diagonal((0..n).map(|_| random_gain(rng)).collect()).unwrap();
            Box::new(compose(outer, inner).unwrap())
        }
        other => panic!("unknown family {other}"),
    }
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize, hi: f64) -> Vec<f64> {
    (0..n)
        .map(|_| {
            if rng.gen_bool(0.1) {
                0.0
            } else {
                rng.gen_range(0.0..hi)
            }
        })
        .collect()
}

pub fn apply(map: &dyn MonotoneMap, s: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; map.dim()];
    map.apply(s, &mut out);
    out
}

pub fn leq(x: &[f64], y: &[f64]) -> bool {
    x.iter().zip(y).all(|(a, b)| a <= b)
}

pub fn ll(x: &[f64], y: &[f64]) -> bool {
    x.iter().zip(y).all(|(a, b)| a < b)
}

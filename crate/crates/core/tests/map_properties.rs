mod common;

use common::{apply, family_map, leq, ll, random_point, random_table, FAMILIES};
use decaypoint::{chain_feasible_point, make_chain_map, make_flipflop_map, make_max_preserving};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PAIRS: usize = 1000;

#[test]
fn every_family_is_monotone_on_sampled_pairs() {
    for (f, family) in FAMILIES.iter().enumerate() {
        let dims: Vec<usize> = match *family {
            "flipflop" => vec![2],
            "chain" => (2..=6).collect(),
            _ => (1..=6).collect(),
        };
        for n in dims {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 * f as u64 + n as u64);
            let map = family_map(family, n, &mut rng);
            for pair in 0..PAIRS {
                let x = random_point(&mut rng, n, 10.0);
                let y: Vec<f64> = x
                    .iter()
                    .map(|v| {
                        if rng.gen_bool(0.3) {
                            *v
                        } else {
                            v + rng.gen_range(0.0..5.0)
                        }
                    })
                    .collect();
                let (tx, ty) = (apply(&*map, &x), apply(&*map, &y));
                assert!(
                    leq(&tx, &ty),
                    "{family} n={n} pair {pair}: T{x:?}={tx:?} vs T{y:?}={ty:?}"
                );
            }
        }
    }
}

#[test]
fn every_family_fixes_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for family in FAMILIES {
        for n in 2..=6 {
            let map = family_map(family, n, &mut rng);
            let zero = vec![0.0; map.dim()];
            assert_eq!(apply(&*map, &zero), zero, "{family} n={n}");
        }
    }
}

#[test]
fn max_preserving_maps_distribute_over_join() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let map = make_max_preserving(random_table(&mut rng, n)).unwrap();
        for _ in 0..20 {
            let s = random_point(&mut rng, n, 10.0);
            let v = random_point(&mut rng, n, 10.0);
            let join: Vec<f64> = s.iter().zip(&v).map(|(a, b)| a.max(*b)).collect();
            let lhs = apply(&map, &join);
            let rhs: Vec<f64> = apply(&map, &s)
                .iter()
                .zip(apply(&map, &v))
                .map(|(a, b)| a.max(b))
                .collect();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn chain_feasible_point_decays() {
    for n in 2..=10 {
        let map = make_chain_map(n).unwrap();
        for r in [0.1, 1.0, 10.0, 100.0] {
            let p = chain_feasible_point(n, r).unwrap();
            let tp = apply(&map, p.as_slice());
            assert!(ll(&tp, p.as_slice()), "n={n} r={r}: {tp:?} vs {p}");
        }
    }
}

#[test]
fn flipflop_iteration_never_shows_decay() {
    for (l, lambda) in [0.25, 0.5, 0.9].into_iter().enumerate() {
        let map = make_flipflop_map(lambda).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(500 + l as u64);
        let mut starts = 0;
        while starts < 100 {
            let x = vec![
                10.0 - rng.gen_range(0.0..10.0),
                10.0 - rng.gen_range(0.0..10.0),
            ];
            let mut current = apply(&map, &x);
            if ll(&current, &x) {
                continue;
            }
            starts += 1;
            for k in 1..=50 {
                let next = apply(&map, &current);
                assert!(!ll(&next, &current), "lambda={lambda} x={x:?} k={k}");
                current = next;
            }
        }
    }
}

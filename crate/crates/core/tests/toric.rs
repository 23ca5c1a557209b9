mod common;

use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shortrat::arith::{int, int_vec, IntMatrix};
use shortrat::genfun::TermOrder;
use shortrat::toric::{
    count_binomials_bounded, expand_binomials, normal_form_desk, order_filter, universal_gb_genfun,
    DegreeBound, ToricInstance,
};

const TWISTED_CUBIC: [[i64; 4]; 2] = [[1, 1, 1, 1], [0, 1, 2, 3]];

fn rows<const N: usize>(a: &[[i64; N]]) -> Vec<Vec<i64>> {
    a.iter().map(|r| r.to_vec()).collect()
}

/// Pairs `(u, v)` in `[0, w]^n` with `A u = A v`, optionally only `v ≺ u`.
fn brute_pairs(
    a: &[Vec<i64>],
    n: usize,
    w: i64,
    order: Option<&[Vec<i64>]>,
) -> Vec<(Vec<i64>, Vec<i64>)> {
    let region = grid(&vec![0; n], &vec![w; n]);
    let mut out = Vec::new();
    for u in &region {
        for v in &region {
            if a.iter().any(|r| dot(r, u) != dot(r, v)) {
                continue;
            }
            if order.is_some_and(|o| !order_cmp(o, v, u).is_lt()) {
                continue;
            }
            out.push((u.clone(), v.clone()));
        }
    }
    out.sort();
    out
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect()
}

#[test]
fn universal_set_matches_fibers() {
    for a in [
        rows(&[[1, 1]]),
        rows(&[[1, 2]]),
        rows(&[[1, 1, 1]]),
        rows(&TWISTED_CUBIC),
    ] {
        let n = a[0].len();
        let inst = ToricInstance::new(IntMatrix::from_i64(&a)).unwrap();
        let g = universal_gb_genfun(&inst).unwrap();
        let w = 2;
        let listed = expand_binomials(&g, w).unwrap();
        assert_eq!(listed, brute_pairs(&a, n, w, None), "{a:?}");
        for (u, v) in &listed {
            assert!(a.iter().all(|r| dot(r, u) == dot(r, v)));
            assert!(listed.contains(&(v.clone(), u.clone())));
        }
    }
}

#[test]
fn filter_matches_comparator() {
    let orders = [
        identity(3),
        vec![vec![1, 1, 1], vec![0, 0, 1], vec![0, 1, 0]],
        vec![vec![2, 0, 1], vec![1, 0, 0], vec![0, 1, 0]],
    ];
    for a in [rows(&[[1, 1, 1]]), rows(&[[1, 2, 3]])] {
        let inst = ToricInstance::new(IntMatrix::from_i64(&a)).unwrap();
        let g = universal_gb_genfun(&inst).unwrap();
        for w in &orders {
            let ord = TermOrder::new(IntMatrix::from_i64(w)).unwrap();
            let f = order_filter(&g, &ord).unwrap();
            assert_eq!(
                expand_binomials(&f, 2).unwrap(),
                brute_pairs(&a, 3, 2, Some(w)),
                "{a:?} {w:?}"
            );
        }
    }
}

#[test]
fn counts_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut mats = vec![rows(&TWISTED_CUBIC)];
    while mats.len() < 3 {
        use rand::Rng;
        let m: Vec<Vec<i64>> = vec![
            (0..4).map(|_| rng.gen_range(1..=3)).collect(),
            (0..4).map(|_| rng.gen_range(-2..=2)).collect(),
        ];
        if IntMatrix::from_i64(&m).rank() == 2 {
            mats.push(m);
        }
    }
    for a in &mats {
        let am = IntMatrix::from_i64(a);
        for d in 0..=3i64 {
            let boxed = grid(&[0; 4], &[d; 4]);
            let graded: Vec<Vec<i64>> = boxed
                .iter()
                .filter(|u| dot(&a[0], u) <= d)
                .cloned()
                .collect();
            for (bound, region) in [(DegreeBound::Box, &boxed), (DegreeBound::FirstRow, &graded)] {
                let (raw, diag) = fiber_pairs(a, region);
                let c = count_binomials_bounded(&am, &int(d), &bound).unwrap();
                assert_eq!(c.raw, int(raw as i64), "{a:?} D={d} {bound:?}");
                assert_eq!(c.diagonal, int(diag as i64));
                assert_eq!(c.off_diagonal, int((raw - diag) as i64));
                assert_eq!(c.unordered, Some(int(((raw - diag) / 2) as i64)));
            }
        }
    }
}

#[test]
fn normal_forms_are_fiber_minima() {
    let a = rows(&TWISTED_CUBIC);
    let lex = TermOrder::lex(4);
    let inst = ToricInstance::from_i64(&TWISTED_CUBIC).unwrap();
    let f = order_filter(&universal_gb_genfun(&inst).unwrap(), &lex).unwrap();
    let mut pairs = expand_binomials(&f, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for x in grid(&[0; 4], &[2; 4]) {
        let deg = x.iter().sum::<i64>();
        let fiber_min = grid(&[0; 4], &[deg; 4])
            .into_iter()
            .filter(|y| a.iter().all(|r| dot(r, y) == dot(r, &x)))
            .min_by(|p, q| order_cmp(&identity(4), p, q))
            .unwrap();
        let nf = normal_form_desk(&x, &pairs, &lex);
        assert_eq!(nf, fiber_min, "{x:?}");
        assert_eq!(normal_form_desk(&nf, &pairs, &lex), nf);
        pairs.shuffle(&mut rng);
        assert_eq!(normal_form_desk(&x, &pairs, &lex), nf);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn graded_counts(g in prop::collection::vec(1i64..=3, 3), d in 0i64..=4) {
        // only u is graded; v ranges over the fiber of u
        let a = vec![vec![1, 1, 1], vec![0, 1, 2]];
        let region: Vec<Vec<i64>> = grid(&[0; 3], &[d; 3]).into_iter().filter(|u| dot(&g, u) <= d).collect();
        let raw: usize = region
            .iter()
            .map(|u| {
                let s = u.iter().sum::<i64>();
                grid(&[0; 3], &[s; 3]).iter().filter(|v| a.iter().all(|r| dot(r, u) == dot(r, v))).count()
            })
            .sum();
        let c = count_binomials_bounded(&IntMatrix::from_i64(&a), &int(d), &DegreeBound::Graded(int_vec(&g))).unwrap();
        prop_assert_eq!(c.raw, int(raw as i64));
        prop_assert_eq!(c.diagonal, int(region.len() as i64));
        prop_assert_eq!(c.unordered.is_some(), g[0] + g[2] == 2 * g[1]);
    }
}

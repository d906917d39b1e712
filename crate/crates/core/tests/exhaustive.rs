//! Exhaustive cross-checks over small symmetric groups.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use bruhat::criteria::{
    corner_event, strong_down_set, strong_leq, top_rows_event, weak_down_set, weak_leq,
    StrongMethod,
};
use bruhat::formulas::corner_event_prob;
use bruhat::perm::{all_permutations, factorial};
use bruhat::posets::{
    count_linear_extensions, count_pairs_exact, harmonic, induced_poset, linext_lower_bound,
};
use bruhat::rational::ratio_u;
use bruhat::{CountMethod, OrderKind, Permutation};

fn perms(n: usize) -> Vec<Permutation> {
    all_permutations(n).collect()
}

#[test]
fn chain_oracles_agree_on_s6() {
    let all = perms(6);
    for sigma in &all {
        let strong = strong_down_set(sigma).unwrap();
        let weak = weak_down_set(sigma).unwrap();
        for pi in &all {
            assert_eq!(
                strong.contains(pi),
                strong_leq(pi, sigma, StrongMethod::Dominance).unwrap()
            );
            assert_eq!(
                strong.contains(pi),
                strong_leq(pi, sigma, StrongMethod::Tableau).unwrap()
            );
            assert_eq!(
                weak.contains(pi),
                weak_leq(pi, sigma).unwrap(),
                "{pi} vs {sigma}"
            );
        }
    }
}

#[test]
fn antisymmetric_and_transitive() {
    let all = perms(4);
    let s = |a: &Permutation, b: &Permutation| strong_leq(a, b, StrongMethod::Dominance).unwrap();
    let w = |a: &Permutation, b: &Permutation| weak_leq(a, b).unwrap();
    for a in &all {
        for b in &all {
            if a != b {
                assert!(!(s(a, b) && s(b, a)));
                assert!(!(w(a, b) && w(b, a)));
            }
            for c in &all {
                assert!(!(s(a, b) && s(b, c)) || s(a, c));
                assert!(!(w(a, b) && w(b, c)) || w(a, c));
            }
        }
    }
}

#[test]
fn weak_duality_under_rank_reversal() {
    let all = perms(5);
    for pi in &all {
        for sigma in &all {
            assert_eq!(
                weak_leq(pi, sigma).unwrap(),
                weak_leq(&sigma.rank_reverse(), &pi.rank_reverse()).unwrap()
            );
        }
    }
}

#[test]
fn corner_event_contains_strong_and_matches_formula() {
    for n in [2usize, 4, 6] {
        let all = perms(n);
        let (mut hits, mut strong) = (0u128, 0u128);
        for pi in &all {
            for sigma in &all {
                let e = corner_event(pi, sigma).unwrap();
                let s = strong_leq(pi, sigma, StrongMethod::Dominance).unwrap();
                assert!(!s || e, "{pi} <= {sigma} outside the corner event");
                hits += u128::from(e);
                strong += u128::from(s);
            }
        }
        let total = (all.len() * all.len()) as u128;
        let p = corner_event_prob(n).unwrap();
        assert_eq!(p, ratio_u(hits, total), "n={n}");
        assert!(p >= ratio_u(strong, total));
    }
    for n in (2..=200).step_by(22) {
        let p = corner_event_prob(n).unwrap();
        assert!(p > BigRational::zero() && p <= BigRational::one());
        let scaled = p * BigRational::from_integer(BigInt::from(n * n));
        assert!(
            scaled < BigRational::from_integer(BigInt::from(1000)),
            "n={n}"
        );
    }
}

#[test]
fn top_rows_with_all_rows_is_strong_order() {
    let all = perms(4);
    for pi in &all {
        for sigma in &all {
            assert_eq!(
                top_rows_event(pi, sigma, 4).unwrap(),
                strong_leq(pi, sigma, StrongMethod::Dominance).unwrap()
            );
        }
        assert!(top_rows_event(pi, pi, 2).unwrap());
    }
}

#[test]
fn superset_probability_is_one_over_size_plus_one() {
    for n in 1..=6usize {
        let all = perms(n);
        let slices: Vec<Vec<u64>> = all
            .iter()
            .map(|p| {
                let e = p.non_inversions();
                (1..=n)
                    .map(|i| e.slice(i).iter().fold(0u64, |m, &j| m | 1 << (j - 1)))
                    .collect()
            })
            .collect();
        for i in 1..=n {
            for b in 0u64..(1 << (i - 1)) {
                let hits = slices.iter().filter(|s| s[i - 1] & b == b).count() as u128;
                assert_eq!(
                    ratio_u(hits, all.len() as u128),
                    ratio_u(1, u128::from(b.count_ones()) + 1),
                    "n={n} i={i} B={b:b}"
                );
            }
        }
    }
}

#[test]
fn slice_containment_probability_is_harmonic_over_i() {
    for n in 1..=5usize {
        let all = perms(n);
        let slices: Vec<Vec<Vec<u32>>> = all
            .iter()
            .map(|p| {
                let e = p.non_inversions();
                (1..=n).map(|i| e.slice(i)).collect()
            })
            .collect();
        for i in 1..=n {
            let mut hits = 0u128;
            for a in &slices {
                for b in &slices {
                    hits += u128::from(b[i - 1].iter().all(|j| a[i - 1].contains(j)));
                }
            }
            let total = (all.len() * all.len()) as u128;
            let want = harmonic(i) / BigRational::from_integer(BigInt::from(i));
            assert_eq!(ratio_u(hits, total), want, "n={n} i={i}");
        }
    }
}

#[test]
fn slice_sizes_uniform_and_independent() {
    for n in 1..=5usize {
        let mut joint: HashMap<Vec<usize>, usize> = HashMap::new();
        for p in perms(n) {
            let e = p.non_inversions();
            *joint
                .entry((1..=n).map(|i| e.slice_len(i)).collect())
                .or_default() += 1;
        }
        // n! size vectors with entry i in 0..i: each appears exactly once
        assert_eq!(joint.len() as u128, factorial(n));
        assert!(joint.values().all(|&c| c == 1));
        assert!(joint
            .keys()
            .all(|v| v.iter().enumerate().all(|(i, &s)| s <= i)));
    }
}

#[test]
fn induced_poset_extensions_and_bound() {
    for n in 1..=6 {
        for sigma in perms(n) {
            let p = induced_poset(&sigma);
            let e = count_linear_extensions(&p).unwrap();
            assert_eq!(e as usize, weak_down_set(&sigma).unwrap().len());
            assert!(ratio_u(e, 1) >= linext_lower_bound(&p));
        }
    }
}

#[test]
fn weak_counts_below_strong_counts() {
    for n in 1..=7 {
        let w = count_pairs_exact(n, OrderKind::Weak, CountMethod::Brute).unwrap();
        let s = count_pairs_exact(n, OrderKind::Strong, CountMethod::Brute).unwrap();
        assert!(w <= s, "n={n}");
        assert_eq!(
            w,
            count_pairs_exact(n, OrderKind::Weak, CountMethod::LinextSum).unwrap()
        );
    }
}

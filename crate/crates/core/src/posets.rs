//! Exact counting of comparable pairs, the poset induced by a permutation,
//! and linear extensions.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::ballot::OrderKind;
use crate::bitset::BitSet;
use crate::error::{too_large, Error, Result};
use crate::perm::{all_permutations, factorial, Permutation};
use crate::rational::{factorial_big, ratio, ratio_u};
use crate::rng::RngStream;

/// Exact counts of pairs and linear extensions. Every guarded input keeps
/// these below 2^128 (the largest is `(10!)² ≈ 1.3·10¹³`).
pub type BigCount = u128;

pub const LINEXT_N_MAX: usize = 20;
pub const BRUTE_STRONG_N_MAX: usize = 8;
pub const BRUTE_WEAK_N_MAX: usize = 7;
pub const LINEXT_SUM_N_MAX: usize = 10;

/// A strict partial order on `[n]`, stored as strict predecessor sets `B_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    // below[i - 1] holds j - 1 for every j < i
    below: Vec<BitSet>,
}

impl Poset {
    /// Builds a poset from predecessor lists (`preds[i - 1]` = `B_i`, 1-indexed
    /// members), rejecting reflexive or non-transitive input.
    pub fn from_predecessors(preds: &[Vec<u32>]) -> Result<Self> {
        let n = preds.len();
        let mut below = vec![BitSet::new(n); n];
        for (i, list) in preds.iter().enumerate() {
            for &j in list {
                if j == 0 || j as usize > n {
                    return Err(Error::InvalidArgument(format!(
                        "element {j} outside 1..={n}"
                    )));
                }
                below[i].insert(j as usize - 1);
            }
        }
        let poset = Self { n, below };
        poset.validate()?;
        Ok(poset)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            if self.below[i].contains(i) {
                return Err(Error::InvalidArgument(format!(
                    "{} < {} (reflexive)",
                    i + 1,
                    i + 1
                )));
            }
            for j in self.below[i].iter() {
                if !self.below[j].is_subset(&self.below[i]) {
                    return Err(Error::InvalidArgument(format!(
                        "not transitive below element {}",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn chain(n: usize) -> Self {
        let preds: Vec<Vec<u32>> = (1..=n as u32).map(|i| (1..i).collect()).collect();
        Self::from_predecessors(&preds).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        Self {
            n,
            below: vec![BitSet::new(n); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `j < i` in the poset (1-indexed).
    pub fn less(&self, j: usize, i: usize) -> bool {
        self.below[i - 1].contains(j - 1)
    }

    /// `B_i`, sorted.
    pub fn predecessors(&self, i: usize) -> Vec<u32> {
        self.below[i - 1].iter().map(|j| j as u32 + 1).collect()
    }

    /// `d(i) = |{j : j ≤ i}|`.
    pub fn ideal_size(&self, i: usize) -> usize {
        self.below[i - 1].len() + 1
    }

    fn masks(&self) -> Vec<u32> {
        debug_assert!(self.n <= 32);
        self.below.iter().map(|b| b.as_u64() as u32).collect()
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 1..=self.n {
            for j in self.predecessors(i) {
                if !first {
                    f.write_str(", ")?;
                }
                write!(f, "{j}<{i}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// P(σ): `i < j` iff `i < j` numerically and `i` stands left of `j` in σ.
/// Its linear extensions, read as words, are exactly the π with π ⪯ σ.
pub fn induced_poset(sigma: &Permutation) -> Poset {
    let e = sigma.non_inversions();
    let n = sigma.len();
    let below = (1..=n).map(|i| e.slice_bits(i).clone()).collect();
    let poset = Poset { n, below };
    debug_assert!(poset.validate().is_ok());
    poset
}

/// Number of linear extensions, by dynamic programming over down-sets
/// encoded as bitmasks. `n ≤ 20`.
pub fn count_linear_extensions(p: &Poset) -> Result<BigCount> {
    too_large("poset size", p.n, LINEXT_N_MAX)?;
    let mut dp = Vec::new();
    Ok(u128::from(linext_masks(&p.masks(), &mut dp)))
}

/// Down-set DP on predecessor masks. `dp` is scratch space of any size.
fn linext_masks(preds: &[u32], dp: &mut Vec<u64>) -> u64 {
    let n = preds.len();
    let full = (1u32 << n) - 1;
    dp.clear();
    dp.resize(1 << n, 0);
    dp[0] = 1;
    for mask in 0..full {
        let ways = dp[mask as usize];
        if ways == 0 {
            continue;
        }
        let mut free = !mask & full;
        while free != 0 {
            let i = free.trailing_zeros() as usize;
            free &= free - 1;
            if preds[i] & !mask == 0 {
                dp[(mask | 1 << i) as usize] += ways;
            }
        }
    }
    dp[full as usize]
}

/// `n! / ∏ d(i)`, a lower bound on the number of linear extensions.
pub fn linext_lower_bound(p: &Poset) -> BigRational {
    let den = (1..=p.n).fold(BigUint::one(), |acc, i| acc * p.ideal_size(i));
    ratio(factorial_big(p.n), den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountMethod {
    Brute,
    LinextSum,
}

impl CountMethod {
    pub fn name(self) -> &'static str {
        match self {
            Self::Brute => "brute",
            Self::LinextSum => "linext_sum",
        }
    }
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CountMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Self::Brute),
            "linext_sum" => Ok(Self::LinextSum),
            _ => Err(Error::InvalidArgument(format!(
                "unknown count method {s:?}"
            ))),
        }
    }
}

/// `(n!)² · P(π ≤ σ)` (or `⪯` for weak): the number of comparable ordered pairs.
pub fn count_pairs_exact(n: usize, order: OrderKind, method: CountMethod) -> Result<BigCount> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    match (order, method) {
        (OrderKind::Strong, CountMethod::Brute) => {
            too_large("n", n, BRUTE_STRONG_N_MAX)?;
            Ok(count_strong_brute(n))
        }
        (OrderKind::Weak, CountMethod::Brute) => {
            too_large("n", n, BRUTE_WEAK_N_MAX)?;
            Ok(count_weak_brute(n))
        }
        (OrderKind::Weak, CountMethod::LinextSum) => {
            too_large("n", n, LINEXT_SUM_N_MAX)?;
            Ok(count_weak_linext_sum(n))
        }
        (OrderKind::Strong, CountMethod::LinextSum) => Err(Error::MethodMismatch {
            method: "linext_sum".into(),
            order: "strong",
        }),
    }
}

/// [`count_pairs_exact`] divided by `(n!)²`, in lowest terms.
pub fn exact_probability(n: usize, order: OrderKind, method: CountMethod) -> Result<BigRational> {
    let count = count_pairs_exact(n, order, method)?;
    let f = factorial(n);
    Ok(ratio_u(count, f * f))
}

const HIGH_BITS: u64 = 0x8080_8080_8080_8080;

/// Packs the prefix-count table of `w` (n ≤ 8): row `i` holds, in byte `j`,
/// `#{t ≤ i : w(t) ≤ j + 1}` for `j < n - 1`. Rows `i = 1..n-1`.
fn packed_prefix_rows(w: &[u32], rows: &mut Vec<u64>) {
    let n = w.len();
    let mut counts = [0u8; 8];
    for &v in &w[..n - 1] {
        for c in &mut counts[v as usize - 1..] {
            *c += 1;
        }
        rows.push(u64::from_le_bytes(counts));
    }
}

/// All rows of `lhs` dominate the rows of `rhs` bytewise. Counts stay below
/// 128, so adding the high bit to each byte of `lhs` before subtracting
/// never borrows across bytes, and the high bit survives iff `lhs ≥ rhs`.
fn packed_dominates(lhs: &[u64], rhs: &[u64]) -> bool {
    lhs.iter()
        .zip(rhs)
        .all(|(&a, &b)| ((a | HIGH_BITS) - b) & HIGH_BITS == HIGH_BITS)
}

fn count_strong_brute(n: usize) -> BigCount {
    if n == 1 {
        return 1;
    }
    let stride = n - 1;
    let mut tables = Vec::with_capacity(factorial(n) as usize * stride);
    for p in all_permutations(n) {
        packed_prefix_rows(p.as_slice(), &mut tables);
    }
    tables
        .par_chunks(stride)
        .map(|sigma| {
            tables
                .chunks(stride)
                .filter(|pi| packed_dominates(pi, sigma))
                .count() as u128
        })
        .sum()
}

fn non_inversion_mask(w: &[u32]) -> u64 {
    let n = w.len();
    let mut mask = 0u64;
    for (b, &vb) in w.iter().enumerate() {
        for &va in &w[..b] {
            if va < vb {
                mask |= 1 << ((va - 1) as usize * n + (vb - 1) as usize);
            }
        }
    }
    mask
}

fn count_weak_brute(n: usize) -> BigCount {
    let masks: Vec<u64> = all_permutations(n)
        .map(|p| non_inversion_mask(p.as_slice()))
        .collect();
    masks
        .par_iter()
        .map(|&sigma| masks.iter().filter(|&&pi| sigma & !pi == 0).count() as u128)
        .sum()
}

fn predecessor_masks(w: &[u32], preds: &mut Vec<u32>) {
    preds.clear();
    preds.resize(w.len(), 0);
    let mut seen = 0u32;
    for &v in w {
        let v = v as usize - 1;
        preds[v] = seen & ((1u32 << v) - 1);
        seen |= 1 << v;
    }
}

fn count_weak_linext_sum(n: usize) -> BigCount {
    let total = factorial(n) as usize;
    // split S_n into blocks by leading value so each block enumerates independently
    (1..=n as u32)
        .into_par_iter()
        .map(|lead| {
            let mut rest: Vec<u32> = (1..=n as u32).filter(|&v| v != lead).collect();
            let mut word = Vec::with_capacity(n);
            let mut preds = Vec::new();
            let mut dp = Vec::new();
            let mut sum = 0u128;
            loop {
                word.clear();
                word.push(lead);
                word.extend_from_slice(&rest);
                predecessor_masks(&word, &mut preds);
                sum += u128::from(linext_masks(&preds, &mut dp));
                if !crate::perm::next_permutation(&mut rest) {
                    break;
                }
            }
            sum
        })
        .sum::<u128>()
        .max(u128::from(total == 0))
}

/// `H(i) = 1 + 1/2 + … + 1/i`.
pub fn harmonic(i: usize) -> BigRational {
    (1..=i).fold(BigRational::zero(), |acc, j| {
        acc + BigRational::new(BigInt::one(), BigInt::from(j))
    })
}

/// `∏_{i ≤ n} H(i)/i`, the lower bound on `P(π ⪯ σ)`.
pub fn weak_product_bound(n: usize) -> BigRational {
    (1..=n).fold(BigRational::one(), |acc, i| {
        acc * harmonic(i) / BigRational::from_integer(BigInt::from(i))
    })
}

/// `(n!)² · ∏ H(i)/i`, comparable with the exact weak pair count.
pub fn weak_product_bound_scaled(n: usize) -> BigRational {
    let f = BigRational::from_integer(BigInt::from(factorial_big(n)));
    &f * &f * weak_product_bound(n)
}

/// A random forest on `[n]`, ordered so that each tree's root is its maximum
/// and every element lies above all of its descendants. Each down-set is then
/// a subtree, and `n!/∏ d(i)` counts the linear extensions exactly.
pub fn random_forest_poset(n: usize, rng: &mut RngStream) -> Poset {
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for (i, slot) in parent.iter_mut().enumerate().skip(1) {
        let pick = rng.below(i as u64 + 1) as usize;
        *slot = (pick < i).then_some(pick);
    }
    // relabel at random so that the order is not tied to numeric labels
    let mut label: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut label);
    let mut below = vec![BitSet::new(n); n];
    for v in 0..n {
        let mut up = parent[v];
        while let Some(a) = up {
            below[label[a]].insert(label[v]);
            up = parent[a];
        }
    }
    let poset = Poset { n, below };
    debug_assert!(poset.validate().is_ok());
    poset
}

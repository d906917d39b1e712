//! Permutations in one-line notation.
//!
//! Values and positions are 1-indexed on every public surface: `p.at(i)` is
//! ω(i) and the word `2,1,5,3,4` is the permutation 21534.

use std::fmt;
use std::str::FromStr;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    /// Validates that `values` is a bijection on `1..=values.len()`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::NotAPermutation {
                len: 0,
                reason: "empty word".into(),
            });
        }
        let mut seen = vec![false; n];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n {
                return Err(Error::NotAPermutation {
                    len: n,
                    reason: format!("value {v} out of range"),
                });
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::NotAPermutation {
                    len: n,
                    reason: format!("value {v} repeated"),
                });
            }
        }
        Ok(Self { word: values })
    }

    /// Accepts any integer type, rejecting negatives like out-of-range values.
    pub fn from_ints(values: &[i64]) -> Result<Self> {
        let word = values
            .iter()
            .map(|&v| {
                u32::try_from(v).map_err(|_| Error::NotAPermutation {
                    len: values.len(),
                    reason: format!("value {v} out of range"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(word)
    }

    pub(crate) fn from_word_unchecked(word: Vec<u32>) -> Self {
        debug_assert!(Self::new(word.clone()).is_ok());
        Self { word }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            word: (1..=n as u32).collect(),
        }
    }

    pub fn reverse(n: usize) -> Self {
        Self {
            word: (1..=n as u32).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// ω(i), 1-indexed.
    pub fn at(&self, i: usize) -> u32 {
        self.word[i - 1]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.word
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.word
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (pos, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = pos as u32 + 1;
        }
        Self { word: inv }
    }

    pub fn inversion_count(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// E(ω): pairs of values `i < j` with `i` placed left of `j`.
    pub fn non_inversions(&self) -> NonInversionSet {
        NonInversionSet::of(self)
    }

    /// ω̄: each value `v` replaced by `n + 1 - v`.
    pub fn rank_reverse(&self) -> Permutation {
        let n = self.len() as u32;
        Self {
            word: self.word.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// π^{k*}: the permutation of `[n-k]` left after deleting values `n-k+1..=n`.
    pub fn delete_top_k(&self, k: usize) -> Result<Permutation> {
        let n = self.len();
        if k >= n {
            return Err(Error::BadK {
                k,
                reason: format!("must be below n = {n}"),
            });
        }
        let keep = (n - k) as u32;
        Ok(Self {
            word: self.word.iter().copied().filter(|&v| v <= keep).collect(),
        })
    }

    /// Restriction to the values in `lo..=hi`, relabelled to `1..=hi-lo+1`.
    pub fn restrict_values(&self, lo: u32, hi: u32) -> Result<Permutation> {
        if lo == 0 || lo > hi || hi as usize > self.len() {
            return Err(Error::InvalidArgument(format!(
                "value window {lo}..={hi} not inside 1..={}",
                self.len()
            )));
        }
        Ok(Self {
            word: self
                .word
                .iter()
                .filter(|&&v| (lo..=hi).contains(&v))
                .map(|&v| v - lo + 1)
                .collect(),
        })
    }

    /// Uniform permutation of `[n]` by Fisher-Yates on the identity.
    pub fn random(n: usize, rng: &mut RngStream) -> Permutation {
        assert!(n >= 1, "random permutation needs n >= 1");
        let mut word: Vec<u32> = (1..=n as u32).collect();
        rng.shuffle(&mut word);
        Self { word }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.word.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses the comma-separated form, e.g. `"2,1,5,3,4"`.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidArgument(format!("not an integer: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_ints(&values)
    }
}

/// Rearranges `word` into the next permutation in lexicographic order.
/// Returns `false` (leaving the word sorted ascending) after the last one.
pub fn next_permutation(word: &mut [u32]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        word.reverse();
        return false;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut word: Vec<u32> = (1..=n as u32).collect();
    let mut done = n == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = Permutation { word: word.clone() };
        done = !next_permutation(&mut word);
        Some(out)
    })
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// The non-inversion set E(ω) with its per-value slices E_i(ω) = {j < i : (j, i) ∈ E(ω)}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonInversionSet {
    n: usize,
    pairs: Vec<(u32, u32)>,
    // slices[i - 1] holds E_i with bit j - 1 for each member j
    slices: Vec<BitSet>,
}

impl NonInversionSet {
    fn of(p: &Permutation) -> Self {
        let n = p.len();
        let mut slices = vec![BitSet::new(n); n];
        let mut pairs = Vec::new();
        // scan positions left to right; every earlier smaller value is a non-inversion
        let w = p.as_slice();
        for (b, &vb) in w.iter().enumerate() {
            for &va in &w[..b] {
                if va < vb {
                    slices[vb as usize - 1].insert(va as usize - 1);
                    pairs.push((va, vb));
                }
            }
        }
        pairs.sort_unstable();
        Self { n, pairs, slices }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Sorted pairs `(i, j)`, `i < j`.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn contains(&self, i: u32, j: u32) -> bool {
        i < j && j as usize <= self.n && self.slices[j as usize - 1].contains(i as usize - 1)
    }

    /// E_i as a sorted list of 1-indexed values.
    pub fn slice(&self, i: usize) -> Vec<u32> {
        self.slices[i - 1].iter().map(|j| j as u32 + 1).collect()
    }

    pub fn slice_len(&self, i: usize) -> usize {
        self.slices[i - 1].len()
    }

    pub(crate) fn slice_bits(&self, i: usize) -> &BitSet {
        &self.slices[i - 1]
    }

    /// `self ⊇ other`, checked slice by slice.
    pub fn is_superset(&self, other: &NonInversionSet) -> bool {
        self.n == other.n
            && self
                .slices
                .iter()
                .zip(&other.slices)
                .all(|(mine, theirs)| theirs.is_subset(mine))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn make_perm_examples() {
        assert_eq!(p("2,1,5,3,4").as_slice(), &[2, 1, 5, 3, 4]);
        assert_eq!(Permutation::new(vec![1]).unwrap(), Permutation::identity(1));
        assert!(matches!(
            Permutation::new(vec![1, 1, 2]),
            Err(Error::NotAPermutation { .. })
        ));
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(Permutation::from_ints(&[-1, 1]).is_err());
        assert!(matches!(
            "1,x".parse::<Permutation>(),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn display_roundtrip() {
        let q = p("4,1,5,2,3");
        assert_eq!(q.to_string(), "4,1,5,2,3");
        assert_eq!(q.to_string().parse::<Permutation>().unwrap(), q);
    }

    #[test]
    fn inverse_examples() {
        let q = p("2,1,5,3,4");
        let inv = q.inverse();
        assert_eq!(inv, p("2,1,4,5,3"));
        for i in 1..=5 {
            assert_eq!(inv.at(q.at(i) as usize) as usize, i);
        }
        assert_eq!(Permutation::identity(6).inverse(), Permutation::identity(6));
    }

    #[test]
    fn non_inversion_examples() {
        let e = p("3,1,2").non_inversions();
        assert_eq!(e.pairs(), &[(1, 2)]);
        assert_eq!(e.slice(2), vec![1]);
        assert!(e.slice(3).is_empty());
        assert_eq!(Permutation::identity(5).non_inversions().len(), 10);
        assert!(Permutation::reverse(5).non_inversions().is_empty());
    }

    #[test]
    fn non_inversions_plus_inversions_is_all_pairs() {
        for n in 1..=6 {
            for q in all_permutations(n) {
                assert_eq!(
                    q.non_inversions().len() + q.inversion_count(),
                    n * (n - 1) / 2
                );
            }
        }
    }

    #[test]
    fn slices_partition_pairs() {
        for q in all_permutations(5) {
            let e = q.non_inversions();
            let mut rebuilt: Vec<(u32, u32)> = (1..=5)
                .flat_map(|i| e.slice(i).into_iter().map(move |j| (j, i as u32)))
                .collect();
            rebuilt.sort_unstable();
            assert_eq!(rebuilt, e.pairs());
        }
    }

    #[test]
    fn rank_reverse_examples() {
        assert_eq!(p("1,3,2,5,4").rank_reverse(), p("5,3,4,1,2"));
        assert_eq!(
            Permutation::identity(4).rank_reverse(),
            Permutation::reverse(4)
        );
    }

    #[test]
    fn rank_reverse_complements_non_inversions() {
        let n = 5u32;
        for q in all_permutations(5) {
            let e = q.non_inversions();
            let eb = q.rank_reverse().non_inversions();
            for i in 1..=n {
                for j in i + 1..=n {
                    assert_eq!(eb.contains(i, j), !e.contains(n + 1 - j, n + 1 - i));
                }
            }
        }
    }

    #[test]
    fn delete_top_k_examples() {
        assert_eq!(p("1,2,5,3,4").delete_top_k(2).unwrap(), p("1,2,3"));
        assert_eq!(p("4,5,1,3,2").delete_top_k(2).unwrap(), p("1,3,2"));
        assert_eq!(p("4,5,1,3,2").delete_top_k(0).unwrap(), p("4,5,1,3,2"));
        assert!(matches!(p("2,1").delete_top_k(2), Err(Error::BadK { .. })));
    }

    #[test]
    fn restrict_values_relabels() {
        assert_eq!(p("4,1,5,2,3").restrict_values(3, 5).unwrap(), p("2,3,1"));
        assert!(p("2,1").restrict_values(2, 3).is_err());
    }

    #[test]
    fn enumeration_counts_and_order() {
        let all: Vec<_> = all_permutations(4).collect();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all_permutations(1).count(), 1);
        assert_eq!(factorial(10), 3_628_800);
    }

    #[test]
    fn random_perm_n1_is_identity() {
        let mut rng = RngStream::new(9, 0);
        for _ in 0..10 {
            assert_eq!(Permutation::random(1, &mut rng), Permutation::identity(1));
        }
    }

    #[test]
    fn random_perm_is_deterministic() {
        let mut a = RngStream::new(123, 4);
        let mut b = RngStream::new(123, 4);
        for _ in 0..100 {
            assert_eq!(
                Permutation::random(9, &mut a),
                Permutation::random(9, &mut b)
            );
        }
    }

    #[test]
    fn random_perm_uniform_on_s3() {
        let mut rng = RngStream::new(2024, 0);
        let mut counts = std::collections::HashMap::new();
        for _ in 0..60_000 {
            *counts
                .entry(Permutation::random(3, &mut rng))
                .or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 6);
        let band = 5.0 * (10_000.0f64 * 5.0 / 6.0).sqrt();
        for (q, c) in counts {
            assert!((c as f64 - 10_000.0).abs() <= band, "{q}: {c}");
        }
    }
}

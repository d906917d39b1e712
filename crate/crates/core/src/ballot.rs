//! Exact tabulation of the admissible orderings of `x₁..x_k, y₁..y_k`.
//!
//! Strong kind: an ordering is admissible when, for every `j ≤ k`, the
//! subsequence over `x₁..x_j, y₁..y_j` read left to right never has more
//! `x`s than `y`s. Only the 0/1 shape of the full word matters for the
//! next level, so each level is a table of ballot words with multiplicities.
//!
//! Weak kind: `x_j` sits right of `y_j`, and `x_i` left of `x_j` forces
//! `y_i` left of `y_j` for `i < j`. These conditions depend on labels, so
//! levels keep every labelled word.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::next_permutation;
use crate::rational::{factorial_big, ratio};

pub const STRONG_K_MAX: usize = 14;
pub const WEAK_K_MAX: usize = 7;
pub const BRUTE_K_MAX: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Strong,
    Weak,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Strong => "strong",
            Self::Weak => "weak",
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for OrderKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strong" => Ok(Self::Strong),
            "weak" => Ok(Self::Weak),
            _ => Err(Error::InvalidArgument(format!("unknown order {s:?}"))),
        }
    }
}

/// One row of an N_k / N_k* table.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelRow {
    pub k: usize,
    /// Number of admissible orderings.
    pub count: BigUint,
    /// `count / (2k)!` in lowest terms.
    pub q: BigRational,
    pub q_float: f64,
    /// `q^(1/k)`, evaluated as `exp((ln count - ln (2k)!) / k)` in f64.
    pub root: f64,
}

impl LevelRow {
    fn new(k: usize, count: BigUint) -> Self {
        let den = factorial_big(2 * k);
        let q = ratio(count.clone(), den.clone());
        let ln_q = big_ln(&count) - big_ln(&den);
        Self {
            k,
            q_float: q.to_f64().unwrap_or(f64::NAN),
            root: (ln_q / k as f64).exp(),
            count,
            q,
        }
    }
}

fn big_ln(x: &BigUint) -> f64 {
    // exact for values below 2^1023, which covers every guarded k
    x.to_f64().map(f64::ln).unwrap_or(f64::INFINITY)
}

fn check_k(k: usize, max: usize) -> Result<()> {
    if k == 0 || k > max {
        return Err(Error::BadK {
            k,
            reason: format!("must lie in 1..={max}"),
        });
    }
    Ok(())
}

/// A binary word of length `2k`, bit `t` holding the symbol at position `t`
/// (1 = `y`, 0 = `x`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BallotWord {
    bits: u64,
    len: u8,
}

impl BallotWord {
    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    /// Every prefix has at least as many 1s as 0s.
    pub fn is_ballot(self) -> bool {
        let mut h = 0i32;
        for t in 0..self.len() {
            h += if self.bits >> t & 1 == 1 { 1 } else { -1 };
            if h < 0 {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for BallotWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in 0..self.len() {
            f.write_str(if self.bits >> t & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BallotWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.len() > 64 {
            return Err(Error::InvalidArgument("ballot word longer than 64".into()));
        }
        let mut bits = 0u64;
        for (t, c) in s.chars().enumerate() {
            match c {
                '1' => bits |= 1 << t,
                '0' => {}
                _ => return Err(Error::InvalidArgument(format!("bad symbol {c:?}"))),
            }
        }
        Ok(Self {
            bits,
            len: s.len() as u8,
        })
    }
}

fn insert_bit(bits: u64, at: usize, bit: u64) -> u64 {
    let low = bits & ((1u64 << at) - 1);
    let high = (bits >> at) << (at + 1);
    low | high | (bit << at)
}

/// Ballot words of length `2k` with multiplicities summing to N_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallotLevel {
    k: usize,
    table: Vec<(BallotWord, u128)>,
}

impl BallotLevel {
    pub fn first() -> Self {
        Self {
            k: 1,
            table: vec![("10".parse().unwrap(), 1)],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Entries sorted by word.
    pub fn entries(&self) -> &[(BallotWord, u128)] {
        &self.table
    }

    pub fn multiplicity(&self, word: &str) -> Option<u128> {
        let w: BallotWord = word.parse().ok()?;
        self.table
            .binary_search_by(|(x, _)| x.cmp(&w))
            .ok()
            .map(|i| self.table[i].1)
    }

    pub fn total(&self) -> u128 {
        self.table.iter().map(|&(_, m)| m).sum()
    }

    /// Inserts a 1 at every position, then a 0 at every position, keeping
    /// the ballot words and summing parent multiplicities per child word.
    pub fn next(&self) -> BallotLevel {
        let len = 2 * self.k;
        let merged = self
            .table
            .par_iter()
            .fold(HashMap::<u64, u128>::new, |mut acc, &(w, mult)| {
                spawn_children(w.bits, len, mult, &mut acc);
                acc
            })
            .reduce(HashMap::new, |a, b| {
                let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                for (w, m) in small {
                    let slot = big.entry(w).or_insert(0);
                    *slot = slot.checked_add(m).expect("multiplicity overflow");
                }
                big
            });
        let mut table: Vec<(BallotWord, u128)> = merged
            .into_iter()
            .map(|(bits, m)| {
                (
                    BallotWord {
                        bits,
                        len: (len + 2) as u8,
                    },
                    m,
                )
            })
            .collect();
        table.sort_unstable();
        BallotLevel {
            k: self.k + 1,
            table,
        }
    }
}

fn spawn_children(parent: u64, len: usize, mult: u128, acc: &mut HashMap<u64, u128>) {
    let mut heights = vec![0i32; len + 2];
    let mut suffix_min = vec![0i32; len + 2];
    for p in 0..=len {
        let w1 = insert_bit(parent, p, 1);
        // heights[t] = #1 - #0 over the first t symbols of w1
        for t in 0..=len {
            heights[t + 1] = heights[t] + if w1 >> t & 1 == 1 { 1 } else { -1 };
        }
        suffix_min[len + 1] = heights[len + 1];
        for t in (0..=len).rev() {
            suffix_min[t] = suffix_min[t + 1].min(heights[t]);
        }
        // a 0 inserted before symbol q lowers every height from q on
        for (q, &low) in suffix_min.iter().enumerate() {
            if low >= 1 {
                let child = insert_bit(w1, q, 0);
                let slot = acc.entry(child).or_insert(0);
                *slot = slot.checked_add(mult).expect("multiplicity overflow");
            }
        }
    }
}

/// Ballot levels `1..=k_max`.
pub fn strong_ballot_levels(k_max: usize) -> Result<Vec<BallotLevel>> {
    check_k(k_max, STRONG_K_MAX)?;
    let mut levels = vec![BallotLevel::first()];
    while levels.len() < k_max {
        let next = levels.last().unwrap().next();
        levels.push(next);
    }
    Ok(levels)
}

/// N_k, Q_k and Q_k^{1/k} for `k = 1..=k_max`.
pub fn strong_ballot_table(k_max: usize) -> Result<Vec<LevelRow>> {
    Ok(strong_ballot_levels(k_max)?
        .iter()
        .map(|level| LevelRow::new(level.k, BigUint::from(level.total())))
        .collect())
}

/// A labelled ordering of `x₁..x_k, y₁..y_k`, packed four bits per symbol:
/// nibble `t` is `j` for `x_j` and `8 | j` for `y_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledWord {
    packed: u64,
    len: u8,
}

const Y_FLAG: u64 = 8;

impl LabelledWord {
    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    fn nibble(self, t: usize) -> u64 {
        self.packed >> (4 * t) & 0xF
    }

    /// Signed encoding: `+j` for `x_j`, `-j` for `y_j`.
    pub fn to_signed(self) -> Vec<i8> {
        (0..self.len())
            .map(|t| {
                let s = self.nibble(t);
                let j = (s & 7) as i8;
                if s & Y_FLAG != 0 {
                    -j
                } else {
                    j
                }
            })
            .collect()
    }

    pub fn from_signed(symbols: &[i8]) -> Result<Self> {
        if symbols.len() > 16 {
            return Err(Error::InvalidArgument(
                "ordering longer than 16 symbols".into(),
            ));
        }
        let mut packed = 0u64;
        for (t, &s) in symbols.iter().enumerate() {
            let j = s.unsigned_abs() as u64;
            if j == 0 || j > 7 {
                return Err(Error::InvalidArgument(format!("bad symbol {s}")));
            }
            let code = if s < 0 { j | Y_FLAG } else { j };
            packed |= code << (4 * t);
        }
        Ok(Self {
            packed,
            len: symbols.len() as u8,
        })
    }

    /// Positions (0-based) of `x_j` and `y_j`, indexed by `j - 1`.
    fn positions(self) -> (Vec<usize>, Vec<usize>) {
        let k = self.len() / 2;
        let mut px = vec![0; k];
        let mut py = vec![0; k];
        for t in 0..self.len() {
            let s = self.nibble(t);
            let j = (s & 7) as usize - 1;
            if s & Y_FLAG != 0 {
                py[j] = t;
            } else {
                px[j] = t;
            }
        }
        (px, py)
    }

    fn insert(self, at: usize, code: u64) -> Self {
        let shift = 4 * at;
        let low = if shift == 0 {
            0
        } else {
            self.packed & ((1u64 << shift) - 1)
        };
        let high = (self.packed >> shift) << (shift + 4);
        Self {
            packed: low | high | (code << shift),
            len: self.len + 1,
        }
    }

    /// Admissible extensions by `y_{k+1}` then `x_{k+1}`.
    pub fn children(self) -> Vec<LabelledWord> {
        let mut out = Vec::new();
        self.for_each_child_range(|p, qs| {
            let next = (self.len() / 2 + 1) as u64;
            let with_y = self.insert(p, next | Y_FLAG);
            out.extend(qs.map(|q| with_y.insert(q, next)));
        });
        out
    }

    pub fn child_count(self) -> u64 {
        let mut total = 0;
        self.for_each_child_range(|_, qs| total += qs.count() as u64);
        total
    }

    /// For each slot `p` of `y_{k+1}`, the admissible slots of `x_{k+1}` in the
    /// word after `y_{k+1}` is placed. `x_{k+1}` must follow `y_{k+1}`, and it
    /// must precede every `x_i` whose `y_i` lands after `y_{k+1}`.
    fn for_each_child_range(self, mut f: impl FnMut(usize, std::ops::RangeInclusive<usize>)) {
        let len = self.len();
        let (px, py) = self.positions();
        for p in 0..=len {
            let bound = px
                .iter()
                .zip(&py)
                .filter(|&(_, &y)| y >= p)
                .map(|(&x, _)| x + 1)
                .min()
                .unwrap_or(len + 1);
            f(p, p + 1..=bound);
        }
    }

    /// Checks both defining conditions directly.
    pub fn is_admissible(self) -> bool {
        let (px, py) = self.positions();
        let k = px.len();
        (0..k).all(|j| px[j] > py[j])
            && (0..k).all(|j| (0..j).all(|i| px[i] > px[j] || py[i] < py[j]))
    }
}

impl fmt::Display for LabelledWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.to_signed() {
            if s < 0 {
                write!(f, "y{}", -s)?;
            } else {
                write!(f, "x{s}")?;
            }
        }
        Ok(())
    }
}

/// Every admissible labelled ordering of length `2k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakOrderingLevel {
    k: usize,
    orderings: Vec<LabelledWord>,
}

impl WeakOrderingLevel {
    pub fn first() -> Self {
        Self {
            k: 1,
            orderings: vec![LabelledWord::from_signed(&[-1, 1]).unwrap()],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Sorted, duplicate-free.
    pub fn orderings(&self) -> &[LabelledWord] {
        &self.orderings
    }

    pub fn len(&self) -> usize {
        self.orderings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orderings.is_empty()
    }

    pub fn next(&self) -> WeakOrderingLevel {
        let mut orderings: Vec<LabelledWord> = self
            .orderings
            .par_iter()
            .flat_map_iter(|w| w.children())
            .collect();
        orderings.par_sort_unstable();
        orderings.dedup();
        WeakOrderingLevel {
            k: self.k + 1,
            orderings,
        }
    }

    /// Size of the next level without materialising it.
    pub fn next_count(&self) -> u64 {
        self.orderings.par_iter().map(|w| w.child_count()).sum()
    }
}

/// N_k*, Q_k* and (Q_k*)^{1/k} for `k = 1..=k_max`. The last level is only counted.
pub fn weak_ordering_table(k_max: usize) -> Result<Vec<LevelRow>> {
    check_k(k_max, WEAK_K_MAX)?;
    let mut level = WeakOrderingLevel::first();
    let mut rows = vec![LevelRow::new(1, BigUint::from(1u32))];
    for k in 2..=k_max {
        let count = if k == k_max {
            level.next_count()
        } else {
            level = level.next();
            level.len() as u64
        };
        rows.push(LevelRow::new(k, BigUint::from(count)));
    }
    Ok(rows)
}

/// Independent oracle: runs through all `(2k)!` orderings and checks the
/// defining conditions directly. `k ≤ 4`.
pub fn brute_q(k: usize, kind: OrderKind) -> Result<BigRational> {
    check_k(k, BRUTE_K_MAX)?;
    // symbols 0..k are x_1..x_k, k..2k are y_1..y_k
    let mut order: Vec<u32> = (0..2 * k as u32).collect();
    let mut hits = 0u64;
    loop {
        let ok = match kind {
            OrderKind::Strong => strong_admissible(&order, k),
            OrderKind::Weak => weak_admissible(&order, k),
        };
        hits += ok as u64;
        if !next_permutation(&mut order) {
            break;
        }
    }
    Ok(ratio(BigUint::from(hits), factorial_big(2 * k)))
}

fn strong_admissible(order: &[u32], k: usize) -> bool {
    let k = k as u32;
    (1..=k).all(|j| {
        let mut height = 0i32;
        for &s in order {
            let (is_y, label) = if s >= k {
                (true, s - k + 1)
            } else {
                (false, s + 1)
            };
            if label > j {
                continue;
            }
            height += if is_y { 1 } else { -1 };
            if height < 0 {
                return false;
            }
        }
        true
    })
}

fn weak_admissible(order: &[u32], k: usize) -> bool {
    let mut px = vec![0; k];
    let mut py = vec![0; k];
    for (t, &s) in order.iter().enumerate() {
        let s = s as usize;
        if s >= k {
            py[s - k] = t;
        } else {
            px[s] = t;
        }
    }
    (0..k).all(|j| px[j] > py[j]) && (0..k).all(|j| (0..j).all(|i| px[i] > px[j] || py[i] < py[j]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan(k: usize) -> u128 {
        let mut c = 1u128;
        for i in 0..k as u128 {
            c = c * 2 * (2 * i + 1) / (i + 2);
        }
        c
    }

    #[test]
    fn first_levels() {
        let levels = strong_ballot_levels(3).unwrap();
        assert_eq!(levels[1].multiplicity("1010"), Some(3));
        assert_eq!(levels[1].multiplicity("1100"), Some(4));
        let l3 = &levels[2];
        for (w, m) in [
            ("111000", 36),
            ("110100", 32),
            ("110010", 24),
            ("101100", 24),
            ("101010", 19),
        ] {
            assert_eq!(l3.multiplicity(w), Some(m), "{w}");
        }
        assert_eq!(l3.total(), 135);
    }

    #[test]
    fn keys_are_ballot_and_catalan_many() {
        for level in strong_ballot_levels(9).unwrap() {
            assert_eq!(level.entries().len() as u128, catalan(level.k()));
            for (w, _) in level.entries() {
                assert!(w.is_ballot(), "{w}");
                assert_eq!(w.len(), 2 * level.k());
                assert_eq!(w.bits().count_ones() as usize, level.k());
            }
        }
    }

    #[test]
    fn strong_small_counts() {
        let rows = strong_ballot_table(5).unwrap();
        let counts: Vec<u64> = rows.iter().map(|r| r.count.to_u64().unwrap()).collect();
        assert_eq!(counts, vec![1, 7, 135, 5193, 336825]);
        assert_eq!(rows[1].q, ratio(7u32.into(), 24u32.into()));
    }

    #[test]
    fn weak_small_counts() {
        let rows = weak_ordering_table(5).unwrap();
        let counts: Vec<u64> = rows.iter().map(|r| r.count.to_u64().unwrap()).collect();
        assert_eq!(counts, vec![1, 5, 55, 1023, 28207]);
    }

    #[test]
    fn weak_materialised_matches_counted() {
        let mut level = WeakOrderingLevel::first();
        for _ in 0..4 {
            let predicted = level.next_count();
            let raw: usize = level.orderings().iter().map(|w| w.children().len()).sum();
            level = level.next();
            assert_eq!(predicted as usize, level.len());
            // no two parents share a child
            assert_eq!(raw, level.len());
            assert!(level.orderings().iter().all(|w| w.is_admissible()));
        }
    }

    #[test]
    fn second_weak_level_is_the_hand_list() {
        let level = WeakOrderingLevel::first().next();
        let mut got: Vec<String> = level.orderings().iter().map(|w| w.to_string()).collect();
        got.sort();
        let mut want = vec!["y2x2y1x1", "y2y1x2x1", "y1y2x2x1", "y1y2x1x2", "y1x1y2x2"];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn descendants_of_y2x2y1x1() {
        let parent = LabelledWord::from_signed(&[-2, 2, -1, 1]).unwrap();
        let mut got: Vec<String> = parent.children().iter().map(|w| w.to_string()).collect();
        got.sort();
        let mut want = vec![
            "y3x3y2x2y1x1",
            "y3y2x3x2y1x1",
            "y2y3x3x2y1x1",
            "y2y3x2x3y1x1",
            "y2x2y3x3y1x1",
            "y2y3x2y1x3x1",
            "y2x2y3y1x3x1",
            "y2x2y1y3x3x1",
            "y2x2y1y3x1x3",
            "y2x2y1x1y3x3",
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn brute_matches_recurrences() {
        assert_eq!(
            brute_q(1, OrderKind::Strong).unwrap(),
            ratio(1u32.into(), 2u32.into())
        );
        assert_eq!(
            brute_q(2, OrderKind::Strong).unwrap(),
            ratio(7u32.into(), 24u32.into())
        );
        assert_eq!(
            brute_q(2, OrderKind::Weak).unwrap(),
            ratio(5u32.into(), 24u32.into())
        );
        let strong = strong_ballot_table(4).unwrap();
        let weak = weak_ordering_table(4).unwrap();
        for k in 1..=4 {
            assert_eq!(
                brute_q(k, OrderKind::Strong).unwrap(),
                strong[k - 1].q,
                "k={k}"
            );
            assert_eq!(brute_q(k, OrderKind::Weak).unwrap(), weak[k - 1].q, "k={k}");
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(strong_ballot_table(0), Err(Error::BadK { .. })));
        assert!(matches!(strong_ballot_table(15), Err(Error::BadK { .. })));
        assert!(matches!(weak_ordering_table(8), Err(Error::BadK { .. })));
        assert!(matches!(
            brute_q(5, OrderKind::Weak),
            Err(Error::BadK { .. })
        ));
    }

    #[test]
    fn signed_roundtrip() {
        let w = LabelledWord::from_signed(&[-2, -1, 2, 1]).unwrap();
        assert_eq!(w.to_signed(), vec![-2, -1, 2, 1]);
        assert_eq!(w.to_string(), "y2y1x2x1");
        assert!(LabelledWord::from_signed(&[0]).is_err());
    }
}

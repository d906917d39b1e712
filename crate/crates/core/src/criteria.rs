//! Comparability predicates for the strong and weak Bruhat orders, plus the
//! two partial events (four-corner and top-rows) used to bound them.
//!
//! Geometry follows the superimposed permutation matrix: position `t` is a
//! column (left to right), value `ω(t)` is a row (bottom to top). Crosses mark
//! `π`, balls mark `σ`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest `n` accepted by the chain-search oracles.
pub const ORACLE_MAX_N: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum StrongMethod {
    Tableau,
    #[default]
    Dominance,
    ChainOracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WeakMethod {
    #[default]
    InversionSet,
    ChainOracle,
}

impl StrongMethod {
    pub const ALL: [StrongMethod; 3] = [Self::Tableau, Self::Dominance, Self::ChainOracle];

    pub fn name(self) -> &'static str {
        match self {
            Self::Tableau => "tableau",
            Self::Dominance => "dominance",
            Self::ChainOracle => "chain_oracle",
        }
    }
}

impl WeakMethod {
    pub const ALL: [WeakMethod; 2] = [Self::InversionSet, Self::ChainOracle];

    pub fn name(self) -> &'static str {
        match self {
            Self::InversionSet => "inversion_set",
            Self::ChainOracle => "chain_oracle",
        }
    }
}

impl fmt::Display for StrongMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for WeakMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrongMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or(Error::MethodMismatch {
                method: s.to_string(),
                order: "strong",
            })
    }
}

impl FromStr for WeakMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or(Error::MethodMismatch {
                method: s.to_string(),
                order: "weak",
            })
    }
}

fn same_len(pi: &Permutation, sigma: &Permutation) -> Result<usize> {
    if pi.len() != sigma.len() {
        return Err(Error::LengthMismatch {
            left: pi.len(),
            right: sigma.len(),
        });
    }
    Ok(pi.len())
}

/// π ≤ σ in the strong Bruhat order.
pub fn strong_leq(pi: &Permutation, sigma: &Permutation, method: StrongMethod) -> Result<bool> {
    same_len(pi, sigma)?;
    Ok(match method {
        StrongMethod::Dominance => dominance_leq(pi.as_slice(), sigma.as_slice(), &mut Vec::new()),
        StrongMethod::Tableau => tableau_leq(pi.as_slice(), sigma.as_slice()),
        StrongMethod::ChainOracle => return strong_leq_oracle(pi, sigma),
    })
}

/// Dominance form of the matrix criterion: for every prefix length `i` and
/// threshold `j`, `#{t ≤ i : π(t) ≤ j} ≥ #{t ≤ i : σ(t) ≤ j}`.
///
/// `diff[j]` tracks the running difference of the two counts; each prefix step
/// only touches the thresholds between the two new values, and only a step
/// with `π(i) > σ(i)` can lower a difference.
pub fn dominance_leq(pi: &[u32], sigma: &[u32], diff: &mut Vec<i32>) -> bool {
    debug_assert_eq!(pi.len(), sigma.len());
    diff.clear();
    diff.resize(pi.len() + 1, 0);
    for (&a, &b) in pi.iter().zip(sigma) {
        let (a, b) = (a as usize, b as usize);
        if a > b {
            for d in &mut diff[b..a] {
                *d -= 1;
                if *d < 0 {
                    return false;
                }
            }
        } else {
            for d in &mut diff[a..b] {
                *d += 1;
            }
        }
    }
    true
}

/// Ehresmann's tableau criterion: the sorted prefixes of π are entrywise
/// bounded by the sorted prefixes of σ.
pub fn tableau_leq(pi: &[u32], sigma: &[u32]) -> bool {
    let n = pi.len();
    let mut rows_pi: Vec<u32> = Vec::with_capacity(n);
    let mut rows_sigma: Vec<u32> = Vec::with_capacity(n);
    for j in 0..n.saturating_sub(1) {
        let at = rows_pi.partition_point(|&v| v < pi[j]);
        rows_pi.insert(at, pi[j]);
        let at = rows_sigma.partition_point(|&v| v < sigma[j]);
        rows_sigma.insert(at, sigma[j]);
        if rows_pi.iter().zip(&rows_sigma).any(|(x, y)| x > y) {
            return false;
        }
    }
    true
}

/// One reduction step: `word` with positions `i < j` (1-indexed) swapped,
/// where `ω(i) > ω(j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub i: usize,
    pub j: usize,
    pub result: Permutation,
}

/// All reductions of `w`: swaps of any inverted pair of positions.
pub fn reductions(w: &Permutation) -> Vec<Reduction> {
    let s = w.as_slice();
    let mut out = Vec::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] > s[j] {
                out.push(swapped(w, i, j));
            }
        }
    }
    out
}

/// All simple reductions of `w`: swaps of an adjacent inverted pair.
pub fn simple_reductions(w: &Permutation) -> Vec<Reduction> {
    let s = w.as_slice();
    (0..s.len().saturating_sub(1))
        .filter(|&i| s[i] > s[i + 1])
        .map(|i| swapped(w, i, i + 1))
        .collect()
}

fn swapped(w: &Permutation, i: usize, j: usize) -> Reduction {
    let mut word = w.as_slice().to_vec();
    word.swap(i, j);
    Reduction {
        i: i + 1,
        j: j + 1,
        result: Permutation::from_word_unchecked(word),
    }
}

fn reachable_set(
    top: &Permutation,
    target: Option<&Permutation>,
    step: fn(&Permutation) -> Vec<Reduction>,
) -> Result<(bool, HashSet<Permutation>)> {
    if top.len() > ORACLE_MAX_N {
        return Err(Error::TooLarge {
            what: "oracle n",
            value: top.len(),
            limit: ORACLE_MAX_N,
        });
    }
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(top.clone());
    queue.push_back(top.clone());
    if target == Some(top) {
        return Ok((true, seen));
    }
    while let Some(w) = queue.pop_front() {
        for r in step(&w) {
            if seen.contains(&r.result) {
                continue;
            }
            if target == Some(&r.result) {
                seen.insert(r.result);
                return Ok((true, seen));
            }
            seen.insert(r.result.clone());
            queue.push_back(r.result);
        }
    }
    Ok((false, seen))
}

/// Every permutation reachable from `sigma` by a chain of reductions
/// (the strong lower interval of `sigma`, including itself).
pub fn strong_down_set(sigma: &Permutation) -> Result<HashSet<Permutation>> {
    Ok(reachable_set(sigma, None, reductions)?.1)
}

/// Every permutation reachable from `sigma` by simple reductions.
pub fn weak_down_set(sigma: &Permutation) -> Result<HashSet<Permutation>> {
    Ok(reachable_set(sigma, None, simple_reductions)?.1)
}

/// Breadth-first search over reduction chains from σ. Limited to `n ≤ 7`.
pub fn strong_leq_oracle(pi: &Permutation, sigma: &Permutation) -> Result<bool> {
    same_len(pi, sigma)?;
    Ok(reachable_set(sigma, Some(pi), reductions)?.0)
}

/// Breadth-first search over simple-reduction chains from σ. Limited to `n ≤ 7`.
pub fn weak_leq_oracle(pi: &Permutation, sigma: &Permutation) -> Result<bool> {
    same_len(pi, sigma)?;
    Ok(reachable_set(sigma, Some(pi), simple_reductions)?.0)
}

/// π ⪯ σ in the weak order, decided by `E(π) ⊇ E(σ)`.
pub fn weak_leq(pi: &Permutation, sigma: &Permutation) -> Result<bool> {
    same_len(pi, sigma)?;
    Ok(pi.non_inversions().is_superset(&sigma.non_inversions()))
}

pub fn weak_leq_by(pi: &Permutation, sigma: &Permutation, method: WeakMethod) -> Result<bool> {
    match method {
        WeakMethod::InversionSet => weak_leq(pi, sigma),
        WeakMethod::ChainOracle => weak_leq_oracle(pi, sigma),
    }
}

/// Allocation-free weak comparison on raw words: every pair of values in
/// order in σ is in order in π. `pos_pi` and `pos_sigma` are scratch buffers.
pub fn weak_leq_words(
    pi: &[u32],
    sigma: &[u32],
    pos_pi: &mut Vec<u32>,
    pos_sigma: &mut Vec<u32>,
) -> bool {
    let n = pi.len();
    fill_positions(pi, pos_pi);
    fill_positions(sigma, pos_sigma);
    for b in 1..n {
        for a in 0..b {
            if pos_sigma[a] < pos_sigma[b] && pos_pi[a] > pos_pi[b] {
                return false;
            }
        }
    }
    true
}

fn fill_positions(word: &[u32], pos: &mut Vec<u32>) {
    pos.clear();
    pos.resize(word.len(), 0);
    for (t, &v) in word.iter().enumerate() {
        pos[v as usize - 1] = t as u32;
    }
}

/// The four-corner event: 2n cumulative ballot conditions on the
/// `n/2 × n/2` corners of the superimposed matrix. Necessary for π ≤ σ.
///
/// * southwest, rows bottom-up: crosses ≥ balls;
/// * northeast, rows top-down: crosses ≥ balls;
/// * northwest, columns left-to-right: balls ≥ crosses;
/// * southeast, columns right-to-left: balls ≥ crosses.
pub fn corner_event(pi: &Permutation, sigma: &Permutation) -> Result<bool> {
    let n = same_len(pi, sigma)?;
    if n % 2 == 1 {
        return Err(Error::OddN { n });
    }
    Ok(corner_event_words(pi.as_slice(), sigma.as_slice()))
}

pub(crate) fn corner_event_words(pi: &[u32], sigma: &[u32]) -> bool {
    let n = pi.len();
    let h = (n / 2) as u32;
    let hu = n / 2;
    // Row-wise reads: which low rows carry a mark in the left half, which
    // high rows carry a mark in the right half.
    let mut sw = vec![0i32; hu];
    let mut ne = vec![0i32; hu];
    for t in 0..hu {
        if pi[t] <= h {
            sw[(pi[t] - 1) as usize] += 1;
        }
        if sigma[t] <= h {
            sw[(sigma[t] - 1) as usize] -= 1;
        }
    }
    for t in hu..n {
        if pi[t] > h {
            ne[(pi[t] - h - 1) as usize] += 1;
        }
        if sigma[t] > h {
            ne[(sigma[t] - h - 1) as usize] -= 1;
        }
    }
    let mut run = 0;
    for d in &sw {
        run += d;
        if run < 0 {
            return false;
        }
    }
    run = 0;
    for d in ne.iter().rev() {
        run += d;
        if run < 0 {
            return false;
        }
    }
    // Column-wise reads: high rows in left columns, low rows in right columns.
    run = 0;
    for t in 0..hu {
        run += i32::from(sigma[t] > h) - i32::from(pi[t] > h);
        if run < 0 {
            return false;
        }
    }
    run = 0;
    for t in (hu..n).rev() {
        run += i32::from(sigma[t] <= h) - i32::from(pi[t] <= h);
        if run < 0 {
            return false;
        }
    }
    true
}

/// The top-rows event for `k`: every northeast submatrix made of the top
/// `j ≤ k` rows holds at least as many crosses as balls.
pub fn top_rows_event(pi: &Permutation, sigma: &Permutation, k: usize) -> Result<bool> {
    let n = same_len(pi, sigma)?;
    if k == 0 || k > n {
        return Err(Error::BadK {
            k,
            reason: format!("must lie in 1..={n}"),
        });
    }
    let loc_pi = pi.inverse();
    let loc_sigma = sigma.inverse();
    // diff[m - 1] = #{crosses in columns ≥ m} - #{balls in columns ≥ m} over the rows read so far
    let mut diff = vec![0i32; n];
    for row in (n - k + 1..=n).rev() {
        let a = loc_pi.at(row) as usize;
        let b = loc_sigma.at(row) as usize;
        if b > a {
            for d in &mut diff[a..b] {
                *d -= 1;
                if *d < 0 {
                    return Ok(false);
                }
            }
        } else {
            for d in &mut diff[b..a] {
                *d += 1;
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example_all_methods() {
        let (pi, sigma) = (p("2,1,5,3,4"), p("4,1,5,2,3"));
        for m in StrongMethod::ALL {
            assert!(strong_leq(&pi, &sigma, m).unwrap(), "{m}");
            assert!(!strong_leq(&sigma, &pi, m).unwrap(), "{m}");
        }
    }

    #[test]
    fn identity_is_minimum() {
        let id = Permutation::identity(4);
        for s in all_permutations(4) {
            assert!(strong_leq(&id, &s, StrongMethod::Dominance).unwrap());
            assert!(strong_leq(&id, &s, StrongMethod::Tableau).unwrap());
            assert!(weak_leq(&id, &s).unwrap());
        }
    }

    #[test]
    fn s3_totals() {
        let all: Vec<_> = all_permutations(3).collect();
        let mut strong = 0;
        let mut weak = 0;
        for a in &all {
            for b in &all {
                strong += strong_leq(a, b, StrongMethod::Dominance).unwrap() as u32;
                weak += weak_leq(a, b).unwrap() as u32;
            }
        }
        assert_eq!(strong, 19);
        assert_eq!(weak, 17);
    }

    #[test]
    fn weak_examples() {
        assert!(weak_leq(&p("1,3,2"), &p("3,1,2")).unwrap());
        assert!(weak_leq_oracle(&p("1,3,2"), &p("3,1,2")).unwrap());
        assert!(!weak_leq_oracle(&p("3,1,2"), &p("1,3,2")).unwrap());
        let s = p("2,4,1,3");
        assert!(weak_leq(&s, &s).unwrap());
        assert!(weak_leq_oracle(&s, &s).unwrap());
        assert!(strong_leq_oracle(&s, &s).unwrap());
    }

    #[test]
    fn one_step_weak_chain() {
        let steps = simple_reductions(&p("3,1,2"));
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].result, p("1,3,2"));
    }

    #[test]
    fn errors() {
        let a = p("1,2");
        let b = p("1,2,3");
        assert!(matches!(
            strong_leq(&a, &b, StrongMethod::Dominance),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            weak_leq(&a, &b),
            Err(Error::LengthMismatch { .. })
        ));
        let big = Permutation::identity(8);
        assert!(matches!(
            strong_leq_oracle(&big, &big),
            Err(Error::TooLarge { .. })
        ));
        assert!(matches!(corner_event(&b, &b), Err(Error::OddN { n: 3 })));
        assert!(matches!(top_rows_event(&b, &b, 0), Err(Error::BadK { .. })));
        assert!(matches!(top_rows_event(&b, &b, 4), Err(Error::BadK { .. })));
        assert!("bogus".parse::<StrongMethod>().is_err());
        assert_eq!(
            "tableau".parse::<StrongMethod>().unwrap(),
            StrongMethod::Tableau
        );
        assert_eq!(
            "chain_oracle".parse::<WeakMethod>().unwrap(),
            WeakMethod::ChainOracle
        );
    }

    #[test]
    fn corner_event_small() {
        assert!(corner_event(&p("1,2"), &p("2,1")).unwrap());
        let all: Vec<_> = all_permutations(2).collect();
        let hits: usize = all
            .iter()
            .flat_map(|a| all.iter().map(move |b| (a, b)))
            .filter(|(a, b)| corner_event(a, b).unwrap())
            .count();
        assert_eq!(hits, 3);
    }

    #[test]
    fn comparable_pairs_lie_in_corner_event() {
        let all: Vec<_> = all_permutations(4).collect();
        for a in &all {
            for b in &all {
                if strong_leq(a, b, StrongMethod::Dominance).unwrap() {
                    assert!(corner_event(a, b).unwrap(), "{a} <= {b}");
                }
            }
        }
    }

    #[test]
    fn top_rows_full_k_is_the_criterion() {
        let all: Vec<_> = all_permutations(4).collect();
        for a in &all {
            for b in &all {
                assert_eq!(
                    top_rows_event(a, b, 4).unwrap(),
                    strong_leq(a, b, StrongMethod::Dominance).unwrap()
                );
                for k in 1..=4 {
                    assert!(top_rows_event(a, a, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn reduction_inversion_identity() {
        for n in 1..=5 {
            for w in all_permutations(n) {
                let s = w.as_slice();
                for r in reductions(&w) {
                    let (i, j) = (r.i - 1, r.j - 1);
                    let between = (i + 1..j).filter(|&k| s[i] > s[k] && s[k] > s[j]).count();
                    assert_eq!(
                        w.inversion_count(),
                        r.result.inversion_count() + 2 * between + 1
                    );
                }
            }
        }
    }
}

//! Monte Carlo estimates of comparability probabilities.

use std::fmt;

use rayon::prelude::*;

use crate::criteria::{corner_event_words, dominance_leq, weak_leq_words};
use crate::error::{Error, Result};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Strong,
    Weak,
    CornerEvent,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Self::Strong => "strong",
            Self::Weak => "weak",
            Self::CornerEvent => "corner",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strong" => Ok(Self::Strong),
            "weak" => Ok(Self::Weak),
            "corner" => Ok(Self::CornerEvent),
            _ => Err(Error::InvalidArgument(format!("unknown relation {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub n: usize,
    pub relation: Relation,
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    /// `sqrt(p̂(1 - p̂)/trials)`.
    pub stderr: f64,
    pub seed: u64,
    pub workers: usize,
}

/// Estimates `P(relation(π, σ))` for independent uniform π, σ in `S_n`.
///
/// Worker `w` draws from stream `w` of `seed` and runs `trials / workers`
/// trials, plus one if `w < trials % workers`. Results depend only on
/// `(n, relation, trials, seed, workers)`, not on thread scheduling.
pub fn mc_estimate(
    n: usize,
    relation: Relation,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<McEstimate> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    if workers == 0 {
        return Err(Error::InvalidArgument("workers must be positive".into()));
    }
    if relation == Relation::CornerEvent && n % 2 == 1 {
        return Err(Error::OddN { n });
    }
    let base = trials / workers as u64;
    let extra = trials % workers as u64;
    let successes: u64 = (0..workers)
        .into_par_iter()
        .map(|w| {
            let share = base + u64::from((w as u64) < extra);
            run_worker(n, relation, share, RngStream::new(seed, w as u64))
        })
        .sum();
    let p_hat = successes as f64 / trials as f64;
    Ok(McEstimate {
        n,
        relation,
        trials,
        successes,
        p_hat,
        stderr: (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
        seed,
        workers,
    })
}

fn run_worker(n: usize, relation: Relation, trials: u64, mut rng: RngStream) -> u64 {
    let mut pi: Vec<u32> = (1..=n as u32).collect();
    let mut sigma = pi.clone();
    let mut diff = Vec::new();
    let (mut pos_pi, mut pos_sigma) = (Vec::new(), Vec::new());
    let mut hits = 0;
    for _ in 0..trials {
        // fresh identity each trial so the draw matches Permutation::random
        for (t, v) in pi.iter_mut().enumerate() {
            *v = t as u32 + 1;
        }
        for (t, v) in sigma.iter_mut().enumerate() {
            *v = t as u32 + 1;
        }
        rng.shuffle(&mut pi);
        rng.shuffle(&mut sigma);
        let hit = match relation {
            Relation::Strong => dominance_leq(&pi, &sigma, &mut diff),
            Relation::Weak => weak_leq_words(&pi, &sigma, &mut pos_pi, &mut pos_sigma),
            Relation::CornerEvent => corner_event_words(&pi, &sigma),
        };
        hits += u64::from(hit);
    }
    hits
}

/// One row of a scaling table.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub estimate: McEstimate,
    /// `ln p̂ / ln n`; absent when `n = 1` or `p̂ = 0`.
    pub ln_ratio: Option<f64>,
    /// `p̂(n) / p̂(n - 1)`; present only when the previous row has `n - 1`
    /// and a nonzero estimate.
    pub step_ratio: Option<f64>,
}

/// Runs [`mc_estimate`] at each `n` (strictly increasing) with the same seed.
pub fn scaling_table(
    ns: &[usize],
    relation: Relation,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<Vec<ScalingRow>> {
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "n values must be strictly increasing".into(),
        ));
    }
    let mut rows: Vec<ScalingRow> = Vec::with_capacity(ns.len());
    for &n in ns {
        let estimate = mc_estimate(n, relation, trials, seed, workers)?;
        let ln_ratio =
            (n > 1 && estimate.p_hat > 0.0).then(|| estimate.p_hat.ln() / (n as f64).ln());
        let step_ratio = rows
            .last()
            .filter(|prev| prev.estimate.n + 1 == n && prev.estimate.p_hat > 0.0)
            .map(|prev| estimate.p_hat / prev.estimate.p_hat);
        rows.push(ScalingRow {
            estimate,
            ln_ratio,
            step_ratio,
        });
    }
    Ok(rows)
}

//! Closed forms behind the four-corner bound: the hypergeometric law of the
//! corner support counts and the exact probability of the corner event.
//!
//! With `h = n/2`, `m₁` counts rows supporting the southwest corner of π and
//! `m₂` the same for σ; `m₃ = h - m₁`, `m₄ = h - m₂`. Conditioned on these
//! counts, each of the four corners contributes the same lattice-path factor
//!
//! ```text
//!     (m₁ - m₂ + 1)(h + 1) / ((h - m₂ + 1)(m₁ + 1))
//! ```
//!
//! so that `P(E ∩ {M₁ = m₁, M₂ = m₂})` is that factor to the fourth power
//! times `C(h,m₁)² C(h,m₂)² / C(n,h)²`.
//!
//! The same product is sometimes written with `(m₃ + 1)` in place of
//! `(h - m₂ + 1) = (m₄ + 1)` in the denominator. That variant is available as
//! [`dagger_term_printed`] for comparison only: at `n = 2, m₁ = 1, m₂ = 0` it
//! evaluates to 4, while exhaustive enumeration gives 1/4.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{binomial_big, ratio};

pub const CORNER_N_MAX: usize = 200;

/// Support counts of the four corners for even `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CornerCounts {
    n: usize,
    m1: usize,
    m2: usize,
}

impl CornerCounts {
    pub fn new(n: usize, m1: usize, m2: usize) -> Result<Self> {
        even(n)?;
        let h = n / 2;
        for m in [m1, m2] {
            if m > h {
                return Err(Error::BadM { m, max: h });
            }
        }
        Ok(Self { n, m1, m2 })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn m1(&self) -> usize {
        self.m1
    }
    pub fn m2(&self) -> usize {
        self.m2
    }
    pub fn m3(&self) -> usize {
        self.n / 2 - self.m1
    }
    pub fn m4(&self) -> usize {
        self.n / 2 - self.m2
    }
}

fn even(n: usize) -> Result<()> {
    if n % 2 == 1 || n == 0 {
        return Err(Error::OddN { n });
    }
    Ok(())
}

/// `P(M = m) = C(n/2, m)² / C(n, n/2)`.
pub fn hypergeom_pmf(n: usize, m: usize) -> Result<BigRational> {
    even(n)?;
    let h = n / 2;
    if m > h {
        return Err(Error::BadM { m, max: h });
    }
    let c = binomial_big(h, m);
    Ok(ratio(&c * &c, binomial_big(n, h)))
}

fn dagger_with(c: &CornerCounts, denom_left: usize) -> BigRational {
    let (n, m1, m2) = (c.n, c.m1, c.m2);
    if m1 < m2 {
        return BigRational::zero();
    }
    let h = n / 2;
    let factor = BigRational::new(
        BigInt::from((m1 - m2 + 1) * (h + 1)),
        BigInt::from(denom_left * (m1 + 1)),
    );
    let b1 = binomial_big(h, m1);
    let b2 = binomial_big(h, m2);
    let cn = binomial_big(n, h);
    let binoms = ratio(&b1 * &b1 * &b2 * &b2, &cn * &cn);
    let f2 = &factor * &factor;
    &f2 * &f2 * binoms
}

/// `P(E ∩ {M₁ = m₁, M₂ = m₂})`; zero when `m₁ < m₂`.
pub fn dagger_term(c: &CornerCounts) -> BigRational {
    dagger_with(c, c.n / 2 - c.m2 + 1)
}

/// The `(m₃ + 1)` variant of [`dagger_term`]. Not a probability in general.
pub fn dagger_term_printed(c: &CornerCounts) -> BigRational {
    dagger_with(c, c.m3() + 1)
}

/// `P(E) = Σ_{m₁ ≥ m₂} P(E ∩ {M₁ = m₁, M₂ = m₂})`, for even `n ≤ 200`.
pub fn corner_event_prob(n: usize) -> Result<BigRational> {
    corner_sum(n, dagger_term)
}

/// [`corner_event_prob`] summed with the printed-denominator variant.
pub fn corner_event_prob_printed(n: usize) -> Result<BigRational> {
    corner_sum(n, dagger_term_printed)
}

fn corner_sum(n: usize, term: fn(&CornerCounts) -> BigRational) -> Result<BigRational> {
    even(n)?;
    crate::error::too_large("n", n, CORNER_N_MAX)?;
    let h = n / 2;
    let mut total = BigRational::zero();
    for m1 in 0..=h {
        for m2 in 0..=m1 {
            total += term(&CornerCounts { n, m1, m2 });
        }
    }
    Ok(total)
}

/// Mean of the hypergeometric law, computed from the mass function.
pub fn hypergeom_mean(n: usize) -> Result<BigRational> {
    let mut mean = BigRational::zero();
    for m in 0..=n / 2 {
        mean += hypergeom_pmf(n, m)? * BigRational::from_integer(BigInt::from(m));
    }
    Ok(mean)
}

/// `Σ_m P(M = m)`; equals one.
pub fn hypergeom_total(n: usize) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for m in 0..=n / 2 {
        total += hypergeom_pmf(n, m)?;
    }
    Ok(total)
}

//! Exact-arithmetic helpers shared by the counting modules.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub fn factorial_big(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial_big(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// `num / den` reduced to lowest terms.
pub fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn ratio_u(num: u128, den: u128) -> BigRational {
    ratio(BigUint::from(num), BigUint::from(den))
}

/// Float value of a rational, robust to numerators and denominators beyond f64 range.
pub fn to_f64(q: &BigRational) -> f64 {
    if let Some(x) = q.to_f64() {
        if x.is_finite() {
            return x;
        }
    }
    let (n, d) = (q.numer(), q.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(900);
    let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// `"num/den"` in lowest terms.
pub fn fmt_ratio(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial_big(10, 5), BigUint::from(252u32));
        assert_eq!(binomial_big(4, 5), BigUint::zero());
        assert_eq!(binomial_big(0, 0), BigUint::one());
    }

    #[test]
    fn ratio_is_reduced() {
        let q = ratio_u(6, 8);
        assert_eq!(fmt_ratio(&q), "3/4");
        assert_eq!(to_f64(&q), 0.75);
    }

    #[test]
    fn huge_ratio_to_float() {
        let q = ratio(factorial_big(300) * 3u32, factorial_big(300) * 4u32 + 0u32);
        assert!((to_f64(&q) - 0.75).abs() < 1e-12);
        let big = BigRational::new(
            BigInt::from(factorial_big(200)),
            BigInt::from(factorial_big(199)) * 3,
        );
        assert!((to_f64(&big) - 200.0 / 3.0).abs() < 1e-9);
    }
}

//! The log-normal representation of the `alpha = 1/3` model values.
//!
//! `(1 - e X / p)^{-1} = ((p + 1)/(p - 1))^{e X / 2} (1 - p^{-2})^{-1/2}`
//! for `e, X` in {+1, -1}, so both Euler products at `1/3` are a constant
//! times `exp(eta)` with `eta` a Rademacher series.

use serde::Serialize;

use crate::alpha::Alpha;
use crate::error::{Error, Result};
use crate::primes::{jacobi, sieve_primes};
use crate::randmodel::{decompose_rational, EulerEvaluator, MultiplicativeSample, Parity};

/// The `sigma2` that both `eta` at `1/3` stay below.
pub const SIGMA2: f64 = 0.395;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sigma2Bound {
    pub prime_cutoff: u64,
    /// `sum_{p <= C, p != 3} (1/4) ln^2((p - 1)/(p + 1))`.
    pub partial_sum: f64,
    /// Upper bound for the same sum over all `p > C`.
    pub tail_bound: f64,
    pub total: f64,
}

/// Bounds `sum_{p != 3} a_p^2` with `a_p = (1/2) ln((p + 1)/(p - 1)) = artanh(1/p)`.
///
/// The remainder uses `artanh(x) <= x / (1 - x^2)`, so for `n > C`
/// `a_n^2 <= 1/(n^2 - 1) * (1 + 1/(C^2 - 1))`, and
/// `sum_{n > C} 1/(n^2 - 1) = (2C + 1) / (2C (C + 1))`.
pub fn sigma2_one_third(prime_cutoff: u64) -> Result<Sigma2Bound> {
    if prime_cutoff < 100 {
        return Err(Error::param("sigma2 prime cutoff", "cutoff >= 100"));
    }
    let partial_sum: f64 = sieve_primes(prime_cutoff)?
        .primes()
        .iter()
        .filter(|&&p| p != 3)
        .map(|&p| (1.0 / p as f64).atanh().powi(2))
        .sum();
    let c = prime_cutoff as f64;
    let tail_bound = (1.0 + 1.0 / (c * c - 1.0)) * (2.0 * c + 1.0) / (2.0 * c * (c + 1.0));
    Ok(Sigma2Bound {
        prime_cutoff,
        partial_sum,
        tail_bound,
        total: partial_sum + tail_bound,
    })
}

/// `(A_1(P), A_2(P))`: `(3/2)` and `(sqrt3/2)` times `prod_{p <= P, p != 3} (1 - p^{-2})^{-1/2}`.
/// They tend to `pi / sqrt3` and `pi / 3`.
pub fn lemma7_normalizers(prime_cutoff: u64) -> Result<(f64, f64)> {
    let prod: f64 = sieve_primes(prime_cutoff)?
        .primes()
        .iter()
        .filter(|&&p| p != 3)
        .map(|&p| (1.0 - 1.0 / (p * p) as f64).powf(-0.5))
        .product();
    Ok((1.5 * prod, 3f64.sqrt() / 2.0 * prod))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma7Check {
    /// Euler product of `a^-(1/3)`.
    pub minus_product: f64,
    /// `A_1 exp(eta)`.
    pub minus_lognormal: f64,
    /// Euler product of `a^+(1/3)`.
    pub plus_product: f64,
    /// `A_2 exp(eta')`.
    pub plus_lognormal: f64,
    pub eta: f64,
    pub eta_prime: f64,
    pub a1: f64,
    pub a2: f64,
    pub max_relative_error: f64,
    pub holds: bool,
}

/// Compares the `1/3` Euler products with their `A exp(eta)` forms, where
/// `eta = sum_{p <= P, p != 3} (1/2) ln((p + 1)/(p - 1)) X_p` and `eta'`
/// carries an extra `(p/3)`.
pub fn lemma7_identity_check(sample: &MultiplicativeSample, prime_cutoff: u64) -> Result<Lemma7Check> {
    let third = Alpha::rational(1, 3)?;
    let minus = EulerEvaluator::new(&decompose_rational(&third, Parity::Minus)?, prime_cutoff)?;
    let plus = EulerEvaluator::new(&decompose_rational(&third, Parity::Plus)?, prime_cutoff)?;
    let primes = minus.primes().to_vec();
    let signs = sample.prime_signs(&primes);
    let (mut eta, mut eta_prime) = (0.0, 0.0);
    for (&p, &x) in primes.iter().zip(&signs) {
        if p == 3 {
            continue;
        }
        let a = (1.0 / p as f64).atanh() * x as f64;
        eta += a;
        eta_prime += a * jacobi(p as i64, 3)? as f64;
    }
    let (a1, a2) = lemma7_normalizers(prime_cutoff)?;
    let minus_product = minus.eval(sample);
    let plus_product = plus.eval(sample);
    let minus_lognormal = a1 * eta.exp();
    let plus_lognormal = a2 * eta_prime.exp();
    let rel = |x: f64, y: f64| (x - y).abs() / y.abs();
    let max_relative_error = rel(minus_product, minus_lognormal).max(rel(plus_product, plus_lognormal));
    Ok(Lemma7Check {
        minus_product,
        minus_lognormal,
        plus_product,
        plus_lognormal,
        eta,
        eta_prime,
        a1,
        a2,
        max_relative_error,
        holds: max_relative_error <= 1e-6,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randmodel::sample_multiplicative;
    use std::f64::consts::PI;

    #[test]
    fn sigma2_values() {
        let b = sigma2_one_third(1_000_000).unwrap();
        assert!(b.total < SIGMA2, "{b:?}");
        assert!((b.partial_sum - 0.3943438).abs() < 1e-6);
        let two = (1.0f64 / 3.0).ln().powi(2) / 4.0;
        assert!((two - 0.3017).abs() < 1e-4);
        assert!((0.5f64.atanh().powi(2) - two).abs() < 1e-15);
        assert!(sigma2_one_third(99).is_err());
    }

    #[test]
    fn sigma2_monotone() {
        let mut last = 0.0;
        for c in [100, 1000, 10_000, 100_000] {
            let b = sigma2_one_third(c).unwrap();
            assert!(b.partial_sum >= last);
            assert!(b.total >= b.partial_sum);
            last = b.partial_sum;
        }
    }

    #[test]
    fn tail_bound_dominates_exact_tail() {
        let c = 100u64;
        let b = sigma2_one_third(c).unwrap();
        let exact: f64 = (c + 1..5_000_000).map(|n| (1.0 / n as f64).atanh().powi(2)).sum();
        assert!(exact < b.tail_bound);
    }

    #[test]
    fn identity_on_constant_and_random_samples() {
        for s in [MultiplicativeSample::all_plus(), MultiplicativeSample::all_minus()] {
            let c = lemma7_identity_check(&s, 1000).unwrap();
            assert!(c.holds, "{c:?}");
        }
        for seed in 0..20 {
            let c = lemma7_identity_check(&sample_multiplicative(seed), 1000).unwrap();
            assert!(c.holds, "{c:?}");
        }
        let minus = lemma7_identity_check(&MultiplicativeSample::all_minus(), 1000).unwrap();
        let plus = lemma7_identity_check(&MultiplicativeSample::all_plus(), 1000).unwrap();
        assert!((minus.eta + plus.eta).abs() < 1e-12);
    }

    #[test]
    fn normalizers_converge() {
        let (a1, a2) = lemma7_normalizers(1_000_000).unwrap();
        assert!((a1 - PI / 3f64.sqrt()).abs() < 1e-5);
        assert!((a2 - PI / 3.0).abs() < 1e-5);
        assert!((PI / 3f64.sqrt() - 1.8138).abs() < 1e-4);
    }
}

//! Numerical constants attached to individual rational `alpha`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::coeffs::{CoefficientSpec, Parity, SeriesEvaluator};
use super::decompose::Character;
use super::estimate::{mean_and_error, run_sample};
use super::euler::euler_product;
use super::sample::{lambda_twist, MultiplicativeSample};
use crate::alpha::Alpha;
use crate::error::{Error, Result};
use crate::primes::sieve_primes;

/// `(A, B) = (sqrt((5 + sqrt 5) / 8), sqrt((5 - sqrt 5) / 8))`, so that
/// `sin(2 pi n / 5) = Re((A - iB) kappa(n))`.
pub fn fifth_constants() -> (f64, f64) {
    let r5 = 5f64.sqrt();
    (((5.0 + r5) / 8.0).sqrt(), ((5.0 - r5) / 8.0).sqrt())
}

/// The phase `xi = arg prod (1 - kappa(p) X_p / p)^{-1}` and the resulting
/// bounds on `P(L(a^+(1/5)) < 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XiStatistics {
    /// `sum_{p = +-2 mod 5, p <= cutoff} arctan^2(1/p)`.
    pub variance: f64,
    /// `variance` plus the remainder bound `1 / cutoff`.
    pub variance_upper: f64,
    pub prime_cutoff: u64,
    /// `arctan(B / A)`.
    pub phi: f64,
    /// `variance_upper / (pi/2 - phi)^2`.
    pub chebyshev_bound: f64,
    /// `variance_upper / 2 * (1/(pi/2 - phi)^2 + 1/(pi/2 + phi)^2)`, using
    /// the symmetry of `xi` to bound each side separately.
    pub one_sided_bound: f64,
}

pub fn xi_statistics() -> XiStatistics {
    xi_statistics_with(1_000_000).expect("fixed cutoff is valid")
}

pub fn xi_statistics_with(prime_cutoff: u64) -> Result<XiStatistics> {
    if prime_cutoff < 10 {
        return Err(Error::param("xi prime cutoff", "cutoff >= 10"));
    }
    let primes = sieve_primes(prime_cutoff)?;
    let variance: f64 = primes
        .primes()
        .iter()
        .filter(|&&p| p % 5 == 2 || p % 5 == 3)
        .map(|&p| (1.0 / p as f64).atan().powi(2))
        .sum();
    // arctan(1/n)^2 < 1/n^2 and sum_{n > P} 1/n^2 < 1/P
    let variance_upper = variance + 1.0 / prime_cutoff as f64;
    let (a, b) = fifth_constants();
    let phi = (b / a).atan();
    let lo = PI / 2.0 - phi;
    let hi = PI / 2.0 + phi;
    Ok(XiStatistics {
        variance,
        variance_upper,
        prime_cutoff,
        phi,
        chebyshev_bound: variance_upper / (lo * lo),
        one_sided_bound: variance_upper / 2.0 * (1.0 / (lo * lo) + 1.0 / (hi * hi)),
    })
}

/// `E(L(a^+(1/8)) | X_2 = -1) = (sqrt2/2 - 1/2) sum_{n odd} 1/n^2 = (sqrt2 - 1) pi^2 / 16`.
pub fn conditional_mean_1_8() -> f64 {
    (SQRT_2 - 1.0) * PI * PI / 16.0
}

/// The value `(sqrt2 - 1) pi^2 / 18` as printed alongside the same derivation.
pub fn conditional_mean_1_8_printed() -> f64 {
    (SQRT_2 - 1.0) * PI * PI / 18.0
}

/// Exact `E(sum_{n <= N} a^+_n(1/8) X_n / n | X_2 = x2)`: only `n = 2^j m^2`
/// contribute, with weight `x2^j`.
pub fn conditional_mean_1_8_truncated(truncation: usize, x2: i8) -> f64 {
    let spec = CoefficientSpec::new(Alpha::rational(1, 8).unwrap(), Parity::Plus);
    let x2 = if x2 >= 0 { 1.0 } else { -1.0 };
    let mut total = 0.0;
    let mut power = 1usize;
    let mut sign = 1.0;
    while power <= truncation {
        let mut m = 1usize;
        while power * m * m <= truncation {
            let n = power * m * m;
            if m % 2 == 1 {
                total += sign * spec.coefficient(n as u64) / n as f64;
            }
            m += 1;
        }
        power *= 2;
        sign *= x2;
    }
    total
}

/// Monte Carlo mean and standard error of the truncated series given `X_2 = x2`.
pub fn conditional_mean_1_8_mc(samples: u64, seed: u64, truncation: usize, x2: i8) -> Result<(f64, f64)> {
    if samples < 2 {
        return Err(Error::param("samples", "at least two samples"));
    }
    let spec = CoefficientSpec::new(Alpha::rational(1, 8).unwrap(), Parity::Plus);
    let eval = SeriesEvaluator::new(&spec, truncation)?;
    let values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| eval.eval(&run_sample(seed, i).fix(2, x2)))
        .collect();
    Ok(mean_and_error(&values))
}

/// `E * E~` for the Euler product `E` of `chi` and its lambda-twisted copy.
pub fn twist_product(character: &Character, sample: &MultiplicativeSample, prime_cutoff: u64) -> Result<Complex64> {
    let e = euler_product(character, sample, prime_cutoff)?;
    let t = euler_product(character, &lambda_twist(sample), prime_cutoff)?;
    Ok(e * t)
}

/// `prod_{p <= P} (1 - chi(p)^2 / p^2)^{-1}`, which `twist_product` equals
/// for every sample.
pub fn twist_constant(character: &Character, prime_cutoff: u64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    Ok(sieve_primes(prime_cutoff)?
        .primes()
        .iter()
        .fold(one, |acc, &p| {
            let c = character.at(p);
            acc / (one - c * c / (p * p) as f64)
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randmodel::sample::sample_multiplicative;

    #[test]
    fn xi_values() {
        let xi = xi_statistics_with(100_000).unwrap();
        assert!((xi.variance - 0.35355).abs() < 1e-4, "{xi:?}");
        assert!((xi.phi - 0.553).abs() < 1e-3);
        assert!(xi.variance_upper >= xi.variance);
        assert!(xi.one_sided_bound < 1.0 / 3.0);
        assert!(xi.one_sided_bound < xi.chebyshev_bound);
    }

    #[test]
    fn fifth_constants_give_sine() {
        let (a, b) = fifth_constants();
        let kappa = Character::kappa(false);
        for n in 1..20u64 {
            let v = (Complex64::new(a, -b) * kappa.at(n)).re;
            assert!((v - (2.0 * PI * n as f64 / 5.0).sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn conditional_mean_truncations_converge() {
        // the omitted odd m > sqrt(N / 2) contribute less than 1 / sqrt(N / 2)
        let n = 1_000_000;
        let tail = 1.0 / (n as f64 / 2.0).sqrt();
        let minus = conditional_mean_1_8_truncated(n, -1);
        assert!((minus - conditional_mean_1_8()).abs() < tail, "{minus}");
        let plus = conditional_mean_1_8_truncated(n, 1);
        assert!((plus - (SQRT_2 + 1.0) * PI * PI / 16.0).abs() < tail);
        assert!(minus < conditional_mean_1_8() && plus < (SQRT_2 + 1.0) * PI * PI / 16.0);
        assert!((conditional_mean_1_8_printed() - 0.22712).abs() < 1e-5);
    }

    #[test]
    fn twist_products_are_constant() {
        let chi = Character::principal(5);
        let expected = twist_constant(&chi, 1000).unwrap();
        for seed in 0..10 {
            let v = twist_product(&chi, &sample_multiplicative(seed), 1000).unwrap();
            assert!((v - expected).norm() < 1e-12 * expected.norm());
        }
        let h = twist_constant(&chi, 100_000).unwrap().re;
        assert!((h / (4.0 * PI * PI / 25.0) - 1.0).abs() < 1e-4);
        let f = twist_constant(&Character::kronecker_lower("(-2/.)", -2, 8), 100_000).unwrap().re;
        assert!((f / (PI * PI / 8.0) - 1.0).abs() < 1e-4);
    }
}

//! Euler-product evaluation of `sum_n chi(n / d) X_n / n = (X_d / d) prod_p (1 - chi(p) X_p / p)^{-1}`.

use num_complex::Complex64;

use super::decompose::{Character, RationalDecomposition};
use super::sample::MultiplicativeSample;
use crate::error::{Error, Result};
use crate::primes::sieve_primes;

#[derive(Debug, Clone)]
struct PreparedTerm {
    coeff: Complex64,
    dilation: u64,
    dilation_primes: Vec<u64>,
    chi: Vec<Complex64>,
}

/// A decomposition with its character values at every prime `p <= P`
/// tabulated once, for evaluation on many samples.
#[derive(Debug, Clone)]
pub struct EulerEvaluator {
    primes: Vec<u64>,
    terms: Vec<PreparedTerm>,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `prod_{p <= P} (1 - chi(p) X_p / p)^{-1}` given `X_p` for the listed primes.
fn product(chi: &[Complex64], primes: &[u64], signs: &[i8]) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    chi.iter()
        .zip(primes)
        .zip(signs)
        .fold(one, |acc, ((&c, &p), &x)| acc / (one - c * (x as f64 / p as f64)))
}

impl EulerEvaluator {
    pub fn new(decomp: &RationalDecomposition, prime_cutoff: u64) -> Result<Self> {
        if prime_cutoff < 2 {
            return Err(Error::param("prime cutoff", "P >= 2"));
        }
        let primes = sieve_primes(prime_cutoff)?.primes().to_vec();
        let terms = decomp
            .terms
            .iter()
            .map(|t| PreparedTerm {
                coeff: t.coeff,
                dilation: t.dilation,
                dilation_primes: prime_factors(t.dilation),
                chi: primes.iter().map(|&p| t.character.at(p)).collect(),
            })
            .collect();
        Ok(EulerEvaluator { primes, terms })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    fn x_of(&self, n_primes: &[u64], sample: &MultiplicativeSample, signs: &[i8]) -> f64 {
        n_primes
            .iter()
            .map(|&q| match self.primes.binary_search(&q) {
                Ok(i) => signs[i],
                Err(_) => sample.x_p(q),
            } as f64)
            .product()
    }

    /// The complex value `coeff * X_d / d * prod(...)` of each term.
    pub fn term_values(&self, sample: &MultiplicativeSample) -> Vec<Complex64> {
        let signs = sample.prime_signs(&self.primes);
        self.terms
            .iter()
            .map(|t| {
                let x_d = self.x_of(&t.dilation_primes, sample, &signs);
                t.coeff * (x_d / t.dilation as f64) * product(&t.chi, &self.primes, &signs)
            })
            .collect()
    }

    pub fn eval(&self, sample: &MultiplicativeSample) -> f64 {
        self.term_values(sample).iter().map(|v| v.re).sum()
    }
}

/// Sum of the real parts of the truncated Euler products of each term.
pub fn euler_eval(decomp: &RationalDecomposition, sample: &MultiplicativeSample, prime_cutoff: u64) -> Result<f64> {
    Ok(EulerEvaluator::new(decomp, prime_cutoff)?.eval(sample))
}

/// `prod_{p <= P} (1 - chi(p) X_p / p)^{-1}` for a single character.
pub fn euler_product(character: &Character, sample: &MultiplicativeSample, prime_cutoff: u64) -> Result<Complex64> {
    let primes = sieve_primes(prime_cutoff)?.primes().to_vec();
    let chi: Vec<Complex64> = primes.iter().map(|&p| character.at(p)).collect();
    Ok(product(&chi, &primes, &sample.prime_signs(&primes)))
}

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::sample::{MultiplicativeSample, SignTable};
use crate::alpha::Alpha;
use crate::error::{Error, Result};
use crate::primes::FactorTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// `a_n = sin(2 pi n alpha)`
    Plus,
    /// `a_n = 1 - cos(2 pi n alpha)`
    Minus,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Plus, Parity::Minus];
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Plus => "plus",
            Parity::Minus => "minus",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Parity::Plus),
            "minus" | "-" => Ok(Parity::Minus),
            _ => Err(Error::param("parity", "plus or minus")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientSpec {
    pub alpha: Alpha,
    pub parity: Parity,
}

impl CoefficientSpec {
    pub fn new(alpha: Alpha, parity: Parity) -> Self {
        CoefficientSpec { alpha, parity }
    }

    pub fn coefficient(&self, n: u64) -> f64 {
        let (s, c) = self.alpha.turn(n).sin_cos();
        match self.parity {
            Parity::Plus => s,
            Parity::Minus => 1.0 - c,
        }
    }

    /// `a_n` for `n <= n_max`, with a zero at index 0.
    pub fn coefficients(&self, n_max: usize) -> Vec<f64> {
        let mut a = vec![0.0; n_max + 1];
        for (n, slot) in a.iter_mut().enumerate().skip(1) {
            *slot = self.coefficient(n as u64);
        }
        a
    }

    /// `a_n / n` for `n <= n_max`, with a zero at index 0.
    pub fn weights(&self, n_max: usize) -> Vec<f64> {
        let mut w = self.coefficients(n_max);
        for (n, slot) in w.iter_mut().enumerate().skip(1) {
            *slot /= n as f64;
        }
        w
    }
}

/// `sum_n w_n X_n` over the common range of the two slices.
pub fn weighted_sum(weights: &[f64], signs: &SignTable) -> f64 {
    weights
        .iter()
        .zip(signs.values())
        .skip(1)
        .map(|(&w, &x)| w * x as f64)
        .sum()
}

/// Evaluates one coefficient family on many samples at a fixed truncation.
#[derive(Debug, Clone)]
pub struct SeriesEvaluator {
    factors: FactorTable,
    weights: Vec<f64>,
}

impl SeriesEvaluator {
    pub fn new(spec: &CoefficientSpec, truncation: usize) -> Result<Self> {
        if truncation == 0 {
            return Err(Error::param("series truncation", "N >= 1"));
        }
        Ok(SeriesEvaluator {
            factors: FactorTable::new(truncation),
            weights: spec.weights(truncation),
        })
    }

    /// From raw `a_n` (index 0 ignored), truncated at `a.len() - 1`.
    pub fn from_coefficients(a: &[f64]) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::param("series truncation", "N >= 1"));
        }
        let mut weights = a.to_vec();
        weights[0] = 0.0;
        for (n, slot) in weights.iter_mut().enumerate().skip(1) {
            *slot /= n as f64;
        }
        Ok(SeriesEvaluator {
            factors: FactorTable::new(a.len() - 1),
            weights,
        })
    }

    pub fn eval(&self, sample: &MultiplicativeSample) -> f64 {
        weighted_sum(&self.weights, &sample.sign_table(&self.factors))
    }
}

/// `sum_{n <= N} a_n X_n / n`.
pub fn series_eval(spec: &CoefficientSpec, sample: &MultiplicativeSample, truncation: usize) -> Result<f64> {
    Ok(SeriesEvaluator::new(spec, truncation)?.eval(sample))
}

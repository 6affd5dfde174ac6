//! Monte Carlo estimates of the positivity probabilities `c^+` and `c^-`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::coeffs::{CoefficientSpec, Parity, SeriesEvaluator};
use super::decompose::decompose_rational;
use super::euler::EulerEvaluator;
use super::sample::MultiplicativeSample;
use crate::alpha::Alpha;
use crate::error::{Error, Result};

/// Values at or above `-NONNEG_TOL` count as nonnegative.
pub const NONNEG_TOL: f64 = 1e-9;

const Z95: f64 = 1.959963984540054;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Evaluator {
    Series,
    Euler,
}

impl fmt::Display for Evaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Evaluator::Series => "series",
            Evaluator::Euler => "euler",
        })
    }
}

impl FromStr for Evaluator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "series" => Ok(Evaluator::Series),
            "euler" => Ok(Evaluator::Euler),
            _ => Err(Error::param("evaluator", "series or euler")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    pub samples: u64,
    pub seed: u64,
    pub truncation: usize,
    pub prime_cutoff: u64,
    pub evaluator: Evaluator,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            samples: 10_000,
            seed: 0,
            truncation: 100_000,
            prime_cutoff: 1000,
            evaluator: Evaluator::Euler,
        }
    }
}

/// Sample `i` of a run uses stream `i` of the run's seed.
pub fn run_sample(seed: u64, index: u64) -> MultiplicativeSample {
    MultiplicativeSample::new(seed, index)
}

/// `L(a)` on samples `0..samples`, in sample order.
pub fn simulate_values(alpha: &Alpha, parity: Parity, config: &SimulationConfig) -> Result<Vec<f64>> {
    if config.samples == 0 {
        return Err(Error::param("samples", "at least one sample"));
    }
    let eval: Box<dyn Fn(&MultiplicativeSample) -> f64 + Sync> = match config.evaluator {
        Evaluator::Series => {
            let e = SeriesEvaluator::new(&CoefficientSpec::new(*alpha, parity), config.truncation)?;
            Box::new(move |s| e.eval(s))
        }
        Evaluator::Euler => {
            let e = EulerEvaluator::new(&decompose_rational(alpha, parity)?, config.prime_cutoff)?;
            Box::new(move |s| e.eval(s))
        }
    };
    Ok((0..config.samples)
        .into_par_iter()
        .map(|i| eval(&run_sample(config.seed, i)))
        .collect())
}

/// 95% Wilson score interval for `successes` out of `n`.
pub fn wilson_interval(successes: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Mean and standard error of the mean.
pub fn mean_and_error(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivityEstimate {
    pub alpha: Alpha,
    pub parity: Parity,
    pub evaluator: Evaluator,
    pub samples: u64,
    pub positive: u64,
    pub nonnegative: u64,
    pub strict_fraction: f64,
    pub strict_ci_low: f64,
    pub strict_ci_high: f64,
    pub nonneg_fraction: f64,
    pub nonneg_ci_low: f64,
    pub nonneg_ci_high: f64,
    pub mean: f64,
    pub std_error: f64,
}

impl PositivityEstimate {
    pub fn from_values(alpha: Alpha, parity: Parity, evaluator: Evaluator, values: &[f64]) -> Self {
        let samples = values.len() as u64;
        let positive = values.iter().filter(|&&v| v > 0.0).count() as u64;
        let nonnegative = values.iter().filter(|&&v| v >= -NONNEG_TOL).count() as u64;
        let (strict_ci_low, strict_ci_high) = wilson_interval(positive, samples);
        let (nonneg_ci_low, nonneg_ci_high) = wilson_interval(nonnegative, samples);
        let (mean, std_error) = mean_and_error(values);
        PositivityEstimate {
            alpha,
            parity,
            evaluator,
            samples,
            positive,
            nonnegative,
            strict_fraction: positive as f64 / samples as f64,
            strict_ci_low,
            strict_ci_high,
            nonneg_fraction: nonnegative as f64 / samples as f64,
            nonneg_ci_low,
            nonneg_ci_high,
            mean,
            std_error,
        }
    }

    /// Half-width of the nonnegative-fraction interval.
    pub fn nonneg_half_width(&self) -> f64 {
        (self.nonneg_ci_high - self.nonneg_ci_low) / 2.0
    }
}

pub fn estimate_positivity(alpha: &Alpha, parity: Parity, config: &SimulationConfig) -> Result<PositivityEstimate> {
    let values = simulate_values(alpha, parity, config)?;
    Ok(PositivityEstimate::from_values(*alpha, parity, config.evaluator, &values))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CombinedEstimate {
    pub plus: PositivityEstimate,
    pub minus: PositivityEstimate,
    /// `(c^+ + c^-) / 2` with strict positivity.
    pub combined_strict: f64,
    /// `(c^+ + c^-) / 2` with nonnegativity.
    pub combined_nonneg: f64,
}

pub fn estimate_combined(alpha: &Alpha, config: &SimulationConfig) -> Result<CombinedEstimate> {
    let plus = estimate_positivity(alpha, Parity::Plus, config)?;
    let minus = estimate_positivity(alpha, Parity::Minus, config)?;
    Ok(CombinedEstimate {
        combined_strict: (plus.strict_fraction + minus.strict_fraction) / 2.0,
        combined_nonneg: (plus.nonneg_fraction + minus.nonneg_fraction) / 2.0,
        plus,
        minus,
    })
}

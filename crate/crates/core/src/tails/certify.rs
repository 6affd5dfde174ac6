use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::optimize_u;
use super::third::SIGMA2;
use crate::alpha::Alpha;
use crate::error::{Error, Result};
use crate::randmodel::estimate::{mean_and_error, run_sample};
use crate::randmodel::moments::moment_direct;
use crate::randmodel::{CoefficientSpec, Parity, SeriesEvaluator};

/// Radius around `1/3` inside which the certificate is claimed.
pub const CERTIFIED_RADIUS: f64 = 2e-6;

/// Relative slack on the radius so decimal inputs like `1/3 + 2e-6` qualify.
const RADIUS_SLACK: f64 = 1e-9;

/// The rounded `92 (2 pi)^{2/3}` used for the `L^2` distance at `L = 2 pi`, `C = 1`.
pub const FUNDAMENTAL_PRINTED: f64 = 313.3;

/// `92 |alpha - beta|^{2/3} L^{2/3} C^{4/3}`.
pub fn distance_bound(lipschitz: f64, sup: f64, delta: f64) -> Result<f64> {
    if !(lipschitz > 0.0) || !(sup > 0.0) || !(delta >= 0.0) {
        return Err(Error::param("distance_bound", "L > 0, C > 0 and delta >= 0"));
    }
    Ok(92.0 * delta.powf(2.0 / 3.0) * lipschitz.powf(2.0 / 3.0) * sup.powf(4.0 / 3.0))
}

/// Coefficients `(k_minus, k_plus)` in `D = k |alpha - 1/3|^{2/3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DConstants {
    /// 94 and 282.
    Printed,
    /// `(3 / pi^2) 313.3` and `(9 / pi^2) 313.3`.
    Recomputed,
    /// The larger of the two at each step.
    Conservative,
}

impl DConstants {
    pub const ALL: [DConstants; 3] = [DConstants::Printed, DConstants::Recomputed, DConstants::Conservative];

    pub fn coefficients(self) -> (f64, f64) {
        let recomputed = (3.0 / (PI * PI) * FUNDAMENTAL_PRINTED, 9.0 / (PI * PI) * FUNDAMENTAL_PRINTED);
        match self {
            DConstants::Printed => (94.0, 282.0),
            DConstants::Recomputed => recomputed,
            DConstants::Conservative => (recomputed.0.max(94.0), recomputed.1.max(282.0)),
        }
    }
}

impl fmt::Display for DConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DConstants::Printed => "printed",
            DConstants::Recomputed => "recomputed",
            DConstants::Conservative => "conservative",
        })
    }
}

impl FromStr for DConstants {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(DConstants::Printed),
            "recomputed" => Ok(DConstants::Recomputed),
            "conservative" => Ok(DConstants::Conservative),
            _ => Err(Error::param("constants", "printed, recomputed or conservative")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificationReport {
    pub alpha: Alpha,
    pub delta: f64,
    pub d_minus: f64,
    pub d_plus: f64,
    pub u_minus: f64,
    pub u_plus: f64,
    pub p_neg_minus: f64,
    pub p_neg_plus: f64,
    pub c_lower: f64,
    pub certified: bool,
}

/// `|alpha - 1/3|`, exact up to the final rounding for rational `alpha`.
fn distance_to_third(alpha: &Alpha) -> f64 {
    match alpha.as_rational() {
        Some(r) => {
            let num = (3 * r.num() as i128 - r.den() as i128).unsigned_abs();
            num as f64 / (3 * r.den() as u128) as f64
        }
        None => (alpha.to_f64() - 1.0 / 3.0).abs(),
    }
}

/// Lower bound on `(c^+ + c^-) / 2` at `alpha` from the bounds at `1/3`.
pub fn certify_neighborhood(alpha: &Alpha, constants: DConstants) -> Result<CertificationReport> {
    let delta = distance_to_third(alpha);
    let (k_minus, k_plus) = constants.coefficients();
    let scale = delta.powf(2.0 / 3.0);
    let d_minus = k_minus * scale;
    let d_plus = k_plus * scale;
    let minus = optimize_u(SIGMA2, d_minus)?;
    let plus = optimize_u(SIGMA2, d_plus)?;
    if minus.degenerate || plus.degenerate {
        log::info!("certify alpha = {alpha}: degenerate optimum (D = 0 or bound >= 1)");
    }
    let p_neg_minus = minus.value.min(1.0);
    let p_neg_plus = plus.value.min(1.0);
    let c_lower = 1.0 - (p_neg_minus + p_neg_plus) / 2.0;
    Ok(CertificationReport {
        alpha: *alpha,
        delta,
        d_minus,
        d_plus,
        u_minus: minus.u,
        u_plus: plus.u,
        p_neg_minus,
        p_neg_plus,
        c_lower,
        certified: delta <= CERTIFIED_RADIUS * (1.0 + RADIUS_SLACK) && c_lower > 0.5,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmpiricalDistance {
    pub mc_estimate: f64,
    pub mc_std_error: f64,
    /// `sum_{n, m <= N, nm square} (a_n(alpha) - a_n(beta)) (a_m(alpha) - a_m(beta)) / (nm)`.
    pub exact_truncated: f64,
}

/// `E (L(a(alpha)) - L(a(beta)))^2` for the series truncated at `N`.
pub fn empirical_distance(
    alpha: &Alpha,
    beta: &Alpha,
    parity: Parity,
    truncation: usize,
    samples: u64,
    seed: u64,
) -> Result<EmpiricalDistance> {
    if samples < 2 {
        return Err(Error::param("samples", "at least two samples"));
    }
    let a = CoefficientSpec::new(*alpha, parity).coefficients(truncation);
    let b = CoefficientSpec::new(*beta, parity).coefficients(truncation);
    let diff: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
    let exact_truncated = moment_direct(&diff, 2)?;
    let eval = SeriesEvaluator::from_coefficients(&diff)?;
    let squares: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| eval.eval(&run_sample(seed, i)).powi(2))
        .collect();
    let (mc_estimate, mc_std_error) = mean_and_error(&squares);
    Ok(EmpiricalDistance {
        mc_estimate,
        mc_std_error,
        exact_truncated,
    })
}

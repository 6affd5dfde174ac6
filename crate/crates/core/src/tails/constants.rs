use std::f64::consts::PI;

use serde::Serialize;

use super::certify::{certify_neighborhood, distance_bound, DConstants, CERTIFIED_RADIUS, FUNDAMENTAL_PRINTED};
use super::third::{lemma7_normalizers, sigma2_one_third, SIGMA2};
use super::zeta::zeta_ratio_check;
use super::{negativity_bound, optimize_u};
use crate::alpha::Alpha;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantRow {
    pub name: &'static str,
    /// The value as it appears in the published derivation, if it does.
    pub printed: Option<f64>,
    pub recomputed: f64,
}

fn row(name: &'static str, printed: impl Into<Option<f64>>, recomputed: f64) -> ConstantRow {
    ConstantRow {
        name,
        printed: printed.into(),
        recomputed,
    }
}

/// Every constant of the certification chain near `1/3`, recomputed.
pub fn constants_table() -> Result<Vec<ConstantRow>> {
    let sigma = sigma2_one_third(1_000_000)?;
    let (a1, a2) = lemma7_normalizers(1_000_000)?;
    let zeta = zeta_ratio_check();
    let fundamental = distance_bound(2.0 * PI, 1.0, 1.0)?;
    let (k_minus, k_plus) = DConstants::Recomputed.coefficients();
    let scale = CERTIFIED_RADIUS.powf(2.0 / 3.0);
    let d_minus = 94.0 * scale;
    let d_plus = 282.0 * scale;
    let minus = optimize_u(SIGMA2, d_minus)?;
    let plus = optimize_u(SIGMA2, d_plus)?;
    let edge = Alpha::real(1.0 / 3.0 + CERTIFIED_RADIUS);
    let printed = certify_neighborhood(&edge, DConstants::Printed)?;
    let recomputed = certify_neighborhood(&edge, DConstants::Recomputed)?;
    Ok(vec![
        row("sigma2_partial", None, sigma.partial_sum),
        row("sigma2_total", SIGMA2, sigma.total),
        row("eight_sigma2", 3.16, 8.0 * SIGMA2),
        row("A1", PI / 3f64.sqrt(), a1),
        row("A2", PI / 3.0, a2),
        row("zeta_4_3", None, zeta.zeta_4_3),
        row("zeta_8_3", None, zeta.zeta_8_3),
        row("zeta_ratio_scaled", 92.0, zeta.scaled),
        row("fundamental", FUNDAMENTAL_PRINTED, fundamental),
        row("k_minus_numerator", 926.9, 3.0 * FUNDAMENTAL_PRINTED),
        row("k_plus_numerator", 2780.7, 9.0 * FUNDAMENTAL_PRINTED),
        row("k_minus", 94.0, k_minus),
        row("k_plus", 282.0, k_plus),
        row("d_minus", 0.015, d_minus),
        row("d_plus", 0.0447, d_plus),
        row("u_minus", 0.0756, minus.u),
        row("u_plus", 0.12957, plus.u),
        row("p_neg_minus", 0.32, minus.value),
        row("p_neg_plus", 0.612, plus.value),
        row("p_neg_plus_at_printed_u", 0.612, negativity_bound(SIGMA2, 0.0447, 0.12957)?),
        row("c_lower", 0.534, printed.c_lower),
        row("c_lower_recomputed", None, recomputed.c_lower),
    ])
}

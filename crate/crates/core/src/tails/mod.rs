//! Sub-Gaussian tail bounds and the certified lower bound on the density
//! of nonnegative sums near `alpha = 1/3`.

pub mod certify;
pub mod constants;
pub mod third;
pub mod zeta;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub use certify::{
    certify_neighborhood, distance_bound, empirical_distance, CertificationReport, DConstants, EmpiricalDistance,
};
pub use constants::{constants_table, ConstantRow};
pub use third::{lemma7_identity_check, sigma2_one_third, Lemma7Check, Sigma2Bound};
pub use zeta::{zeta, zeta_ratio_check, ZetaRatio};

/// `P(eta >= T) <= exp(-T^2 / (2 sigma2))` for `eta` in the class `L(sigma2)`.
pub fn subgaussian_tail(sigma2: f64, t: f64) -> Result<f64> {
    if !(sigma2 > 0.0) || !(t > 0.0) {
        return Err(Error::param("subgaussian_tail", "sigma2 > 0 and T > 0"));
    }
    Ok((-t * t / (2.0 * sigma2)).exp())
}

/// `exp(-ln^2(u) / (8 sigma2)) + D / u`, a bound on the probability that the
/// model value sits below zero when its distance from a log-normal-type
/// reference is at most `D` in `L^2`.
pub fn negativity_bound(sigma2: f64, d: f64, u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::param("negativity_bound u", "0 < u < 1"));
    }
    if !(sigma2 > 0.0) || !(d >= 0.0) {
        return Err(Error::param("negativity_bound", "sigma2 > 0 and D >= 0"));
    }
    let l = u.ln();
    Ok((-l * l / (8.0 * sigma2)).exp() + d / u)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UOptimum {
    pub u: f64,
    pub value: f64,
    /// `D = 0` (infimum approached as `u -> 0`) or `D >= 1` (bound is useless).
    pub degenerate: bool,
}

const U_MIN: f64 = 1e-6;
const U_MAX: f64 = 1.0 - 1e-6;
const GRID: usize = 400;

/// Minimizes [`negativity_bound`] over `u` by a grid scan in `log u`
/// followed by golden-section refinement inside the best grid bracket.
pub fn optimize_u(sigma2: f64, d: f64) -> Result<UOptimum> {
    if !(sigma2 > 0.0) || !(d >= 0.0) {
        return Err(Error::param("optimize_u", "sigma2 > 0 and D >= 0"));
    }
    if d == 0.0 {
        return Ok(UOptimum {
            u: 0.0,
            value: 0.0,
            degenerate: true,
        });
    }
    let f = |x: f64| negativity_bound(sigma2, d, x.exp()).expect("u in range");
    let (lo, hi) = (U_MIN.ln(), U_MAX.ln());
    let step = (hi - lo) / GRID as f64;
    let best = (0..=GRID)
        .map(|i| (i, f(lo + step * i as f64)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty grid")
        .0;
    let mut a = lo + step * best.saturating_sub(1) as f64;
    let mut b = lo + step * (best + 1).min(GRID) as f64;
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut e = a + g * (b - a);
    let (mut fc, mut fe) = (f(c), f(e));
    while b - a > 1e-12 {
        if fc < fe {
            b = e;
            e = c;
            fe = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + g * (b - a);
            fe = f(e);
        }
    }
    let x = (a + b) / 2.0;
    let value = f(x);
    Ok(UOptimum {
        u: x.exp(),
        value,
        degenerate: d >= 1.0 || value >= 1.0,
    })
}

/// A Rademacher series `eta = sum a_i kappa_i` with `sum a_i^2 <= sigma2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubGaussianSeries {
    pub coefficients: Vec<f64>,
    pub sigma2: f64,
}

impl SubGaussianSeries {
    pub fn new(coefficients: Vec<f64>, sigma2: f64) -> Result<Self> {
        let norm: f64 = coefficients.iter().map(|a| a * a).sum();
        if !(norm <= sigma2) {
            return Err(Error::param("sub-Gaussian series", "sum a_i^2 <= sigma2"));
        }
        Ok(SubGaussianSeries { coefficients, sigma2 })
    }

    /// `sum a_i^2`.
    pub fn norm2(&self) -> f64 {
        self.coefficients.iter().map(|a| a * a).sum()
    }

    /// `eta` on sample `index`; `kappa_i` is bit `i mod 64` of word `i / 64`.
    pub fn sample(&self, seed: u64, index: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let mut word = 0;
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if i % 64 == 0 {
                    word = rng.next_u64();
                }
                if word >> (i % 64) & 1 == 1 {
                    *a
                } else {
                    -a
                }
            })
            .sum()
    }

    /// Empirical `P(eta >= T)` for each `T` in the grid.
    pub fn tail_frequencies(&self, grid: &[f64], samples: u64, seed: u64) -> Vec<f64> {
        let counts = (0..samples)
            .into_par_iter()
            .fold(
                || vec![0u64; grid.len()],
                |mut acc, i| {
                    let eta = self.sample(seed, i);
                    for (c, &t) in acc.iter_mut().zip(grid) {
                        *c += (eta >= t) as u64;
                    }
                    acc
                },
            )
            .reduce(
                || vec![0u64; grid.len()],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        counts.into_iter().map(|c| c as f64 / samples as f64).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_examples() {
        assert!((subgaussian_tail(0.395, 1.0).unwrap() - (-1.0f64 / 0.79).exp()).abs() < 1e-15);
        assert!((subgaussian_tail(0.395, 1.0).unwrap() - 0.2820).abs() < 1e-4);
        assert!(subgaussian_tail(0.395, 1e-9).unwrap() > 1.0 - 1e-15);
        assert!(subgaussian_tail(0.0, 1.0).is_err());
        assert!(subgaussian_tail(1.0, -1.0).is_err());
    }

    #[test]
    fn tail_is_symmetric_under_negation() {
        // eta and -eta have the same coefficients up to sign, hence the same sigma2
        let s = SubGaussianSeries::new(vec![0.5, -0.3, 0.2], 0.4).unwrap();
        let neg = SubGaussianSeries::new(s.coefficients.iter().map(|a| -a).collect(), 0.4).unwrap();
        assert_eq!(s.norm2(), neg.norm2());
        let grid = [0.1, 0.5, 0.9];
        let f = s.tail_frequencies(&grid, 20_000, 1);
        let g = neg.tail_frequencies(&grid, 20_000, 1);
        for ((a, b), &t) in f.iter().zip(&g).zip(&grid) {
            let bound = subgaussian_tail(0.4, t).unwrap();
            assert!(*a <= bound && *b <= bound);
        }
    }

    #[test]
    fn cosh_is_dominated_by_gaussian_mgf() {
        for i in 0..=2000 {
            let t = -10.0 + i as f64 * 0.01;
            assert!(((-t).exp() + t.exp()) / 2.0 <= (t * t / 2.0).exp() * (1.0 + 1e-15));
        }
    }

    #[test]
    fn negativity_examples() {
        assert!(negativity_bound(0.395, 0.0, 1e-300).unwrap() < 1e-6);
        assert!(negativity_bound(0.395, 0.015, 0.0756).unwrap() <= 0.32);
        assert!(negativity_bound(0.395, 0.0447, 0.12957).unwrap() <= 0.612);
        assert!(negativity_bound(0.395, 0.1, 1.0).is_err());
        assert!(negativity_bound(0.395, 0.1, 0.0).is_err());
    }

    #[test]
    fn optimum_locations() {
        let m = optimize_u(0.395, 0.015).unwrap();
        assert!((m.u - 0.0756).abs() < 1e-3, "{m:?}");
        let p = optimize_u(0.395, 0.0447).unwrap();
        assert!((p.u - 0.12957).abs() < 1e-3, "{p:?}");
        for u in [0.5, 0.9, 0.99] {
            assert!(p.value <= negativity_bound(0.395, 0.0447, p.u * u).unwrap() + 1e-15);
            assert!(p.value <= negativity_bound(0.395, 0.0447, (p.u / u).min(0.999)).unwrap() + 1e-15);
        }
        assert!(!p.degenerate);
        assert!(optimize_u(0.395, 2.0).unwrap().degenerate);
        assert!(optimize_u(0.395, -1.0).is_err());
    }

    #[test]
    fn optimum_vanishes_with_d() {
        let mut last = f64::INFINITY;
        for k in 1..8 {
            let d = 10f64.powi(-k);
            let m = optimize_u(0.395, d).unwrap();
            assert!(m.value < last);
            last = m.value;
        }
        assert!(last < 0.02);
        let z = optimize_u(0.395, 0.0).unwrap();
        assert_eq!((z.u, z.value, z.degenerate), (0.0, 0.0, true));
    }
}

use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::FactorTable;

const CUTOFF: u64 = 100_000;
/// `B_2, B_4, B_6, B_8`.
const BERNOULLI: [f64; 4] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0];

/// Riemann zeta for real `s > 1` by Euler-Maclaurin summation with four
/// correction terms after `10^5` explicit terms.
pub fn zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::param("zeta", "real s > 1"));
    }
    let n = CUTOFF as f64;
    let head: f64 = (1..CUTOFF).rev().map(|k| (k as f64).powf(-s)).sum();
    let mut tail = n.powf(1.0 - s) / (s - 1.0) + n.powf(-s) / 2.0;
    // B_{2k} / (2k)! * s (s+1) ... (s+2k-2) * N^{-s-2k+1}
    let mut rising = s;
    let mut factorial = 2.0;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let j = 2 * k as i32 + 2;
        tail += b / factorial * rising * n.powf(-s - j as f64 + 1.0);
        rising *= (s + j as f64 - 1.0) * (s + j as f64);
        factorial *= ((j + 1) * (j + 2)) as f64;
    }
    Ok(head + tail)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaRatio {
    pub zeta_4_3: f64,
    pub zeta_8_3: f64,
    /// `zeta(4/3)^3 / zeta(8/3) = sum tau(n^2) / n^{4/3}`.
    pub ratio: f64,
    /// `ratio * 2^{4/3}`.
    pub scaled: f64,
    pub below_92: bool,
}

pub fn zeta_ratio_check() -> ZetaRatio {
    let zeta_4_3 = zeta(4.0 / 3.0).expect("s > 1");
    let zeta_8_3 = zeta(8.0 / 3.0).expect("s > 1");
    let ratio = zeta_4_3.powi(3) / zeta_8_3;
    let scaled = ratio * 2f64.powf(4.0 / 3.0);
    ZetaRatio {
        zeta_4_3,
        zeta_8_3,
        ratio,
        scaled,
        below_92: scaled < 92.0,
    }
}

/// `sum_{n <= N} tau(n^2) / n^s`.
pub fn tau_square_partial(s: f64, n: usize) -> f64 {
    let factors = FactorTable::new(n);
    (1..=n)
        .rev()
        .map(|k| factors.tau_of_square(k) as f64 * (k as f64).powf(-s))
        .sum()
}

//! Fourier expansion of `L(alpha, p)` and quadratic Gauss sums.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::alpha::Alpha;
use crate::charsum::{build_qr_table, QrTable};
use crate::error::{Error, Result};
use crate::primes::check_odd_prime;

/// `(sin, cos)` of `2 pi alpha m` for any sign of `m`.
fn angle(alpha: &Alpha, m: i64) -> (f64, f64) {
    let (s, c) = alpha.turn(m.unsigned_abs()).sin_cos();
    (s * m.signum() as f64, c)
}

/// The `m`-th Fourier coefficient of the indicator of `[0, alpha]` on the circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierCoefficient {
    pub m: i64,
    pub value: Complex64,
}

impl FourierCoefficient {
    pub fn new(alpha: &Alpha, m: i64) -> Self {
        FourierCoefficient {
            m,
            value: fourier_coeff(alpha, m),
        }
    }
}

/// `alpha` for `m = 0`, `(1 - e^{-2 pi i alpha m}) / (2 pi i m)` otherwise.
pub fn fourier_coeff(alpha: &Alpha, m: i64) -> Complex64 {
    if m == 0 {
        return Complex64::new(alpha.to_f64(), 0.0);
    }
    let (s, c) = angle(alpha, m);
    Complex64::new(s, -(1.0 - c)) / (2.0 * PI * m as f64)
}

/// `sum_{n=1}^{p-1} e^{2 pi i n / p} (n/p)`, summed directly.
pub fn gauss_sum(p: u64) -> Result<Complex64> {
    let table = build_qr_table(p)?;
    Ok(gauss_sum_with(&table))
}

fn gauss_sum_with(table: &QrTable) -> Complex64 {
    let p = table.p();
    (1..p)
        .map(|n| {
            let (s, c) = (2.0 * PI * n as f64 / p as f64).sin_cos();
            Complex64::new(c, s) * table.symbol(n as i64) as f64
        })
        .sum()
}

/// `sqrt(p)` for `p = 1 mod 4`, `i sqrt(p)` for `p = 3 mod 4`.
pub fn gauss_sum_closed(p: u64) -> Result<Complex64> {
    check_odd_prime(p)?;
    let r = (p as f64).sqrt();
    Ok(if p % 4 == 1 {
        Complex64::new(r, 0.0)
    } else {
        Complex64::new(0.0, r)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourierPartial {
    /// Real part of the truncated series; approximates `L(alpha, p)`.
    pub value: f64,
    /// Imaginary part, which the exact series does not have.
    pub imag: f64,
    pub terms: u64,
}

/// `tau * sum_{0 < |m| <= M} (1 - e^{-2 pi i alpha m}) / (2 pi i m) * (m/p)`.
///
/// Terms `m` and `-m` are combined first: for `(-1/p) = 1` they give
/// `sin(2 pi m alpha) / (pi m)`, otherwise `-i (1 - cos(2 pi m alpha)) / (pi m)`.
pub fn fourier_partial(alpha: &Alpha, p: u64, terms: u64) -> Result<FourierPartial> {
    if terms == 0 {
        return Err(Error::param("fourier truncation", "M >= 1"));
    }
    let table = build_qr_table(p)?;
    if alpha.times_is_integer(p) {
        return Err(Error::BoundaryCase {
            alpha: alpha.to_string(),
            p,
        });
    }
    let tau = gauss_sum_with(&table);
    let even = p % 4 == 1;
    let mut sum = 0.0f64;
    for m in 1..=terms {
        let chi = table.symbol(m as i64);
        if chi == 0 {
            continue;
        }
        let (s, c) = angle(alpha, m as i64);
        let term = if even { s } else { 1.0 - c };
        sum += chi as f64 * term / (PI * m as f64);
    }
    let series = if even {
        Complex64::new(sum, 0.0)
    } else {
        Complex64::new(0.0, -sum)
    };
    let total = tau * series;
    Ok(FourierPartial {
        value: total.re,
        imag: total.im,
        terms,
    })
}

/// `max_{N' <= N} |sum_{n <= N'} e^{2 pi i alpha n} (n/p)| / (sqrt(p) ln p)`.
pub fn twisted_sum_check(alpha: &Alpha, p: u64, n: u64) -> Result<f64> {
    let table = build_qr_table(p)?;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut best = 0.0f64;
    for k in 1..=n {
        let chi = table.symbol(k as i64);
        if chi != 0 {
            let (s, c) = angle(alpha, k as i64);
            acc += Complex64::new(c, s) * chi as f64;
        }
        best = best.max(acc.norm());
    }
    let pf = p as f64;
    Ok(best / (pf.sqrt() * pf.ln()))
}

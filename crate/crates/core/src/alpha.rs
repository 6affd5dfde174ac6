//! The length parameter `alpha` of a character sum.
//!
//! Rationals are kept exact so that `floor(alpha * p)` and the angles
//! `2 pi n alpha` are computed without rounding. Decimals go through `f64`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Distance from an integer below which `alpha * p` counts as a boundary hit.
pub const BOUNDARY_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: u64,
}

impl Rational {
    pub fn new(num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ParseAlpha(format!("{num}/0")));
        }
        let g = num.unsigned_abs().gcd(&den).max(1);
        Ok(Rational {
            num: num / g as i64,
            den: den / g,
        })
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Numerator of `n * self` reduced into `[0, den)`.
    fn residue_times(&self, n: u64) -> u64 {
        let num = self.num.rem_euclid(self.den as i64) as u128;
        ((num * n as u128) % self.den as u128) as u64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// The fractional part of `n * alpha`, i.e. an angle measured in full turns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Turn {
    Exact { num: u64, den: u64 },
    Float(f64),
}

impl Turn {
    /// `(sin, cos)` of `2 pi * turn`, exact at multiples of a quarter turn.
    pub fn sin_cos(self) -> (f64, f64) {
        match self {
            Turn::Exact { num, den } => {
                if (4 * num as u128) % den as u128 == 0 {
                    match (4 * num as u128 / den as u128) as u8 {
                        0 => (0.0, 1.0),
                        1 => (1.0, 0.0),
                        2 => (0.0, -1.0),
                        _ => (-1.0, 0.0),
                    }
                } else {
                    (std::f64::consts::TAU * num as f64 / den as f64).sin_cos()
                }
            }
            Turn::Float(t) => (std::f64::consts::TAU * t).sin_cos(),
        }
    }
}

/// Result of `floor(alpha * p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FloorMul {
    pub value: u64,
    /// `alpha * p` was within [`BOUNDARY_EPS`] of an integer on the float path.
    pub near_boundary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    Rational(Rational),
    Real(f64),
}

impl Alpha {
    pub fn rational(num: i64, den: u64) -> Result<Self> {
        Rational::new(num, den).map(Alpha::Rational)
    }

    pub fn real(value: f64) -> Self {
        Alpha::Real(value)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Alpha::Rational(r) => r.to_f64(),
            Alpha::Real(x) => *x,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Alpha::Rational(r) => Some(*r),
            Alpha::Real(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.to_f64() == 0.0
    }

    pub fn in_unit_interval(&self) -> bool {
        match self {
            Alpha::Rational(r) => r.num >= 0 && (r.num as u64) < r.den,
            Alpha::Real(x) => (0.0..1.0).contains(x),
        }
    }

    pub fn check_unit_interval(&self) -> Result<()> {
        if self.in_unit_interval() {
            Ok(())
        } else {
            Err(Error::AlphaOutOfRange(self.to_string()))
        }
    }

    /// `floor(alpha * p)` for `alpha` in `[0, 1)`.
    pub fn floor_mul(&self, p: u64) -> FloorMul {
        match self {
            Alpha::Rational(r) => FloorMul {
                value: ((r.num as u128 * p as u128) / r.den as u128) as u64,
                near_boundary: false,
            },
            Alpha::Real(x) => {
                let prod = x * p as f64;
                let value = prod.floor();
                let frac = prod - value;
                FloorMul {
                    value: value as u64,
                    near_boundary: frac < BOUNDARY_EPS || 1.0 - frac < BOUNDARY_EPS,
                }
            }
        }
    }

    /// Whether `alpha * p` is an integer (exactly for rationals).
    pub fn times_is_integer(&self, p: u64) -> bool {
        match self {
            Alpha::Rational(r) => r.residue_times(p) == 0,
            Alpha::Real(x) => (x * p as f64).fract() == 0.0,
        }
    }

    /// Fractional part of `n * alpha`.
    pub fn turn(&self, n: u64) -> Turn {
        match self {
            Alpha::Rational(r) => Turn::Exact {
                num: r.residue_times(n),
                den: r.den,
            },
            Alpha::Real(x) => {
                let t = (x * n as f64).rem_euclid(1.0);
                Turn::Float(if t >= 1.0 { 0.0 } else { t })
            }
        }
    }

    /// `alpha` reduced modulo 1.
    pub fn reduced(&self) -> Alpha {
        match self {
            Alpha::Rational(r) => Alpha::Rational(Rational {
                num: r.num.rem_euclid(r.den as i64),
                den: r.den,
            }),
            Alpha::Real(x) => Alpha::Real(x.rem_euclid(1.0)),
        }
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::ParseAlpha(s.to_string());
        if let Some((a, b)) = s.split_once('/') {
            let num: i64 = a.trim().parse().map_err(|_| bad())?;
            let den: u64 = b.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            return Alpha::rational(num, den);
        }
        if let Ok(n) = s.parse::<i64>() {
            return Alpha::rational(n, 1);
        }
        let x: f64 = s.parse().map_err(|_| bad())?;
        if !x.is_finite() {
            return Err(bad());
        }
        Ok(Alpha::Real(x))
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Rational(r) => r.fmt(f),
            Alpha::Real(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_exactly() {
        let a: Alpha = "4/10".parse().unwrap();
        assert_eq!(a, Alpha::rational(2, 5).unwrap());
        assert_eq!(a.to_string(), "2/5");
        assert_eq!("0".parse::<Alpha>().unwrap().to_string(), "0");
        assert!(matches!(
            "0.15915494309".parse::<Alpha>().unwrap(),
            Alpha::Real(_)
        ));
        assert!("1/0".parse::<Alpha>().is_err());
        assert!("pi".parse::<Alpha>().is_err());
    }

    #[test]
    fn floor_mul_is_exact_for_rationals() {
        let third = Alpha::rational(1, 3).unwrap();
        assert_eq!(third.floor_mul(7).value, 2);
        assert_eq!(third.floor_mul(1_000_003).value, 333_334);
        let x = Alpha::real(0.5);
        let f = x.floor_mul(10);
        assert_eq!(f.value, 5);
        assert!(f.near_boundary);
    }

    #[test]
    fn quarter_turns_are_exact() {
        let half = Alpha::rational(1, 2).unwrap();
        for n in 0..10 {
            assert_eq!(half.turn(n).sin_cos().0, 0.0);
        }
        let quarter = Alpha::rational(1, 4).unwrap();
        assert_eq!(quarter.turn(3).sin_cos(), (-1.0, 0.0));
    }

    #[test]
    fn unit_interval() {
        assert!(Alpha::rational(0, 1).unwrap().in_unit_interval());
        assert!(!Alpha::rational(1, 1).unwrap().in_unit_interval());
        assert!(!Alpha::rational(-1, 3).unwrap().in_unit_interval());
        assert!(!Alpha::real(1.0).in_unit_interval());
    }
}

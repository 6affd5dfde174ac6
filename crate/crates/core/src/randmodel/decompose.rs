//! Character decompositions of `sin(2 pi n a/q)` and `1 - cos(2 pi n a/q)`
//! for `q` in {1, 2, 3, 4, 5, 6, 8, 12}.
//!
//! Each family is written as `sum_j c_j chi_j(n / d_j)` with periodic
//! completely multiplicative `chi_j`, where `chi(n / d) = 0` unless `d | n`.
//! For `a/q` with `gcd(a, q) = 1` the coefficients of `1/q` are multiplied by
//! `chi_j(a)`, since `a_n(a/q) = a_{an}(1/q)`.

use num_complex::Complex64;
use num_integer::Integer;

use super::coeffs::{CoefficientSpec, Parity};
use crate::alpha::{Alpha, Rational};
use crate::error::{Error, Result};
use crate::primes::{jacobi, kronecker};

pub const SUPPORTED_DENOMINATORS: [u64; 8] = [1, 2, 3, 4, 5, 6, 8, 12];

/// A completely multiplicative function of period `modulus`, given by its
/// values on `0..modulus`.
#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    pub name: String,
    pub modulus: u64,
    pub values: Vec<Complex64>,
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl Character {
    fn from_fn(name: &str, modulus: u64, f: impl Fn(u64) -> Complex64) -> Self {
        Character {
            name: name.to_string(),
            modulus,
            values: (0..modulus).map(f).collect(),
        }
    }

    /// The indicator of `gcd(n, q) = 1`.
    pub fn principal(q: u64) -> Self {
        Character::from_fn(&format!("chi0_{q}"), q, |n| real((n.gcd(&q) == 1) as u8 as f64))
    }

    /// `n -> (a/n)` (Kronecker symbol in the lower argument).
    pub fn kronecker_lower(name: &str, a: i64, q: u64) -> Self {
        Character::from_fn(name, q, |n| real(kronecker(a, n as i64).unwrap_or(0) as f64))
    }

    /// `n -> (n/q)` for an odd prime `q`.
    pub fn legendre_upper(q: u64) -> Self {
        Character::from_fn(&format!("(./{q})"), q, |n| real(jacobi(n as i64, q as i64).unwrap_or(0) as f64))
    }

    /// The quartic character mod 5 with `kappa(2) = i`.
    pub fn kappa(conjugate: bool) -> Self {
        let i = if conjugate { -1.0 } else { 1.0 };
        let values = [
            real(0.0),
            real(1.0),
            Complex64::new(0.0, i),
            Complex64::new(0.0, -i),
            real(-1.0),
        ];
        Character {
            name: if conjugate { "kappa_bar" } else { "kappa" }.to_string(),
            modulus: 5,
            values: values.to_vec(),
        }
    }

    fn times(&self, other: &Character, name: &str) -> Self {
        let q = self.modulus.lcm(&other.modulus);
        Character::from_fn(name, q, |n| self.at(n) * other.at(n))
    }

    pub fn at(&self, n: u64) -> Complex64 {
        self.values[(n % self.modulus) as usize]
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    pub character: Character,
    pub dilation: u64,
}

impl Term {
    /// `coeff * chi(n / d)`, zero unless `d | n`.
    pub fn at(&self, n: u64) -> Complex64 {
        if n % self.dilation == 0 {
            self.coeff * self.character.at(n / self.dilation)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn period(&self) -> u64 {
        self.character.modulus * self.dilation
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RationalDecomposition {
    pub alpha: Rational,
    pub parity: Parity,
    pub terms: Vec<Term>,
}

impl RationalDecomposition {
    pub fn spec(&self) -> CoefficientSpec {
        CoefficientSpec::new(Alpha::Rational(self.alpha), self.parity)
    }

    /// Real part of the term sum at `n`.
    pub fn eval(&self, n: u64) -> f64 {
        self.terms.iter().map(|t| t.at(n)).sum::<Complex64>().re
    }

    /// `lcm` of the term periods; the coefficient sequence repeats with it.
    pub fn period(&self) -> u64 {
        self.terms.iter().fold(1, |acc, t| acc.lcm(&t.period()))
    }
}

struct Chars {
    chi0_2: Character,
    chi0_3: Character,
    chi0_5: Character,
    chi0_6: Character,
    chi4: Character,
    leg3: Character,
    leg5: Character,
}

impl Chars {
    fn new() -> Self {
        Chars {
            chi0_2: Character::principal(2),
            chi0_3: Character::principal(3),
            chi0_5: Character::principal(5),
            chi0_6: Character::principal(6),
            chi4: Character::kronecker_lower("chi4", -4, 4),
            leg3: Character::legendre_upper(3),
            leg5: Character::legendre_upper(5),
        }
    }
}

fn term(coeff: impl Into<Complex64>, character: &Character, dilation: u64) -> Term {
    Term {
        coeff: coeff.into(),
        character: character.clone(),
        dilation,
    }
}

/// Terms for `alpha = 1/den`.
fn base_terms(den: u64, parity: Parity) -> Vec<Term> {
    let c = Chars::new();
    let r2 = std::f64::consts::SQRT_2 / 2.0;
    let r3 = 3f64.sqrt() / 2.0;
    let r5 = 5f64.sqrt();
    let chi6 = c.leg3.times(&c.chi0_2, "chi6");
    use Parity::*;
    match (den, parity) {
        (1, _) | (2, Plus) => vec![],
        (2, Minus) => vec![term(2.0, &c.chi0_2, 1)],
        (3, Plus) => vec![term(r3, &c.leg3, 1)],
        (3, Minus) => vec![term(1.5, &c.chi0_3, 1)],
        (4, Plus) => vec![term(1.0, &c.chi4, 1)],
        (4, Minus) => vec![term(1.0, &c.chi0_2, 1), term(2.0, &c.chi0_2, 2)],
        (5, Plus) => {
            let a = ((5.0 + r5) / 8.0).sqrt();
            let b = ((5.0 - r5) / 8.0).sqrt();
            vec![
                term(Complex64::new(a, -b) / 2.0, &Character::kappa(false), 1),
                term(Complex64::new(a, b) / 2.0, &Character::kappa(true), 1),
            ]
        }
        (5, Minus) => vec![term(1.25, &c.chi0_5, 1), term(-r5 / 4.0, &c.leg5, 1)],
        (6, Plus) => vec![term(r3, &chi6, 1), term(r3, &c.leg3, 2)],
        (6, Minus) => vec![
            term(2.0, &c.chi0_2, 3),
            term(0.5, &c.chi0_3, 1),
            term(1.0, &c.chi0_3, 2),
        ],
        (8, Plus) => vec![
            term(r2, &Character::kronecker_lower("(-2/.)", -2, 8), 1),
            term(1.0, &c.chi4, 2),
        ],
        (8, Minus) => vec![
            term(1.0, &c.chi0_2, 1),
            term(1.0, &c.chi0_2, 2),
            term(2.0, &c.chi0_2, 4),
            term(-r2, &Character::kronecker_lower("(2/.)", 2, 8), 1),
        ],
        (12, Plus) => vec![
            term(0.5, &c.chi4.times(&c.chi0_3, "chi4*chi0_3"), 1),
            term(r3, &chi6, 2),
            term(1.0, &c.chi4, 3),
            term(r3, &c.leg3, 4),
        ],
        (12, Minus) => vec![
            term(-r3, &Character::kronecker_lower("(12/.)", 12, 12), 1),
            term(1.0, &c.chi0_2, 1),
            term(0.5, &c.chi0_6, 2),
            term(1.5, &c.chi0_3, 4),
            term(2.0, &c.chi0_2, 6),
        ],
        _ => unreachable!("denominator checked by caller"),
    }
}

/// Decomposes `a_n^{parity}(alpha)` for an exact rational `alpha` whose
/// reduced denominator is supported.
pub fn decompose_rational(alpha: &Alpha, parity: Parity) -> Result<RationalDecomposition> {
    let unsupported = || Error::UnsupportedAlpha(alpha.to_string());
    let r = match alpha.reduced() {
        Alpha::Rational(r) => r,
        Alpha::Real(_) => return Err(unsupported()),
    };
    if !SUPPORTED_DENOMINATORS.contains(&r.den()) {
        return Err(unsupported());
    }
    let k = r.num() as u64;
    let terms = base_terms(r.den(), parity)
        .into_iter()
        .map(|mut t| {
            t.coeff *= t.character.at(k);
            t
        })
        .collect();
    Ok(RationalDecomposition {
        alpha: r,
        parity,
        terms,
    })
}

/// Every reduced fraction in `[0, 1)` with a supported denominator.
pub fn supported_alphas() -> Vec<Alpha> {
    let mut out = Vec::new();
    for den in SUPPORTED_DENOMINATORS {
        for num in 0..den {
            if num.gcd(&den) == 1 || (num == 0 && den == 1) {
                out.push(Alpha::rational(num as i64, den).unwrap());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: u64) -> Alpha {
        Alpha::rational(a, b).unwrap()
    }

    #[test]
    fn fidelity_for_every_supported_alpha() {
        for a in supported_alphas() {
            for parity in Parity::BOTH {
                let d = decompose_rational(&a, parity).unwrap();
                let spec = d.spec();
                for n in 1..=4 * d.period().max(12) {
                    let err = (d.eval(n) - spec.coefficient(n)).abs();
                    assert!(err <= 1e-12, "{a} {parity} n={n}: {err}");
                }
            }
        }
        assert_eq!(supported_alphas().len(), 1 + 1 + 2 + 2 + 4 + 2 + 4 + 4);
    }

    #[test]
    fn tables_are_multiplicative() {
        for a in supported_alphas() {
            for parity in Parity::BOTH {
                for t in decompose_rational(&a, parity).unwrap().terms {
                    let chi = &t.character;
                    let m = chi.modulus;
                    assert_eq!(chi.at(1), real(1.0));
                    for x in 0..m {
                        for y in 0..m {
                            assert_eq!(chi.at(x * y), chi.at(x) * chi.at(y), "{}", chi.name);
                        }
                        if x.gcd(&m) != 1 {
                            assert_eq!(chi.at(x), real(0.0));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn displayed_cases() {
        let d = decompose_rational(&q(1, 3), Parity::Plus).unwrap();
        assert_eq!(d.terms.len(), 1);
        assert_eq!(d.terms[0].character.modulus, 3);
        assert!((d.terms[0].coeff.re - 3f64.sqrt() / 2.0).abs() < 1e-15);

        let d = decompose_rational(&q(1, 4), Parity::Minus).unwrap();
        let shape: Vec<(f64, u64, u64)> = d
            .terms
            .iter()
            .map(|t| (t.coeff.re, t.character.modulus, t.dilation))
            .collect();
        assert_eq!(shape, vec![(1.0, 2, 1), (2.0, 2, 2)]);

        let d = decompose_rational(&q(1, 5), Parity::Plus).unwrap();
        assert_eq!(d.terms[0].character.at(2), Complex64::new(0.0, 1.0));
        assert_eq!(d.terms[0].coeff, d.terms[1].coeff.conj());
    }

    #[test]
    fn derived_cases_match_displayed_formulas() {
        // 3/8 minus: chi0_2 + chi0_2(n/2) + 2 chi0_2(n/4) + (sqrt2/2)(2/n)
        let d = decompose_rational(&q(3, 8), Parity::Minus).unwrap();
        let r2 = std::f64::consts::SQRT_2 / 2.0;
        for n in 1..200u64 {
            let k2 = kronecker(2, n as i64).unwrap() as f64;
            let odd = |m: u64| (m % 2 == 1) as u8 as f64;
            let at = |dil: u64| if n % dil == 0 { odd(n / dil) } else { 0.0 };
            let expected = at(1) + at(2) + 2.0 * at(4) + r2 * k2;
            assert!((d.eval(n) - expected).abs() < 1e-12, "n = {n}");
        }
        // 2/5 minus: (5/4) chi0_5 + (sqrt5/4)(n/5)
        let d = decompose_rational(&q(2, 5), Parity::Minus).unwrap();
        assert!((d.terms[0].coeff.re - 1.25).abs() < 1e-15);
        assert!((d.terms[1].coeff.re - 5f64.sqrt() / 4.0).abs() < 1e-15);
        // 5/12 plus: chi4(5) = chi0_3(5) = 1, so the leading term keeps 1/2
        let d = decompose_rational(&q(5, 12), Parity::Plus).unwrap();
        assert!((d.terms[0].coeff.re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn unsupported() {
        assert_eq!(
            decompose_rational(&q(1, 7), Parity::Plus),
            Err(Error::UnsupportedAlpha("1/7".into()))
        );
        assert!(decompose_rational(&Alpha::real(0.25), Parity::Plus).is_err());
        assert!(decompose_rational(&q(0, 1), Parity::Minus).unwrap().terms.is_empty());
        assert_eq!(decompose_rational(&q(4, 3), Parity::Plus).unwrap().alpha, Rational::new(1, 3).unwrap());
    }
}

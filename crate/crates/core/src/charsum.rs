//! Exact values of `L(alpha, p) = sum_{n <= alpha p} (n/p)` and scans over primes.

use rayon::prelude::*;
use serde::Serialize;

use crate::alpha::Alpha;
use crate::error::{Error, Result};
use crate::primes::{self, check_odd_prime};

/// Prefix counts of quadratic residues modulo an odd prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QrTable {
    p: u64,
    /// `prefix[m]` = number of quadratic residues in `[1, m]`, `m = 0..p-1`.
    prefix: Vec<u32>,
}

/// Builds the table by marking `k^2 mod p` for `k = 1..(p-1)/2`.
pub fn build_qr_table(p: u64) -> Result<QrTable> {
    check_odd_prime(p)?;
    let mut is_residue = vec![false; p as usize];
    for_each_residue(p, |r| is_residue[r as usize] = true);
    let mut prefix = Vec::with_capacity(p as usize);
    let mut count = 0u32;
    for (m, &r) in is_residue.iter().enumerate() {
        if m > 0 && r {
            count += 1;
        }
        prefix.push(count);
    }
    Ok(QrTable { p, prefix })
}

/// Calls `f` once for every nonzero quadratic residue mod `p`, in the order `k^2`, `k = 1, 2, ...`.
#[inline]
fn for_each_residue(p: u64, mut f: impl FnMut(u64)) {
    let mut square = 0u64;
    for k in 1..=(p - 1) / 2 {
        // (k)^2 - (k-1)^2 = 2k - 1 < p
        square += 2 * k - 1;
        if square >= p {
            square -= p;
        }
        f(square);
    }
}

impl QrTable {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    /// `sum_{n <= m} (n/p)` for `0 <= m <= p - 1`.
    pub fn sum_to(&self, m: u64) -> i64 {
        2 * self.prefix[m as usize] as i64 - m as i64
    }

    /// `(n/p)` for any integer `n`.
    pub fn symbol(&self, n: i64) -> i8 {
        let r = n.rem_euclid(self.p as i64) as usize;
        if r == 0 {
            0
        } else if self.prefix[r] > self.prefix[r - 1] {
            1
        } else {
            -1
        }
    }

    pub fn legendre_sum(&self, alpha: &Alpha) -> Result<i64> {
        alpha.check_unit_interval()?;
        Ok(self.sum_to(alpha.floor_mul(self.p).value))
    }
}

/// `L(alpha, p)` through a freshly built [`QrTable`].
pub fn legendre_sum(alpha: &Alpha, p: u64) -> Result<i64> {
    alpha.check_unit_interval()?;
    build_qr_table(p)?.legendre_sum(alpha)
}

/// `L(alpha, p)` summed symbol by symbol; the slow reference path.
pub fn legendre_sum_direct(alpha: &Alpha, p: u64) -> Result<i64> {
    alpha.check_unit_interval()?;
    check_odd_prime(p)?;
    let m = alpha.floor_mul(p).value;
    Ok((1..=m as i64)
        .map(|n| primes::jacobi_odd(n as u64 % p, p) as i64)
        .sum())
}

/// Counts residues `<= m` for several cutoffs in one pass, without allocating a table.
fn residues_up_to(p: u64, cutoffs: &[u64]) -> Vec<u64> {
    let mut counts = vec![0u64; cutoffs.len()];
    for_each_residue(p, |r| {
        for (c, &m) in counts.iter_mut().zip(cutoffs) {
            *c += (r <= m) as u64;
        }
    });
    counts
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    /// `L >= 0`
    Ge,
    /// `L > 0`
    Gt,
}

impl std::fmt::Display for Comparison {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Comparison::Ge => "ge",
            Comparison::Gt => "gt",
        })
    }
}

impl std::str::FromStr for Comparison {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ge" => Ok(Comparison::Ge),
            "gt" => Ok(Comparison::Gt),
            _ => Err(Error::param("comparison", "ge or gt")),
        }
    }
}

/// Sign statistics of `L(alpha, p)` over the first `prime_count` primes.
///
/// `p = 2` has no Legendre symbol; it enters the totals with `L = 0` and is
/// left out of the mod-4 split.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub alpha: Alpha,
    pub prime_count: u64,
    pub nonneg_count: u64,
    pub strict_pos_count: u64,
    pub zero_count: u64,
    pub primes_1mod4: u64,
    pub primes_3mod4: u64,
    pub nonneg_1mod4: u64,
    pub nonneg_3mod4: u64,
    pub comparison: Comparison,
    /// Primes where a decimal `alpha * p` fell within `1e-9` of an integer.
    pub boundary_hits: u64,
}

impl DensityReport {
    fn empty(alpha: Alpha, comparison: Comparison) -> Self {
        DensityReport {
            alpha,
            prime_count: 0,
            nonneg_count: 0,
            strict_pos_count: 0,
            zero_count: 0,
            primes_1mod4: 0,
            primes_3mod4: 0,
            nonneg_1mod4: 0,
            nonneg_3mod4: 0,
            comparison,
            boundary_hits: 0,
        }
    }

    fn record(&mut self, p: u64, value: i64, boundary: bool) {
        self.prime_count += 1;
        self.boundary_hits += boundary as u64;
        match value.signum() {
            1 => self.strict_pos_count += 1,
            0 => self.zero_count += 1,
            _ => {}
        }
        let nonneg = value >= 0;
        self.nonneg_count += nonneg as u64;
        match p % 4 {
            1 => {
                self.primes_1mod4 += 1;
                self.nonneg_1mod4 += nonneg as u64;
            }
            3 => {
                self.primes_3mod4 += 1;
                self.nonneg_3mod4 += nonneg as u64;
            }
            _ => {}
        }
    }

    fn merge(mut self, other: &Self) -> Self {
        self.prime_count += other.prime_count;
        self.nonneg_count += other.nonneg_count;
        self.strict_pos_count += other.strict_pos_count;
        self.zero_count += other.zero_count;
        self.primes_1mod4 += other.primes_1mod4;
        self.primes_3mod4 += other.primes_3mod4;
        self.nonneg_1mod4 += other.nonneg_1mod4;
        self.nonneg_3mod4 += other.nonneg_3mod4;
        self.boundary_hits += other.boundary_hits;
        self
    }

    /// The count selected by the report's comparison mode.
    pub fn count(&self) -> u64 {
        match self.comparison {
            Comparison::Ge => self.nonneg_count,
            Comparison::Gt => self.strict_pos_count,
        }
    }

    pub fn density(&self) -> f64 {
        self.count() as f64 / self.prime_count as f64
    }
}

/// Sign counts of `L(alpha, p)` over the first `num_primes` primes.
pub fn density_scan(alpha: &Alpha, num_primes: usize, comparison: Comparison) -> Result<DensityReport> {
    let primes = primes::first_primes(num_primes)?;
    let mut reports = density_scan_primes(std::slice::from_ref(alpha), &primes, comparison)?;
    Ok(reports.remove(0))
}

/// One pass over `primes` for several `alpha` at once; reports come back in input order.
pub fn density_scan_primes(
    alphas: &[Alpha],
    primes: &[u64],
    comparison: Comparison,
) -> Result<Vec<DensityReport>> {
    if primes.is_empty() {
        return Err(Error::param("density scan", "at least one prime"));
    }
    for a in alphas {
        a.check_unit_interval()?;
    }
    let empty: Vec<DensityReport> = alphas
        .iter()
        .map(|a| DensityReport::empty(*a, comparison))
        .collect();
    let merged = primes
        .par_iter()
        .fold(
            || empty.clone(),
            |mut acc, &p| {
                if p == 2 {
                    for r in acc.iter_mut() {
                        r.record(2, 0, false);
                    }
                    return acc;
                }
                let floors: Vec<_> = alphas.iter().map(|a| a.floor_mul(p)).collect();
                let cutoffs: Vec<u64> = floors.iter().map(|f| f.value).collect();
                let counts = residues_up_to(p, &cutoffs);
                for ((r, f), c) in acc.iter_mut().zip(&floors).zip(counts) {
                    if f.near_boundary {
                        log::warn!("boundary hit: alpha = {} * p = {} is within 1e-9 of an integer", r.alpha, p);
                    }
                    r.record(p, 2 * c as i64 - f.value as i64, f.near_boundary);
                }
                acc
            },
        )
        .reduce(
            || empty.clone(),
            |a, b| a.into_iter().zip(&b).map(|(x, y)| x.merge(y)).collect(),
        );
    Ok(merged)
}

/// `h(-p)`: reduced forms `(a, b, c)` with `b^2 - 4ac = -p`, `|b| <= a <= c`,
/// and `b > 0` whenever `|b| = a` or `a = c`.
pub fn class_number_h(p: u64) -> Result<u64> {
    if p % 4 != 3 || !primes::is_prime(p) {
        return Err(Error::NotThreeModFour(p));
    }
    let mut count = 0;
    let mut a = 1u64;
    while 3 * a * a <= p {
        let mut b = -(a as i64);
        while b <= a as i64 {
            // b must be odd since the discriminant is odd
            if b.rem_euclid(2) == 1 {
                let num = (b * b) as u64 + p;
                if num % (4 * a) == 0 {
                    let c = num / (4 * a);
                    let boundary = b.unsigned_abs() == a || a == c;
                    if c >= a && (!boundary || b > 0) {
                        count += 1;
                    }
                }
            }
            b += 1;
        }
        a += 1;
    }
    Ok(count)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirichletCheck {
    pub p: u64,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirichletOutcome {
    Checked(DirichletCheck),
    /// `p = 3`: the identity needs `p > 3` (there `L = 1` but `(2 - (2/3)) h(-3) = 3`).
    Excluded { p: u64, lhs: i64, rhs: i64 },
}

/// `L(1/2, p) = 0` for `p = 1 mod 4` and `(2 - (2/p)) h(-p)` for `p = 3 mod 4`.
pub fn dirichlet_check(p: u64) -> Result<DirichletOutcome> {
    check_odd_prime(p)?;
    let half = Alpha::rational(1, 2)?;
    let lhs = legendre_sum(&half, p)?;
    let rhs = if p % 4 == 1 {
        0
    } else {
        (2 - primes::jacobi_odd(2, p) as i64) * class_number_h(p)? as i64
    };
    if p == 3 {
        return Ok(DirichletOutcome::Excluded { p, lhs, rhs });
    }
    Ok(DirichletOutcome::Checked(DirichletCheck {
        p,
        lhs,
        rhs,
        holds: lhs == rhs,
    }))
}

/// Mean of `(n/p)` over primes `p <= x` with `p = eps mod 4`, `p` not dividing `n`.
pub fn expectation_scan(n: u64, x: u64, eps: i8) -> Result<f64> {
    if n == 0 {
        return Err(Error::param("expectation_scan n", "n >= 1"));
    }
    if eps != 1 && eps != -1 {
        return Err(Error::param("expectation_scan eps", "eps = +1 or -1"));
    }
    if x < 3 {
        return Err(Error::EmptyPopulation { x, eps });
    }
    let class = if eps == 1 { 1 } else { 3 };
    let table = primes::sieve_primes(x)?;
    let (sum, count) = table
        .odd()
        .par_iter()
        .filter(|&&p| p % 4 == class && n % p != 0)
        .map(|&p| (primes::jacobi_odd(n % p, p) as i64, 1u64))
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    if count == 0 {
        return Err(Error::EmptyPopulation { x, eps });
    }
    Ok(sum as f64 / count as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: u64) -> Alpha {
        Alpha::rational(a, b).unwrap()
    }

    /// Counts reduced forms by scanning every `(a, b)` with `b^2 < p`, no reduction bounds assumed.
    fn brute_force_class_number(p: u64) -> u64 {
        let mut count = 0;
        for a in 1..=p as i64 {
            for b in -a..=a {
                let num = b * b + p as i64;
                if num % (4 * a) != 0 {
                    continue;
                }
                let c = num / (4 * a);
                if c < a {
                    continue;
                }
                if (b.abs() == a || a == c) && b < 0 {
                    continue;
                }
                count += 1;
            }
        }
        count
    }

    #[test]
    fn qr_table_examples() {
        let t7 = build_qr_table(7).unwrap();
        assert_eq!(t7.prefix(), &[0, 1, 2, 2, 3, 3, 3]);
        let t3 = build_qr_table(3).unwrap();
        assert_eq!(t3.prefix(), &[0, 1, 1]);
        let t23 = build_qr_table(23).unwrap();
        assert_eq!(t23.prefix()[11], 7);
        assert_eq!(build_qr_table(9), Err(Error::NotOddPrime(9)));
        assert_eq!(build_qr_table(2), Err(Error::NotOddPrime(2)));
    }

    #[test]
    fn qr_table_invariants() {
        for &p in primes::sieve_primes(2000).unwrap().odd() {
            let t = build_qr_table(p).unwrap();
            let pre = t.prefix();
            assert_eq!(pre[0], 0);
            assert!(pre.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(pre[p as usize - 1] as u64, (p - 1) / 2);
            let mut running = 0i64;
            for m in 1..p {
                running += primes::jacobi_odd(m, p) as i64;
                assert_eq!(t.sum_to(m), running);
            }
        }
    }

    #[test]
    fn legendre_sum_examples() {
        assert_eq!(legendre_sum(&q(1, 2), 7).unwrap(), 1);
        assert_eq!(legendre_sum(&q(1, 2), 23).unwrap(), 3);
        assert_eq!(legendre_sum(&q(1, 3), 7).unwrap(), 2);
        for p in [3, 5, 101, 7919] {
            assert_eq!(legendre_sum(&q(0, 1), p).unwrap(), 0);
        }
        assert!(matches!(legendre_sum(&q(1, 1), 7), Err(Error::AlphaOutOfRange(_))));
        assert!(matches!(legendre_sum(&Alpha::real(-0.1), 7), Err(Error::AlphaOutOfRange(_))));
    }

    #[test]
    fn class_numbers() {
        assert_eq!(class_number_h(3).unwrap(), 1);
        assert_eq!(class_number_h(7).unwrap(), 1);
        assert_eq!(class_number_h(23).unwrap(), 3);
        assert_eq!(class_number_h(5), Err(Error::NotThreeModFour(5)));
        assert_eq!(class_number_h(15), Err(Error::NotThreeModFour(15)));
        for &p in primes::sieve_primes(600).unwrap().odd() {
            if p % 4 == 3 {
                assert_eq!(class_number_h(p).unwrap(), brute_force_class_number(p), "p = {p}");
            }
        }
    }

    #[test]
    fn dirichlet_examples() {
        let check = |p| match dirichlet_check(p).unwrap() {
            DirichletOutcome::Checked(c) => c,
            other => panic!("{other:?}"),
        };
        assert_eq!(check(13), DirichletCheck { p: 13, lhs: 0, rhs: 0, holds: true });
        assert_eq!(check(7), DirichletCheck { p: 7, lhs: 1, rhs: 1, holds: true });
        assert_eq!(check(23), DirichletCheck { p: 23, lhs: 3, rhs: 3, holds: true });
        assert_eq!(
            dirichlet_check(3).unwrap(),
            DirichletOutcome::Excluded { p: 3, lhs: 1, rhs: 3 }
        );
    }

    #[test]
    fn half_sums_never_negative() {
        let half = q(1, 2);
        for &p in primes::sieve_primes(5000).unwrap().odd() {
            let l = legendre_sum(&half, p).unwrap();
            assert!(l >= 0);
            if p % 4 == 1 {
                assert_eq!(l, 0);
            }
        }
    }

    #[test]
    fn polya_vinogradov_magnitude() {
        let alphas = [q(1, 3), q(2, 5), q(3, 8), q(1, 12), Alpha::real(0.15915494309)];
        for &p in primes::sieve_primes(3000).unwrap().odd().iter().skip(1) {
            let t = build_qr_table(p).unwrap();
            for a in &alphas {
                let l = t.legendre_sum(a).unwrap().unsigned_abs() as f64;
                let m = a.floor_mul(p).value as f64;
                let pv = (p as f64).sqrt() * (p as f64).ln();
                assert!(l <= m.min(pv), "alpha {a}, p {p}: |L| = {l}");
            }
        }
    }

    #[test]
    fn density_small_scans() {
        let r = density_scan(&q(0, 1), 10, Comparison::Ge).unwrap();
        assert_eq!((r.nonneg_count, r.prime_count, r.zero_count), (10, 10, 10));
        let r = density_scan(&q(1, 2), 500, Comparison::Ge).unwrap();
        assert_eq!(r.nonneg_1mod4, r.primes_1mod4);
        assert_eq!(r.nonneg_count, 500);
        // all p = 1 mod 4 and p = 2 land in zero_count
        assert!(r.zero_count > r.primes_1mod4);
        for a in [q(2, 5), q(3, 8), Alpha::real(0.367879441171)] {
            let r = density_scan(&a, 300, Comparison::Gt).unwrap();
            assert_eq!(r.nonneg_count, r.strict_pos_count + r.zero_count);
            assert_eq!(r.primes_1mod4 + r.primes_3mod4 + 1, r.prime_count);
            assert_eq!(r.nonneg_1mod4 + r.nonneg_3mod4 + 1, r.nonneg_count);
            assert_eq!(r.count(), r.strict_pos_count);
        }
    }

    #[test]
    fn density_matches_table_path() {
        let alphas = [q(2, 5), q(1, 12), Alpha::real(0.2718)];
        let primes = primes::first_primes(200).unwrap();
        let reports = density_scan_primes(&alphas, &primes, Comparison::Ge).unwrap();
        for (a, r) in alphas.iter().zip(&reports) {
            let expected = 1 + primes[1..]
                .iter()
                .filter(|&&p| legendre_sum_direct(a, p).unwrap() >= 0)
                .count() as u64;
            assert_eq!(r.nonneg_count, expected);
        }
    }

    #[test]
    fn expectation_examples() {
        assert_eq!(expectation_scan(4, 13, 1).unwrap(), 1.0);
        assert_eq!(expectation_scan(4, 10_000, -1).unwrap(), 1.0);
        assert_eq!(expectation_scan(1, 1000, 1).unwrap(), 1.0);
        assert!(expectation_scan(2, 1_000_000, 1).unwrap().abs() < 0.01);
        assert!(expectation_scan(3, 1_000_000, -1).unwrap().abs() < 0.01);
        assert!(matches!(expectation_scan(2, 100, 0), Err(Error::InvalidParameter { .. })));
        assert_eq!(expectation_scan(9, 4, 1), Err(Error::EmptyPopulation { x: 4, eps: 1 }));
        assert_eq!(expectation_scan(3, 6, -1), Err(Error::EmptyPopulation { x: 6, eps: -1 }));
        assert_eq!(expectation_scan(1, 1, 1), Err(Error::EmptyPopulation { x: 1, eps: 1 }));
    }

    proptest! {
        #[test]
        fn table_path_matches_direct_sum(idx in 1usize..669, num in 0u64..1000) {
            let p = primes::sieve_primes(5000).unwrap().primes()[idx];
            let a = Alpha::rational(num as i64, 1000).unwrap();
            prop_assert_eq!(legendre_sum(&a, p).unwrap(), legendre_sum_direct(&a, p).unwrap());
        }

        #[test]
        fn table_path_matches_direct_sum_real(idx in 1usize..669, x in 0.0f64..1.0) {
            let p = primes::sieve_primes(5000).unwrap().primes()[idx];
            let a = Alpha::real(x);
            prop_assert_eq!(legendre_sum(&a, p).unwrap(), legendre_sum_direct(&a, p).unwrap());
        }
    }
}

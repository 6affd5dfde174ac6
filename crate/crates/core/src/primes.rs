//! Prime generation and quadratic symbols.

use crate::error::{Error, Result};

/// Above this bound the sieve runs segment by segment.
const SEGMENT_THRESHOLD: u64 = 1 << 26;
const SEGMENT_LEN: u64 = 1 << 18;

/// Primes up to a fixed limit, with their split by residue mod 4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    count_1mod4: u64,
    count_3mod4: u64,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn count_1mod4(&self) -> u64 {
        self.count_1mod4
    }

    pub fn count_3mod4(&self) -> u64 {
        self.count_3mod4
    }

    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }

    /// Odd primes only.
    pub fn odd(&self) -> &[u64] {
        match self.primes.first() {
            Some(2) => &self.primes[1..],
            _ => &self.primes,
        }
    }

    fn from_primes(limit: u64, primes: Vec<u64>) -> Self {
        let count_1mod4 = primes.iter().filter(|&&p| p % 4 == 1).count() as u64;
        let count_3mod4 = primes.iter().filter(|&&p| p % 4 == 3).count() as u64;
        PrimeTable {
            limit,
            primes,
            count_1mod4,
            count_3mod4,
        }
    }
}

/// All primes `<= limit`.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::EmptySieve(limit));
    }
    let primes = if limit > SEGMENT_THRESHOLD {
        segmented_sieve(limit)
    } else {
        odd_sieve(limit)
    };
    Ok(PrimeTable::from_primes(limit, primes))
}

/// Eratosthenes over odd numbers; bit `i` stands for `2i + 1`.
fn odd_sieve(limit: u64) -> Vec<u64> {
    let half = (limit as usize + 1) / 2;
    let mut composite = vec![0u64; half.div_ceil(64)];
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if composite[i / 64] >> (i % 64) & 1 == 0 {
            let p = 2 * i + 1;
            let mut j = (p * p) / 2;
            while j < half {
                composite[j / 64] |= 1 << (j % 64);
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(estimate_pi(limit));
    primes.push(2);
    primes.extend(
        (1..half)
            .filter(|&i| composite[i / 64] >> (i % 64) & 1 == 0)
            .map(|i| 2 * i as u64 + 1),
    );
    primes
}

fn segmented_sieve(limit: u64) -> Vec<u64> {
    let root = (limit as f64).sqrt() as u64 + 1;
    let base = odd_sieve(root);
    let mut primes: Vec<u64> = base.iter().copied().filter(|&p| p <= limit).collect();
    let mut mark = vec![false; SEGMENT_LEN as usize];
    let mut lo = root + 1;
    while lo <= limit {
        let hi = (lo + SEGMENT_LEN - 1).min(limit);
        mark.iter_mut().for_each(|m| *m = false);
        for &p in &base[1..] {
            if p * p > hi {
                break;
            }
            let mut start = lo.div_ceil(p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut j = start;
            while j <= hi {
                mark[(j - lo) as usize] = true;
                j += p;
            }
        }
        primes.extend(
            (lo..=hi)
                .filter(|&n| n % 2 == 1 && !mark[(n - lo) as usize]),
        );
        lo = hi + 1;
    }
    primes
}

fn estimate_pi(x: u64) -> usize {
    if x < 17 {
        return 8;
    }
    let x = x as f64;
    (1.26 * x / x.ln()) as usize
}

/// Upper bound for the n-th prime (Rosser's bound for n >= 6).
fn nth_prime_bound(n: u64) -> u64 {
    if n < 6 {
        return 13;
    }
    let x = n as f64;
    (x * (x.ln() + x.ln().ln())).ceil() as u64 + 3
}

/// The n-th prime, counting from `nth_prime(1) = 2`.
pub fn nth_prime(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::param("nth_prime index", "n >= 1"));
    }
    let mut bound = nth_prime_bound(n);
    loop {
        let table = sieve_primes(bound)?;
        if let Some(&p) = table.primes().get(n as usize - 1) {
            return Ok(p);
        }
        bound *= 2;
    }
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Result<Vec<u64>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let last = nth_prime(count as u64)?;
    let mut primes = sieve_primes(last)?.primes;
    primes.truncate(count);
    Ok(primes)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid on all of `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn check_odd_prime(p: u64) -> Result<()> {
    if p % 2 == 1 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

/// Legendre symbol by Euler's criterion; the reference the fast paths are tested against.
pub fn euler_criterion(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    match pow_mod(a, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Jacobi symbol `(a/n)` for odd `n > 0`, by the binary algorithm.
pub fn jacobi(a: i64, n: i64) -> Result<i8> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::BadJacobiModulus(n));
    }
    Ok(jacobi_odd(a.rem_euclid(n) as u64, n as u64))
}

/// `(a/n)` with `0 <= a < n`, `n` odd.
pub(crate) fn jacobi_odd(mut a: u64, mut n: u64) -> i8 {
    let mut t = 1i8;
    while a != 0 {
        let z = a.trailing_zeros();
        a >>= z;
        // (2/n) = -1 iff n = 3, 5 mod 8
        if z % 2 == 1 && matches!(n % 8, 3 | 5) {
            t = -t;
        }
        if a < n {
            std::mem::swap(&mut a, &mut n);
            if a % 4 == 3 && n % 4 == 3 {
                t = -t;
            }
        }
        a -= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol `(a/n)`: the real character of modulus dividing `4|a|`
/// that agrees with `(a/n)` on odd `n > 0`.
pub fn kronecker(a: i64, n: i64) -> Result<i8> {
    if a == 0 {
        return Err(Error::ZeroCharacter);
    }
    if n == 0 {
        return Ok(if a == 1 || a == -1 { 1 } else { 0 });
    }
    let mut sign = 1i8;
    let mut m = n.unsigned_abs();
    if n < 0 && a < 0 {
        sign = -sign;
    }
    let v = m.trailing_zeros();
    if v > 0 {
        if a % 2 == 0 {
            return Ok(0);
        }
        m >>= v;
        // (a/2) = 1 for a = +-1 mod 8, -1 for a = +-3 mod 8
        if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
    }
    let r = (a as i128).rem_euclid(m as i128) as u64;
    Ok(sign * jacobi_odd(r, m))
}

/// Smallest-prime-factor table up to `limit`, built by a linear sieve.
#[derive(Debug, Clone)]
pub struct FactorTable {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl FactorTable {
    pub fn new(limit: usize) -> Self {
        let mut spf = vec![0u32; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            for &p in &primes {
                let ip = i * p as usize;
                if p > spf[i] || ip > limit {
                    break;
                }
                spf[ip] = p;
            }
        }
        if limit >= 1 {
            spf[1] = 1;
        }
        FactorTable { spf, primes }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn smallest_factor(&self, n: usize) -> u32 {
        self.spf[n]
    }

    /// `(prime, exponent)` pairs of `n`, ascending.
    pub fn factorize(&self, mut n: usize) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n];
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
            n /= p as usize;
        }
        out
    }

    /// Squarefree kernel: the product of primes dividing `n` to an odd power.
    pub fn kernel(&self, n: usize) -> usize {
        self.factorize(n)
            .into_iter()
            .filter(|&(_, e)| e % 2 == 1)
            .map(|(p, _)| p as usize)
            .product()
    }

    /// `tau(n^2) = prod (2e + 1)`.
    pub fn tau_of_square(&self, n: usize) -> u64 {
        self.factorize(n)
            .into_iter()
            .map(|(_, e)| 2 * e as u64 + 1)
            .product()
    }
}

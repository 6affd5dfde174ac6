//! Rademacher signs `X_p` and the completely multiplicative extension `X_n`.
//!
//! `X_p` is bit `p mod 64` of word `p / 64` of a ChaCha8 keystream keyed by
//! `(seed, stream)`, so any single sign can be computed without generating
//! the others and results never depend on evaluation order.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::primes::FactorTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Stream { seed: u64, stream: u64 },
    Constant(i8),
}

/// One realization of the random multiplicative function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplicativeSample {
    source: Source,
    fixed: Vec<(u64, i8)>,
    twisted: bool,
}

/// The sample on stream 0 of `seed`.
pub fn sample_multiplicative(seed: u64) -> MultiplicativeSample {
    MultiplicativeSample::new(seed, 0)
}

/// `X_n -> lambda(n) X_n`, i.e. every `X_p` flipped.
pub fn lambda_twist(sample: &MultiplicativeSample) -> MultiplicativeSample {
    sample.twist()
}

fn sign(bit: u64) -> i8 {
    if bit & 1 == 1 {
        1
    } else {
        -1
    }
}

fn keystream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

impl MultiplicativeSample {
    pub fn new(seed: u64, stream: u64) -> Self {
        MultiplicativeSample {
            source: Source::Stream { seed, stream },
            fixed: Vec::new(),
            twisted: false,
        }
    }

    pub fn all_plus() -> Self {
        MultiplicativeSample {
            source: Source::Constant(1),
            fixed: Vec::new(),
            twisted: false,
        }
    }

    pub fn all_minus() -> Self {
        MultiplicativeSample {
            source: Source::Constant(-1),
            fixed: Vec::new(),
            twisted: false,
        }
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn seed(&self) -> Option<u64> {
        match self.source {
            Source::Stream { seed, .. } => Some(seed),
            Source::Constant(_) => None,
        }
    }

    pub fn is_twisted(&self) -> bool {
        self.twisted
    }

    /// Forces `X_p = value` (before any twist). `value` is read as its sign.
    pub fn fix(mut self, p: u64, value: i8) -> Self {
        let value = if value >= 0 { 1 } else { -1 };
        match self.fixed.iter_mut().find(|(q, _)| *q == p) {
            Some(entry) => entry.1 = value,
            None => self.fixed.push((p, value)),
        }
        self
    }

    pub fn twist(&self) -> Self {
        MultiplicativeSample {
            twisted: !self.twisted,
            ..self.clone()
        }
    }

    fn finish(&self, p: u64, base: i8) -> i8 {
        let base = self
            .fixed
            .iter()
            .find(|(q, _)| *q == p)
            .map_or(base, |&(_, v)| v);
        if self.twisted {
            -base
        } else {
            base
        }
    }

    /// `X_p`. The argument is assumed prime.
    pub fn x_p(&self, p: u64) -> i8 {
        let base = match self.source {
            Source::Stream { seed, stream } => {
                let mut rng = keystream(seed, stream);
                rng.set_word_pos(2 * (p / 64) as u128);
                sign(rng.next_u64() >> (p % 64))
            }
            Source::Constant(s) => s,
        };
        self.finish(p, base)
    }

    /// `X_n` by trial division; meant for small or isolated `n`.
    pub fn x_n(&self, mut n: u64) -> i8 {
        assert!(n >= 1, "X_n is defined for n >= 1");
        let mut value = 1i8;
        let mut d = 2u64;
        while d * d <= n {
            while n % d == 0 {
                value *= self.x_p(d);
                n /= d;
            }
            d += 1;
        }
        if n > 1 {
            value *= self.x_p(n);
        }
        value
    }

    /// Signs for every prime up to `limit`, indexed by the prime.
    fn prime_sign_fn(&self, limit: u64) -> impl Fn(u64) -> i8 + '_ {
        let words: Vec<u64> = match self.source {
            Source::Stream { seed, stream } => {
                let mut rng = keystream(seed, stream);
                (0..=limit / 64).map(|_| rng.next_u64()).collect()
            }
            Source::Constant(_) => Vec::new(),
        };
        move |p| {
            let base = match self.source {
                Source::Stream { .. } => sign(words[(p / 64) as usize] >> (p % 64)),
                Source::Constant(s) => s,
            };
            self.finish(p, base)
        }
    }

    /// `X_p` for each entry of an ascending prime list.
    pub fn prime_signs(&self, primes: &[u64]) -> Vec<i8> {
        let Some(&max) = primes.last() else {
            return Vec::new();
        };
        let f = self.prime_sign_fn(max);
        primes.iter().map(|&p| f(p)).collect()
    }

    /// `X_n` for all `n <= factors.limit()`.
    pub fn sign_table(&self, factors: &FactorTable) -> SignTable {
        let limit = factors.limit();
        let f = self.prime_sign_fn(limit as u64);
        let mut values = vec![0i8; limit + 1];
        if limit >= 1 {
            values[1] = 1;
        }
        for n in 2..=limit {
            let p = factors.smallest_factor(n) as usize;
            values[n] = if p == n {
                f(p as u64)
            } else {
                values[p] * values[n / p]
            };
        }
        SignTable { values }
    }
}

/// `X_n` for `1 <= n <= N`; index 0 is unused and holds 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignTable {
    values: Vec<i8>,
}

impl SignTable {
    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn get(&self, n: usize) -> i8 {
        self.values[n]
    }

    pub fn limit(&self) -> usize {
        self.values.len() - 1
    }
}

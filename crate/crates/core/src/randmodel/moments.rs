//! Exact moments of the truncated series `S = sum_{n <= N} a_n X_n / n`.
//!
//! `E[X_{n_1} ... X_{n_k}]` is 1 when `n_1 ... n_k` is a square and 0
//! otherwise, so only the squarefree kernels of the indices matter: with
//! `W(s) = sum_{ker n = s} a_n / n`, `E[S^k]` is the sum of
//! `W(s_1) ... W(s_k)` over kernel tuples whose symmetric product is 1.

use std::collections::HashMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use super::coeffs::{CoefficientSpec, SeriesEvaluator};
use super::estimate::{mean_and_error, run_sample};
use crate::error::{Error, Result};
use crate::primes::FactorTable;

/// Largest number of kernel combinations a moment may enumerate.
pub const WORK_LIMIT: u128 = 400_000_000;

/// Highest supported order.
pub const MAX_ORDER: u32 = 6;

/// `s * t / gcd(s, t)^2`, the kernel of `s * t`.
fn sym(s: u64, t: u64) -> u64 {
    let g = s.gcd(&t);
    (s / g) * (t / g)
}

/// `W(s)` indexed by squarefree kernel, plus the list of nonzero entries.
fn kernel_weights(a: &[f64]) -> (Vec<f64>, Vec<(u64, f64)>) {
    let n_max = a.len().saturating_sub(1);
    let factors = FactorTable::new(n_max);
    let mut kernel = vec![0u64; n_max + 1];
    let mut w = vec![0.0; n_max + 1];
    for n in 1..=n_max {
        kernel[n] = if n == 1 {
            1
        } else {
            let p = factors.smallest_factor(n) as u64;
            let k = kernel[n / p as usize];
            if k % p == 0 {
                k / p
            } else {
                k * p
            }
        };
        w[kernel[n] as usize] += a[n] / n as f64;
    }
    let support = w
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &v)| v != 0.0)
        .map(|(s, &v)| (s as u64, v))
        .collect();
    (w, support)
}

fn check_work(k: u32, work: u128) -> Result<()> {
    if work > WORK_LIMIT {
        Err(Error::Resource {
            k,
            work,
            limit: WORK_LIMIT,
        })
    } else {
        Ok(())
    }
}

fn third(w: &[f64], support: &[(u64, f64)]) -> f64 {
    let n_max = (w.len() - 1) as u64;
    support
        .par_iter()
        .map(|&(s1, w1)| {
            support
                .iter()
                .map(|&(s2, w2)| {
                    let t = sym(s1, s2);
                    if t <= n_max {
                        w1 * w2 * w[t as usize]
                    } else {
                        0.0
                    }
                })
                .sum::<f64>()
        })
        .collect::<Vec<f64>>()
        .iter()
        .sum()
}

/// Sum of squares of the pair sums `C(t) = sum_{s_1 s_2 ~ t} W W`.
///
/// Each kernel `s <= N` is `r * q` with `r` built from primes `<= sqrt N`
/// and `q` either 1 or a single larger prime. `t` then splits the same way
/// with large part 1, `q` or `q q'`, and pairs are grouped by that large
/// part so only one group's `C` is held at a time.
fn fourth(support: &[(u64, f64)], n_max: u64) -> f64 {
    let bound = n_max.isqrt();
    let factors = FactorTable::new(n_max as usize);
    let mut groups: HashMap<u64, Vec<(u64, f64)>> = HashMap::new();
    for &(s, w) in support {
        let mut large = 1;
        let mut m = s as usize;
        while m > 1 {
            let p = factors.smallest_factor(m) as u64;
            if p > bound {
                large = p;
            }
            m /= p as usize;
        }
        groups.entry(large).or_default().push((s / large, w));
    }
    let mut keys: Vec<u64> = groups.keys().copied().collect();
    keys.sort_unstable();
    let empty = Vec::new();
    let smooth = groups.get(&1).unwrap_or(&empty);

    fn square_sum(mut pairs: Vec<(u64, f64)>) -> f64 {
        pairs.sort_by_key(|p| p.0);
        let mut total = 0.0;
        let mut i = 0;
        while i < pairs.len() {
            let mut c = 0.0;
            let key = pairs[i].0;
            while i < pairs.len() && pairs[i].0 == key {
                c += pairs[i].1;
                i += 1;
            }
            total += c * c;
        }
        total
    }

    fn cross(x: &[(u64, f64)], y: &[(u64, f64)], factor: f64) -> Vec<(u64, f64)> {
        let mut out = Vec::with_capacity(x.len() * y.len());
        for &(r1, w1) in x {
            for &(r2, w2) in y {
                out.push((sym(r1, r2), factor * w1 * w2));
            }
        }
        out
    }

    // large part 1: both kernels share the same q
    let mut same = Vec::new();
    for q in &keys {
        same.extend(cross(&groups[q], &groups[q], 1.0));
    }
    let mut total = square_sum(same);

    let large: Vec<u64> = keys.into_iter().filter(|&q| q != 1).collect();
    // large part q: one kernel is smooth
    total += large
        .par_iter()
        .map(|q| square_sum(cross(smooth, &groups[q], 2.0)))
        .collect::<Vec<f64>>()
        .iter()
        .sum::<f64>();
    // large part q q'
    total += large
        .par_iter()
        .enumerate()
        .map(|(i, q1)| {
            large[i + 1..]
                .iter()
                .map(|q2| square_sum(cross(&groups[q1], &groups[q2], 2.0)))
                .sum::<f64>()
        })
        .collect::<Vec<f64>>()
        .iter()
        .sum::<f64>();
    total
}

/// `A_j(t)`, the sum of `W(s_1) ... W(s_j)` over `s_1 ... s_j ~ t`.
fn convolve_power(support: &[(u64, f64)], j: u32, k: u32) -> Result<HashMap<u64, f64>> {
    let mut acc: HashMap<u64, f64> = HashMap::from([(1, 1.0)]);
    for _ in 0..j {
        check_work(k, acc.len() as u128 * support.len() as u128)?;
        let mut entries: Vec<(u64, f64)> = acc.into_iter().collect();
        entries.sort_by_key(|e| e.0);
        let mut next: HashMap<u64, f64> = HashMap::with_capacity(entries.len() * 2);
        for &(t, v) in &entries {
            for &(s, w) in support {
                *next.entry(sym(t, s)).or_insert(0.0) += v * w;
            }
        }
        acc = next;
    }
    Ok(acc)
}

fn generic(support: &[(u64, f64)], k: u32, n_max: u64) -> Result<f64> {
    let j = k / 2;
    if (n_max as u128).pow(j + 1) > u64::MAX as u128 {
        return Err(Error::Resource {
            k,
            work: (n_max as u128).saturating_pow(j + 1),
            limit: u64::MAX as u128,
        });
    }
    let half = convolve_power(support, j, k)?;
    let mut entries: Vec<(u64, f64)> = half.iter().map(|(&t, &v)| (t, v)).collect();
    entries.sort_by_key(|e| e.0);
    if k % 2 == 0 {
        return Ok(entries.iter().map(|(_, v)| v * v).sum());
    }
    check_work(k, half.len() as u128 * support.len() as u128)?;
    Ok(entries
        .iter()
        .map(|&(t, v)| {
            support
                .iter()
                .filter_map(|&(s, w)| half.get(&sym(t, s)).map(|&u| v * w * u))
                .sum::<f64>()
        })
        .sum())
}

/// `E[(sum_{n <= N} a_n X_n / n)^k]` for `a = [_, a_1, ..., a_N]`.
pub fn moment_direct(a: &[f64], k: u32) -> Result<f64> {
    if k == 0 {
        return Ok(1.0);
    }
    let (w, support) = kernel_weights(a);
    if support.is_empty() {
        return Ok(0.0);
    }
    let n_max = (w.len() - 1) as u64;
    let pairs = (support.len() as u128).pow(2);
    match k {
        1 => Ok(w[1]),
        2 => Ok(support.iter().map(|(_, v)| v * v).sum()),
        3 => {
            check_work(k, pairs)?;
            Ok(third(&w, &support))
        }
        4 => {
            check_work(k, pairs)?;
            Ok(fourth(&support, n_max))
        }
        5 | 6 => generic(&support, k, n_max),
        _ => Err(Error::Resource {
            k,
            work: (support.len() as u128).saturating_pow(k / 2 + 1),
            limit: WORK_LIMIT,
        }),
    }
}

/// `sum_{m <= cutoff} tau_k(m^2; a) / m^2` by repeated Dirichlet convolution,
/// with `a_n = 0` beyond the slice.
pub fn moment_by_divisors(a: &[f64], k: u32, cutoff: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::param("moment order", "k >= 1"));
    }
    let top = (cutoff as u128).pow(2);
    check_work(k, top * k as u128)?;
    let top = top as usize;
    let a_at = |n: usize| if n < a.len() && n > 0 { a[n] } else { 0.0 };
    let mut g: Vec<f64> = (0..=top).map(a_at).collect();
    for _ in 1..k {
        let mut h = vec![0.0; top + 1];
        for d in 1..=top {
            if g[d] == 0.0 {
                continue;
            }
            for m in 1..=(top / d).min(a.len().saturating_sub(1)) {
                h[d * m] += g[d] * a[m];
            }
        }
        g = h;
    }
    Ok((1..=cutoff as usize).map(|m| g[m * m] / (m * m) as f64).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub k: u32,
    pub mean: f64,
    pub std_error: f64,
}

/// Monte Carlo `E[S^k]` for `k = 1..=k_max` on samples `0..samples`.
pub fn moment_monte_carlo(
    spec: &CoefficientSpec,
    truncation: usize,
    k_max: u32,
    samples: u64,
    seed: u64,
) -> Result<Vec<MomentEstimate>> {
    if samples < 2 {
        return Err(Error::param("samples", "at least two samples"));
    }
    let eval = SeriesEvaluator::new(spec, truncation)?;
    let values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| eval.eval(&run_sample(seed, i)))
        .collect();
    Ok(moments_of(&values, k_max))
}

/// Sample moments of `values` with their standard errors.
pub fn moments_of(values: &[f64], k_max: u32) -> Vec<MomentEstimate> {
    (1..=k_max)
        .map(|k| {
            let powers: Vec<f64> = values.iter().map(|v| v.powi(k as i32)).collect();
            let (mean, std_error) = mean_and_error(&powers);
            MomentEstimate { k, mean, std_error }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::Alpha;
    use crate::randmodel::coeffs::Parity;
    use crate::randmodel::sample::MultiplicativeSample;
    use rand::{Rng, SeedableRng};

    fn spec(a: i64, b: u64, parity: Parity) -> CoefficientSpec {
        CoefficientSpec::new(Alpha::rational(a, b).unwrap(), parity)
    }

    fn is_square(n: u64) -> bool {
        let r = n.isqrt();
        r * r == n
    }

    /// Exact expectation by enumerating every sign pattern on primes <= N.
    fn exhaustive(a: &[f64], k: u32) -> f64 {
        let n_max = a.len() - 1;
        let factors = FactorTable::new(n_max);
        let primes = factors.primes().to_vec();
        assert!(primes.len() <= 12);
        let mut total = 0.0;
        for mask in 0u32..(1 << primes.len()) {
            let mut s = MultiplicativeSample::all_plus();
            for (i, &p) in primes.iter().enumerate() {
                if mask >> i & 1 == 0 {
                    s = s.fix(p as u64, -1);
                }
            }
            let v: f64 = (1..=n_max).map(|n| a[n] * s.x_n(n as u64) as f64 / n as f64).sum();
            total += v.powi(k as i32);
        }
        total / (1u64 << primes.len()) as f64
    }

    #[test]
    fn first_moment_keeps_squares() {
        let a = spec(1, 3, Parity::Minus).coefficients(1000);
        let expected: f64 = (1..=31).map(|m| a[m * m] / (m * m) as f64).sum();
        assert!((moment_direct(&a, 1).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn second_moment_against_double_loop() {
        // a_n = chi0_2(n)
        let n_max = 2000;
        let a: Vec<f64> = (0..=n_max).map(|n| (n % 2) as f64).collect();
        let mut brute = 0.0;
        for n in (1..=n_max).step_by(2) {
            for m in (1..=n_max).step_by(2) {
                if is_square((n * m) as u64) {
                    brute += 1.0 / (n * m) as f64;
                }
            }
        }
        let direct = moment_direct(&a, 2).unwrap();
        assert!((direct - brute).abs() < 1e-12 * brute, "{direct} {brute}");
    }

    #[test]
    fn all_orders_against_exhaustive_enumeration() {
        let n_max = 30;
        for (a, b) in [(1, 3), (1, 4), (2, 5)] {
            for parity in Parity::BOTH {
                let coeffs = spec(a, b, parity).coefficients(n_max);
                for k in 1..=6 {
                    let direct = moment_direct(&coeffs, k).unwrap();
                    let exact = exhaustive(&coeffs, k);
                    assert!((direct - exact).abs() < 1e-10 * exact.abs().max(1.0), "{a}/{b} {parity} k={k}");
                }
            }
        }
    }

    #[test]
    fn divisor_route_agrees() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for k in 1..=4u32 {
            let n_max = 12;
            let a: Vec<f64> = (0..=n_max).map(|_| rng.random_range(-1.0..1.0)).collect();
            // every product n_1 ... n_k is at most N^k, so m <= N^{k/2} suffices
            let cutoff = (n_max as f64).powf(k as f64 / 2.0).ceil() as u64;
            let by_divisors = moment_by_divisors(&a, k, cutoff).unwrap();
            let direct = moment_direct(&a, k).unwrap();
            assert!((by_divisors - direct).abs() < 1e-10, "k={k}: {by_divisors} {direct}");
        }
    }

    #[test]
    fn fourth_moment_grouping_matches_generic_path() {
        let a = spec(1, 3, Parity::Plus).coefficients(400);
        let (_, support) = kernel_weights(&a);
        let grouped = fourth(&support, 400);
        let generic_value = generic(&support, 4, 400).unwrap();
        assert!((grouped - generic_value).abs() < 1e-10 * generic_value.abs());
    }

    #[test]
    fn order_limits() {
        let a = spec(1, 3, Parity::Minus).coefficients(10_000);
        assert!(matches!(moment_direct(&a, 7), Err(Error::Resource { k: 7, .. })));
        assert!(matches!(moment_direct(&a, 6), Err(Error::Resource { k: 6, .. })));
        assert_eq!(moment_direct(&a, 0).unwrap(), 1.0);
    }
}

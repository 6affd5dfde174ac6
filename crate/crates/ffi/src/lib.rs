//! C ABI over `legendre-core`.
//!
//! Every function returns an [`LsStatus`] and writes results through out
//! pointers. Objects are opaque handles created by `ls_*_new` style calls and
//! released with the matching `ls_*_free`. A failed call leaves its out
//! pointer untouched; [`ls_last_error`] describes the failure on the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use legendre_core::charsum::{self, Comparison, QrTable};
use legendre_core::randmodel::{
    decompose_rational, estimate_positivity, series_eval, CoefficientSpec, Evaluator, EulerEvaluator,
    MultiplicativeSample, Parity, SimulationConfig,
};
use legendre_core::tails::{certify_neighborhood, DConstants};
use legendre_core::{Alpha, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsStatus {
    Ok = 0,
    NullPointer = 1,
    /// Argument outside the function's domain (bad alpha, non-prime p, ...).
    Domain = 2,
    /// Alpha has no character decomposition.
    Unsupported = 3,
    /// The request exceeds a work limit.
    Resource = 4,
    /// A Rust panic was caught at the boundary.
    Panic = 5,
    /// A string argument is not valid UTF-8.
    Utf8 = 6,
}

pub struct LsAlpha(Alpha);
pub struct LsQrTable(QrTable);
pub struct LsSample(MultiplicativeSample);
pub struct LsEulerEvaluator(EulerEvaluator);

/// `LS_PARITY_PLUS` selects `sin(2 pi n alpha)`, `LS_PARITY_MINUS` `1 - cos(2 pi n alpha)`.
pub const LS_PARITY_PLUS: u32 = 0;
pub const LS_PARITY_MINUS: u32 = 1;

pub const LS_COMPARISON_GE: u32 = 0;
pub const LS_COMPARISON_GT: u32 = 1;

pub const LS_CONSTANTS_PRINTED: u32 = 0;
pub const LS_CONSTANTS_RECOMPUTED: u32 = 1;
pub const LS_CONSTANTS_CONSERVATIVE: u32 = 2;

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LsDensityCounts {
    pub primes: u64,
    pub nonneg: u64,
    pub strictpos: u64,
    pub zero: u64,
    pub nonneg_1mod4: u64,
    pub nonneg_3mod4: u64,
    pub boundary_hits: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LsPositivity {
    pub samples: u64,
    pub positive: u64,
    pub nonnegative: u64,
    pub strict_fraction: f64,
    pub nonneg_fraction: f64,
    pub nonneg_ci_low: f64,
    pub nonneg_ci_high: f64,
    pub mean: f64,
    pub std_error: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LsCertification {
    pub delta: f64,
    pub d_minus: f64,
    pub d_plus: f64,
    pub u_minus: f64,
    pub u_plus: f64,
    pub p_neg_minus: f64,
    pub p_neg_plus: f64,
    pub c_lower: f64,
    pub certified: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LsStatus {
    match e {
        Error::UnsupportedAlpha(_) => LsStatus::Unsupported,
        Error::Resource { .. } => LsStatus::Resource,
        _ => LsStatus::Domain,
    }
}

struct Fail(LsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(LsStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            LsStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(&msg);
            LsStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, Fail> {
    // SAFETY: callers pass either null or a live handle from this library.
    unsafe { ptr.as_ref() }.ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    // SAFETY: non-null and, per the API contract, valid for writes.
    unsafe { out.write(value) };
    Ok(())
}

fn parity(code: u32) -> Result<Parity, Fail> {
    match code {
        LS_PARITY_PLUS => Ok(Parity::Plus),
        LS_PARITY_MINUS => Ok(Parity::Minus),
        _ => Err(Fail(LsStatus::Domain, format!("unknown parity code {code}"))),
    }
}

/// Message for the last failed call on this thread, empty after a success.
/// The pointer stays valid until the next `ls_*` call on the same thread.
#[no_mangle]
pub extern "C" fn ls_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn ls_status_str(status: LsStatus) -> *const c_char {
    let s: &'static CStr = match status {
        LsStatus::Ok => c"ok",
        LsStatus::NullPointer => c"null pointer",
        LsStatus::Domain => c"argument out of domain",
        LsStatus::Unsupported => c"unsupported alpha",
        LsStatus::Resource => c"work limit exceeded",
        LsStatus::Panic => c"internal panic",
        LsStatus::Utf8 => c"invalid UTF-8",
    };
    s.as_ptr()
}

/// Parses `"a/b"` exactly or a decimal.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_alpha_parse(text: *const c_char, out: *mut *mut LsAlpha) -> LsStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        // SAFETY: checked non-null, NUL-terminated per contract.
        let s = unsafe { CStr::from_ptr(text) }
            .to_str()
            .map_err(|e| Fail(LsStatus::Utf8, e.to_string()))?;
        let alpha: Alpha = s.parse()?;
        unsafe { put(out, Box::into_raw(Box::new(LsAlpha(alpha)))) }
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_alpha_rational(num: i64, den: u64, out: *mut *mut LsAlpha) -> LsStatus {
    guard(|| {
        let alpha = Alpha::rational(num, den)?;
        unsafe { put(out, Box::into_raw(Box::new(LsAlpha(alpha)))) }
    })
}

/// # Safety
/// `alpha` must be null or a handle from `ls_alpha_*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ls_alpha_free(alpha: *mut LsAlpha) {
    if !alpha.is_null() {
        // SAFETY: allocated by Box::into_raw in this crate.
        drop(unsafe { Box::from_raw(alpha) });
    }
}

/// `alpha` as a double.
///
/// # Safety
/// `alpha` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_alpha_value(alpha: *const LsAlpha, out: *mut f64) -> LsStatus {
    guard(|| {
        let a = unsafe { get(alpha, "alpha") }?;
        unsafe { put(out, a.0.to_f64()) }
    })
}

/// `L(alpha, p) = sum_{n <= alpha p} (n/p)`.
///
/// # Safety
/// `alpha` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_legendre_sum(alpha: *const LsAlpha, p: u64, out: *mut i64) -> LsStatus {
    guard(|| {
        let a = unsafe { get(alpha, "alpha") }?;
        let v = charsum::legendre_sum(&a.0, p)?;
        unsafe { put(out, v) }
    })
}

/// Quadratic residue table for an odd prime `p`, for repeated sums at one `p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_qr_table_new(p: u64, out: *mut *mut LsQrTable) -> LsStatus {
    guard(|| {
        let t = charsum::build_qr_table(p)?;
        unsafe { put(out, Box::into_raw(Box::new(LsQrTable(t)))) }
    })
}

/// # Safety
/// `table` must be null or a handle from `ls_qr_table_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ls_qr_table_free(table: *mut LsQrTable) {
    if !table.is_null() {
        // SAFETY: allocated by Box::into_raw in this crate.
        drop(unsafe { Box::from_raw(table) });
    }
}

/// `(n/p)` for any integer `n`.
///
/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_qr_table_symbol(table: *const LsQrTable, n: i64, out: *mut i8) -> LsStatus {
    guard(|| {
        let t = unsafe { get(table, "table") }?;
        unsafe { put(out, t.0.symbol(n)) }
    })
}

/// # Safety
/// `table` and `alpha` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_qr_table_sum(table: *const LsQrTable, alpha: *const LsAlpha, out: *mut i64) -> LsStatus {
    guard(|| {
        let t = unsafe { get(table, "table") }?;
        let a = unsafe { get(alpha, "alpha") }?;
        let v = t.0.legendre_sum(&a.0)?;
        unsafe { put(out, v) }
    })
}

/// Sign counts of `L(alpha, p)` over the first `num_primes` primes.
///
/// # Safety
/// `alpha` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_density_scan(
    alpha: *const LsAlpha,
    num_primes: u64,
    comparison: u32,
    out: *mut LsDensityCounts,
) -> LsStatus {
    guard(|| {
        let a = unsafe { get(alpha, "alpha") }?;
        let cmp = match comparison {
            LS_COMPARISON_GE => Comparison::Ge,
            LS_COMPARISON_GT => Comparison::Gt,
            c => return Err(Fail(LsStatus::Domain, format!("unknown comparison code {c}"))),
        };
        let n = usize::try_from(num_primes).map_err(|e| Fail(LsStatus::Domain, e.to_string()))?;
        let r = charsum::density_scan(&a.0, n, cmp)?;
        let counts = LsDensityCounts {
            primes: r.prime_count,
            nonneg: r.nonneg_count,
            strictpos: r.strict_pos_count,
            zero: r.zero_count,
            nonneg_1mod4: r.nonneg_1mod4,
            nonneg_3mod4: r.nonneg_3mod4,
            boundary_hits: r.boundary_hits,
        };
        unsafe { put(out, counts) }
    })
}

/// A random multiplicative sign pattern; `stream` indexes independent samples.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_sample_new(seed: u64, stream: u64, out: *mut *mut LsSample) -> LsStatus {
    guard(|| unsafe { put(out, Box::into_raw(Box::new(LsSample(MultiplicativeSample::new(seed, stream))))) })
}

/// # Safety
/// `sample` must be null or a handle from `ls_sample_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ls_sample_free(sample: *mut LsSample) {
    if !sample.is_null() {
        // SAFETY: allocated by Box::into_raw in this crate.
        drop(unsafe { Box::from_raw(sample) });
    }
}

/// `X_n` for `n >= 1`.
///
/// # Safety
/// `sample` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_sample_value(sample: *const LsSample, n: u64, out: *mut i8) -> LsStatus {
    guard(|| {
        let s = unsafe { get(sample, "sample") }?;
        if n == 0 {
            return Err(Fail(LsStatus::Domain, "X_n needs n >= 1".into()));
        }
        unsafe { put(out, s.0.x_n(n)) }
    })
}

/// `sum_{n <= N} a_n X_n / n`.
///
/// # Safety
/// `alpha` and `sample` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_series_eval(
    alpha: *const LsAlpha,
    parity_code: u32,
    sample: *const LsSample,
    truncation: u64,
    out: *mut f64,
) -> LsStatus {
    guard(|| {
        let a = unsafe { get(alpha, "alpha") }?;
        let s = unsafe { get(sample, "sample") }?;
        let n = usize::try_from(truncation).map_err(|e| Fail(LsStatus::Domain, e.to_string()))?;
        let v = series_eval(&CoefficientSpec::new(a.0, parity(parity_code)?), &s.0, n)?;
        unsafe { put(out, v) }
    })
}

/// Euler-product evaluator for a rational `alpha` with a supported denominator.
///
/// # Safety
/// `alpha` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_euler_new(
    alpha: *const LsAlpha,
    parity_code: u32,
    prime_cutoff: u64,
    out: *mut *mut LsEulerEvaluator,
) -> LsStatus {
    guard(|| {
        let a = unsafe { get(alpha, "alpha") }?;
        let d = decompose_rational(&a.0, parity(parity_code)?)?;
        let e = EulerEvaluator::new(&d, prime_cutoff)?;
        unsafe { put(out, Box::into_raw(Box::new(LsEulerEvaluator(e)))) }
    })
}

/// # Safety
/// `evaluator` must be null or a handle from `ls_euler_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ls_euler_free(evaluator: *mut LsEulerEvaluator) {
    if !evaluator.is_null() {
        // SAFETY: allocated by Box::into_raw in this crate.
        drop(unsafe { Box::from_raw(evaluator) });
    }
}

/// # Safety
/// `evaluator` and `sample` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_euler_eval(
    evaluator: *const LsEulerEvaluator,
    sample: *const LsSample,
    out: *mut f64,
) -> LsStatus {
    guard(|| {
        let e = unsafe { get(evaluator, "evaluator") }?;
        let s = unsafe { get(sample, "sample") }?;
        unsafe { put(out, e.0.eval(&s.0)) }
    })
}

/// Monte Carlo estimate of `P(L(a(alpha)) > 0)` with Euler products truncated at `prime_cutoff`.
///
/// # Safety
/// `alpha` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_estimate_positivity(
    alpha: *const LsAlpha,
    parity_code: u32,
    samples: u64,
    seed: u64,
    prime_cutoff: u64,
    out: *mut LsPositivity,
) -> LsStatus {
    guard(|| {
        let a = unsafe { get(alpha, "alpha") }?;
        let config = SimulationConfig {
            samples,
            seed,
            prime_cutoff,
            evaluator: Evaluator::Euler,
            ..SimulationConfig::default()
        };
        let e = estimate_positivity(&a.0, parity(parity_code)?, &config)?;
        let p = LsPositivity {
            samples: e.samples,
            positive: e.positive,
            nonnegative: e.nonnegative,
            strict_fraction: e.strict_fraction,
            nonneg_fraction: e.nonneg_fraction,
            nonneg_ci_low: e.nonneg_ci_low,
            nonneg_ci_high: e.nonneg_ci_high,
            mean: e.mean,
            std_error: e.std_error,
        };
        unsafe { put(out, p) }
    })
}

/// Certified lower bound on the nonnegative density at `alpha` near `1/3`.
///
/// # Safety
/// `alpha` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_certify(alpha: *const LsAlpha, constants: u32, out: *mut LsCertification) -> LsStatus {
    guard(|| {
        let a = unsafe { get(alpha, "alpha") }?;
        let c = match constants {
            LS_CONSTANTS_PRINTED => DConstants::Printed,
            LS_CONSTANTS_RECOMPUTED => DConstants::Recomputed,
            LS_CONSTANTS_CONSERVATIVE => DConstants::Conservative,
            c => return Err(Fail(LsStatus::Domain, format!("unknown constants code {c}"))),
        };
        let r = certify_neighborhood(&a.0, c)?;
        let report = LsCertification {
            delta: r.delta,
            d_minus: r.d_minus,
            d_plus: r.d_plus,
            u_minus: r.u_minus,
            u_plus: r.u_plus,
            p_neg_minus: r.p_neg_minus,
            p_neg_plus: r.p_neg_plus,
            c_lower: r.c_lower,
            certified: r.certified,
        };
        unsafe { put(out, report) }
    })
}

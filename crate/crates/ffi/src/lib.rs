//! C ABI over `gauss_cis`.
//!
//! Every entry point returns a [`GcStatus`] and writes results through out
//! pointers. On failure a message is kept per thread and can be read with
//! [`gc_last_error_message`]. Panics are caught at the boundary and reported
//! as [`GcStatus::Panic`]. Complex arrays are interleaved `re, im` doubles.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gauss_cis::experiments::{run_scenario, ScenarioConfig};
use gauss_cis::fock::{fock_norm, g0_ratio, kernel_norm, FockSeries, LogPolarPoint};
use gauss_cis::gauss_space::{evaluate, frame_bounds, CoefficientVector, FrameOptions, Orientation};
use gauss_cis::lattice::{
    avdonin_verdict, build_sequence, check_separation, AvdoninOptions, Caveat, IndexRange, NodeSequence, SequenceSpec,
};
use gauss_cis::{Error, GaussianParam};
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BadParameter = 3,
    NonIncreasing = 4,
    EmptyWindow = 5,
    WindowTooSmall = 6,
    NoEnumeration = 7,
    SingularSystem = 8,
    GridTooCoarse = 9,
    TooFewTerms = 10,
    OnZero = 11,
    UnsortedInput = 12,
    WindowTooLarge = 13,
    ComplexInput = 14,
    Precondition = 15,
    ConfigInvalid = 16,
    ThresholdFailed = 17,
    Io = 18,
    Panic = 99,
}

impl From<&Error> for GcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::BadParameter(_) => GcStatus::BadParameter,
            Error::NonIncreasing { .. } => GcStatus::NonIncreasing,
            Error::EmptyWindow => GcStatus::EmptyWindow,
            Error::WindowTooSmall(_) => GcStatus::WindowTooSmall,
            Error::NoEnumeration => GcStatus::NoEnumeration,
            Error::SingularSystem { .. } => GcStatus::SingularSystem,
            Error::GridTooCoarse(_) => GcStatus::GridTooCoarse,
            Error::TooFewTerms { .. } => GcStatus::TooFewTerms,
            Error::OnZero { .. } => GcStatus::OnZero,
            Error::UnsortedInput(_) => GcStatus::UnsortedInput,
            Error::WindowTooLarge(_) => GcStatus::WindowTooLarge,
            Error::ComplexInput => GcStatus::ComplexInput,
            Error::Precondition(_) => GcStatus::Precondition,
            Error::UnknownScenario(_) | Error::ConfigInvalid(_) | Error::Json(_) => GcStatus::ConfigInvalid,
            Error::ThresholdFailed(_) => GcStatus::ThresholdFailed,
            Error::Io(_) | Error::Csv(_) => GcStatus::Io,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(GcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(GcStatus::from(&e), e.to_string())
    }
}

fn null() -> Fail {
    Fail(GcStatus::NullPointer, "null pointer argument".into())
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(GcStatus::InvalidArgument, msg.into())
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GcStatus::Ok
        }
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(p) => {
            let m = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {m}"));
            GcStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(null)
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn string<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|e| invalid(format!("invalid UTF-8: {e}")))
}

fn complex_pairs(v: &[f64]) -> Result<Vec<Complex64>, Fail> {
    if !v.len().is_multiple_of(2) {
        return Err(invalid("interleaved complex array must have even length"));
    }
    Ok(v.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect())
}

/// Opaque node sequence.
pub struct GcSequence(NodeSequence);

fn boxed(seq: NodeSequence, outp: *mut *mut GcSequence) -> Result<(), Fail> {
    let o = unsafe { out(outp)? };
    *o = Box::into_raw(Box::new(GcSequence(seq)));
    Ok(())
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn gc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gc_string_free(s: *mut c_char) {
    if !s.is_null() {
        let _ = catch_unwind(|| drop(CString::from_raw(s)));
    }
}

/// Builds a sequence from its JSON description, e.g.
/// `{"kind": "periodic", "offsets": [0.45, -0.35]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_sequence_from_json(json: *const c_char, out: *mut *mut GcSequence) -> GcStatus {
    guard(|| {
        let spec: SequenceSpec = serde_json::from_str(string(json)?).map_err(|e| invalid(e.to_string()))?;
        boxed(build_sequence(&spec)?, out)
    })
}

/// `λ_n = alpha·n + beta`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_sequence_affine(alpha: f64, beta: f64, out: *mut *mut GcSequence) -> GcStatus {
    guard(|| boxed(NodeSequence::affine(alpha, beta)?, out))
}

/// `λ_n = n + offsets[n mod len]`.
///
/// # Safety
/// `offsets` must point to `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_sequence_periodic(offsets: *const f64, len: usize, out: *mut *mut GcSequence) -> GcStatus {
    guard(|| boxed(NodeSequence::periodic(slice(offsets, len)?.to_vec())?, out))
}

/// Finite increasing nodes indexed from `first_index`.
///
/// # Safety
/// `nodes` must point to `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_sequence_explicit(
    first_index: i64,
    nodes: *const f64,
    len: usize,
    out: *mut *mut GcSequence,
) -> GcStatus {
    guard(|| boxed(NodeSequence::explicit(first_index, slice(nodes, len)?.to_vec())?, out))
}

/// # Safety
/// `seq` must come from a `gc_sequence_*` constructor and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gc_sequence_free(seq: *mut GcSequence) {
    if !seq.is_null() {
        let _ = catch_unwind(|| drop(Box::from_raw(seq)));
    }
}

/// Node `λ_n`; `EmptyWindow` outside explicit data.
///
/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_sequence_node(seq: *const GcSequence, n: i64, out: *mut f64) -> GcStatus {
    guard(|| {
        let s = seq.as_ref().ok_or_else(null)?;
        *self::out(out)? = s.0.node(n).ok_or(Error::EmptyWindow)?;
        Ok(())
    })
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GcSeparation {
    pub min_gap: f64,
    pub separated: bool,
}

/// Minimum adjacent gap over indices `lo..=hi`.
///
/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_separation(seq: *const GcSequence, lo: i64, hi: i64, out: *mut GcSeparation) -> GcStatus {
    guard(|| {
        let s = seq.as_ref().ok_or_else(null)?;
        let r = check_separation(&s.0, IndexRange::new(lo, hi))?;
        *self::out(out)? = GcSeparation { min_gap: r.min_gap, separated: r.separated };
        Ok(())
    })
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GcVerdict {
    pub separated: bool,
    pub min_gap: f64,
    pub enumerable: bool,
    /// `+inf` when no enumeration exists.
    pub delta_sup: f64,
    /// Averaging length; 0 when none was found.
    pub window: usize,
    /// NaN when `window` is 0.
    pub delta_star: f64,
    pub passes: bool,
    /// False for finite explicit data, where the verdict is a heuristic.
    pub exact: bool,
}

/// Averaged-perturbation classifier with strictness `margin`.
///
/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_avdonin_verdict(seq: *const GcSequence, margin: f64, out: *mut GcVerdict) -> GcStatus {
    guard(|| {
        let s = seq.as_ref().ok_or_else(null)?;
        if !(margin >= 0.0) {
            return Err(invalid("margin must be >= 0"));
        }
        let v = avdonin_verdict(&s.0, &AvdoninOptions { margin, ..Default::default() });
        *self::out(out)? = GcVerdict {
            separated: v.separated,
            min_gap: v.min_gap,
            enumerable: v.enumerable,
            delta_sup: v.delta_sup,
            window: v.best_window.map_or(0, |w| w.n),
            delta_star: v.best_window.map_or(f64::NAN, |w| w.delta_star),
            passes: v.passes,
            exact: v.caveat == Caveat::Exact,
        };
        Ok(())
    })
}

/// `f(x) = Σ c_n e^{-c(x-n)²}` with `c = a + ib`; `coeffs` holds `len`
/// interleaved complex values for `n = first_index, …`.
///
/// # Safety
/// `coeffs` must point to `2·len` doubles; `value` (2 doubles) and `tail` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_evaluate(
    a: f64,
    b: f64,
    first_index: i64,
    coeffs: *const f64,
    len: usize,
    x: f64,
    tol: f64,
    value: *mut f64,
    tail: *mut f64,
) -> GcStatus {
    guard(|| {
        if !(tol > 0.0) {
            return Err(invalid("tol must be > 0"));
        }
        let p = GaussianParam::new(a, b)?;
        let c = CoefficientVector::new(first_index, complex_pairs(slice(coeffs, 2 * len)?)?)?;
        let v = evaluate(p, &c, x, tol);
        let o = std::slice::from_raw_parts_mut(value.as_mut().ok_or_else(null)?, 2);
        o[0] = v.value.re;
        o[1] = v.value.im;
        *out(tail)? = v.tail_bound;
        Ok(())
    })
}

/// Smallest and largest singular values of collocation matrices on `[-M, M]`
/// for each of `n_sizes` increasing sizes. `orientation` is 0 for frame, 1 for Riesz.
///
/// # Safety
/// `sizes` must point to `n_sizes` values; both outputs must hold `n_sizes` doubles.
#[no_mangle]
pub unsafe extern "C" fn gc_frame_bounds(
    seq: *const GcSequence,
    a: f64,
    b: f64,
    sizes: *const i64,
    n_sizes: usize,
    orientation: i32,
    interior_fraction: f64,
    tol: f64,
    sigma_min: *mut f64,
    sigma_max: *mut f64,
) -> GcStatus {
    guard(|| {
        let s = seq.as_ref().ok_or_else(null)?;
        let orientation = match orientation {
            0 => Orientation::Frame,
            1 => Orientation::Riesz,
            o => return Err(invalid(format!("orientation must be 0 or 1, got {o}"))),
        };
        let p = GaussianParam::new(a, b)?;
        let opts = FrameOptions { orientation, interior_fraction, tol };
        let r = frame_bounds(p, &s.0, slice(sizes, n_sizes)?, &opts)?;
        if sigma_min.is_null() || sigma_max.is_null() {
            return Err(null());
        }
        let lo = std::slice::from_raw_parts_mut(sigma_min, n_sizes);
        let hi = std::slice::from_raw_parts_mut(sigma_max, n_sizes);
        for (i, rec) in r.records.iter().enumerate() {
            lo[i] = rec.sigma_min;
            hi[i] = rec.sigma_max;
        }
        Ok(())
    })
}

/// `log ‖F‖²` in `𝓕_a` for `F(w) = Σ_{k<len} coeffs[k] w^k`.
///
/// # Safety
/// `coeffs` must point to `2·len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_fock_norm_log(coeffs: *const f64, len: usize, a: f64, out: *mut f64) -> GcStatus {
    guard(|| {
        if !(a > 0.0) {
            return Err(Error::BadParameter(format!("a must be > 0, got {a}")).into());
        }
        let f = FockSeries::from_complex(&complex_pairs(slice(coeffs, 2 * len)?)?);
        *self::out(out)? = fock_norm(&f, a);
        Ok(())
    })
}

/// Reproducing-kernel norm at `w = e^{log_modulus + i·argument}`: writes
/// `log ‖k_w‖²` and the ratio `‖k_w‖² (1+|w|²) e^{-2φ(w)}`.
///
/// # Safety
/// Both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_kernel_norm(
    a: f64,
    log_modulus: f64,
    argument: f64,
    log_norm_sq: *mut f64,
    ratio: *mut f64,
) -> GcStatus {
    guard(|| {
        let k = kernel_norm(a, LogPolarPoint::new(log_modulus, argument)?, None)?;
        *out(log_norm_sq)? = k.log_norm_sq;
        *out(ratio)? = k.ratio;
        Ok(())
    })
}

/// Lower-estimate ratio of the unperturbed generating product at `w`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_g0_ratio(a: f64, log_modulus: f64, argument: f64, out: *mut f64) -> GcStatus {
    guard(|| {
        let r = g0_ratio(a, LogPolarPoint::new(log_modulus, argument)?)?;
        *self::out(out)? = r;
        Ok(())
    })
}

/// Runs a scenario from its JSON config without writing files and returns
/// the report as JSON in `*out` (free with [`gc_string_free`]). Failed
/// thresholds still produce a report; check its `passed` field.
///
/// # Safety
/// `config_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_run_scenario_json(config_json: *const c_char, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let o = self::out(out)?;
        let cfg = ScenarioConfig::from_json(string(config_json)?)?;
        let report = run_scenario(&cfg)?;
        let text = serde_json::to_string(&report).map_err(Error::from)?;
        *o = CString::new(text).map_err(|e| invalid(e.to_string()))?.into_raw();
        Ok(())
    })
}

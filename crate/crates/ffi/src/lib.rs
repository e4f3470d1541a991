//! C ABI over `twohop-core`.
//!
//! Every fallible function returns a [`TwohopStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! copied out with [`twohop_last_error`]. Channel parameters live behind an
//! opaque [`TwohopParams`] handle created by [`twohop_params_new`] and
//! released by [`twohop_params_free`].

use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use twohop_core::af::noisy_interference_capacity;
use twohop_core::{
    crossover_window, evaluate, gamma, parallel_awgn_rate, ChannelParams, Duplex, Error,
    OptimizerSpec, Scheme,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwohopStatus {
    Ok = 0,
    NullPointer = 1,
    /// An argument is outside its domain.
    Domain = 2,
    /// Wrong entry point for the inputs, e.g. half-duplex params to full-duplex DF.
    Contract = 3,
    /// The optimizer hit a non-finite objective value.
    NonFinite = 4,
    InvalidOptimizer = 5,
    /// The scheme has no value at these parameters.
    NotApplicable = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwohopDuplex {
    Full = 0,
    Half = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwohopScheme {
    Df = 0,
    DfDpcOnly = 1,
    DfMacOnly = 2,
    DfNaive = 3,
    DfHalfDuplex = 4,
    AfIn = 5,
    AfOut = 6,
    CapPerHop = 7,
}

impl From<TwohopScheme> for Scheme {
    fn from(s: TwohopScheme) -> Self {
        match s {
            TwohopScheme::Df => Scheme::Df,
            TwohopScheme::DfDpcOnly => Scheme::DfDpcOnly,
            TwohopScheme::DfMacOnly => Scheme::DfMacOnly,
            TwohopScheme::DfNaive => Scheme::DfNaive,
            TwohopScheme::DfHalfDuplex => Scheme::DfHalfDuplex,
            TwohopScheme::AfIn => Scheme::AfIn,
            TwohopScheme::AfOut => Scheme::AfOut,
            TwohopScheme::CapPerHop => Scheme::CapPerHop,
        }
    }
}

/// Opaque channel parameters.
pub struct TwohopParams(ChannelParams);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwohopOptimizer {
    pub coarse_points: usize,
    pub refine_rounds: usize,
    pub shrink: f64,
}

impl From<TwohopOptimizer> for OptimizerSpec {
    fn from(o: TwohopOptimizer) -> Self {
        OptimizerSpec {
            coarse_points: o.coarse_points,
            refine_rounds: o.refine_rounds,
            shrink: o.shrink,
        }
    }
}

/// Fields that a scheme does not use are NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwohopResult {
    pub rate: f64,
    pub alpha: f64,
    pub beta: f64,
    pub alpha2: f64,
    pub share: f64,
    pub switched: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwohopWindow {
    pub lower: f64,
    pub upper: f64,
    pub nonempty: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn fail(status: TwohopStatus, msg: impl Into<String>) -> TwohopStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> TwohopStatus {
    let status = match e {
        Error::Domain { .. } => TwohopStatus::Domain,
        Error::Contract(_) => TwohopStatus::Contract,
        Error::NonFinite { .. } => TwohopStatus::NonFinite,
        Error::OptimizerSpec(_) => TwohopStatus::InvalidOptimizer,
    };
    fail(status, e.to_string())
}

fn guarded<F: FnOnce() -> TwohopStatus>(f: F) -> TwohopStatus {
    set_error("");
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(TwohopStatus::Panic, "internal panic"))
}

/// Copies the calling thread's last error message into `buf` (truncated,
/// always NUL-terminated when `len > 0`). Returns the full message length in
/// bytes, excluding the terminator; 0 when the last call succeeded.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes of writes.
#[no_mangle]
pub unsafe extern "C" fn twohop_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

#[no_mangle]
pub extern "C" fn twohop_optimizer_default() -> TwohopOptimizer {
    let d = OptimizerSpec::default();
    TwohopOptimizer {
        coarse_points: d.coarse_points,
        refine_rounds: d.refine_rounds,
        shrink: d.shrink,
    }
}

/// Validates and allocates a parameter handle.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn twohop_params_new(
    a: f64,
    b: f64,
    p1: f64,
    p2: f64,
    duplex: TwohopDuplex,
    out: *mut *mut TwohopParams,
) -> TwohopStatus {
    if out.is_null() {
        return fail(TwohopStatus::NullPointer, "out is null");
    }
    guarded(|| {
        let duplex = match duplex {
            TwohopDuplex::Full => Duplex::Full,
            TwohopDuplex::Half => Duplex::Half,
        };
        match ChannelParams::new(a, b, p1, p2) {
            Ok(p) => {
                let handle = Box::into_raw(Box::new(TwohopParams(p.with_duplex(duplex))));
                *out = handle;
                TwohopStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `params` must be null or a handle from [`twohop_params_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn twohop_params_free(params: *mut TwohopParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Rate of `scheme` at `params`. `opt` may be null for the default optimizer.
/// Returns `NOT_APPLICABLE` when the scheme has no value there (`df-naive`
/// outside `a, b > 1`, `cap-per-hop` outside noisy interference).
///
/// # Safety
/// `params` must be a live handle; `opt` null or readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn twohop_evaluate(
    params: *const TwohopParams,
    scheme: TwohopScheme,
    opt: *const TwohopOptimizer,
    out: *mut TwohopResult,
) -> TwohopStatus {
    if params.is_null() || out.is_null() {
        return fail(TwohopStatus::NullPointer, "params and out must be non-null");
    }
    let p = (*params).0;
    let spec = if opt.is_null() {
        OptimizerSpec::default()
    } else {
        (*opt).into()
    };
    guarded(|| match evaluate(scheme.into(), &p, &spec) {
        Ok(Some(r)) => {
            let nan = |x: Option<f64>| x.unwrap_or(f64::NAN);
            *out = TwohopResult {
                rate: r.rate,
                alpha: nan(r.alpha),
                beta: nan(r.beta),
                alpha2: nan(r.alpha2),
                share: nan(r.share),
                switched: r.switched,
            };
            TwohopStatus::Ok
        }
        Ok(None) => fail(
            TwohopStatus::NotApplicable,
            format!("{} does not apply here", Scheme::from(scheme)),
        ),
        Err(e) => from_error(e),
    })
}

/// `½·log₂(1 + x)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn twohop_gamma(x: f64, out: *mut f64) -> TwohopStatus {
    if out.is_null() {
        return fail(TwohopStatus::NullPointer, "out is null");
    }
    guarded(|| match gamma(x) {
        Ok(v) => {
            *out = v;
            TwohopStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// Per-link rate of out-of-phase relaying with equal gains `a = b`.
#[no_mangle]
pub extern "C" fn twohop_parallel_awgn_rate(a: f64, p1: f64, p2: f64) -> f64 {
    parallel_awgn_rate(a, p1, p2)
}

/// Symmetric capacity of a weak hop in noisy interference. `*present` is
/// false (and `*out` untouched) outside that regime.
///
/// # Safety
/// `out` and `present` must be writable.
#[no_mangle]
pub unsafe extern "C" fn twohop_noisy_interference_capacity(
    a: f64,
    p1: f64,
    out: *mut f64,
    present: *mut bool,
) -> TwohopStatus {
    if out.is_null() || present.is_null() {
        return fail(
            TwohopStatus::NullPointer,
            "out and present must be non-null",
        );
    }
    guarded(|| match noisy_interference_capacity(a, p1) {
        Ok(v) => {
            *present = v.is_some();
            if let Some(v) = v {
                *out = v;
            }
            TwohopStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// `P1 = P2` range where out-of-phase relaying beats each hop's capacity.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn twohop_crossover_window(a: f64, out: *mut TwohopWindow) -> TwohopStatus {
    if out.is_null() {
        return fail(TwohopStatus::NullPointer, "out is null");
    }
    guarded(|| match crossover_window(a) {
        Ok(w) => {
            *out = TwohopWindow {
                lower: w.lower,
                upper: w.upper,
                nonempty: w.nonempty,
            };
            TwohopStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

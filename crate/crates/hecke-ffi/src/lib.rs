//! C interface: class numbers, L-values, Hardy Z and zero scans behind
//! opaque handles. Every call returns a `HeckeStatus`; on failure the
//! message is available from `hecke_last_error` on the same thread.

use hecke::arith::{ArithError, FieldParams};
use hecke::lfun::{HeckeLSeries, LfunError};
use hecke::quadforms::{class_number, enumerate_class_group};
use hecke::zeros::{scan_zeros, ZeroError, ZeroSet};
use num_complex::Complex64;
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeckeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidModulus = 2,
    NoSuchCharacter = 3,
    OutOfDomain = 4,
    BufferTooSmall = 5,
    Computation = 6,
    Panic = 7,
}

/// L-series of one class group character with its coefficient cache.
pub struct HeckeSeries(HeckeLSeries);

/// Zeros found on a segment of the critical line.
pub struct HeckeZeros(ZeroSet);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: HeckeStatus, msg: impl ToString) -> HeckeStatus {
    set_error(&msg.to_string());
    status
}

fn arith_status(e: &ArithError) -> HeckeStatus {
    match e {
        ArithError::InvalidModulus(_) => HeckeStatus::InvalidModulus,
        _ => HeckeStatus::OutOfDomain,
    }
}

fn lfun_status(e: &LfunError) -> HeckeStatus {
    match e {
        LfunError::Arith(a) => arith_status(a),
        LfunError::NoSuchCharacter { .. } => HeckeStatus::NoSuchCharacter,
        LfunError::OutsideStrip(_) | LfunError::Pole(_) | LfunError::BadTestExponent(_) => HeckeStatus::OutOfDomain,
        _ => HeckeStatus::Computation,
    }
}

fn zero_status(e: &ZeroError) -> HeckeStatus {
    match e {
        ZeroError::Lfun(l) => lfun_status(l),
        ZeroError::BadRange { .. } => HeckeStatus::OutOfDomain,
        _ => HeckeStatus::Computation,
    }
}

/// Runs `f`, turning a panic into `HeckeStatus::Panic`.
fn guarded(f: impl FnOnce() -> HeckeStatus) -> HeckeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(HeckeStatus::Panic, "internal panic"),
    }
}

/// Message of the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hecke_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Class number h(-q).
///
/// # Safety
/// `out_h` must be null or point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn hecke_class_number(q: u64, out_h: *mut usize) -> HeckeStatus {
    guarded(|| {
        if out_h.is_null() {
            return fail(HeckeStatus::NullPointer, "out_h is null");
        }
        if let Err(e) = FieldParams::new(q) {
            return fail(arith_status(&e), e);
        }
        *out_h = class_number(q);
        HeckeStatus::Ok
    })
}

/// Writes the class group as NUL-terminated JSON into `buf`. `out_len`
/// receives the length without the terminator; with `BufferTooSmall` the
/// caller retries with at least `out_len + 1` bytes.
///
/// # Safety
/// `buf` must hold `cap` writable bytes (or be null with `cap == 0`);
/// `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hecke_class_group_json(
    q: u64,
    buf: *mut c_char,
    cap: usize,
    out_len: *mut usize,
) -> HeckeStatus {
    guarded(|| {
        if out_len.is_null() || (buf.is_null() && cap > 0) {
            return fail(HeckeStatus::NullPointer, "buffer or length pointer is null");
        }
        let params = match FieldParams::new(q) {
            Ok(p) => p,
            Err(e) => return fail(arith_status(&e), e),
        };
        let json = enumerate_class_group(&params).to_json();
        *out_len = json.len();
        if json.len() + 1 > cap {
            return fail(HeckeStatus::BufferTooSmall, format!("need {} bytes", json.len() + 1));
        }
        ptr::copy_nonoverlapping(json.as_ptr().cast::<c_char>(), buf, json.len());
        *buf.add(json.len()) = 0;
        HeckeStatus::Ok
    })
}

/// Builds the series for character `char_index` of Q(sqrt(-q)) with enough
/// coefficients for |Im s| <= t_max. Release with `hecke_series_free`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn hecke_series_new(
    q: u64,
    char_index: usize,
    t_max: f64,
    out: *mut *mut HeckeSeries,
) -> HeckeStatus {
    guarded(|| {
        if out.is_null() {
            return fail(HeckeStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        if !(t_max.is_finite() && t_max >= 0.0) {
            return fail(HeckeStatus::OutOfDomain, "t_max must be finite and non-negative");
        }
        match HeckeLSeries::for_character(q, char_index, t_max) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(HeckeSeries(s)));
                HeckeStatus::Ok
            }
            Err(e) => fail(lfun_status(&e), e),
        }
    })
}

/// # Safety
/// `series` must be null or come from `hecke_series_new`, freed once.
#[no_mangle]
pub unsafe extern "C" fn hecke_series_free(series: *mut HeckeSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// lambda(n) for 1 <= n <= the cache length.
///
/// # Safety
/// `series` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hecke_series_lambda(series: *const HeckeSeries, n: usize, out: *mut f64) -> HeckeStatus {
    guarded(|| {
        let (Some(s), false) = (series.as_ref(), out.is_null()) else {
            return fail(HeckeStatus::NullPointer, "null argument");
        };
        if n == 0 || n > s.0.n_max() {
            return fail(HeckeStatus::OutOfDomain, format!("n = {n} outside 1..={}", s.0.n_max()));
        }
        *out = s.0.lambda(n);
        HeckeStatus::Ok
    })
}

/// L(s) for 0 < Re s < 1 with its error estimate.
///
/// # Safety
/// `series` must be a live handle; output pointers writable (`out_err` may be null).
#[no_mangle]
pub unsafe extern "C" fn hecke_series_l_value(
    series: *const HeckeSeries,
    s_re: f64,
    s_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
    out_err: *mut f64,
) -> HeckeStatus {
    guarded(|| {
        let Some(s) = series.as_ref() else {
            return fail(HeckeStatus::NullPointer, "series is null");
        };
        if out_re.is_null() || out_im.is_null() {
            return fail(HeckeStatus::NullPointer, "output pointer is null");
        }
        match s.0.l_value(Complex64::new(s_re, s_im)) {
            Ok(r) => {
                *out_re = r.value.re;
                *out_im = r.value.im;
                if !out_err.is_null() {
                    *out_err = r.est_error;
                }
                HeckeStatus::Ok
            }
            Err(e) => fail(lfun_status(&e), e),
        }
    })
}

/// Hardy Z(t), real on the critical line.
///
/// # Safety
/// `series` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hecke_series_hardy_z(series: *const HeckeSeries, t: f64, out: *mut f64) -> HeckeStatus {
    guarded(|| {
        let (Some(s), false) = (series.as_ref(), out.is_null()) else {
            return fail(HeckeStatus::NullPointer, "null argument");
        };
        match s.0.hardy_z(t) {
            Ok(z) => {
                *out = z;
                HeckeStatus::Ok
            }
            Err(e) => fail(lfun_status(&e), e),
        }
    })
}

/// Scans [t_min, t_max] for zeros. Release with `hecke_zeros_free`.
///
/// # Safety
/// `series` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hecke_zeros_scan(
    series: *const HeckeSeries,
    t_min: f64,
    t_max: f64,
    out: *mut *mut HeckeZeros,
) -> HeckeStatus {
    guarded(|| {
        let (Some(s), false) = (series.as_ref(), out.is_null()) else {
            return fail(HeckeStatus::NullPointer, "null argument");
        };
        *out = ptr::null_mut();
        match scan_zeros(&s.0, t_min, t_max) {
            Ok(z) => {
                *out = Box::into_raw(Box::new(HeckeZeros(z)));
                HeckeStatus::Ok
            }
            Err(e) => fail(zero_status(&e), e),
        }
    })
}

/// Number of zeros in the set; 0 for a null handle.
///
/// # Safety
/// `zeros` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hecke_zeros_len(zeros: *const HeckeZeros) -> usize {
    zeros.as_ref().map_or(0, |z| z.0.len())
}

/// Ordinate of zero `i` (ascending order) and whether it was flagged as a
/// possible multiple zero.
///
/// # Safety
/// `zeros` must be a live handle, `out_t` writable, `out_flagged` null or writable.
#[no_mangle]
pub unsafe extern "C" fn hecke_zeros_get(
    zeros: *const HeckeZeros,
    i: usize,
    out_t: *mut f64,
    out_flagged: *mut bool,
) -> HeckeStatus {
    guarded(|| {
        let (Some(z), false) = (zeros.as_ref(), out_t.is_null()) else {
            return fail(HeckeStatus::NullPointer, "null argument");
        };
        let Some(&t) = z.0.zeros.get(i) else {
            return fail(HeckeStatus::OutOfDomain, format!("index {i} outside 0..{}", z.0.len()));
        };
        *out_t = t;
        if !out_flagged.is_null() {
            *out_flagged = z.0.is_flagged(t);
        }
        HeckeStatus::Ok
    })
}

/// Number of panels whose zero count fell short of the expected count.
///
/// # Safety
/// `zeros` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hecke_zeros_deficits(zeros: *const HeckeZeros) -> usize {
    zeros.as_ref().map_or(0, |z| z.0.deficits.len())
}

/// # Safety
/// `zeros` must be null or come from `hecke_zeros_scan`, freed once.
#[no_mangle]
pub unsafe extern "C" fn hecke_zeros_free(zeros: *mut HeckeZeros) {
    if !zeros.is_null() {
        drop(Box::from_raw(zeros));
    }
}

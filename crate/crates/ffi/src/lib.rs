//! C interface to `logderiv`.
//!
//! Every fallible function returns an [`LdStatus`] and writes its result
//! through an out pointer. On failure the message is kept per thread and
//! can be read with [`ld_last_error`]. Strings handed out by this library
//! must be released with [`ld_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use logderiv::arrangement::Arrangement;
use logderiv::logderiv::{free_check, graded_component, is_logarithmic, k_vector, Derivation, FreenessVerdict};
use logderiv::Error;

/// Status codes. Zero is success.
#[repr(i32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Panic = 3,
    ParseError = 10,
    DimensionMismatch = 11,
    ZeroForm = 12,
    DuplicateHyperplane = 13,
    NonEssential = 14,
    NotLogarithmic = 15,
    NotCanonical = 16,
    ZeroPivot = 17,
    IndexOutOfRange = 18,
    DependentBasis = 19,
    NonSquare = 20,
    UnverifiedSolution = 21,
    UnverifiedCriticalPoint = 22,
    LatticeMismatch = 23,
    SizeMismatch = 24,
    ShiftEuler = 25,
    MissingEuler = 26,
}

impl From<&Error> for LdStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. } => LdStatus::ParseError,
            Error::DimensionMismatch { .. } => LdStatus::DimensionMismatch,
            Error::ZeroForm { .. } => LdStatus::ZeroForm,
            Error::DuplicateHyperplane { .. } => LdStatus::DuplicateHyperplane,
            Error::NonEssential { .. } => LdStatus::NonEssential,
            Error::NotLogarithmic { .. } => LdStatus::NotLogarithmic,
            Error::NotCanonical { .. } => LdStatus::NotCanonical,
            Error::ZeroPivot { .. } => LdStatus::ZeroPivot,
            Error::IndexOutOfRange { .. } => LdStatus::IndexOutOfRange,
            Error::DependentBasis => LdStatus::DependentBasis,
            Error::NonSquare { .. } => LdStatus::NonSquare,
            Error::UnverifiedSolution { .. } => LdStatus::UnverifiedSolution,
            Error::UnverifiedCriticalPoint => LdStatus::UnverifiedCriticalPoint,
            Error::LatticeMismatch => LdStatus::LatticeMismatch,
            Error::SizeMismatch { .. } => LdStatus::SizeMismatch,
            Error::ShiftEuler => LdStatus::ShiftEuler,
            Error::MissingEuler => LdStatus::MissingEuler,
        }
    }
}

/// Freeness verdicts reported by [`ld_free_check`].
#[repr(i32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LdFreeness {
    Free = 0,
    NotFree = 1,
    Inconclusive = 2,
}

/// Opaque arrangement handle.
pub struct LdArrangement {
    inner: Arrangement,
}

/// Opaque derivation handle.
pub struct LdDerivation {
    inner: Derivation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Fail(LdStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(LdStatus::from(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            LdStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            LdStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, Fail> {
    if text.is_null() {
        return Err(Fail(LdStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| Fail(LdStatus::InvalidUtf8, e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(LdStatus::NullPointer, format!("null {what}")))
}

fn out_ptr<T>(out: *mut T) -> Result<(), Fail> {
    if out.is_null() {
        Err(Fail(LdStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failure on this thread, or null. Owned by the
/// library and valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ld_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ld_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an arrangement in `.arr` text form.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ld_arrangement_parse(text: *const c_char, out: *mut *mut LdArrangement) -> LdStatus {
    guard(|| {
        out_ptr(out)?;
        let inner = Arrangement::parse(read_str(text)?)?;
        *out = Box::into_raw(Box::new(LdArrangement { inner }));
        Ok(())
    })
}

/// # Safety
/// `a` must come from [`ld_arrangement_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ld_arrangement_free(a: *mut LdArrangement) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Ambient dimension, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ld_arrangement_dim(a: *const LdArrangement) -> usize {
    a.as_ref().map_or(0, |a| a.inner.ell())
}

/// Number of hyperplanes, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ld_arrangement_len(a: *const LdArrangement) -> usize {
    a.as_ref().map_or(0, |a| a.inner.len())
}

/// Parses a derivation, one coordinate polynomial per line, in the
/// variables of `a`.
///
/// # Safety
/// `a` must be a live handle, `text` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ld_derivation_parse(
    a: *const LdArrangement,
    text: *const c_char,
    out: *mut *mut LdDerivation,
) -> LdStatus {
    guard(|| {
        out_ptr(out)?;
        let a = deref(a, "arrangement")?;
        let inner = Derivation::parse(read_str(text)?, a.inner.ell())?;
        *out = Box::into_raw(Box::new(LdDerivation { inner }));
        Ok(())
    })
}

/// # Safety
/// `d` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ld_derivation_free(d: *mut LdDerivation) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Writes the derivation in `.der` text form to `out`.
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ld_derivation_to_string(d: *const LdDerivation, out: *mut *mut c_char) -> LdStatus {
    guard(|| {
        out_ptr(out)?;
        *out = to_c_string(deref(d, "derivation")?.inner.to_der_string());
        Ok(())
    })
}

/// Sets `out` to 1 when every `alpha_i` divides `theta(alpha_i)`, else 0.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ld_is_logarithmic(
    a: *const LdArrangement,
    d: *const LdDerivation,
    out: *mut i32,
) -> LdStatus {
    guard(|| {
        out_ptr(out)?;
        let (a, d) = (deref(a, "arrangement")?, deref(d, "derivation")?);
        if a.inner.ell() != d.inner.ell() {
            return Err(Error::DimensionMismatch {
                expected: a.inner.ell(),
                found: d.inner.ell(),
            }
            .into());
        }
        *out = is_logarithmic(&a.inner, &d.inner) as i32;
        Ok(())
    })
}

/// Writes the quotients `k_i = theta(alpha_i) / alpha_i`, one per line.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ld_k_vector(
    a: *const LdArrangement,
    d: *const LdDerivation,
    out: *mut *mut c_char,
) -> LdStatus {
    guard(|| {
        out_ptr(out)?;
        let k = k_vector(&deref(a, "arrangement")?.inner, &deref(d, "derivation")?.inner)?;
        let lines: Vec<String> = k.entries.iter().map(ToString::to_string).collect();
        *out = to_c_string(lines.join("\n"));
        Ok(())
    })
}

/// Dimension of the degree-`degree` homogeneous part of `D(A)`.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ld_graded_dim(a: *const LdArrangement, degree: u32, out: *mut usize) -> LdStatus {
    guard(|| {
        out_ptr(out)?;
        *out = graded_component(&deref(a, "arrangement")?.inner, degree).dim();
        Ok(())
    })
}

/// Degree-bounded freeness check. On a `Free` verdict the exponents are
/// written to `exponents` (capacity `capacity`, which must be at least the
/// dimension) and their count to `count`; otherwise `count` is 0.
///
/// # Safety
/// `a` must be a live handle; `verdict` and `count` writable; `exponents`
/// writable for `capacity` entries or null when `capacity` is 0.
#[no_mangle]
pub unsafe extern "C" fn ld_free_check(
    a: *const LdArrangement,
    max_degree: u32,
    verdict: *mut LdFreeness,
    exponents: *mut u32,
    capacity: usize,
    count: *mut usize,
) -> LdStatus {
    guard(|| {
        out_ptr(verdict)?;
        out_ptr(count)?;
        let a = deref(a, "arrangement")?;
        *count = 0;
        match free_check(&a.inner, max_degree).verdict {
            FreenessVerdict::Free { exponents: exps, .. } => {
                if exps.len() > capacity || exponents.is_null() {
                    return Err(Fail(
                        LdStatus::DimensionMismatch,
                        format!("exponent buffer holds {capacity}, need {}", exps.len()),
                    ));
                }
                for (i, e) in exps.iter().enumerate() {
                    *exponents.add(i) = *e;
                }
                *count = exps.len();
                *verdict = LdFreeness::Free;
            }
            FreenessVerdict::NotFree { .. } => *verdict = LdFreeness::NotFree,
            FreenessVerdict::Inconclusive { .. } => *verdict = LdFreeness::Inconclusive,
        }
        Ok(())
    })
}

//! C interface. Spectra are returned as opaque handles that the caller frees
//! with `spectra_spectrum_free`. Every call returns a `SpectraStatus`; on
//! failure `spectra_last_error` describes the most recent error on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use spectra_core::analysis::hausdorff;
use spectra_core::cli::{exit_code, write_spectrum_csv};
use spectra_core::operators::{OperatorKind, OperatorParams, RationalAlpha, ThetaScope};
use spectra_core::spectra::{compute_spectrum, GridSpec, SpectrumKind, SpectrumSet};
use spectra_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectraStatus {
    Ok = 0,
    NullPointer = 1,
    Usage = 2,
    Numerical = 3,
    Io = 4,
    Panic = 5,
    BufferTooSmall = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectraKind {
    H = 0,
    Uh = 1,
    Ukh = 2,
    Uordkr = 3,
}

fn operator_kind(k: u32) -> spectra_core::Result<OperatorKind> {
    Ok(match k {
        k if k == SpectraKind::H as u32 => OperatorKind::H,
        k if k == SpectraKind::Uh as u32 => OperatorKind::UH,
        k if k == SpectraKind::Ukh as u32 => OperatorKind::UKH,
        k if k == SpectraKind::Uordkr as u32 => OperatorKind::UORDKR,
        _ => return Err(Error::InvalidParams(format!("unknown operator kind {k}"))),
    })
}

/// Inputs to `spectra_compute`. With `mother` set, `theta` is ignored and
/// the spectrum is the union over theta. `kind` holds a `SpectraKind` value.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SpectraParams {
    pub kind: u32,
    pub kappa: f64,
    pub lambda: f64,
    pub p: u64,
    pub q: u64,
    pub mother: bool,
    pub theta: f64,
    pub n_x: usize,
    pub n_theta: usize,
}

/// Opaque spectrum handle.
pub struct SpectraSpectrum {
    inner: SpectrumSet,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(e: Error) -> SpectraStatus {
    let status = match exit_code(&e) {
        2 => SpectraStatus::Usage,
        4 => SpectraStatus::Io,
        _ => SpectraStatus::Numerical,
    };
    set_error(e.to_string());
    status
}

fn null(name: &str) -> SpectraStatus {
    set_error(format!("{name} is null"));
    SpectraStatus::NullPointer
}

fn guard(f: impl FnOnce() -> SpectraStatus) -> SpectraStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == SpectraStatus::Ok {
                set_error(String::new());
            }
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            SpectraStatus::Panic
        }
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn spectra_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn spectra_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

fn build(params: &SpectraParams) -> spectra_core::Result<SpectrumSet> {
    let alpha = RationalAlpha::new(params.p, params.q)?;
    let theta = if params.mother {
        ThetaScope::Mother
    } else {
        ThetaScope::Fixed(params.theta)
    };
    let op = OperatorParams::new(
        operator_kind(params.kind)?,
        params.kappa,
        params.lambda,
        alpha,
        theta,
    )?;
    let grid = GridSpec::new(params.n_x, params.n_theta)?;
    compute_spectrum(&op, &grid)
}

/// Computes a spectrum and stores a new handle in `*out`.
///
/// # Safety
/// `params` must point to a valid `SpectraParams` and `out` to writable storage.
#[no_mangle]
pub unsafe extern "C" fn spectra_compute(
    params: *const SpectraParams,
    out: *mut *mut SpectraSpectrum,
) -> SpectraStatus {
    guard(|| {
        if params.is_null() {
            return null("params");
        }
        if out.is_null() {
            return null("out");
        }
        *out = std::ptr::null_mut();
        match build(&*params) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(SpectraSpectrum { inner: s }));
                SpectraStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `s` must come from `spectra_compute` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn spectra_spectrum_free(s: *mut SpectraSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of points in the spectrum.
///
/// # Safety
/// `s` must be a live handle and `len` writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_spectrum_len(
    s: *const SpectraSpectrum,
    len: *mut usize,
) -> SpectraStatus {
    guard(|| {
        if s.is_null() {
            return null("spectrum");
        }
        if len.is_null() {
            return null("len");
        }
        *len = (*s).inner.len();
        SpectraStatus::Ok
    })
}

/// True when the points lie on the unit circle, false for real spectra.
///
/// # Safety
/// `s` must be a live handle and `unitary` writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_spectrum_is_unitary(
    s: *const SpectraSpectrum,
    unitary: *mut bool,
) -> SpectraStatus {
    guard(|| {
        if s.is_null() {
            return null("spectrum");
        }
        if unitary.is_null() {
            return null("unitary");
        }
        *unitary = (*s).inner.kind() == SpectrumKind::UnitCircle;
        SpectraStatus::Ok
    })
}

/// Copies the sorted points into `re` and `im`, each of capacity `cap`.
/// Fails with `BufferTooSmall` when `cap` is less than the length.
///
/// # Safety
/// `re` and `im` must each be valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn spectra_spectrum_points(
    s: *const SpectraSpectrum,
    re: *mut f64,
    im: *mut f64,
    cap: usize,
) -> SpectraStatus {
    guard(|| {
        if s.is_null() {
            return null("spectrum");
        }
        let pts = (*s).inner.points();
        if pts.len() > cap {
            set_error(format!(
                "buffer holds {cap} points, spectrum has {}",
                pts.len()
            ));
            return SpectraStatus::BufferTooSmall;
        }
        if pts.is_empty() {
            return SpectraStatus::Ok;
        }
        if re.is_null() || im.is_null() {
            return null("output buffer");
        }
        let re = std::slice::from_raw_parts_mut(re, pts.len());
        let im = std::slice::from_raw_parts_mut(im, pts.len());
        for (i, z) in pts.iter().enumerate() {
            re[i] = z.re;
            im[i] = z.im;
        }
        SpectraStatus::Ok
    })
}

/// Certified distance between the sampled set and the true spectrum.
///
/// # Safety
/// `s` must be a live handle and `bound` writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_spectrum_error_bound(
    s: *const SpectraSpectrum,
    bound: *mut f64,
) -> SpectraStatus {
    guard(|| {
        if s.is_null() {
            return null("spectrum");
        }
        if bound.is_null() {
            return null("bound");
        }
        *bound = (*s).inner.error_bound();
        SpectraStatus::Ok
    })
}

/// Hausdorff distance between two spectra of the same kind (chordal on the circle).
///
/// # Safety
/// `a` and `b` must be live handles and `dist` writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_hausdorff(
    a: *const SpectraSpectrum,
    b: *const SpectraSpectrum,
    dist: *mut f64,
) -> SpectraStatus {
    guard(|| {
        if a.is_null() || b.is_null() {
            return null("spectrum");
        }
        if dist.is_null() {
            return null("dist");
        }
        match hausdorff(&(*a).inner, &(*b).inner) {
            Ok(d) => {
                *dist = d;
                SpectraStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Writes the spectrum as CSV, atomically.
///
/// # Safety
/// `s` must be a live handle and `path` a NUL-terminated UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn spectra_spectrum_write_csv(
    s: *const SpectraSpectrum,
    path: *const c_char,
) -> SpectraStatus {
    guard(|| {
        if s.is_null() {
            return null("spectrum");
        }
        if path.is_null() {
            return null("path");
        }
        let Ok(path) = CStr::from_ptr(path).to_str() else {
            set_error("path is not valid UTF-8".into());
            return SpectraStatus::Usage;
        };
        match write_spectrum_csv(&(*s).inner, Path::new(path)) {
            Ok(()) => SpectraStatus::Ok,
            Err(e) => fail(e),
        }
    })
}

use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use spectra_ffi::*;

fn params(kind: SpectraKind, p: u64, q: u64) -> SpectraParams {
    SpectraParams {
        kind: kind as u32,
        kappa: 1.0,
        lambda: 1.0,
        p,
        q,
        mother: true,
        theta: 0.0,
        n_x: 4,
        n_theta: 4,
    }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(spectra_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn compute(p: &SpectraParams) -> *mut SpectraSpectrum {
    let mut out = ptr::null_mut();
    let st = unsafe { spectra_compute(p, &mut out) };
    assert_eq!(st, SpectraStatus::Ok, "{}", last_error());
    assert!(!out.is_null());
    out
}

#[test]
fn compute_and_read_points() {
    let s = compute(&params(SpectraKind::Ukh, 2, 5));
    let mut len = 0usize;
    let mut unitary = false;
    let mut bound = -1.0;
    unsafe {
        assert_eq!(spectra_spectrum_len(s, &mut len), SpectraStatus::Ok);
        assert_eq!(
            spectra_spectrum_is_unitary(s, &mut unitary),
            SpectraStatus::Ok
        );
        assert_eq!(
            spectra_spectrum_error_bound(s, &mut bound),
            SpectraStatus::Ok
        );
    }
    assert!(len > 0 && len <= 5 * 16);
    assert!(unitary);
    assert!(bound > 0.0);
    assert_eq!(last_error(), "");

    let mut re = vec![0.0; len];
    let mut im = vec![0.0; len];
    let st = unsafe { spectra_spectrum_points(s, re.as_mut_ptr(), im.as_mut_ptr(), len - 1) };
    assert_eq!(st, SpectraStatus::BufferTooSmall);
    assert!(last_error().contains("buffer"));
    let st = unsafe { spectra_spectrum_points(s, re.as_mut_ptr(), im.as_mut_ptr(), len) };
    assert_eq!(st, SpectraStatus::Ok);
    for (x, y) in re.iter().zip(&im) {
        assert!((x.hypot(*y) - 1.0).abs() < 1e-10);
    }
    unsafe { spectra_spectrum_free(s) };
}

#[test]
fn hermitian_spectrum_is_real() {
    let mut p = params(SpectraKind::H, 1, 2);
    p.mother = false;
    p.n_theta = 1;
    let s = compute(&p);
    let mut len = 0;
    let mut unitary = true;
    unsafe {
        spectra_spectrum_len(s, &mut len);
        spectra_spectrum_is_unitary(s, &mut unitary);
    }
    assert!(!unitary);
    let mut re = vec![0.0; len];
    let mut im = vec![1.0; len];
    assert_eq!(
        unsafe { spectra_spectrum_points(s, re.as_mut_ptr(), im.as_mut_ptr(), len) },
        SpectraStatus::Ok
    );
    assert!(im.iter().all(|&v| v == 0.0));
    // the q = 2 block at lambda = 1 has eigenvalues +-2 sqrt(cos^2 a + cos^2 b)
    assert!(re.iter().all(|v| v.abs() <= 2.0 * 2f64.sqrt() + 1e-12));
    unsafe { spectra_spectrum_free(s) };
}

#[test]
fn hausdorff_of_mother_kicked_harper_and_double_kicked_rotor() {
    let mut a = params(SpectraKind::Ukh, 8, 13);
    let mut b = params(SpectraKind::Uordkr, 8, 13);
    a.n_x = 10;
    a.n_theta = 10;
    b.n_x = 10;
    b.n_theta = 10;
    let (sa, sb) = (compute(&a), compute(&b));
    let (mut d, mut ea, mut eb) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(spectra_hausdorff(sa, sb, &mut d), SpectraStatus::Ok);
        spectra_spectrum_error_bound(sa, &mut ea);
        spectra_spectrum_error_bound(sb, &mut eb);
    }
    assert!(d <= ea + eb, "{d} > {}", ea + eb);

    let h = compute(&params(SpectraKind::H, 8, 13));
    assert_eq!(
        unsafe { spectra_hausdorff(sa, h, &mut d) },
        SpectraStatus::Usage
    );
    unsafe {
        spectra_spectrum_free(sa);
        spectra_spectrum_free(sb);
        spectra_spectrum_free(h);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let mut out = ptr::null_mut();
    let st = unsafe { spectra_compute(&params(SpectraKind::Ukh, 4, 6), &mut out) };
    assert_eq!(st, SpectraStatus::Usage);
    assert!(out.is_null());
    assert!(last_error().contains("4/6"));

    let mut bad = params(SpectraKind::Ukh, 1, 3);
    bad.kind = 17;
    assert_eq!(
        unsafe { spectra_compute(&bad, &mut out) },
        SpectraStatus::Usage
    );
    bad = params(SpectraKind::Ukh, 1, 3);
    bad.kappa = f64::NAN;
    assert_eq!(
        unsafe { spectra_compute(&bad, &mut out) },
        SpectraStatus::Usage
    );
    bad = params(SpectraKind::Ukh, 1, 3);
    bad.n_x = 0;
    assert_eq!(
        unsafe { spectra_compute(&bad, &mut out) },
        SpectraStatus::Usage
    );

    assert_eq!(
        unsafe { spectra_compute(ptr::null(), &mut out) },
        SpectraStatus::NullPointer
    );
    let p = params(SpectraKind::Ukh, 1, 3);
    assert_eq!(
        unsafe { spectra_compute(&p, ptr::null_mut()) },
        SpectraStatus::NullPointer
    );
    let mut len = 0;
    assert_eq!(
        unsafe { spectra_spectrum_len(ptr::null(), &mut len) },
        SpectraStatus::NullPointer
    );
    unsafe { spectra_spectrum_free(ptr::null_mut()) };
}

#[test]
fn write_csv_reports_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let s = compute(&params(SpectraKind::Uh, 1, 3));
    let good = CString::new(dir.path().join("s.csv").to_str().unwrap()).unwrap();
    assert_eq!(
        unsafe { spectra_spectrum_write_csv(s, good.as_ptr()) },
        SpectraStatus::Ok
    );
    let text = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert!(text.contains("# kind=uh"));
    let bad = CString::new(dir.path().join("no/such/dir.csv").to_str().unwrap()).unwrap();
    assert_eq!(
        unsafe { spectra_spectrum_write_csv(s, bad.as_ptr()) },
        SpectraStatus::Io
    );
    assert!(!last_error().is_empty());
    unsafe { spectra_spectrum_free(s) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(spectra_version()) }
        .to_str()
        .unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/spectra.h"))
            .unwrap();
    for name in [
        "spectra_last_error",
        "spectra_version",
        "spectra_compute",
        "spectra_spectrum_free",
        "spectra_spectrum_len",
        "spectra_spectrum_is_unitary",
        "spectra_spectrum_points",
        "spectra_spectrum_error_bound",
        "spectra_hausdorff",
        "spectra_spectrum_write_csv",
        "typedef struct SpectraSpectrum SpectraSpectrum;",
        "SPECTRA_KIND_UORDKR = 3",
        "SPECTRA_STATUS_IO = 4",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <math.h>
#include "spectra.h"

int main(void) {
    SpectraParams p = {SPECTRA_KIND_UKH, 1.0, 1.0, 1, 3, true, 0.0, 5, 5};
    SpectraSpectrum *s = NULL;
    if (spectra_compute(&p, &s) != SPECTRA_STATUS_OK) return 10;
    size_t n = 0;
    if (spectra_spectrum_len(s, &n) != SPECTRA_STATUS_OK || n == 0) return 11;
    double re[256], im[256];
    if (n > 256 || spectra_spectrum_points(s, re, im, 256) != SPECTRA_STATUS_OK) return 12;
    for (size_t i = 0; i < n; i++)
        if (fabs(hypot(re[i], im[i]) - 1.0) > 1e-10) return 13;
    spectra_spectrum_free(s);

    p.p = 2; p.q = 4;
    if (spectra_compute(&p, &s) != SPECTRA_STATUS_USAGE || s != NULL) return 14;
    if (spectra_last_error()[0] == '\0') return 15;
    printf("%zu\n", n);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let lib = target_dir().join("libspectra_ffi.a");
    if !lib.exists() {
        panic!("static library not built at {}", lib.display());
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let out = Command::new(cc)
        .args(["-std=c11", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl"])
        .output()
        .expect("run C compiler");
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let run = Command::new(&exe).output().unwrap();
    assert_eq!(
        run.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let n: usize = String::from_utf8(run.stdout)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!(n > 0);
}

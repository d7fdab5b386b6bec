//! Spectrum CSV, ring SVG and JSON writers, all written atomically.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::principal_arg;
use crate::operators::{OperatorKind, OperatorParams, RationalAlpha, ThetaScope};
use crate::spectra::{GridSpec, SpectrumKind, SpectrumSet};

/// Bumped whenever the numerical pipeline changes what a cached file holds.
pub const ARTIFACT_VERSION: &str = "1";

/// Writes `bytes` to a temporary file next to `path`, then renames it over
/// `path`, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// At least 17 significant digits, locale independent. Values in [0.1, 1e16)
/// use fixed notation with 17 decimals below 10, zero prints as `0`, and
/// everything else uses an exponent.
pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (0.1..1e16).contains(&a) {
        let extra = if a >= 10.0 {
            a.log10().floor() as usize
        } else {
            0
        };
        let decimals = 17usize.saturating_sub(extra).max(1);
        format!("{v:.decimals$}")
    } else {
        format!("{v:.16e}")
    }
}

fn header_lines(s: &SpectrumSet) -> Vec<(String, String)> {
    let p = s.params();
    let (scope, theta) = match p.theta {
        ThetaScope::Mother => ("mother".to_string(), String::new()),
        ThetaScope::Fixed(t) => ("fixed".to_string(), fmt_f64(t)),
    };
    let mut h = vec![
        ("kind".to_string(), p.kind.to_string()),
        ("kappa".to_string(), fmt_f64(p.kappa)),
        ("lambda".to_string(), fmt_f64(p.lambda)),
        ("alpha".to_string(), p.alpha.to_string()),
        ("theta_scope".to_string(), scope),
    ];
    if !theta.is_empty() {
        h.push(("theta".to_string(), theta));
    }
    h.extend([
        ("n_x".to_string(), s.grid().n_x.to_string()),
        ("n_theta".to_string(), s.grid().n_theta.to_string()),
        (
            "spectrum".to_string(),
            match s.kind() {
                SpectrumKind::RealLine => "real_line".to_string(),
                SpectrumKind::UnitCircle => "unit_circle".to_string(),
            },
        ),
        ("points".to_string(), s.len().to_string()),
        ("error_bound".to_string(), fmt_f64(s.error_bound())),
        ("version".to_string(), ARTIFACT_VERSION.to_string()),
    ]);
    h
}

pub fn spectrum_csv(s: &SpectrumSet) -> String {
    let mut out = String::new();
    for (k, v) in header_lines(s) {
        let _ = writeln!(out, "# {k}={v}");
    }
    match s.kind() {
        SpectrumKind::RealLine => {
            out.push_str("value\n");
            for z in s.points() {
                let _ = writeln!(out, "{}", fmt_f64(z.re));
            }
        }
        SpectrumKind::UnitCircle => {
            out.push_str("re,im,eigenphase\n");
            for &z in s.points() {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    fmt_f64(z.re),
                    fmt_f64(z.im),
                    fmt_f64(principal_arg(z))
                );
            }
        }
    }
    out
}

pub fn write_spectrum_csv(s: &SpectrumSet, path: &Path) -> Result<()> {
    write_atomic(path, spectrum_csv(s).as_bytes())
}

pub fn read_spectrum_csv(path: &Path) -> Result<SpectrumSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_spectrum_csv(&text).map_err(|reason| Error::Malformed {
        path: path.display().to_string(),
        reason,
    })
}

pub fn parse_spectrum_csv(text: &str) -> std::result::Result<SpectrumSet, String> {
    let mut meta = BTreeMap::new();
    let mut points = Vec::new();
    let mut seen_columns = false;
    for (lineno, line) in text.lines().enumerate() {
        if let Some(rest) = line.strip_prefix("# ") {
            let (k, v) = rest
                .split_once('=')
                .ok_or(format!("line {}: bad header", lineno + 1))?;
            meta.insert(k.to_string(), v.to_string());
            continue;
        }
        if !seen_columns {
            seen_columns = true;
            if line == "value" || line == "re,im,eigenphase" {
                continue;
            }
            return Err(format!("line {}: missing column header", lineno + 1));
        }
        let fields: Vec<&str> = line.split(',').collect();
        let num = |t: &str| {
            t.parse::<f64>()
                .map_err(|_| format!("line {}: bad number `{t}`", lineno + 1))
        };
        let z = match fields.as_slice() {
            [v] => Complex64::new(num(v)?, 0.0),
            [re, im, _] => Complex64::new(num(re)?, num(im)?),
            _ => return Err(format!("line {}: wrong field count", lineno + 1)),
        };
        points.push(z);
    }
    let get = |k: &str| meta.get(k).ok_or(format!("missing header `{k}`"));
    let parse_f = |k: &str| -> std::result::Result<f64, String> {
        get(k)?
            .parse::<f64>()
            .map_err(|_| format!("bad header `{k}`"))
    };
    let parse_u = |k: &str| -> std::result::Result<usize, String> {
        get(k)?
            .parse::<usize>()
            .map_err(|_| format!("bad header `{k}`"))
    };
    if get("version")? != ARTIFACT_VERSION {
        return Err("artifact version mismatch".into());
    }
    let kind: OperatorKind = get("kind")?.parse().map_err(|e: Error| e.to_string())?;
    let alpha: RationalAlpha = get("alpha")?.parse().map_err(|e: Error| e.to_string())?;
    let theta = match get("theta_scope")?.as_str() {
        "mother" => ThetaScope::Mother,
        "fixed" => ThetaScope::Fixed(parse_f("theta")?),
        other => return Err(format!("bad theta scope `{other}`")),
    };
    let params = OperatorParams::new(kind, parse_f("kappa")?, parse_f("lambda")?, alpha, theta)
        .map_err(|e| e.to_string())?;
    let grid = GridSpec::new(parse_u("n_x")?, parse_u("n_theta")?).map_err(|e| e.to_string())?;
    if parse_u("points")? != points.len() {
        return Err("point count does not match header".into());
    }
    SpectrumSet::from_sorted_points(params, grid, points, parse_f("error_bound")?)
        .map_err(|e| e.to_string())
}

/// Concentric rings, one per spectrum, radius growing with list position.
/// Points are snapped to a 0.01 px lattice and deduplicated, which keeps
/// dense spectra small and makes the output bytes deterministic.
pub fn rings_svg(spectra: &[SpectrumSet]) -> Result<String> {
    if spectra.is_empty() {
        return Err(Error::InvalidArgument("no spectra to plot".into()));
    }
    if spectra.iter().any(|s| s.kind() != SpectrumKind::UnitCircle) {
        return Err(Error::KindMismatch);
    }
    let alpha = spectra[0].params().alpha;
    if spectra.iter().any(|s| s.params().alpha != alpha) {
        return Err(Error::InvalidArgument(
            "all rings must share one alpha".into(),
        ));
    }
    let size = 800.0;
    let c = size / 2.0;
    let outer = 360.0;
    let n = spectra.len() as f64;
    let step = outer / (n + 1.0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    let _ = writeln!(
        out,
        r#"<line x1="{}" y1="{c}" x2="{}" y2="{c}" stroke="gray" stroke-width="1"/>"#,
        c - outer - 20.0,
        c + outer + 20.0
    );
    let _ = writeln!(
        out,
        r#"<line x1="{c}" y1="{}" x2="{c}" y2="{}" stroke="gray" stroke-width="1"/>"#,
        c - outer - 20.0,
        c + outer + 20.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="14">Re</text>"#,
        c + outer + 4.0,
        c - 6.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="14">Im</text>"#,
        c + 6.0,
        c - outer - 6.0
    );
    let _ = writeln!(
        out,
        r#"<text x="10" y="20" font-size="14">alpha = {alpha}</text>"#
    );
    for (i, s) in spectra.iter().enumerate() {
        let r = step * (i as f64 + 1.0);
        let _ = writeln!(
            out,
            r#"<g fill="black"><title>kappa = {}, lambda = {}</title>"#,
            fmt_f64(s.params().kappa),
            fmt_f64(s.params().lambda)
        );
        let mut pix: Vec<(i64, i64)> = s
            .points()
            .iter()
            .map(|&z| {
                let t = principal_arg(z);
                let x = c + r * t.cos();
                let y = c - r * t.sin();
                ((x * 100.0).round() as i64, (y * 100.0).round() as i64)
            })
            .collect();
        pix.sort_unstable();
        pix.dedup();
        for (x, y) in pix {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="1.2"/>"#,
                x as f64 / 100.0,
                y as f64 / 100.0
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn write_rings_svg(spectra: &[SpectrumSet], path: &Path) -> Result<()> {
    let svg = rings_svg(spectra)?;
    write_atomic(path, svg.as_bytes())
}

/// JSON document with the parameters, bound and points of a spectrum.
pub fn spectrum_json(s: &SpectrumSet) -> Result<String> {
    let meta: serde_json::Map<String, serde_json::Value> = header_lines(s)
        .into_iter()
        .map(|(k, v)| (k, serde_json::Value::String(v)))
        .collect();
    let points: Vec<[f64; 2]> = s.points().iter().map(|z| [z.re, z.im]).collect();
    let doc = serde_json::json!({
        "meta": meta,
        "params": s.params(),
        "grid": s.grid(),
        "error_bound": s.error_bound(),
        "points": points,
    });
    serde_json::to_string_pretty(&doc).map_err(|e| Error::InvalidArgument(e.to_string()))
}

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::principal_arg;
use crate::spectra::{SpectrumKind, SpectrumSet};
use std::f64::consts::TAU;

/// Distance used between two points of a unit-circle spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CircleMetric {
    /// |z - w| in the complex plane.
    #[default]
    Chordal,
    /// Shortest eigenphase arc, in radians.
    Arc,
}

/// Hausdorff distance with the chordal metric (absolute difference on the real line).
pub fn hausdorff(x: &SpectrumSet, y: &SpectrumSet) -> Result<f64> {
    hausdorff_with(x, y, CircleMetric::Chordal)
}

pub fn hausdorff_with(x: &SpectrumSet, y: &SpectrumSet, metric: CircleMetric) -> Result<f64> {
    if x.kind() != y.kind() {
        return Err(Error::KindMismatch);
    }
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    Ok(match x.kind() {
        SpectrumKind::RealLine => {
            let (a, b) = (x.real_values(), y.real_values());
            directed_line(&a, &b).max(directed_line(&b, &a))
        }
        SpectrumKind::UnitCircle => {
            let a = phases(x.points());
            let b = phases(y.points());
            let arc = directed_circle(&a, &b).max(directed_circle(&b, &a));
            match metric {
                CircleMetric::Arc => arc,
                CircleMetric::Chordal => 2.0 * (arc / 2.0).sin(),
            }
        }
    })
}

/// Hausdorff distance between two finite sets of reals (sorted or not).
pub fn hausdorff_real(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    Ok(directed_line(&a, &b).max(directed_line(&b, &a)))
}

/// Chordal Hausdorff distance between two finite sets of unit-modulus points.
pub fn hausdorff_circle(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let (a, b) = (phases(a), phases(b));
    let arc = directed_circle(&a, &b).max(directed_circle(&b, &a));
    Ok(2.0 * (arc / 2.0).sin())
}

fn phases(points: &[Complex64]) -> Vec<f64> {
    let mut v: Vec<f64> = points.iter().map(|&z| principal_arg(z)).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// max over a of the distance to the nearest b; `b` sorted.
fn directed_line(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .map(|&t| {
            let i = b.partition_point(|&v| v < t);
            let mut d = f64::INFINITY;
            if i < b.len() {
                d = d.min(b[i] - t);
            }
            if i > 0 {
                d = d.min(t - b[i - 1]);
            }
            d
        })
        .fold(0.0, f64::max)
}

/// As `directed_line` but for sorted eigenphases, wrapping at ±π.
fn directed_circle(a: &[f64], b: &[f64]) -> f64 {
    let n = b.len();
    a.iter()
        .map(|&t| {
            let i = b.partition_point(|&v| v < t);
            let hi = b[i % n];
            let lo = b[(i + n - 1) % n];
            arc(t, hi).min(arc(t, lo))
        })
        .fold(0.0, f64::max)
}

fn arc(s: f64, t: f64) -> f64 {
    let d = (s - t).rem_euclid(TAU);
    d.min(TAU - d)
}

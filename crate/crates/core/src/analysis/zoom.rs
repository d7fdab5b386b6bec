use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::{BandList, SpectrumKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZoomWindow {
    pub lo: f64,
    pub hi: f64,
    pub points: Vec<f64>,
}

impl ZoomWindow {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Bands of `b` that meet this window.
    pub fn count_bands(&self, b: &BandList) -> usize {
        b.bands
            .iter()
            .filter(|band| match b.kind {
                SpectrumKind::RealLine => band.hi >= self.lo && band.lo <= self.hi,
                SpectrumKind::UnitCircle => (-1..=1).any(|k| {
                    let s = k as f64 * TAU;
                    band.hi + s >= self.lo && band.lo + s <= self.hi
                }),
            })
            .count()
    }
}

/// Median of sorted eigenphases; the default zoom center.
pub fn phase_median(eps: &[f64]) -> Result<f64> {
    if eps.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let n = eps.len();
    Ok(if n % 2 == 1 {
        eps[n / 2]
    } else {
        0.5 * (eps[n / 2 - 1] + eps[n / 2])
    })
}

/// Nested windows: the full circle, then each one narrowed by the next factor
/// around `center`. Points are eigenphases, matched modulo 2π.
pub fn zoom_windows(eps: &[f64], center: f64, factors: &[f64]) -> Result<Vec<ZoomWindow>> {
    if !(center > -PI && center <= PI) {
        return Err(Error::CenterOutOfRange(center));
    }
    if let Some(f) = factors.iter().find(|&&f| !(f > 1.0) || !f.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "zoom factors must exceed 1, got {f}"
        )));
    }
    let mut sorted = eps.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut out = vec![ZoomWindow {
        lo: -PI,
        hi: PI,
        points: sorted.clone(),
    }];
    let mut width = TAU;
    for &f in factors {
        width /= f;
        let (lo, hi) = (center - width / 2.0, center + width / 2.0);
        let mut points: Vec<f64> = sorted
            .iter()
            .filter_map(|&t| {
                (-1..=1)
                    .map(|k| t + k as f64 * TAU)
                    .find(|&s| s >= lo && s <= hi)
            })
            .collect();
        points.sort_by(f64::total_cmp);
        out.push(ZoomWindow { lo, hi, points });
    }
    Ok(out)
}

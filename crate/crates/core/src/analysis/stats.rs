use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::BandList;

/// Sum of band lengths (eigenphase radians on the circle).
pub fn total_bandwidth(b: &BandList) -> f64 {
    b.bands.iter().map(|x| x.length()).sum()
}

/// w ≈ prefactor · q^exponent, fitted by least squares in log-log space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub prefactor: f64,
    pub exponent: f64,
    /// RMS of the log-log residuals.
    pub residual: f64,
    pub n_points: usize,
}

pub fn powerlaw_fit(samples: &[(u64, f64)]) -> Result<PowerLawFit> {
    if samples.len() < 2 {
        return Err(Error::TooFewSamples(samples.len()));
    }
    for &(q, w) in samples {
        if q == 0 || !(w > 0.0) || !w.is_finite() {
            return Err(Error::NonPositiveSample { q, w });
        }
    }
    let xs: Vec<f64> = samples.iter().map(|&(q, _)| (q as f64).ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|&(_, w)| w.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument(
            "power-law fit needs at least two distinct q".into(),
        ));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(PowerLawFit {
        prefactor: intercept.exp(),
        exponent: slope,
        residual: (ss / n).sqrt(),
        n_points: samples.len(),
    })
}

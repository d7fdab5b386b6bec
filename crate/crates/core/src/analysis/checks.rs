//! Executable versions of the spectral theorems, each reduced to one
//! measured quantity compared against one bound.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{OperatorKind, OperatorParams, RationalAlpha, ThetaScope};
use crate::spectra::{branch_bands, grid_error_bound, merge_bands, GridSpec, SpectrumSet, Sweep};

use super::metric::{hausdorff, hausdorff_circle};
use super::stats::total_bandwidth;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckId {
    ThetaPeriod,
    ThetaContinuity,
    MotherEquality,
    SpectralMapping,
    AubryAndre,
    BandCount,
    AlphaContinuity,
    KappaCubed,
    LastMeasureTrend,
}

impl CheckId {
    pub const ALL: [CheckId; 9] = [
        CheckId::ThetaPeriod,
        CheckId::ThetaContinuity,
        CheckId::MotherEquality,
        CheckId::SpectralMapping,
        CheckId::AubryAndre,
        CheckId::BandCount,
        CheckId::AlphaContinuity,
        CheckId::KappaCubed,
        CheckId::LastMeasureTrend,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::ThetaPeriod => "THETA_PERIOD",
            CheckId::ThetaContinuity => "THETA_CONTINUITY",
            CheckId::MotherEquality => "MOTHER_EQUALITY",
            CheckId::SpectralMapping => "SPECTRAL_MAPPING",
            CheckId::AubryAndre => "AUBRY_ANDRE",
            CheckId::BandCount => "BAND_COUNT",
            CheckId::AlphaContinuity => "ALPHA_CONTINUITY",
            CheckId::KappaCubed => "KAPPA_CUBED",
            CheckId::LastMeasureTrend => "LAST_MEASURE_TREND",
        }
    }

    /// Lower-case, dash-separated spelling used on the command line.
    pub fn kebab(self) -> String {
        self.as_str().to_ascii_lowercase().replace('_', "-")
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str() == norm)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// Inputs of a check. Each check reads only the fields it needs; the
/// defaults reproduce the acceptance configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub kind: OperatorKind,
    pub kappa: f64,
    pub lambda: f64,
    pub alphas: Vec<RationalAlpha>,
    pub grid: usize,
    pub trials: usize,
    pub seed: u64,
    pub kappas: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub tolerance: f64,
    pub merge_gap_factor: f64,
    /// Constant c in the θ-continuity allowance c·|κλ|·|sin π(θ₁−θ₂)|.
    pub theta_lipschitz: f64,
}

fn alphas(list: &[(u64, u64)]) -> Vec<RationalAlpha> {
    list.iter()
        .map(|&(p, q)| RationalAlpha::new(p, q).expect("static fractions are reduced"))
        .collect()
}

impl CheckConfig {
    pub fn defaults(id: CheckId) -> Self {
        let base = CheckConfig {
            kind: OperatorKind::UKH,
            kappa: 1.0,
            lambda: 1.0,
            alphas: alphas(&[(8, 13)]),
            grid: 20,
            trials: 50,
            seed: 1,
            kappas: Vec::new(),
            lambdas: Vec::new(),
            tolerance: 0.0,
            merge_gap_factor: 4.0,
            theta_lipschitz: 2.0,
        };
        match id {
            CheckId::ThetaPeriod | CheckId::ThetaContinuity => CheckConfig {
                alphas: alphas(&[(1, 2), (1, 3), (2, 5), (8, 13)]),
                ..base
            },
            CheckId::MotherEquality => CheckConfig {
                kappa: 0.5,
                grid: 40,
                ..base
            },
            CheckId::SpectralMapping => CheckConfig {
                kind: OperatorKind::UH,
                alphas: alphas(&[(1, 2), (8, 13)]),
                tolerance: 1e-10,
                ..base
            },
            CheckId::AubryAndre => CheckConfig {
                kind: OperatorKind::H,
                grid: 40,
                lambdas: vec![0.5, 2.0],
                tolerance: 1e-9,
                ..base
            },
            CheckId::BandCount => CheckConfig {
                kind: OperatorKind::H,
                alphas: alphas(&[(1, 2), (1, 3), (1, 4), (1, 5), (1, 7), (1, 8)]),
                grid: 200,
                ..base
            },
            CheckId::AlphaContinuity => CheckConfig {
                alphas: alphas(&[(89, 144), (144, 233)]),
                grid: 10,
                ..base
            },
            CheckId::KappaCubed => CheckConfig {
                grid: 60,
                kappas: vec![0.025, 0.05, 0.1],
                ..base
            },
            CheckId::LastMeasureTrend => CheckConfig {
                kind: OperatorKind::H,
                alphas: alphas(&[(3, 5), (5, 8), (8, 13), (13, 21), (21, 34)]),
                grid: 40,
                lambdas: vec![0.5, 2.0],
                ..base
            },
        }
    }

    fn first_alpha(&self) -> Result<RationalAlpha> {
        self.alphas
            .first()
            .copied()
            .ok_or_else(|| Error::InvalidParams("check needs at least one alpha".into()))
    }

    fn grid_spec(&self) -> Result<GridSpec> {
        GridSpec::square(self.grid)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: CheckId,
    pub params: CheckConfig,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
    pub notes: String,
}

impl CheckReport {
    fn new(id: CheckId, cfg: &CheckConfig, measured: f64, bound: f64, notes: String) -> Self {
        CheckReport {
            check_id: id,
            params: cfg.clone(),
            measured,
            bound,
            pass: measured <= bound,
            notes,
        }
    }
}

pub fn run_check(id: CheckId, cfg: &CheckConfig) -> Result<CheckReport> {
    match id {
        CheckId::ThetaPeriod => theta_checks(id, cfg, true),
        CheckId::ThetaContinuity => theta_checks(id, cfg, false),
        CheckId::MotherEquality => mother_equality(cfg),
        CheckId::SpectralMapping => spectral_mapping(cfg),
        CheckId::AubryAndre => aubry_andre(cfg),
        CheckId::BandCount => band_count(cfg),
        CheckId::AlphaContinuity => alpha_continuity(cfg),
        CheckId::KappaCubed => kappa_cubed(cfg),
        CheckId::LastMeasureTrend => last_measure_trend(cfg),
    }
}

/// Parses the id and dispatches; unknown ids give `UnknownCheck`.
pub fn run_check_by_name(name: &str, cfg: &CheckConfig) -> Result<CheckReport> {
    run_check(name.parse()?, cfg)
}

fn fixed(
    cfg: &CheckConfig,
    kind: OperatorKind,
    alpha: RationalAlpha,
    theta: f64,
) -> Result<OperatorParams> {
    OperatorParams::new(kind, cfg.kappa, cfg.lambda, alpha, ThetaScope::Fixed(theta))
}

fn mother(
    kind: OperatorKind,
    kappa: f64,
    lambda: f64,
    alpha: RationalAlpha,
) -> Result<OperatorParams> {
    OperatorParams::new(kind, kappa, lambda, alpha, ThetaScope::Mother)
}

fn spectrum(params: &OperatorParams, grid: &GridSpec) -> Result<SpectrumSet> {
    Sweep::run(params, grid)?.to_spectrum()
}

/// Reports the trial with the least slack (largest distance minus allowance).
fn theta_checks(id: CheckId, cfg: &CheckConfig, period: bool) -> Result<CheckReport> {
    let grid = cfg.grid_spec()?;
    if cfg.alphas.is_empty() {
        return Err(Error::InvalidParams(
            "check needs at least one alpha".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let coupling = if cfg.kind == OperatorKind::H {
        cfg.lambda.abs()
    } else {
        (cfg.kappa * cfg.lambda).abs()
    };
    let mut worst: Option<(f64, f64, String)> = None;
    for &alpha in &cfg.alphas {
        for _ in 0..cfg.trials {
            let t1: f64 = rng.gen();
            let t2: f64 = if period {
                t1 + 1.0 / alpha.q() as f64
            } else {
                rng.gen()
            };
            let a = fixed(cfg, cfg.kind, alpha, t1)?;
            let b = fixed(cfg, cfg.kind, alpha, t2)?;
            let d = hausdorff(&spectrum(&a, &grid)?, &spectrum(&b, &grid)?)?;
            let slack = 2.0 * grid_error_bound(&a, &grid);
            let allowed = if period {
                slack
            } else {
                cfg.theta_lipschitz * coupling * (PI * (t1 - t2)).sin().abs() + slack
            };
            if worst.as_ref().is_none_or(|w| d - allowed > w.0 - w.1) {
                worst = Some((
                    d,
                    allowed,
                    format!("alpha={alpha} theta1={t1:.6} theta2={t2:.6}"),
                ));
            }
        }
    }
    let (d, allowed, where_) =
        worst.ok_or_else(|| Error::InvalidParams("check needs at least one trial".into()))?;
    let notes = format!(
        "{} trials per alpha over {} alphas; least slack at {where_}",
        cfg.trials,
        cfg.alphas.len()
    );
    Ok(CheckReport::new(id, cfg, d, allowed, notes))
}

fn mother_equality(cfg: &CheckConfig) -> Result<CheckReport> {
    let grid = cfg.grid_spec()?;
    let mut worst = (f64::NEG_INFINITY, 0.0, String::new());
    for &alpha in &cfg.alphas {
        let kh = mother(OperatorKind::UKH, cfg.kappa, cfg.lambda, alpha)?;
        let ord = mother(OperatorKind::UORDKR, cfg.kappa, cfg.lambda, alpha)?;
        let d = hausdorff(&spectrum(&kh, &grid)?, &spectrum(&ord, &grid)?)?;
        let bound = grid_error_bound(&kh, &grid) + grid_error_bound(&ord, &grid);
        if d - bound > worst.0 - worst.1 {
            worst = (d, bound, format!("alpha={alpha}"));
        }
    }
    if worst.0 == f64::NEG_INFINITY {
        return Err(Error::InvalidParams(
            "check needs at least one alpha".into(),
        ));
    }
    let notes = format!(
        "kicked Harper vs double kicked rotor mother spectra; worst at {}",
        worst.2
    );
    Ok(CheckReport::new(
        CheckId::MotherEquality,
        cfg,
        worst.0,
        worst.1,
        notes,
    ))
}

/// Compares e^{-iκh} for every Harper eigenvalue h with the unitary Harper
/// eigenvalues at the same grid point.
fn spectral_mapping(cfg: &CheckConfig) -> Result<CheckReport> {
    let grid = cfg.grid_spec()?;
    let mut worst: f64 = 0.0;
    for &alpha in &cfg.alphas {
        let h = Sweep::run(&mother(OperatorKind::H, 0.0, cfg.lambda, alpha)?, &grid)?;
        let u = Sweep::run(
            &mother(OperatorKind::UH, cfg.kappa, cfg.lambda, alpha)?,
            &grid,
        )?;
        for (hr, ur) in h.rows().iter().zip(u.rows()) {
            let mapped: Vec<Complex64> = hr
                .iter()
                .map(|e| Complex64::from_polar(1.0, -cfg.kappa * e.re))
                .collect();
            worst = worst.max(hausdorff_circle(&mapped, ur)?);
        }
    }
    let notes = format!(
        "max per-grid-point distance over {} alphas",
        cfg.alphas.len()
    );
    Ok(CheckReport::new(
        CheckId::SpectralMapping,
        cfg,
        worst,
        cfg.tolerance,
        notes,
    ))
}

fn aubry_andre(cfg: &CheckConfig) -> Result<CheckReport> {
    let grid = cfg.grid_spec()?;
    let alpha = cfg.first_alpha()?;
    let mut worst: f64 = 0.0;
    for &lambda in &cfg.lambdas {
        if lambda == 0.0 {
            return Err(Error::InvalidParams(
                "Aubry-Andre duality needs lambda != 0".into(),
            ));
        }
        let a = spectrum(&mother(OperatorKind::H, 0.0, lambda, alpha)?, &grid)?;
        let b = spectrum(&mother(OperatorKind::H, 0.0, 1.0 / lambda, alpha)?, &grid)?
            .map_points(|z| z * lambda)?;
        worst = worst.max(hausdorff(&a, &b)?);
    }
    let notes = format!("alpha={alpha}, lambdas={:?}", cfg.lambdas);
    Ok(CheckReport::new(
        CheckId::AubryAndre,
        cfg,
        worst,
        cfg.tolerance,
        notes,
    ))
}

/// Expected number of bands of the Harper union spectrum at denominator q.
pub fn expected_band_count(q: u64) -> usize {
    if q.is_multiple_of(2) {
        (q - 1) as usize
    } else {
        q as usize
    }
}

/// Counts merged bands at grid N and 2N; measured is the largest miscount.
fn band_count(cfg: &CheckConfig) -> Result<CheckReport> {
    let grid = cfg.grid_spec()?;
    let mut worst = 0usize;
    let mut notes = Vec::new();
    for &alpha in &cfg.alphas {
        let expected = expected_band_count(alpha.q());
        let params = mother(OperatorKind::H, 0.0, cfg.lambda, alpha)?;
        for g in [grid, grid.refined()] {
            let s = spectrum(&params, &g)?;
            let bands = merge_bands(&s, cfg.merge_gap_factor * s.error_bound())?;
            worst = worst.max(bands.len().abs_diff(expected));
            notes.push(format!("{alpha}@{}:{}/{}", g.n_x, bands.len(), expected));
        }
    }
    Ok(CheckReport::new(
        CheckId::BandCount,
        cfg,
        worst as f64,
        0.0,
        notes.join(" "),
    ))
}

fn alpha_continuity(cfg: &CheckConfig) -> Result<CheckReport> {
    let grid = cfg.grid_spec()?;
    let [a1, a2] = cfg.alphas[..] else {
        return Err(Error::InvalidParams(
            "alpha continuity needs exactly two alphas".into(),
        ));
    };
    let p1 = mother(cfg.kind, cfg.kappa, cfg.lambda, a1)?;
    let p2 = mother(cfg.kind, cfg.kappa, cfg.lambda, a2)?;
    let d = hausdorff(&spectrum(&p1, &grid)?, &spectrum(&p2, &grid)?)?;
    let gap = (a1.value() - a2.value()).abs();
    let continuity = 36.0 * (6.0 * PI * (cfg.kappa * cfg.lambda * gap).abs()).sqrt();
    let grid_terms = grid_error_bound(&p1, &grid) + grid_error_bound(&p2, &grid);
    let notes = format!("continuity term {continuity:.6} + grid terms {grid_terms:.6}");
    Ok(CheckReport::new(
        CheckId::AlphaContinuity,
        cfg,
        d,
        continuity + grid_terms,
        notes,
    ))
}

/// D(κ) = d_H(kicked Harper, unitary Harper); cubic decay means D(2κ)/D(κ) ≈ 8.
/// measured = max |log2 ratio − 3|, so the bound 1 is the bracket [4, 16].
fn kappa_cubed(cfg: &CheckConfig) -> Result<CheckReport> {
    let grid = cfg.grid_spec()?;
    let alpha = cfg.first_alpha()?;
    if cfg.kappas.is_empty() {
        return Err(Error::InvalidParams(
            "kappa check needs at least one kappa".into(),
        ));
    }
    let distance = |kappa: f64| -> Result<f64> {
        let kh = spectrum(&mother(OperatorKind::UKH, kappa, cfg.lambda, alpha)?, &grid)?;
        let uh = spectrum(&mother(OperatorKind::UH, kappa, cfg.lambda, alpha)?, &grid)?;
        hausdorff(&kh, &uh)
    };
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for &k in &cfg.kappas {
        let (d1, d2) = (distance(k)?, distance(2.0 * k)?);
        let ratio = d2 / d1;
        let dev = if ratio.is_finite() && ratio > 0.0 {
            (ratio.log2() - 3.0).abs()
        } else {
            f64::INFINITY
        };
        worst = worst.max(dev);
        notes.push(format!(
            "D({k})={d1:.4e} D({})={d2:.4e} ratio={ratio:.4}",
            2.0 * k
        ));
    }
    Ok(CheckReport::new(
        CheckId::KappaCubed,
        cfg,
        worst,
        1.0,
        notes.join("; "),
    ))
}

/// Branch-band width of the Harper union spectrum at λ = 1 must be below the
/// widths at the comparison couplings and shrink along the alpha list.
fn last_measure_trend(cfg: &CheckConfig) -> Result<CheckReport> {
    let grid = cfg.grid_spec()?;
    if cfg.alphas.is_empty() {
        return Err(Error::InvalidParams(
            "check needs at least one alpha".into(),
        ));
    }
    let width = |alpha: RationalAlpha, lambda: f64| -> Result<f64> {
        let sweep = Sweep::run(&mother(OperatorKind::H, 0.0, lambda, alpha)?, &grid)?;
        Ok(total_bandwidth(&branch_bands(&sweep)?))
    };
    let mut violations = 0usize;
    let mut prev: Option<f64> = None;
    let mut notes = Vec::new();
    for &alpha in &cfg.alphas {
        let w1 = width(alpha, 1.0)?;
        let mut row = format!("{alpha}: W(1)={w1:.5}");
        for &l in &cfg.lambdas {
            let wl = width(alpha, l)?;
            if !(w1 < wl) {
                violations += 1;
            }
            row.push_str(&format!(" W({l})={wl:.5}"));
        }
        if let Some(p) = prev {
            if !(w1 < p) {
                violations += 1;
            }
        }
        prev = Some(w1);
        notes.push(row);
    }
    Ok(CheckReport::new(
        CheckId::LastMeasureTrend,
        cfg,
        violations as f64,
        0.0,
        notes.join("; "),
    ))
}

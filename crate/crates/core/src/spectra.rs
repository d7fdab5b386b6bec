//! Grid sweeps over x (and θ for mother spectra), certified grid error
//! bounds, and conversion of sampled point clouds into bands.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cmp_by_arg, principal_arg};
use crate::operators::{MatrixBuilder, OperatorKind, OperatorParams, ThetaScope};

/// Points closer than this (in the ambient metric) are merged into one sample.
pub const DEDUP_TOL: f64 = 1e-12;

/// Uniform grid x_j = j/(n_x q), θ_k = k/(n_theta q) on [0, 1/q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_x: usize,
    pub n_theta: usize,
}

impl GridSpec {
    pub fn new(n_x: usize, n_theta: usize) -> Result<Self> {
        if n_x == 0 || n_theta == 0 {
            return Err(Error::InvalidParams("grid sizes must be at least 1".into()));
        }
        Ok(GridSpec { n_x, n_theta })
    }

    pub fn square(n: usize) -> Result<Self> {
        Self::new(n, n)
    }

    /// The grid with both sizes doubled.
    pub fn refined(&self) -> Self {
        GridSpec {
            n_x: 2 * self.n_x,
            n_theta: 2 * self.n_theta,
        }
    }

    pub fn x_points(&self, q: usize) -> Vec<f64> {
        axis(self.n_x, q)
    }

    pub fn theta_points(&self, q: usize) -> Vec<f64> {
        axis(self.n_theta, q)
    }
}

fn axis(n: usize, q: usize) -> Vec<f64> {
    let denom = (n * q) as f64;
    (0..n).map(|j| j as f64 / denom).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    RealLine,
    UnitCircle,
}

impl SpectrumKind {
    pub fn of(kind: OperatorKind) -> Self {
        if kind.is_unitary() {
            SpectrumKind::UnitCircle
        } else {
            SpectrumKind::RealLine
        }
    }
}

/// Sorted, deduplicated spectral samples with a certified Hausdorff error bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSet {
    kind: SpectrumKind,
    points: Vec<Complex64>,
    params: OperatorParams,
    grid: GridSpec,
    error_bound: f64,
}

impl SpectrumSet {
    /// Assembles a set from raw samples, sorting and deduplicating them.
    pub fn from_samples(
        params: OperatorParams,
        grid: GridSpec,
        samples: Vec<Complex64>,
        error_bound: f64,
    ) -> Result<Self> {
        if !(error_bound >= 0.0) || !error_bound.is_finite() {
            return Err(Error::InvalidParams(
                "error bound must be finite and non-negative".into(),
            ));
        }
        if samples
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let kind = SpectrumKind::of(params.kind);
        let points = normalize_points(kind, samples)?;
        Ok(SpectrumSet {
            kind,
            points,
            params,
            grid,
            error_bound,
        })
    }

    /// Rebuilds a set from points that are already sorted and deduplicated,
    /// keeping them bit for bit. Fails if they violate the set invariants.
    pub fn from_sorted_points(
        params: OperatorParams,
        grid: GridSpec,
        points: Vec<Complex64>,
        error_bound: f64,
    ) -> Result<Self> {
        let kind = SpectrumKind::of(params.kind);
        let bad = |reason: &str| Error::InvalidArgument(format!("stored spectrum {reason}"));
        if !(error_bound >= 0.0) || !error_bound.is_finite() {
            return Err(bad("has an invalid error bound"));
        }
        for z in &points {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite);
            }
            let ok = match kind {
                SpectrumKind::RealLine => z.im == 0.0,
                SpectrumKind::UnitCircle => (z.norm() - 1.0).abs() <= 1e-10,
            };
            if !ok {
                return Err(bad("has a point off its carrier set"));
            }
        }
        let ordered = points.windows(2).all(|w| match kind {
            SpectrumKind::RealLine => w[0].re < w[1].re,
            SpectrumKind::UnitCircle => cmp_by_arg(&w[0], &w[1]) == Ordering::Less,
        });
        if !ordered {
            return Err(bad("is not strictly sorted"));
        }
        Ok(SpectrumSet {
            kind,
            points,
            params,
            grid,
            error_bound,
        })
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    /// Real parts of the points; for a real-line set these are the values.
    pub fn real_values(&self) -> Vec<f64> {
        self.points.iter().map(|z| z.re).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn params(&self) -> &OperatorParams {
        &self.params
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }

    /// The same set with every point mapped through `f` (kind unchanged).
    pub fn map_points(&self, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        let samples = self.points.iter().map(|&z| f(z)).collect();
        Self::from_samples(self.params, self.grid, samples, self.error_bound)
    }
}

fn normalize_points(kind: SpectrumKind, mut pts: Vec<Complex64>) -> Result<Vec<Complex64>> {
    match kind {
        SpectrumKind::RealLine => {
            if pts.iter().any(|z| z.im.abs() > 1e-12) {
                return Err(Error::WrongKind {
                    expected: "real-line",
                });
            }
            for z in &mut pts {
                z.im = 0.0;
            }
            pts.sort_by(|a, b| a.re.total_cmp(&b.re));
        }
        SpectrumKind::UnitCircle => {
            for z in &mut pts {
                let r = z.norm();
                if (r - 1.0).abs() > 1e-10 {
                    return Err(Error::WrongKind {
                        expected: "unit-circle",
                    });
                }
                *z /= r;
            }
            pts.sort_by(cmp_by_arg);
        }
    }
    let mut out: Vec<Complex64> = Vec::with_capacity(pts.len());
    for z in pts {
        match out.last() {
            Some(last) if (z - last).norm() <= DEDUP_TOL => {}
            _ => out.push(z),
        }
    }
    if kind == SpectrumKind::UnitCircle
        && out.len() > 1
        && (out[0] - out[out.len() - 1]).norm() <= DEDUP_TOL
    {
        out.pop();
    }
    Ok(out)
}

/// Certified Hausdorff distance between the sampled and the true spectrum.
///
/// Both x and θ enter with period 1/q, so an anchored grid of n points per
/// axis leaves every parameter within 1/(2nq) of a sample. Multiplying by the
/// Lipschitz constants of the matrix families gives the bounds below.
pub fn grid_error_bound(params: &OperatorParams, grid: &GridSpec) -> f64 {
    let q = params.q() as f64;
    let kappa = params.kappa.abs();
    let lambda = params.lambda.abs();
    let step_x = TAU / (grid.n_x as f64 * q);
    let step_t = TAU / (grid.n_theta as f64 * q);
    let mother = params.theta == ThetaScope::Mother;
    match params.kind {
        OperatorKind::H => step_x + if mother { lambda * step_t } else { 0.0 },
        OperatorKind::UH | OperatorKind::UKH => {
            kappa * (step_x + if mother { lambda * step_t } else { 0.0 })
        }
        OperatorKind::UORDKR => {
            if mother {
                kappa * (step_x + lambda * step_t)
            } else {
                kappa * (1.0 + lambda) * step_x
            }
        }
    }
}

/// Per-grid-point eigenvalues of one sweep, kept row by row.
#[derive(Debug, Clone)]
pub struct Sweep {
    params: OperatorParams,
    grid: GridSpec,
    rows: Vec<Vec<Complex64>>,
}

impl Sweep {
    /// Evaluates every grid point. Fixed θ uses only the x axis; the mother
    /// scope uses the full n_x × n_theta grid with θ varying fastest.
    pub fn run(params: &OperatorParams, grid: &GridSpec) -> Result<Self> {
        let q = params.q();
        let xs = grid.x_points(q);
        let thetas = match params.theta {
            ThetaScope::Fixed(t) => vec![t],
            ThetaScope::Mother => grid.theta_points(q),
        };
        let builder = MatrixBuilder::new(params)?;
        let jobs: Vec<(f64, f64)> = xs
            .iter()
            .flat_map(|&x| thetas.iter().map(move |&t| (x, t)))
            .collect();
        let results: Vec<Result<Vec<Complex64>>> = jobs
            .par_iter()
            .map(|&(x, t)| {
                builder
                    .build(x, t)
                    .and_then(|m| m.eigenvalues())
                    .map_err(|e| e.at_grid_point(x, t))
            })
            .collect();
        let rows = results.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(Sweep {
            params: *params,
            grid: *grid,
            rows,
        })
    }

    pub fn params(&self) -> &OperatorParams {
        &self.params
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.rows
    }

    pub fn error_bound(&self) -> f64 {
        grid_error_bound(&self.params, &self.grid)
    }

    pub fn to_spectrum(&self) -> Result<SpectrumSet> {
        let samples = self.rows.iter().flatten().copied().collect();
        SpectrumSet::from_samples(self.params, self.grid, samples, self.error_bound())
    }
}

/// Union over the x grid of the spectra at the fixed θ in `params`.
pub fn spectrum_fixed_theta(params: &OperatorParams, grid: &GridSpec) -> Result<SpectrumSet> {
    if params.theta == ThetaScope::Mother {
        return Err(Error::InvalidParams(
            "spectrum_fixed_theta needs a fixed theta".into(),
        ));
    }
    Sweep::run(params, grid)?.to_spectrum()
}

/// Union over the (x, θ) grid on [0, 1/q)².
pub fn mother_spectrum(params: &OperatorParams, grid: &GridSpec) -> Result<SpectrumSet> {
    if params.theta != ThetaScope::Mother {
        return Err(Error::InvalidParams(
            "mother_spectrum needs theta = mother".into(),
        ));
    }
    Sweep::run(params, grid)?.to_spectrum()
}

/// Computes whichever scope `params.theta` selects.
pub fn compute_spectrum(params: &OperatorParams, grid: &GridSpec) -> Result<SpectrumSet> {
    Sweep::run(params, grid)?.to_spectrum()
}

/// Principal arguments of a unit-circle set, ascending in (-π, π].
pub fn eigenphases(s: &SpectrumSet) -> Result<Vec<f64>> {
    if s.kind != SpectrumKind::UnitCircle {
        return Err(Error::WrongKind {
            expected: "unit-circle",
        });
    }
    let mut out: Vec<f64> = s.points.iter().map(|&z| principal_arg(z)).collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Closed interval [lo, hi]. On the circle lo is an eigenphase in (-π, π]
/// and hi may exceed π when the arc wraps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
}

impl Band {
    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    /// Whether the band contains `t` (on the circle, any 2π translate of it,
    /// with DEDUP_TOL slack for the rounding of wrapped endpoints).
    pub fn contains(&self, kind: SpectrumKind, t: f64) -> bool {
        match kind {
            SpectrumKind::RealLine => self.lo <= t && t <= self.hi,
            SpectrumKind::UnitCircle => {
                let off = (t - self.lo).rem_euclid(TAU);
                off <= self.length() + DEDUP_TOL || TAU - off <= DEDUP_TOL || self.length() >= TAU
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandList {
    pub kind: SpectrumKind,
    pub bands: Vec<Band>,
    pub merge_gap: f64,
}

impl BandList {
    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    pub fn is_full_circle(&self) -> bool {
        self.kind == SpectrumKind::UnitCircle
            && self.bands.len() == 1
            && self.bands[0].length() >= TAU
    }
}

fn full_circle(gap: f64) -> BandList {
    BandList {
        kind: SpectrumKind::UnitCircle,
        bands: vec![Band { lo: -PI, hi: PI }],
        merge_gap: gap,
    }
}

fn wrap_phase(t: f64) -> f64 {
    if t > -PI && t <= PI {
        return t;
    }
    let r = t.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Merges intervals whose separation is at most `gap`. Circle intervals are
/// compared circularly; an input covering the whole circle yields one band of
/// length 2π.
pub fn merge_intervals(kind: SpectrumKind, intervals: &[Band], gap: f64) -> Result<BandList> {
    if !(gap >= 0.0) || !gap.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "merge gap must be finite and non-negative, got {gap}"
        )));
    }
    if intervals.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    if intervals
        .iter()
        .any(|b| !(b.hi >= b.lo) || !b.lo.is_finite() || !b.hi.is_finite())
    {
        return Err(Error::InvalidArgument(
            "intervals must satisfy lo <= hi".into(),
        ));
    }
    match kind {
        SpectrumKind::RealLine => {
            let mut iv = intervals.to_vec();
            iv.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
            Ok(BandList {
                kind,
                bands: sweep_merge(iv, gap),
                merge_gap: gap,
            })
        }
        SpectrumKind::UnitCircle => {
            if intervals.iter().any(|b| b.length() >= TAU) {
                return Ok(full_circle(gap));
            }
            let mut iv: Vec<Band> = intervals
                .iter()
                .map(|b| {
                    let lo = wrap_phase(b.lo);
                    Band {
                        lo,
                        hi: lo + b.length(),
                    }
                })
                .collect();
            iv.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
            let mut merged = sweep_merge(iv, gap);
            // The last run may reach round past π into the first bands.
            while merged.len() > 1 && merged[0].lo + TAU - merged[merged.len() - 1].hi <= gap {
                let first = merged.remove(0);
                let last = merged.last_mut().unwrap();
                last.hi = last.hi.max(first.hi + TAU);
            }
            if merged.iter().any(|b| TAU - b.length() <= gap) {
                return Ok(full_circle(gap));
            }
            for b in &mut merged {
                let lo = wrap_phase(b.lo);
                *b = Band {
                    lo,
                    hi: lo + b.length(),
                };
            }
            merged.sort_by(|a, b| a.lo.total_cmp(&b.lo));
            Ok(BandList {
                kind,
                bands: merged,
                merge_gap: gap,
            })
        }
    }
}

fn sweep_merge(sorted: Vec<Band>, gap: f64) -> Vec<Band> {
    let mut out: Vec<Band> = Vec::with_capacity(sorted.len());
    for b in sorted {
        match out.last_mut() {
            Some(cur) if b.lo - cur.hi <= gap => cur.hi = cur.hi.max(b.hi),
            _ => out.push(b),
        }
    }
    out
}

/// Groups consecutive samples (circularly on the unit circle, by eigenphase)
/// whose spacing is at most `merge_gap`.
pub fn merge_bands(s: &SpectrumSet, merge_gap: f64) -> Result<BandList> {
    if !(merge_gap > 0.0) || !merge_gap.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "merge gap must be positive, got {merge_gap}"
        )));
    }
    if s.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let coords: Vec<f64> = match s.kind {
        SpectrumKind::RealLine => s.real_values(),
        SpectrumKind::UnitCircle => eigenphases(s)?,
    };
    let singletons: Vec<Band> = coords.iter().map(|&t| Band { lo: t, hi: t }).collect();
    merge_intervals(s.kind, &singletons, merge_gap)
}

/// Bands traced by the sorted eigenvalue branches of a sweep.
///
/// At every grid point the eigenvalues are sorted (on the circle, relative to
/// a cut placed in the middle of the widest gap of the whole sample), the
/// k-th band is the range of the k-th value over the grid, and overlapping
/// ranges are merged. Unlike `merge_bands` this needs no gap parameter, and
/// the band widths are not inflated by the grid spacing.
pub fn branch_bands(sweep: &Sweep) -> Result<BandList> {
    let rows = sweep.rows();
    let width = rows.first().map_or(0, Vec::len);
    if width == 0 {
        return Err(Error::EmptySpectrum);
    }
    let kind = SpectrumKind::of(sweep.params().kind);
    let (cut, coords): (f64, Vec<Vec<f64>>) = match kind {
        SpectrumKind::RealLine => (
            0.0,
            rows.iter()
                .map(|r| r.iter().map(|z| z.re).collect())
                .collect(),
        ),
        SpectrumKind::UnitCircle => {
            let mut all: Vec<f64> = rows.iter().flatten().map(|&z| principal_arg(z)).collect();
            all.sort_by(f64::total_cmp);
            let mut best = (all[0] + TAU - all[all.len() - 1], all[all.len() - 1]);
            for w in all.windows(2) {
                if w[1] - w[0] > best.0 {
                    best = (w[1] - w[0], w[0]);
                }
            }
            let cut = best.1 + best.0 / 2.0;
            let coords = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&z| (principal_arg(z) - cut).rem_euclid(TAU))
                        .collect()
                })
                .collect();
            (cut, coords)
        }
    };
    let mut lo = vec![f64::INFINITY; width];
    let mut hi = vec![f64::NEG_INFINITY; width];
    for mut r in coords {
        if r.len() != width {
            return Err(Error::DimensionMismatch {
                left: width,
                right: r.len(),
            });
        }
        r.sort_by(f64::total_cmp);
        for (k, v) in r.into_iter().enumerate() {
            lo[k] = lo[k].min(v);
            hi[k] = hi[k].max(v);
        }
    }
    let bands: Vec<Band> = lo
        .into_iter()
        .zip(hi)
        .map(|(l, h)| Band {
            lo: l + cut,
            hi: h + cut,
        })
        .collect();
    let mut out = merge_intervals(kind, &bands, 0.0)?;
    out.merge_gap = 0.0;
    Ok(out)
}

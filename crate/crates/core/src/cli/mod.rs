//! Command-line front end: `spectra <compute|bandwidth|butterfly|zoom|verify|cache>`.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage error,
//! 3 numerical failure, 4 I/O failure.

mod cache;
mod io;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use cache::{Cache, CacheKey};
pub use io::{
    fmt_f64, parse_spectrum_csv, read_spectrum_csv, rings_svg, spectrum_csv, spectrum_json,
    write_atomic, write_rings_svg, write_spectrum_csv, ARTIFACT_VERSION,
};

use crate::analysis::{
    butterfly, farey_rationals, golden_convergents, phase_median, powerlaw_fit, run_check,
    total_bandwidth, zoom_windows, CheckConfig, CheckId, CheckReport, PowerLawFit,
};
use crate::error::{Error, Result};
use crate::operators::{OperatorKind, OperatorParams, RationalAlpha, ThetaScope};
use crate::spectra::{branch_bands, eigenphases, merge_bands, GridSpec, SpectrumSet, Sweep};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "spectra",
    version,
    about = "Spectra of Harper, kicked Harper and double kicked rotor operators at rational frequency"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a fixed-theta or mother spectrum.
    Compute(Shared),
    /// Total band width per alpha and a power-law fit over the list.
    Bandwidth(BandwidthArgs),
    /// Mother spectra for every reduced p/q up to --q-max.
    Butterfly(ButterflyArgs),
    /// Nested eigenphase windows around a center.
    Zoom(ZoomArgs),
    /// Run verification checks.
    Verify(VerifyArgs),
    /// Manage the spectrum cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Args, Debug, Default)]
struct Shared {
    /// h, uh, ukh or uordkr [default: ukh]
    #[arg(long)]
    kind: Option<String>,
    /// Frequency as p/q (a comma list where a command takes several)
    #[arg(long)]
    alpha: Option<String>,
    /// Kick strength [default: 1]; compute with svg output accepts a comma list
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,
    /// Coupling [default: 1]
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// `mother` or a real phase [default: mother]
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// N or N,M grid points per axis [default: 20]
    #[arg(long)]
    grid: Option<String>,
    /// Output file; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Reserved; every computation is deterministic, so only `none` is accepted
    #[arg(long)]
    seed: Option<String>,
}

#[derive(Args, Debug)]
struct BandwidthArgs {
    #[command(flatten)]
    shared: Shared,
    /// fib:A..B (golden convergents with A <= q <= B) or farey:QMAX
    #[arg(long)]
    alpha_list: Option<String>,
    /// `auto` (4 x error bound) or a positive number; used by --band-method merge
    #[arg(long, default_value = "auto")]
    merge_gap: String,
    #[arg(long, value_enum, default_value_t = BandMethod::Branch)]
    band_method: BandMethod,
}

#[derive(Args, Debug)]
struct ButterflyArgs {
    #[command(flatten)]
    shared: Shared,
    #[arg(long, default_value_t = 13)]
    q_max: u64,
}

#[derive(Args, Debug)]
struct ZoomArgs {
    #[command(flatten)]
    shared: Shared,
    /// Window center in (-pi, pi] [default: median eigenphase]
    #[arg(long, allow_hyphen_values = true)]
    center: Option<f64>,
    /// Comma-separated zoom factors, each > 1
    #[arg(long, value_delimiter = ',')]
    factors: Vec<f64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    shared: Shared,
    /// Check id (e.g. mother-equality) or `all`
    #[arg(long, default_value = "all")]
    check: String,
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// Delete every cached spectrum.
    Clear {
        #[arg(long)]
        cache_dir: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BandMethod {
    /// Range of each sorted eigenvalue branch over the grid
    Branch,
    /// Merge sorted samples closer than the merge gap
    Merge,
}

/// Maps a library error to the process exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } | Error::Malformed { .. } => EXIT_IO,
        Error::InvalidAlpha(_)
        | Error::NotCoprime { .. }
        | Error::InvalidParams(_)
        | Error::InvalidArgument(_)
        | Error::UnknownCheck(_)
        | Error::CenterOutOfRange(_)
        | Error::DegenerateAlphas
        | Error::KindMismatch
        | Error::WrongKind { .. }
        | Error::InvalidDimension(_) => EXIT_USAGE,
        _ => EXIT_NUMERICAL,
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let mut msg = format!("spectra: error: {e}");
            let mut src = std::error::Error::source(&e);
            while let Some(s) = src {
                let _ = write!(msg, ": {s}");
                src = s.source();
            }
            eprintln!("{msg}");
            exit_code(&e)
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Compute(s) => compute(&s),
        Command::Bandwidth(a) => bandwidth(&a),
        Command::Butterfly(a) => butterfly_cmd(&a),
        Command::Zoom(a) => zoom(&a),
        Command::Verify(a) => verify(&a),
        Command::Cache {
            action: CacheAction::Clear { cache_dir },
        } => {
            let n = Cache::new(cache_dir).clear()?;
            eprintln!("removed {n} cached spectra");
            Ok(EXIT_OK)
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

impl Shared {
    fn check_seed(&self) -> Result<()> {
        match self.seed.as_deref() {
            None | Some("none") => Ok(()),
            Some(other) => Err(usage(format!("--seed accepts only `none`, got `{other}`"))),
        }
    }

    fn kind(&self) -> Result<OperatorKind> {
        self.kind
            .as_deref()
            .map_or(Ok(OperatorKind::UKH), str::parse)
    }

    fn alphas(&self) -> Result<Vec<RationalAlpha>> {
        match &self.alpha {
            None => Err(usage("--alpha p/q is required")),
            Some(s) => s.split(',').map(str::parse).collect(),
        }
    }

    fn alpha(&self) -> Result<RationalAlpha> {
        match self.alphas()?.as_slice() {
            [a] => Ok(*a),
            _ => Err(usage("this command takes a single --alpha")),
        }
    }

    fn kappas(&self) -> Result<Vec<f64>> {
        match &self.kappa {
            None => Ok(vec![1.0]),
            Some(s) => s
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| usage(format!("bad --kappa value `{t}`")))
                })
                .collect(),
        }
    }

    fn kappa(&self) -> Result<f64> {
        match self.kappas()?.as_slice() {
            [k] => Ok(*k),
            _ => Err(usage("this command takes a single --kappa")),
        }
    }

    fn lambda(&self) -> f64 {
        self.lambda.unwrap_or(1.0)
    }

    fn theta(&self) -> Result<ThetaScope> {
        self.theta
            .as_deref()
            .map_or(Ok(ThetaScope::Mother), str::parse)
    }

    fn grid(&self) -> Result<GridSpec> {
        let Some(g) = &self.grid else {
            return GridSpec::square(20);
        };
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("bad --grid `{g}`")))
        };
        match g.split_once(',') {
            None => GridSpec::square(parse(g)?),
            Some((a, b)) => GridSpec::new(parse(a)?, parse(b)?),
        }
    }

    fn params_with(&self, alpha: RationalAlpha, kappa: f64) -> Result<OperatorParams> {
        OperatorParams::new(self.kind()?, kappa, self.lambda(), alpha, self.theta()?)
    }

    fn format(&self, default: Format) -> Format {
        if let Some(f) = self.format {
            return f;
        }
        match self
            .out
            .as_ref()
            .and_then(|p| p.extension())
            .and_then(|e| e.to_str())
        {
            Some("svg") => Format::Svg,
            Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            _ => default,
        }
    }

    fn spectrum(&self, params: &OperatorParams, grid: &GridSpec) -> Result<SpectrumSet> {
        let compute = || Sweep::run(params, grid)?.to_spectrum();
        match &self.cache_dir {
            Some(dir) => Cache::new(dir).get_or_compute(params, grid, compute),
            None => compute(),
        }
    }

    fn emit(&self, bytes: &[u8]) -> Result<()> {
        emit(self.out.as_deref(), bytes)
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, bytes),
        None => {
            let mut so = std::io::stdout().lock();
            match so.write_all(bytes).and_then(|_| so.flush()) {
                // a closed pipe (`| head`) is not an error for a CLI
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r.map_err(|e| Error::io(Path::new("<stdout>"), e)),
            }
        }
    }
}

fn compute(s: &Shared) -> Result<i32> {
    s.check_seed()?;
    let alpha = s.alpha()?;
    let grid = s.grid()?;
    let kappas = s.kappas()?;
    let format = s.format(Format::Csv);
    if kappas.len() > 1 && format != Format::Svg {
        return Err(usage("several --kappa values need --format svg"));
    }
    let mut sets = Vec::with_capacity(kappas.len());
    for &k in &kappas {
        sets.push(s.spectrum(&s.params_with(alpha, k)?, &grid)?);
    }
    let text = match format {
        Format::Csv => spectrum_csv(&sets[0]),
        Format::Json => spectrum_json(&sets[0])?,
        Format::Svg => rings_svg(&sets)?,
    };
    s.emit(text.as_bytes())?;
    Ok(EXIT_OK)
}

fn parse_alpha_list(spec: &str) -> Result<Vec<RationalAlpha>> {
    let bad = || {
        usage(format!(
            "bad --alpha-list `{spec}`; expected fib:A..B or farey:QMAX"
        ))
    };
    let (family, arg) = spec.split_once(':').ok_or_else(bad)?;
    match family {
        "fib" => {
            let (a, b) = arg.split_once("..").ok_or_else(bad)?;
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            let list: Vec<RationalAlpha> = golden_convergents(90)
                .into_iter()
                .filter(|r| r.q() >= a && r.q() <= b)
                .collect();
            if list.is_empty() {
                return Err(usage(format!("no Fibonacci denominators in {a}..{b}")));
            }
            Ok(list)
        }
        "farey" => {
            let q: u64 = arg.trim().parse().map_err(|_| bad())?;
            Ok(farey_rationals(q))
        }
        _ => Err(bad()),
    }
}

#[derive(Serialize)]
struct WidthRow {
    p: u64,
    q: u64,
    bandwidth: f64,
    bands: usize,
    error_bound: f64,
}

fn bandwidth(a: &BandwidthArgs) -> Result<i32> {
    let s = &a.shared;
    s.check_seed()?;
    let alphas = match &a.alpha_list {
        Some(spec) => parse_alpha_list(spec)?,
        None => s.alphas()?,
    };
    let grid = s.grid()?;
    let kappa = s.kappa()?;
    let gap = match a.merge_gap.as_str() {
        "auto" => None,
        g => {
            let v: f64 = g
                .parse()
                .map_err(|_| usage(format!("bad --merge-gap `{g}`")))?;
            if !(v > 0.0) {
                return Err(usage("--merge-gap must be positive"));
            }
            Some(v)
        }
    };
    let mut rows = Vec::new();
    for &alpha in &alphas {
        let params = s.params_with(alpha, kappa)?;
        let bands = match a.band_method {
            BandMethod::Branch => branch_bands(&Sweep::run(&params, &grid)?)?,
            BandMethod::Merge => {
                let set = s.spectrum(&params, &grid)?;
                merge_bands(&set, gap.unwrap_or(4.0 * set.error_bound()))?
            }
        };
        rows.push(WidthRow {
            p: alpha.p(),
            q: alpha.q(),
            bandwidth: total_bandwidth(&bands),
            bands: bands.len(),
            error_bound: crate::spectra::grid_error_bound(&params, &grid),
        });
    }
    let samples: Vec<(u64, f64)> = rows
        .iter()
        .filter(|r| r.bandwidth > 0.0)
        .map(|r| (r.q, r.bandwidth))
        .collect();
    let fit: Option<PowerLawFit> = if samples.len() >= 2 {
        powerlaw_fit(&samples).ok()
    } else {
        None
    };
    let text = match s.format(Format::Csv) {
        Format::Json => {
            serde_json::to_string_pretty(&serde_json::json!({ "rows": rows, "fit": fit }))
                .map_err(|e| usage(e.to_string()))?
        }
        Format::Svg => return Err(usage("bandwidth writes csv or json")),
        Format::Csv => {
            let mut out = String::new();
            let _ = writeln!(out, "# kind={}", s.kind()?);
            let _ = writeln!(out, "# kappa={}", fmt_f64(kappa));
            let _ = writeln!(out, "# lambda={}", fmt_f64(s.lambda()));
            let _ = writeln!(out, "# theta={}", s.theta()?);
            let _ = writeln!(out, "# n_x={}", grid.n_x);
            let _ = writeln!(out, "# n_theta={}", grid.n_theta);
            let _ = writeln!(
                out,
                "# band_method={}",
                match a.band_method {
                    BandMethod::Branch => "branch",
                    BandMethod::Merge => "merge",
                }
            );
            if let Some(f) = &fit {
                let _ = writeln!(out, "# fit_exponent={}", fmt_f64(f.exponent));
                let _ = writeln!(out, "# fit_prefactor={}", fmt_f64(f.prefactor));
                let _ = writeln!(out, "# fit_residual={}", fmt_f64(f.residual));
            }
            out.push_str("p,q,bandwidth,bands,error_bound\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.p,
                    r.q,
                    fmt_f64(r.bandwidth),
                    r.bands,
                    fmt_f64(r.error_bound)
                );
            }
            out
        }
    };
    s.emit(text.as_bytes())?;
    Ok(EXIT_OK)
}

fn butterfly_cmd(a: &ButterflyArgs) -> Result<i32> {
    let s = &a.shared;
    s.check_seed()?;
    let n = s.grid()?.n_x;
    let data = butterfly(s.kind()?, s.kappa()?, s.lambda(), a.q_max, n)?;
    let text = match s.format(Format::Csv) {
        Format::Json => serde_json::to_string_pretty(&data).map_err(|e| usage(e.to_string()))?,
        Format::Svg => return Err(usage("butterfly writes csv or json")),
        Format::Csv => {
            let mut out = String::new();
            let _ = writeln!(out, "# kind={}", data.kind);
            let _ = writeln!(out, "# kappa={}", fmt_f64(data.kappa));
            let _ = writeln!(out, "# lambda={}", fmt_f64(data.lambda));
            let _ = writeln!(out, "# q_max={}", data.q_max);
            let _ = writeln!(out, "# grid_n={}", data.grid_n);
            out.push_str("p,q,value\n");
            for r in &data.rows {
                let _ = writeln!(out, "{},{},{}", r.p, r.q, fmt_f64(r.value));
            }
            out
        }
    };
    s.emit(text.as_bytes())?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct WindowOut {
    lo: f64,
    hi: f64,
    bands: usize,
    points: Vec<f64>,
}

fn zoom(a: &ZoomArgs) -> Result<i32> {
    let s = &a.shared;
    s.check_seed()?;
    let params = s.params_with(s.alpha()?, s.kappa()?)?;
    let grid = s.grid()?;
    let sweep = Sweep::run(&params, &grid)?;
    let set = sweep.to_spectrum()?;
    let eps = eigenphases(&set)?;
    let bands = branch_bands(&sweep)?;
    let center = match a.center {
        Some(c) => c,
        None => phase_median(&eps)?,
    };
    let windows: Vec<WindowOut> = zoom_windows(&eps, center, &a.factors)?
        .into_iter()
        .map(|w| WindowOut {
            lo: w.lo,
            hi: w.hi,
            bands: w.count_bands(&bands),
            points: w.points,
        })
        .collect();
    let text = match s.format(Format::Csv) {
        Format::Json => serde_json::to_string_pretty(
            &serde_json::json!({ "center": center, "windows": windows }),
        )
        .map_err(|e| usage(e.to_string()))?,
        Format::Svg => return Err(usage("zoom writes csv or json")),
        Format::Csv => {
            let mut out = String::new();
            let _ = writeln!(out, "# center={}", fmt_f64(center));
            for (i, w) in windows.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "# window{i}=lo:{},hi:{},points:{},bands:{}",
                    fmt_f64(w.lo),
                    fmt_f64(w.hi),
                    w.points.len(),
                    w.bands
                );
            }
            out.push_str("window,eigenphase\n");
            for (i, w) in windows.iter().enumerate() {
                for &t in &w.points {
                    let _ = writeln!(out, "{i},{}", fmt_f64(t));
                }
            }
            out
        }
    };
    s.emit(text.as_bytes())?;
    Ok(EXIT_OK)
}

fn verify(a: &VerifyArgs) -> Result<i32> {
    let s = &a.shared;
    s.check_seed()?;
    let ids: Vec<CheckId> = if a.check.eq_ignore_ascii_case("all") {
        CheckId::ALL.to_vec()
    } else {
        vec![a.check.parse()?]
    };
    let mut reports: Vec<CheckReport> = Vec::new();
    for id in ids {
        let mut cfg = CheckConfig::defaults(id);
        if s.kind.is_some() {
            cfg.kind = s.kind()?;
        }
        if s.alpha.is_some() {
            cfg.alphas = s.alphas()?;
        }
        if s.kappa.is_some() {
            let ks = s.kappas()?;
            if id == CheckId::KappaCubed {
                cfg.kappas = ks;
            } else {
                cfg.kappa = *ks.first().ok_or_else(|| usage("empty --kappa"))?;
            }
        }
        if let Some(l) = s.lambda {
            cfg.lambda = l;
        }
        if s.grid.is_some() {
            cfg.grid = s.grid()?.n_x;
        }
        let r = run_check(id, &cfg)?;
        eprintln!(
            "{} {}: measured {} bound {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.check_id,
            fmt_f64(r.measured),
            fmt_f64(r.bound)
        );
        reports.push(r);
    }
    let text = match s.format(Format::Json) {
        Format::Json => serde_json::to_string_pretty(&reports).map_err(|e| usage(e.to_string()))?,
        Format::Svg => return Err(usage("verify writes json or csv")),
        Format::Csv => {
            let mut out = String::from("check,measured,bound,pass,params\n");
            for r in &reports {
                let params = serde_json::to_string(&r.params).map_err(|e| usage(e.to_string()))?;
                let _ = writeln!(
                    out,
                    "{},{},{},{},\"{}\"",
                    r.check_id,
                    fmt_f64(r.measured),
                    fmt_f64(r.bound),
                    r.pass,
                    params.replace('"', "\"\"")
                );
            }
            out
        }
    };
    s.emit(text.as_bytes())?;
    Ok(if reports.iter().all(|r| r.pass) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

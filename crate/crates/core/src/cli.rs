//! Command-line front end shared by the `tailcast` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::exponents::{solve_rho_equal, HeavyScheme, ReturnSpec};
use crate::harness::{
    run_gpd_curve, run_trial, to_json_string, tune_moderation, write_json, GpdCurveConfig, TrialConfig,
    DEFAULT_XI_GRID,
};
use crate::lauricella::{density_t, Route};
use crate::predictors::{Method, Predictor, PredictorOverrides};
use crate::samples::{read_data_file, select_top, NormalizedData, OrderedSample};

pub const SEED_ENV: &str = "TAILCAST_SEED";

#[derive(Parser, Debug)]
#[command(name = "tailcast", version, about = "Probability-matching return-level predictors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the exponent constraint for one (N, T).
    Exponents(ExponentsArgs),
    /// Predict the T-level from a data file.
    Predict(PredictArgs),
    /// Delivered return levels on GPD samples across a shape grid.
    Evaluate(EvaluateArgs),
    /// Delivered return levels for top-N predictions from samples of size M.
    Trial(TrialArgs),
    /// Density of the normalised data at one point.
    Density(DensityArgs),
    /// Tune the moderation exponents A and B by simulation.
    Tune(TuneArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Family {
    Heavy,
    Bounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// JSON file whose keys mirror the long flags; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
struct Level {
    /// Return level T.
    #[arg(long = "t", conflicts_with = "t_ratio")]
    t: Option<f64>,
    /// T/(N+1).
    #[arg(long)]
    t_ratio: Option<f64>,
}

#[derive(Args, Debug)]
struct ExponentsArgs {
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long, value_enum)]
    scheme: Option<Scheme>,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    level: Level,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Scheme {
    Equal,
    EqualFactor,
    MinLog,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum CliMethod {
    Interpolated,
    BayesExp,
    BayesUnif,
    DataMax,
    HeavyEqual,
    HeavyEqualFactor,
    HeavyMinLog,
    BoundedEqual,
    ModeratedHeavy,
    ModeratedBounded,
}

impl From<CliMethod> for Method {
    fn from(m: CliMethod) -> Self {
        match m {
            CliMethod::Interpolated => Method::Interpolated,
            CliMethod::BayesExp => Method::BayesExponential,
            CliMethod::BayesUnif => Method::BayesUniform,
            CliMethod::DataMax => Method::DataMax,
            CliMethod::HeavyEqual => Method::HeavyEqual,
            CliMethod::HeavyEqualFactor => Method::HeavyEqualFactor,
            CliMethod::HeavyMinLog => Method::HeavyMinLog,
            CliMethod::BoundedEqual => Method::BoundedEqual,
            CliMethod::ModeratedHeavy => Method::ModeratedHeavy,
            CliMethod::ModeratedBounded => Method::ModeratedBounded,
        }
    }
}

#[derive(Args, Debug)]
struct PredictArgs {
    /// One value per line (or the first CSV column).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Use the top N values (default: all).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum)]
    method: Option<CliMethod>,
    #[command(flatten)]
    level: Level,
    #[arg(long, allow_hyphen_values = true)]
    a_exp: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b_exp: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, value_enum)]
    method: Option<CliMethod>,
    #[arg(long)]
    n: Option<usize>,
    /// Target ratios T/(N+1) (evaluate) or T/(M+1) (trial), comma separated.
    #[arg(long, value_delimiter = ',')]
    t_ratios: Option<Vec<f64>>,
    #[arg(long)]
    reps: Option<u64>,
    /// Seed; falls back to TAILCAST_SEED, else one is generated and reported on stderr.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, allow_hyphen_values = true)]
    a_exp: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b_exp: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    /// Shape grid, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    xi: Option<Vec<f64>>,
    /// Distribution spec (JSON text or a path to a JSON file); replaces the shape grid.
    #[arg(long)]
    dist: Option<String>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args, Debug)]
struct TrialArgs {
    #[arg(long)]
    dist: Option<String>,
    /// Full sample size M.
    #[arg(long)]
    m: Option<usize>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args, Debug)]
struct DensityArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<f64>,
    /// Normalised data t₁ ≤ … ≤ t_{N−2}, comma separated.
    #[arg(long = "t", value_delimiter = ',')]
    t: Option<Vec<f64>>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct TuneArgs {
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    level: Level,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    xi: Option<Vec<f64>>,
    #[arg(long)]
    reps: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    common: Common,
}

/// Keys accepted in a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    family: Option<Family>,
    scheme: Option<Scheme>,
    method: Option<CliMethod>,
    input: Option<PathBuf>,
    n: Option<usize>,
    m: Option<usize>,
    t: Option<f64>,
    t_ratio: Option<f64>,
    t_ratios: Option<Vec<f64>>,
    xi: Option<serde_json::Value>,
    dist: Option<DistributionSpec>,
    reps: Option<u64>,
    seed: Option<u64>,
    workers: Option<usize>,
    format: Option<Format>,
    a_exp: Option<f64>,
    b_exp: Option<f64>,
    xi_clip: Option<f64>,
}

impl FileConfig {
    fn load(path: Option<&Path>) -> Result<Self> {
        let Some(p) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", p.display())))
    }

    fn xi_list(&self) -> Result<Option<Vec<f64>>> {
        match &self.xi {
            None => Ok(None),
            Some(v) => {
                let list = if v.is_number() { serde_json::Value::Array(vec![v.clone()]) } else { v.clone() };
                serde_json::from_value(list).map(Some).map_err(|e| Error::Config(format!("xi: {e}")))
            }
        }
    }

    fn xi_scalar(&self) -> Result<Option<f64>> {
        Ok(match self.xi_list()? {
            None => None,
            Some(v) if v.len() == 1 => Some(v[0]),
            Some(_) => return Err(Error::Config("xi must be a single number here".into())),
        })
    }
}

fn need<T>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::invalid(format!("missing required option --{name}")))
}

fn level_spec(n: usize, level: &Level, file: &FileConfig) -> Result<ReturnSpec> {
    match (level.t.or(file.t), level.t_ratio.or(file.t_ratio)) {
        (Some(_), Some(_)) if level.t.is_none() || level.t_ratio.is_none() => {
            // One from the file, one from the flags: the flag wins.
            if let Some(t) = level.t {
                ReturnSpec::new(n, t)
            } else {
                ReturnSpec::from_ratio(n, level.t_ratio.unwrap())
            }
        }
        (Some(_), Some(_)) => Err(Error::invalid("give either --t or --t-ratio, not both")),
        (Some(t), None) => ReturnSpec::new(n, t),
        (None, Some(r)) => ReturnSpec::from_ratio(n, r),
        (None, None) => Err(Error::invalid("missing return level: give --t or --t-ratio")),
    }
}

fn parse_dist(text: &str) -> Result<DistributionSpec> {
    let body = if text.trim_start().starts_with('{') {
        text.to_string()
    } else {
        std::fs::read_to_string(text).map_err(|e| Error::Config(format!("{text}: {e}")))?
    };
    let spec: DistributionSpec = serde_json::from_str(&body).map_err(|e| Error::invalid(format!("--dist: {e}")))?;
    spec.validate()?;
    Ok(spec)
}

fn resolve_seed(flag: Option<u64>, file: Option<u64>, stderr: &mut dyn Write) -> Result<u64> {
    if let Some(s) = flag.or(file) {
        return Ok(s);
    }
    if let Ok(v) = std::env::var(SEED_ENV) {
        return v
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("{SEED_ENV}='{v}' is not an unsigned integer")));
    }
    let s: u64 = rand::random();
    let _ = writeln!(stderr, "seed: {s}");
    Ok(s)
}

fn emit(out: Option<&Path>, body: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, body)?,
        None => stdout.write_all(body)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct ExponentsOut {
    n: usize,
    t_ratio: f64,
    family: Family,
    scheme: Scheme,
    exponents: Vec<f64>,
    residual: f64,
}

fn exponents(a: ExponentsArgs, stdout: &mut dyn Write) -> Result<()> {
    let file = FileConfig::load(a.common.config.as_deref())?;
    let family = need(a.family.or(file.family), "family")?;
    let scheme = a.scheme.or(file.scheme).unwrap_or(Scheme::Equal);
    let n = need(a.n.or(file.n), "n")?;
    let spec = level_spec(n, &a.level, &file)?;
    let (exponents, residual) = match family {
        Family::Heavy => {
            let s = match scheme {
                Scheme::Equal => HeavyScheme::Equal,
                Scheme::EqualFactor => HeavyScheme::EqualFactor,
                Scheme::MinLog => HeavyScheme::MinLog,
            };
            let h = s.solve(&spec)?;
            let r = h.relative_residual(&spec)?;
            (h.lambda, r)
        }
        Family::Bounded => {
            if scheme != Scheme::Equal {
                return Err(Error::invalid("the bounded family supports only --scheme equal"));
            }
            let b = solve_rho_equal(&spec)?;
            let r = b.relative_residual(&spec)?;
            (b.rho, r)
        }
    };
    let body = to_json_string(&ExponentsOut {
        n,
        t_ratio: spec.ratio(),
        family,
        scheme,
        exponents,
        residual,
    })?;
    emit(a.common.out.as_deref(), body.as_bytes(), stdout)
}

fn predict(a: PredictArgs, stdout: &mut dyn Write) -> Result<()> {
    let file = FileConfig::load(a.common.config.as_deref())?;
    let input = need(a.input.or(file.input.clone()), "input")?;
    let data = read_data_file(&input)?;
    let n = a.n.or(file.n).unwrap_or(data.len());
    let x: OrderedSample = select_top(&data, n)?;
    let spec = level_spec(n, &a.level, &file)?;
    let method: Method = a.method.or(file.method).unwrap_or(CliMethod::Interpolated).into();
    let o = PredictorOverrides {
        a_exp: a.a_exp.or(file.a_exp),
        b_exp: a.b_exp.or(file.b_exp),
        xi_clip: file.xi_clip,
    };
    let report = Predictor::with_overrides(method, spec, &o)?.predict(&x)?;
    let body = to_json_string(&report)?;
    emit(a.common.out.as_deref(), body.as_bytes(), stdout)
}

struct Resolved {
    method: Method,
    n: usize,
    t_ratios: Vec<f64>,
    reps: u64,
    seed: u64,
    workers: Option<usize>,
    format: Format,
    overrides: PredictorOverrides,
}

fn resolve_run(r: &RunArgs, file: &FileConfig, stderr: &mut dyn Write) -> Result<Resolved> {
    Ok(Resolved {
        method: r.method.or(file.method).unwrap_or(CliMethod::Interpolated).into(),
        n: need(r.n.or(file.n), "n")?,
        t_ratios: need(r.t_ratios.clone().or(file.t_ratios.clone()), "t-ratios")?,
        reps: r.reps.or(file.reps).unwrap_or(200_000),
        seed: resolve_seed(r.seed, file.seed, stderr)?,
        workers: r.workers.or(file.workers),
        format: r.format.or(file.format).unwrap_or(Format::Csv),
        overrides: PredictorOverrides {
            a_exp: r.a_exp.or(file.a_exp),
            b_exp: r.b_exp.or(file.b_exp),
            xi_clip: file.xi_clip,
        },
    })
}

fn write_curve(curve: &crate::harness::PerformanceCurve, format: Format, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => curve.to_csv(&mut buf)?,
        Format::Json => curve.to_json(&mut buf)?,
    }
    emit(out, &buf, stdout)
}

fn evaluate(a: EvaluateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let file = FileConfig::load(a.run.common.config.as_deref())?;
    let r = resolve_run(&a.run, &file, stderr)?;
    let dist = match a.dist.as_deref() {
        Some(d) => Some(parse_dist(d)?),
        None => file.dist,
    };
    let curve = match dist {
        Some(dist) => run_trial(
            &TrialConfig {
                dist,
                m: r.n,
                n: r.n,
                t_ratios: r.t_ratios,
                reps: r.reps,
                seed: r.seed,
                method: r.method,
                overrides: r.overrides,
            },
            r.workers,
        )?,
        None => {
            let xi_grid = match a.xi {
                Some(v) => v,
                None => file.xi_list()?.unwrap_or_else(|| DEFAULT_XI_GRID.to_vec()),
            };
            run_gpd_curve(
                &GpdCurveConfig {
                    method: r.method,
                    n: r.n,
                    t_ratios: r.t_ratios,
                    xi_grid,
                    reps: r.reps,
                    seed: r.seed,
                    overrides: r.overrides,
                },
                r.workers,
            )?
        }
    };
    write_curve(&curve, r.format, a.run.common.out.as_deref(), stdout)
}

fn trial(a: TrialArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let file = FileConfig::load(a.run.common.config.as_deref())?;
    let r = resolve_run(&a.run, &file, stderr)?;
    let dist = match a.dist.as_deref() {
        Some(d) => parse_dist(d)?,
        None => need(file.dist, "dist")?,
    };
    let cfg = TrialConfig {
        dist,
        m: a.m.or(file.m).unwrap_or(r.n),
        n: r.n,
        t_ratios: r.t_ratios,
        reps: r.reps,
        seed: r.seed,
        method: r.method,
        overrides: r.overrides,
    };
    let curve = run_trial(&cfg, r.workers)?;
    write_curve(&curve, r.format, a.run.common.out.as_deref(), stdout)
}

#[derive(Serialize)]
struct DensityOut {
    density: f64,
    route_a: f64,
    route_b: f64,
}

fn density(a: DensityArgs, stdout: &mut dyn Write) -> Result<()> {
    let file = FileConfig::load(a.common.config.as_deref())?;
    let xi = need(a.xi.or(file.xi_scalar()?), "xi")?;
    let t = need(a.t, "t")?;
    let n = a.n.or(file.n).unwrap_or(t.len() + 2);
    if t.len() + 2 != n {
        return Err(Error::invalid(format!("--t needs N−2 = {} values, got {}", n.saturating_sub(2), t.len())));
    }
    let tau: Vec<f64> = t.iter().map(|v| 1.0 - v).collect();
    let nd = NormalizedData::from_t_tau(&t, &tau)?;
    let route_a = density_t(&nd, xi, Route::Direct)?;
    let route_b = density_t(&nd, xi, Route::Transformed)?;
    let body = to_json_string(&DensityOut {
        density: route_a,
        route_a,
        route_b,
    })?;
    emit(a.common.out.as_deref(), body.as_bytes(), stdout)
}

fn tune(a: TuneArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let file = FileConfig::load(a.common.config.as_deref())?;
    let n = need(a.n.or(file.n), "n")?;
    let spec = level_spec(n, &a.level, &file)?;
    let grid = match a.xi {
        Some(v) => v,
        None => file.xi_list()?.unwrap_or_else(|| DEFAULT_XI_GRID.to_vec()),
    };
    let reps = a.reps.or(file.reps).unwrap_or(20_000);
    let seed = resolve_seed(a.seed, file.seed, stderr)?;
    let result = tune_moderation(&spec, &grid, reps, seed)?;
    let mut buf = Vec::new();
    write_json(&mut buf, &result)?;
    emit(a.common.out.as_deref(), &buf, stdout)
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Exponents(a) => exponents(a, stdout),
        Command::Predict(a) => predict(a, stdout),
        Command::Evaluate(a) => evaluate(a, stdout, stderr),
        Command::Trial(a) => trial(a, stdout, stderr),
        Command::Density(a) => density(a, stdout),
        Command::Tune(a) => tune(a, stdout, stderr),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

//! Monte Carlo measurement of delivered exceedance probabilities.
//!
//! Every replicate owns a [`RandomSource`] whose stream id is the replicate
//! index and whose seed is the run seed mixed with the axis index, so the
//! counts are integer sums that do not depend on how replicates are split
//! across worker threads.
//!
//! GPD curves are simulated in the latent exponential representation
//! `X = μ + σ(e^(ξE) − 1)/ξ`. Spacings and the excess of the next point are
//! formed directly as logarithms, which keeps `ξ = ±50` exact. The
//! normalised statistics do not depend on `(μ, σ)`, so location and scale
//! are not drawn on this path; [`run_trial`] draws real values and honours
//! `randomize_loc_scale`.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{gpd_quantile, sample, DistributionSpec, GpdParams, XI_ZERO};
use crate::error::{Error, Result};
use crate::exponents::ReturnSpec;
use crate::math::{ln_one_minus_exp, ln_sum_exp};
use crate::predictors::{
    moderate, moderation_exponents, mu_pair, u_alpha, u_beta, xi_hat_normalized, Excess, Method, Predictor,
    PredictorConfig, PredictorOverrides, Side, XI_CLIP,
};
use crate::rng::{mix_seed, RandomSource};
use crate::samples::{normalize, select_top, NormalizedData, OrderedSample};

/// Default shape grid for performance curves.
pub const DEFAULT_XI_GRID: [f64; 13] = [-8.0, -4.0, -2.0, -1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0];

/// Delivered return level `reps/count` and its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Delivered {
    pub delivered_t: f64,
    pub std_err: f64,
    /// False when no exceedance was observed (`delivered_t = +∞`).
    pub defined: bool,
}

pub fn delivered_return(count: u64, reps: u64) -> Result<Delivered> {
    if count > reps || reps == 0 {
        return Err(Error::invalid(format!("invalid exceedance count {count} of {reps}")));
    }
    if count == 0 {
        return Ok(Delivered {
            delivered_t: f64::INFINITY,
            std_err: f64::NAN,
            defined: false,
        });
    }
    let p = count as f64 / reps as f64;
    Ok(Delivered {
        delivered_t: 1.0 / p,
        std_err: (p * (1.0 - p) / reps as f64).sqrt() / (p * p),
        defined: true,
    })
}

/// One `(axis point, target)` cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerformanceResult {
    pub axis: String,
    pub target_ratio: f64,
    pub target_t: f64,
    pub exceed_count: u64,
    pub reps: u64,
    pub delivered_t: f64,
    pub log2_target_ratio: f64,
    pub log2_delivered_ratio: f64,
    pub std_err: f64,
}

impl PerformanceResult {
    /// `anchor` is `N+1` for GPD curves and `M+1` for trials.
    fn new(axis: String, target_ratio: f64, anchor: f64, count: u64, reps: u64) -> Result<Self> {
        let d = delivered_return(count, reps)?;
        Ok(Self {
            axis,
            target_ratio,
            target_t: target_ratio * anchor,
            exceed_count: count,
            reps,
            delivered_t: d.delivered_t,
            log2_target_ratio: target_ratio.log2(),
            log2_delivered_ratio: (d.delivered_t / anchor).log2(),
            std_err: d.std_err,
        })
    }

    /// `|log₂(delivered/target)|`.
    pub fn log2_error(&self) -> f64 {
        (self.log2_delivered_ratio - self.log2_target_ratio).abs()
    }

    /// Whether the target lies within `k` standard errors of the delivered level.
    pub fn within_se(&self, k: f64) -> bool {
        (self.delivered_t - self.target_t).abs() <= k * self.std_err
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PerformanceCurve {
    pub rows: Vec<PerformanceResult>,
}

pub const CSV_HEADER: [&str; 9] = [
    "axis",
    "target_ratio",
    "target_t",
    "exceed_count",
    "reps",
    "delivered_t",
    "log2_target_ratio",
    "log2_delivered_ratio",
    "std_err",
];

impl PerformanceCurve {
    pub fn to_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Io(e.to_string());
        out.write_record(CSV_HEADER).map_err(io)?;
        for r in &self.rows {
            let f = |v: f64| format_sig(v, 10);
            out.write_record([
                r.axis.clone(),
                f(r.target_ratio),
                f(r.target_t),
                r.exceed_count.to_string(),
                r.reps.to_string(),
                f(r.delivered_t),
                f(r.log2_target_ratio),
                f(r.log2_delivered_ratio),
                f(r.std_err),
            ])
            .map_err(io)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_json<W: Write>(&self, w: W) -> Result<()> {
        write_json(w, self)
    }
}

/// Format with `digits` significant digits, trailing zeros trimmed.
/// Non-finite values print as `inf`, `-inf` or `nan`.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let s = format!("{:.*e}", digits - 1, v);
    let (mant, exp) = s.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    let neg = mant.starts_with('-');
    let digs: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let body = if (-5..=15).contains(&exp) {
        let mut out = String::new();
        if exp < 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
            out.push_str(&digs);
        } else {
            let int_len = exp as usize + 1;
            let padded = format!("{digs:0<int_len$}");
            out.push_str(&padded[..int_len]);
            if padded.len() > int_len {
                out.push('.');
                out.push_str(&padded[int_len..]);
            }
        }
        trim_fraction(out)
    } else {
        let m = trim_fraction(format!("{}.{}", &digs[..1], &digs[1..]));
        format!("{m}e{exp}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_fraction(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

struct SigFormatter;

impl serde_json::ser::Formatter for SigFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        if value.is_finite() {
            writer.write_all(format_sig(value, 17).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }
}

/// Compact JSON with every float at 17 significant digits; non-finite
/// floats become `null`. A trailing newline is written.
pub fn write_json<W: Write, T: Serialize + ?Sized>(mut w: W, value: &T) -> Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(&mut w, SigFormatter);
    value.serialize(&mut ser).map_err(|e| Error::Io(e.to_string()))?;
    w.write_all(b"\n")?;
    Ok(())
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    write_json(&mut buf, value)?;
    Ok(String::from_utf8(buf).expect("JSON is UTF-8"))
}

fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        if w == 0 {
            return Err(Error::invalid("workers must be at least 1"));
        }
        b = b.num_threads(w);
    }
    b.build().map_err(|e| Error::Config(e.to_string()))
}

/// Sum per-replicate exceedance indicators over `reps` replicates.
fn count_exceedances<F>(reps: u64, width: usize, workers: Option<usize>, per_rep: F) -> Result<Vec<u64>>
where
    F: Fn(u64, &mut [u64]) -> Result<()> + Sync,
{
    pool(workers)?.install(|| {
        (0..reps)
            .into_par_iter()
            .try_fold(
                || vec![0u64; width],
                |mut acc, r| {
                    per_rep(r, &mut acc)?;
                    Ok(acc)
                },
            )
            .try_reduce(
                || vec![0u64; width],
                |mut a, b| {
                    a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                    Ok(a)
                },
            )
    })
}

/// Standard exponential order statistics and the next point, from one
/// replicate stream: `(sorted first n, next)`.
fn latent_draw(rng: &mut RandomSource, n: usize) -> (Vec<f64>, f64) {
    let mut e: Vec<f64> = (0..n).map(|_| -rng.uniform().ln()).collect();
    let next = -rng.uniform().ln();
    e.sort_by(f64::total_cmp);
    (e, next)
}

/// `ln|X(a) − X(b)|` up to an additive constant, for latent `a > b`.
fn ln_gap(a: f64, b: f64, xi: f64) -> f64 {
    if xi.abs() < XI_ZERO {
        (a - b).ln()
    } else {
        (xi * a).max(xi * b) + ln_one_minus_exp(-xi.abs() * (a - b))
    }
}

/// Normalised data of a latent GPD sample, plus the next point's excess
/// over the maximum in span units.
pub fn latent_gpd_sample(rng: &mut RandomSource, n: usize, xi: f64) -> Result<(NormalizedData, Excess)> {
    let (e, next) = latent_draw(rng, n);
    let ln_delta: Vec<f64> = e.windows(2).map(|w| ln_gap(w[1], w[0], xi)).collect();
    let ln_span = ln_sum_exp(&ln_delta);
    let top = e[n - 1];
    let v = if next > top {
        Excess::positive(ln_gap(next, top, xi) - ln_span)
    } else if next < top {
        Excess {
            ln_abs: ln_gap(top, next, xi) - ln_span,
            negative: true,
        }
    } else {
        Excess::ZERO
    };
    Ok((NormalizedData::from_log_spacings(&ln_delta, 0.0, 1.0)?, v))
}

/// Settings for [`run_gpd_curve`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GpdCurveConfig {
    pub method: Method,
    pub n: usize,
    pub t_ratios: Vec<f64>,
    pub xi_grid: Vec<f64>,
    pub reps: u64,
    pub seed: u64,
    #[serde(default)]
    pub overrides: PredictorOverrides,
}

fn build_predictors(method: Method, n: usize, ratios: &[f64], o: &PredictorOverrides) -> Result<Vec<Predictor>> {
    if ratios.is_empty() {
        return Err(Error::invalid("at least one target ratio is needed"));
    }
    ratios
        .iter()
        .map(|&r| {
            if !(r >= 1.0) || !r.is_finite() {
                return Err(Error::invalid(format!("target ratios must be finite and >= 1, got {r}")));
            }
            Predictor::with_overrides(method, ReturnSpec::from_ratio(n, r)?, o)
        })
        .collect()
}

/// Delivered return levels of a predictor on GPD samples of size `n`,
/// for every `(ξ, T/(N+1))` pair.
pub fn run_gpd_curve(cfg: &GpdCurveConfig, workers: Option<usize>) -> Result<PerformanceCurve> {
    if cfg.n < 3 {
        return Err(Error::invalid("n must be at least 3"));
    }
    if cfg.reps == 0 {
        return Err(Error::invalid("reps must be positive"));
    }
    if cfg.xi_grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("shape grid must be finite"));
    }
    let preds = build_predictors(cfg.method, cfg.n, &cfg.t_ratios, &cfg.overrides)?;
    let clip = preds[0].xi_clip();
    let anchor = cfg.n as f64 + 1.0;
    let mut rows = Vec::new();
    for (i, &xi) in cfg.xi_grid.iter().enumerate() {
        let seed = mix_seed(cfg.seed, i as u64);
        let counts = count_exceedances(cfg.reps, preds.len(), workers, |r, acc| {
            let mut rng = RandomSource::new(seed, r);
            let (nd, v) = latent_gpd_sample(&mut rng, cfg.n, xi)?;
            let xh = if cfg.method.needs_xi() {
                xi_hat_normalized(&nd, clip).value
            } else {
                0.0
            };
            for (k, p) in preds.iter().enumerate() {
                if v.exceeds(&p.excess(&nd, xh)?) {
                    acc[k] += 1;
                }
            }
            Ok(())
        })?;
        for (k, &ratio) in cfg.t_ratios.iter().enumerate() {
            rows.push(PerformanceResult::new(format_sig(xi, 17), ratio, anchor, counts[k], cfg.reps)?);
        }
    }
    Ok(PerformanceCurve { rows })
}

/// A full trial: samples of size `m` from `dist`, predictions from the top
/// `n`, targets expressed as `T/(M+1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub dist: DistributionSpec,
    pub m: usize,
    pub n: usize,
    pub t_ratios: Vec<f64>,
    pub reps: u64,
    pub seed: u64,
    pub method: Method,
    #[serde(default)]
    pub overrides: PredictorOverrides,
}

impl TrialConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.m >= self.n && self.n >= 3) {
            return Err(Error::invalid(format!("need m >= n >= 3 (m={}, n={})", self.m, self.n)));
        }
        if self.reps == 0 {
            return Err(Error::invalid("reps must be positive"));
        }
        if self.reps < 1000 {
            log::warn!("only {} replicates; standard errors will be large", self.reps);
        }
        self.dist.validate()
    }
}

/// Delivered return levels for one [`TrialConfig`]. The top-`n` predictor
/// is asked for `T′ = (T/(M+1))·(N+1)`, so that `T = M+1` maps to the data
/// maximum.
pub fn run_trial(cfg: &TrialConfig, workers: Option<usize>) -> Result<PerformanceCurve> {
    cfg.validate()?;
    let preds = build_predictors(cfg.method, cfg.n, &cfg.t_ratios, &cfg.overrides)?;
    let clip = preds[0].xi_clip();
    let counts = count_exceedances(cfg.reps, preds.len(), workers, |r, acc| {
        let mut rng = RandomSource::new(mix_seed(cfg.seed, 0), r);
        let x = sample(&cfg.dist, cfg.m + 1, &mut rng)?;
        let next = x[cfg.m];
        let top = select_top(&x[..cfg.m], cfg.n)?;
        let nd = normalize(&top)?;
        let v = Excess::from_value((next - top.max()) / (top.max() - top.min()));
        let xh = if cfg.method.needs_xi() {
            xi_hat_normalized(&nd, clip).value
        } else {
            0.0
        };
        for (k, p) in preds.iter().enumerate() {
            if v.exceeds(&p.excess(&nd, xh)?) {
                acc[k] += 1;
            }
        }
        Ok(())
    })?;
    let anchor = cfg.m as f64 + 1.0;
    let rows = cfg
        .t_ratios
        .iter()
        .zip(counts)
        .map(|(&ratio, c)| PerformanceResult::new(cfg.dist.label(), ratio, anchor, c, cfg.reps))
        .collect::<Result<_>>()?;
    Ok(PerformanceCurve { rows })
}

/// Monte Carlo mean and standard error of `ln(Δ_{j+1}/Δⱼ)` for each pair
/// `j = 1..N−2`, next to its exact expectation, plus the mean shape estimate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementalCheck {
    pub xi: f64,
    pub pair_mean: Vec<f64>,
    pub pair_se: Vec<f64>,
    pub pair_expected: Vec<f64>,
    pub xi_hat_mean: f64,
    pub xi_hat_se: f64,
}

pub fn elemental_check(xi: f64, n: usize, reps: u64, seed: u64, workers: Option<usize>) -> Result<ElementalCheck> {
    if n < 3 || reps < 2 {
        return Err(Error::invalid("need n >= 3 and reps >= 2"));
    }
    let m = n - 2;
    let sums = pool(workers)?.install(|| {
        (0..reps)
            .into_par_iter()
            .map(|r| {
                let mut rng = RandomSource::new(mix_seed(seed, 0), r);
                let (nd, _) = latent_gpd_sample(&mut rng, n, xi)?;
                let ls = nd.ln_spacing();
                let mut v = vec![0.0; 2 * m + 2];
                for j in 0..m {
                    let d = ls[j + 1] - ls[j];
                    v[2 * j] = d;
                    v[2 * j + 1] = d * d;
                }
                let h = xi_hat_normalized(&nd, XI_CLIP).value;
                v[2 * m] = h;
                v[2 * m + 1] = h * h;
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    // Sum in replicate order so the result is independent of the pool size.
    let mut tot = vec![0.0; 2 * m + 2];
    for v in &sums {
        tot.iter_mut().zip(v).for_each(|(a, b)| *a += b);
    }
    let k = reps as f64;
    let ms = |s: f64, s2: f64| {
        let mean = s / k;
        let var = (s2 / k - mean * mean).max(0.0) * k / (k - 1.0);
        (mean, (var / k).sqrt())
    };
    let mut pair_mean = Vec::new();
    let mut pair_se = Vec::new();
    for j in 0..m {
        let (a, b) = ms(tot[2 * j], tot[2 * j + 1]);
        pair_mean.push(a);
        pair_se.push(b);
    }
    let (xi_hat_mean, xi_hat_se) = ms(tot[2 * m], tot[2 * m + 1]);
    Ok(ElementalCheck {
        xi,
        pair_mean,
        pair_se,
        pair_expected: (1..=m).map(|j| mu_pair(xi, n, j)).collect(),
        xi_hat_mean,
        xi_hat_se,
    })
}

/// One row of [`extrapolation_demo`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtrapolationRow {
    pub t: f64,
    pub interpolated: f64,
    pub bayes_exponential: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub true_quantile: Option<f64>,
}

/// Interpolated and Bayes-exponential predictions for each `T ≥ N+1`,
/// with the true `1 − 1/T` quantile when the generating law is known.
pub fn extrapolation_demo(
    x: &OrderedSample,
    t_levels: &[f64],
    truth: Option<&GpdParams>,
) -> Result<Vec<ExtrapolationRow>> {
    t_levels
        .iter()
        .map(|&t| {
            let spec = ReturnSpec::new(x.len(), t)?;
            let interp = Predictor::new(Method::Interpolated, spec)?.predict(x)?.x_t;
            let bayes = Predictor::new(Method::BayesExponential, spec)?.predict(x)?.x_t;
            let true_quantile = truth.map(|p| gpd_quantile(1.0 - 1.0 / t, p)).transpose()?;
            Ok(ExtrapolationRow {
                t,
                interpolated: interp,
                bayes_exponential: bayes,
                true_quantile,
            })
        })
        .collect()
}

/// Result of [`tune_moderation`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TuneResult {
    pub a: f64,
    pub b: f64,
    pub objective_a: f64,
    pub objective_b: f64,
    pub table_a: f64,
    pub table_b: f64,
    pub table_objective_a: f64,
    pub table_objective_b: f64,
}

/// Per-replicate pieces of a moderated prediction: `ln u`, `ln` of the
/// geometric mean it is moderated by, and the next point's excess.
type Piece = (f64, f64, Excess);

fn objective(pieces: &[Vec<Piece>], exponent: f64, ln_t: f64) -> f64 {
    pieces
        .iter()
        .map(|reps| {
            let count = reps
                .iter()
                .filter(|(lu, lg, v)| v.exceeds(&Excess::positive(lu + exponent * lg)))
                .count() as f64;
            let delivered = reps.len() as f64 / count.max(0.5);
            (delivered.ln() - ln_t).powi(2)
        })
        .sum()
}

fn grid_search(pieces: &[Vec<Piece>], ln_t: f64, table: f64) -> (f64, f64) {
    let mut best = (table, objective(pieces, table, ln_t));
    let mut centre = table;
    let mut half = 1.5 * table.abs().max(0.5);
    for _ in 0..4 {
        for k in 0..=16 {
            let e = centre - half + half * k as f64 / 8.0;
            let o = objective(pieces, e, ln_t);
            if o < best.1 {
                best = (e, o);
            }
        }
        centre = best.0;
        half /= 4.0;
    }
    best
}

/// Choose the moderation exponents `(A, B)` for `spec` by minimising
/// `Σ (ln delivered − ln T)²` of the moderated heavy predictor over the
/// positive shapes of `xi_grid` and of the moderated bounded predictor over
/// the negative shapes, with common random numbers for every candidate.
/// The tabulated exponents are always among the candidates.
pub fn tune_moderation(spec: &ReturnSpec, xi_grid: &[f64], reps: u64, seed: u64) -> Result<TuneResult> {
    if reps < 10_000 {
        log::warn!("tuning with {reps} replicates per shape; the objective will be noisy");
    }
    let (table_a, table_b) = moderation_exponents(spec);
    let cfg = PredictorConfig::with_exponents(spec, table_a, table_b)?;
    let n = spec.n();
    let collect = |side: Side| -> Result<Vec<Vec<Piece>>> {
        xi_grid
            .iter()
            .enumerate()
            .filter(|(_, &xi)| match side {
                Side::Heavy => xi > 0.0,
                Side::Bounded => xi < 0.0,
            })
            .map(|(i, &xi)| {
                let s = mix_seed(seed, i as u64);
                (0..reps)
                    .into_par_iter()
                    .map(|r| {
                        let mut rng = RandomSource::new(s, r);
                        let (nd, v) = latent_gpd_sample(&mut rng, n, xi)?;
                        let (u, probe) = match side {
                            Side::Heavy => (u_alpha(&nd, &cfg.heavy)?, moderate(Excess::positive(0.0), &nd, 1.0, side)),
                            Side::Bounded => (u_beta(&nd, &cfg.bounded)?, moderate(Excess::positive(0.0), &nd, 1.0, side)),
                        };
                        Ok((u.ln_abs, probe.ln_abs, v))
                    })
                    .collect()
            })
            .collect()
    };
    let ln_t = spec.t().ln();
    let heavy = collect(Side::Heavy)?;
    let bounded = collect(Side::Bounded)?;
    let (a, objective_a) = grid_search(&heavy, ln_t, table_a);
    let (b, objective_b) = grid_search(&bounded, ln_t, table_b);
    Ok(TuneResult {
        a,
        b,
        objective_a,
        objective_b,
        table_a,
        table_b,
        table_objective_a: objective(&heavy, table_a, ln_t),
        table_objective_b: objective(&bounded, table_b, ln_t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delivered_examples() {
        assert_eq!(delivered_return(100, 800).unwrap().delivered_t, 8.0);
        let d = delivered_return(0, 800).unwrap();
        assert!(d.delivered_t.is_infinite() && !d.defined);
        assert_eq!(delivered_return(800, 800).unwrap().delivered_t, 1.0);
        assert!(delivered_return(801, 800).is_err());
    }

    #[test]
    fn sig_format() {
        assert_eq!(format_sig(0.3363, 17), "0.33629999999999999");
        assert_eq!(format_sig(0.3363, 10), "0.3363");
        assert_eq!(format_sig(1.0 / 3.0, 10), "0.3333333333");
        assert_eq!(format_sig(4096.0, 17), "4096");
        assert_eq!(format_sig(-2.5e-9, 10), "-2.5e-9");
        assert_eq!(format_sig(1.5e300, 10), "1.5e300");
        assert_eq!(format_sig(123456.789, 4), "123500");
        for &v in &[0.1, 1.0 / 7.0, 12345.678e-12, 9.999999999999999e22] {
            assert_eq!(format_sig(v, 17).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn latent_matches_direct_sampling() {
        // The latent representation reproduces the same t as direct GPD values.
        let mut a = RandomSource::new(9, 3);
        let mut b = RandomSource::new(9, 3);
        let xi = 0.7;
        let (nd, _) = latent_gpd_sample(&mut a, 6, xi).unwrap();
        let (e, _) = latent_draw(&mut b, 6);
        let x: Vec<f64> = e.iter().map(|&z| ((xi * z).exp() - 1.0) / xi).collect();
        let direct = normalize(&OrderedSample::new(x).unwrap()).unwrap();
        for (p, q) in nd.t().iter().zip(direct.t()) {
            assert!((p - q).abs() < 1e-12);
        }
    }

    #[test]
    fn determinism_across_workers() {
        let cfg = GpdCurveConfig {
            method: Method::Interpolated,
            n: 5,
            t_ratios: vec![1.0, 4.0],
            xi_grid: vec![-1.0, 0.5],
            reps: 3000,
            seed: 42,
            overrides: PredictorOverrides::default(),
        };
        let a = run_gpd_curve(&cfg, Some(1)).unwrap();
        let b = run_gpd_curve(&cfg, Some(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn data_max_rank_property() {
        let cfg = GpdCurveConfig {
            method: Method::DataMax,
            n: 4,
            t_ratios: vec![1.0],
            xi_grid: vec![-3.0, 0.0, 3.0],
            reps: 20_000,
            seed: 1,
            overrides: PredictorOverrides::default(),
        };
        for row in run_gpd_curve(&cfg, None).unwrap().rows {
            assert!(row.within_se(4.0), "{row:?}");
        }
    }
}

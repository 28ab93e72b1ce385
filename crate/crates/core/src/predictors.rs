//! Return-level predictors.
//!
//! Every predictor produces the scaled excess `u = s_T − 1` of the
//! prediction over the sample maximum, in units of the sample span, so that
//! `x_T = X_N + u·(X_N − X₁)`. Internally `u` is carried as a signed
//! logarithm ([`Excess`]): at extreme shape parameters the heavy-tail
//! predictors overflow `f64` and the bounded-tail ones underflow it, while
//! the comparison against the next observation stays exact in logs.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::digamma;

use crate::error::{Error, Result};
use crate::exponents::{solve_lambda_equal, solve_rho_equal, BoundedExponents, HeavyExponents, HeavyScheme, ReturnSpec};
use crate::math::{ln_expm1, ln_logistic, ln_one_minus_exp, logistic, EULER_GAMMA};
use crate::quadrature::{adaptive_upper, tanh_sinh, Tolerance};
use crate::roots::illinois;
use crate::samples::{normalize, NormalizedData, OrderedSample};

pub use crate::harness::tune_moderation;

/// Default clip for the shape estimate.
pub const XI_CLIP: f64 = 20.0;

/// Smallest log value substituted for `ln 0` (exact ties).
const LN_FLOOR: f64 = -745.0;

/// A real number stored as sign and `ln|·|`. Zero is `ln_abs = −∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Excess {
    pub ln_abs: f64,
    pub negative: bool,
}

impl Excess {
    pub const ZERO: Excess = Excess {
        ln_abs: f64::NEG_INFINITY,
        negative: false,
    };

    pub fn from_value(u: f64) -> Self {
        Self {
            ln_abs: u.abs().ln(),
            negative: u < 0.0,
        }
    }

    /// Nonnegative excess from its logarithm.
    pub fn positive(ln_abs: f64) -> Self {
        Self {
            ln_abs,
            negative: false,
        }
    }

    /// `e^(ln_s) − 1`.
    pub fn from_ln_ratio(ln_s: f64) -> Self {
        if ln_s > 0.0 {
            Self::positive(ln_expm1(ln_s))
        } else if ln_s < 0.0 {
            Self {
                ln_abs: ln_one_minus_exp(ln_s),
                negative: true,
            }
        } else {
            Self::ZERO
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ln_abs == f64::NEG_INFINITY
    }

    pub fn value(&self) -> f64 {
        let m = self.ln_abs.exp();
        if self.negative {
            -m
        } else {
            m
        }
    }

    /// Multiply by `e^(ln_k)`.
    pub fn scale_ln(self, ln_k: f64) -> Self {
        if self.is_zero() {
            return self;
        }
        Self {
            ln_abs: self.ln_abs + ln_k,
            negative: self.negative,
        }
    }

    pub fn add(self, other: Excess) -> Self {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.ln_abs >= other.ln_abs {
            (self, other)
        } else {
            (other, self)
        };
        if hi.ln_abs == f64::INFINITY {
            return hi;
        }
        let d = lo.ln_abs - hi.ln_abs;
        if hi.negative == lo.negative {
            Self {
                ln_abs: hi.ln_abs + d.exp().ln_1p(),
                negative: hi.negative,
            }
        } else if d == 0.0 {
            Self::ZERO
        } else {
            Self {
                ln_abs: hi.ln_abs + ln_one_minus_exp(d),
                negative: hi.negative,
            }
        }
    }

    /// Strict `self > other`.
    pub fn exceeds(&self, other: &Excess) -> bool {
        let sa = if self.is_zero() { 0 } else if self.negative { -1 } else { 1 };
        let sb = if other.is_zero() { 0 } else if other.negative { -1 } else { 1 };
        if sa != sb {
            return sa > sb;
        }
        match sa {
            1 => self.ln_abs > other.ln_abs,
            -1 => self.ln_abs < other.ln_abs,
            _ => false,
        }
    }

    /// `s_T = 1 + u`.
    pub fn s(&self) -> f64 {
        1.0 + self.value()
    }

    /// Prediction on the data scale, `X_N + u·(X_N − X₁)`.
    pub fn to_data(&self, nd: &NormalizedData) -> f64 {
        nd.xn() + self.value() * (nd.xn() - nd.x1())
    }
}

/// Replace `ln 0` (a tie) by the log of the smallest subnormal; finite
/// logs, however small, pass through.
fn floor_ln(v: f64) -> f64 {
    if v == f64::NEG_INFINITY {
        LN_FLOOR
    } else {
        v
    }
}

/// Heavy-tail limit predictor `∏ tⱼ^(−λⱼ) − 1`.
pub fn u_alpha(nd: &NormalizedData, h: &HeavyExponents) -> Result<Excess> {
    check_width(nd, h.lambda.len())?;
    let ln_s: f64 = nd.ln_t().iter().zip(&h.lambda).map(|(&l, &lam)| -lam * floor_ln(l)).sum();
    Ok(Excess::from_ln_ratio(ln_s))
}

/// Bounded-tail limit predictor `τ_{N−2}·τ^P/(1 − τ^P)`, `τ^P = ∏τⱼ^ρⱼ`.
pub fn u_beta(nd: &NormalizedData, b: &BoundedExponents) -> Result<Excess> {
    check_width(nd, b.rho.len())?;
    let ln_tau = nd.ln_tau();
    let ln_p: f64 = ln_tau.iter().zip(&b.rho).map(|(&l, &r)| r * floor_ln(l)).sum();
    // All τ = 1 would make the denominator vanish.
    let ln_p = ln_p.min(-f64::MIN_POSITIVE);
    let last = floor_ln(ln_tau[ln_tau.len() - 1]);
    Ok(Excess::positive(last + ln_p - ln_one_minus_exp(ln_p)))
}

fn check_width(nd: &NormalizedData, len: usize) -> Result<()> {
    if nd.ln_t().len() != len {
        return Err(Error::invalid(format!(
            "exponents are for N={}, data has N={}",
            len + 2,
            nd.n()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Heavy,
    Bounded,
}

/// Heavy: `u·τ̃^A`; bounded: `u·t̃^B`, with geometric means over `j = 1..N−2`.
pub fn moderate(u: Excess, nd: &NormalizedData, exponent: f64, which: Side) -> Excess {
    if exponent == 0.0 {
        return u;
    }
    let logs = match which {
        Side::Heavy => nd.ln_tau(),
        Side::Bounded => nd.ln_t(),
    };
    let ln_geo = logs.iter().map(|&l| floor_ln(l)).sum::<f64>() / logs.len() as f64;
    u.scale_ln(exponent * ln_geo)
}

// Moderation exponents by (N, log₂ ratio), ratios 2..4096.
const TABLE_N: [usize; 4] = [3, 7, 15, 31];
const TABLE_A: [[f64; 12]; 4] = [
    [4.0, 2.0, 1.5, 1.25, 1.0, 0.8, 0.6, 0.55, 0.5, 0.5, 0.5, 0.5],
    [2.2, 2.38, 2.57, 2.78, 3.02, 3.3, 3.6, 3.9, 4.2, 4.5, 4.8, 5.1],
    [2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0, 6.5, 7.0, 7.5, 8.0],
    [3.0, 3.5, 4.2, 5.05, 6.0, 7.0, 8.0, 9.0, 10.0, 11.0, 12.0, 13.0],
];
// N=15, ratio 128 is stored as printed (0.25); the neighbours suggest 0.025.
const TABLE_B: [[f64; 12]; 4] = [
    [0.0, -2.0, -6.0, -14.0, -30.0, -62.0, -126.0, -254.0, -510.0, -1022.0, -2046.0, -4094.0],
    [0.45, 0.3, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.0025, 0.0012, 0.0006, 0.0003],
    [0.7, 0.5, 0.3, 0.2, 0.1, 0.05, 0.25, 0.0125, 0.0063, 0.0031, 0.0016, 0.0008],
    [0.75, 0.55, 0.4, 0.3, 0.2, 0.1, 0.05, 0.025, 0.0125, 0.0063, 0.0031, 0.0016],
];

/// Tabulated moderation exponents `(A, B)` for `spec`.
///
/// Intermediate ratios are interpolated linearly in `log₂(T/(N+1))`. Sample
/// sizes or ratios outside the table use the nearest entry and log a warning.
pub fn moderation_exponents(spec: &ReturnSpec) -> (f64, f64) {
    let n = spec.n();
    let row = TABLE_N
        .iter()
        .enumerate()
        .min_by_key(|(_, &m)| m.abs_diff(n))
        .map(|(i, _)| i)
        .unwrap();
    if TABLE_N[row] != n {
        log::warn!("no moderation exponents for N={n}; using N={}", TABLE_N[row]);
    }
    let x = spec.ratio().log2();
    let pos = if !(1.0..=12.0).contains(&x) {
        log::warn!("ratio {} outside the moderation table; using the nearest entry", spec.ratio());
        x.clamp(1.0, 12.0)
    } else {
        x
    } - 1.0;
    let i = (pos.floor() as usize).min(10);
    let w = pos - i as f64;
    let lerp = |r: &[f64; 12]| r[i] + w * (r[i + 1] - r[i]);
    (lerp(&TABLE_A[row]), lerp(&TABLE_B[row]))
}

/// Everything the interpolated predictor needs for one `(N, T)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictorConfig {
    pub a_exp: f64,
    pub b_exp: f64,
    pub heavy: HeavyExponents,
    pub bounded: BoundedExponents,
    pub xi_clip: f64,
}

impl PredictorConfig {
    /// Equal-λ and equal-ρ exponents with tabulated `(A, B)`. Requires `T > N+1`.
    pub fn for_spec(spec: &ReturnSpec) -> Result<Self> {
        let (a, b) = moderation_exponents(spec);
        Self::with_exponents(spec, a, b)
    }

    pub fn with_exponents(spec: &ReturnSpec, a_exp: f64, b_exp: f64) -> Result<Self> {
        Ok(Self {
            a_exp,
            b_exp,
            heavy: solve_lambda_equal(spec)?,
            bounded: solve_rho_equal(spec)?,
            xi_clip: XI_CLIP,
        })
    }
}

/// Shape estimate from adjacent log-spacing ratios.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XiEstimate {
    pub value: f64,
    pub per_pair: Vec<f64>,
}

/// `h(c) = g̃(c) − ln|c|`, where `g̃(c) = E ln|e^(cZ) − 1|`, `Z ~ Exp(1)`.
fn h_tilde(c: f64) -> f64 {
    if c.abs() < 1e-6 {
        return c / 2.0 - EULER_GAMMA;
    }
    let x = 1.0 / c.abs();
    let core = -(digamma(1.0 + x) - x.ln()) - EULER_GAMMA;
    if c > 0.0 {
        c + core
    } else {
        core
    }
}

/// `g̃(c) = E ln|e^(cZ) − 1|` in closed form (digamma).
pub fn g_tilde(c: f64) -> f64 {
    if c == 0.0 {
        return f64::NEG_INFINITY;
    }
    c.abs().ln() + h_tilde(c)
}

/// `g̃(c)` by direct quadrature of `∫₀^∞ e^(−z) ln|e^(cz) − 1| dz`.
pub fn g_tilde_quadrature(c: f64) -> Result<f64> {
    if c == 0.0 {
        return Err(Error::domain("g̃ diverges at c = 0"));
    }
    let f = |z: f64| {
        let l = if c > 0.0 { ln_expm1(c * z) } else { ln_one_minus_exp(c * z) };
        (-z).exp() * l
    };
    let tol = Tolerance::new(1e-10, 1e-10);
    let near = tanh_sinh(|z, _| f(z), 0.0, 1.0, tol)?;
    let far = adaptive_upper(f, 1.0, tol)?;
    Ok(near.value + far.value)
}

/// `E[ln(Δ_{j+1}/Δⱼ) | ξ]` for GPD spacings of an `N`-sample, `j = 1..N−2`.
pub fn mu_pair(xi: f64, n: usize, j: usize) -> f64 {
    let k = (n - j) as f64;
    xi / k + (k / (k - 1.0)).ln() + h_tilde(xi / (k - 1.0)) - h_tilde(xi / k)
}

/// Elemental shape estimate from adjacent log-spacing ratios.
///
/// `value` solves `Σⱼ [ln(Δ_{j+1}/Δⱼ) − μ_pair(ξ)] = 0`, clipped to `±clip`.
/// `per_pair` holds the root of each pair's own equation. Their mean is not
/// used as the estimate: μ_pair is steeper for ξ > 0 than for ξ < 0, so
/// single-pair roots are skewed negative (about −0.3 at N = 7).
pub fn xi_hat_normalized(nd: &NormalizedData, clip: f64) -> XiEstimate {
    let n = nd.n();
    let ls = nd.ln_spacing();
    let ratio = |j: usize| {
        let r = ls[j] - ls[j - 1];
        if r.is_nan() {
            mu_pair(0.0, n, j)
        } else {
            r
        }
    };
    let root = |f: &dyn Fn(f64) -> f64| {
        if f(-clip) >= 0.0 {
            -clip
        } else if f(clip) <= 0.0 {
            clip
        } else {
            illinois(f, -clip, clip, 1e-12).unwrap_or(0.0)
        }
    };
    let per_pair: Vec<f64> = (1..=n - 2)
        .map(|j| {
            let r = ratio(j);
            root(&|xi| mu_pair(xi, n, j) - r)
        })
        .collect();
    let rs: Vec<f64> = (1..=n - 2).map(ratio).collect();
    let value = root(&|xi| (1..=n - 2).map(|j| mu_pair(xi, n, j) - rs[j - 1]).sum::<f64>());
    XiEstimate { value, per_pair }
}

/// Shape estimate of a strictly increasing sample.
pub fn xi_hat(x: &OrderedSample) -> Result<XiEstimate> {
    crate::samples::spacings(x)?;
    Ok(xi_hat_normalized(&normalize(x)?, XI_CLIP))
}

/// Logistic weights `(f₁, f₂)` on the heavy and bounded components.
pub fn blend_weights(xi: &XiEstimate) -> (f64, f64) {
    let f1 = logistic(xi.value);
    (f1, logistic(-xi.value))
}

/// Components of one interpolated prediction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InterpolatedParts {
    pub u: Excess,
    pub u_alpha_star: Excess,
    pub u_beta_star: Excess,
    pub f1: f64,
}

/// `u_T = f₁·τ̃^A·u_α + f₂·t̃^B·u_β` for a given shape estimate.
pub fn interpolated_excess(nd: &NormalizedData, xi: f64, cfg: &PredictorConfig) -> Result<InterpolatedParts> {
    let ua = moderate(u_alpha(nd, &cfg.heavy)?, nd, cfg.a_exp, Side::Heavy);
    let ub = moderate(u_beta(nd, &cfg.bounded)?, nd, cfg.b_exp, Side::Bounded);
    let u = ua.scale_ln(ln_logistic(xi)).add(ub.scale_ln(ln_logistic(-xi)));
    Ok(InterpolatedParts {
        u,
        u_alpha_star: ua,
        u_beta_star: ub,
        f1: logistic(xi),
    })
}

/// Interpolated prediction on the data scale. Returns `X_N` at `T = N+1`.
pub fn predict_interpolated(x: &OrderedSample, spec: &ReturnSpec, cfg: &PredictorConfig) -> Result<f64> {
    check_spec(x, spec)?;
    if spec.is_data_max() {
        return Ok(x.max());
    }
    let nd = normalize(x)?;
    let xi = xi_hat_normalized(&nd, cfg.xi_clip);
    Ok(interpolated_excess(&nd, xi.value, cfg)?.u.to_data(&nd))
}

/// Excess of the 1/σ Bayesian predictor for exponential data.
pub fn bayes_exponential_excess(nd: &NormalizedData, spec: &ReturnSpec) -> Excess {
    let n = nd.n() as f64;
    let sum_t: f64 = nd.t().iter().sum();
    let ln_s = (1.0 + sum_t).ln() + ln_expm1((n * spec.t() / (n + 1.0)).ln() / (n - 1.0));
    Excess::from_ln_ratio(ln_s)
}

/// Excess of the 1/σ Bayesian predictor for uniform data (a constant).
pub fn bayes_uniform_excess(n: usize, spec: &ReturnSpec) -> Excess {
    Excess::from_ln_ratio(spec.ratio().ln() / (n as f64 - 1.0))
}

/// `s_T = (1+Σtⱼ)·[(NT/(N+1))^(1/(N−1)) − 1]`; may fall below the data maximum.
pub fn predict_bayes_exponential(x: &OrderedSample, spec: &ReturnSpec) -> Result<f64> {
    check_spec(x, spec)?;
    let nd = normalize(x)?;
    Ok(bayes_exponential_excess(&nd, spec).to_data(&nd))
}

/// `s_T = (T/(N+1))^(1/(N−1))`.
pub fn predict_bayes_uniform(x: &OrderedSample, spec: &ReturnSpec) -> Result<f64> {
    check_spec(x, spec)?;
    let nd = normalize(x)?;
    Ok(bayes_uniform_excess(nd.n(), spec).to_data(&nd))
}

fn check_spec(x: &OrderedSample, spec: &ReturnSpec) -> Result<()> {
    if x.len() != spec.n() {
        return Err(Error::invalid(format!(
            "sample has {} points but the return spec is for N={}",
            x.len(),
            spec.n()
        )));
    }
    Ok(())
}

/// Predictor selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    DataMax,
    HeavyEqual,
    HeavyEqualFactor,
    HeavyMinLog,
    BoundedEqual,
    ModeratedHeavy,
    ModeratedBounded,
    Interpolated,
    #[serde(rename = "bayes-exp")]
    BayesExponential,
    #[serde(rename = "bayes-unif")]
    BayesUniform,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::DataMax => "data-max",
            Method::HeavyEqual => "heavy-equal",
            Method::HeavyEqualFactor => "heavy-equal-factor",
            Method::HeavyMinLog => "heavy-min-log",
            Method::BoundedEqual => "bounded-equal",
            Method::ModeratedHeavy => "moderated-heavy",
            Method::ModeratedBounded => "moderated-bounded",
            Method::Interpolated => "interpolated",
            Method::BayesExponential => "bayes-exp",
            Method::BayesUniform => "bayes-unif",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::invalid(format!("unknown method '{s}'")))
    }

    /// Whether the method uses the shape estimate.
    pub fn needs_xi(&self) -> bool {
        matches!(self, Method::Interpolated)
    }
}

/// Optional overrides for building a [`Predictor`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredictorOverrides {
    pub a_exp: Option<f64>,
    pub b_exp: Option<f64>,
    pub xi_clip: Option<f64>,
}

/// A method prepared for one `(N, T)`: exponents solved once, applied to
/// many samples.
#[derive(Clone, Debug, PartialEq)]
pub struct Predictor {
    pub method: Method,
    pub spec: ReturnSpec,
    heavy: Option<HeavyExponents>,
    bounded: Option<BoundedExponents>,
    cfg: Option<PredictorConfig>,
}

impl Predictor {
    pub fn new(method: Method, spec: ReturnSpec) -> Result<Self> {
        Self::with_overrides(method, spec, &PredictorOverrides::default())
    }

    pub fn with_overrides(method: Method, spec: ReturnSpec, o: &PredictorOverrides) -> Result<Self> {
        let mut p = Self {
            method,
            spec,
            heavy: None,
            bounded: None,
            cfg: None,
        };
        let anchored = !matches!(method, Method::BayesExponential | Method::BayesUniform | Method::DataMax);
        if anchored && spec.ratio() < 1.0 {
            return Err(Error::invalid(format!(
                "{} needs T >= N+1 (N={}, T={})",
                method.name(),
                spec.n(),
                spec.t()
            )));
        }
        if !anchored || spec.is_data_max() {
            return Ok(p);
        }
        let scheme = match method {
            Method::HeavyEqualFactor => Some(HeavyScheme::EqualFactor),
            Method::HeavyMinLog => Some(HeavyScheme::MinLog),
            Method::HeavyEqual | Method::ModeratedHeavy => Some(HeavyScheme::Equal),
            _ => None,
        };
        if let Some(s) = scheme {
            p.heavy = Some(s.solve(&spec)?);
        }
        if matches!(method, Method::BoundedEqual | Method::ModeratedBounded) {
            p.bounded = Some(solve_rho_equal(&spec)?);
        }
        if matches!(method, Method::ModeratedHeavy | Method::ModeratedBounded | Method::Interpolated) {
            let (a, b) = moderation_exponents(&spec);
            let mut cfg = PredictorConfig::with_exponents(&spec, o.a_exp.unwrap_or(a), o.b_exp.unwrap_or(b))?;
            if let Some(c) = o.xi_clip {
                if !(c > 0.0) {
                    return Err(Error::invalid("xi_clip must be positive"));
                }
                cfg.xi_clip = c;
            }
            p.cfg = Some(cfg);
        }
        Ok(p)
    }

    pub fn config(&self) -> Option<&PredictorConfig> {
        self.cfg.as_ref()
    }

    pub fn xi_clip(&self) -> f64 {
        self.cfg.as_ref().map_or(XI_CLIP, |c| c.xi_clip)
    }

    /// Scaled excess for normalised data; `xi` is only read by the
    /// interpolated method.
    pub fn excess(&self, nd: &NormalizedData, xi: f64) -> Result<Excess> {
        if nd.n() != self.spec.n() {
            return Err(Error::invalid(format!(
                "predictor is for N={}, data has N={}",
                self.spec.n(),
                nd.n()
            )));
        }
        match self.method {
            Method::BayesExponential => return Ok(bayes_exponential_excess(nd, &self.spec)),
            Method::BayesUniform => return Ok(bayes_uniform_excess(nd.n(), &self.spec)),
            _ => {}
        }
        if self.method == Method::DataMax || self.spec.is_data_max() {
            return Ok(Excess::ZERO);
        }
        let cfg = self.cfg.as_ref();
        Ok(match self.method {
            Method::HeavyEqual | Method::HeavyEqualFactor | Method::HeavyMinLog => {
                u_alpha(nd, self.heavy.as_ref().unwrap())?
            }
            Method::BoundedEqual => u_beta(nd, self.bounded.as_ref().unwrap())?,
            Method::ModeratedHeavy => {
                let c = cfg.unwrap();
                moderate(u_alpha(nd, &c.heavy)?, nd, c.a_exp, Side::Heavy)
            }
            Method::ModeratedBounded => {
                let c = cfg.unwrap();
                moderate(u_beta(nd, &c.bounded)?, nd, c.b_exp, Side::Bounded)
            }
            Method::Interpolated => interpolated_excess(nd, xi, cfg.unwrap())?.u,
            _ => unreachable!(),
        })
    }

    /// Full report for one sample.
    pub fn predict(&self, x: &OrderedSample) -> Result<PredictionReport> {
        check_spec(x, &self.spec)?;
        let nd = normalize(x)?;
        let xi = xi_hat_normalized(&nd, self.xi_clip());
        let (f1, _) = blend_weights(&xi);
        let mut components = None;
        let u = if self.method == Method::Interpolated && !self.spec.is_data_max() {
            let parts = interpolated_excess(&nd, xi.value, self.cfg.as_ref().unwrap())?;
            components = Some(Components {
                u_alpha_star: parts.u_alpha_star.value(),
                u_beta_star: parts.u_beta_star.value(),
            });
            parts.u
        } else {
            self.excess(&nd, xi.value)?
        };
        Ok(PredictionReport {
            x_t: u.to_data(&nd),
            s_t: u.s(),
            xi_hat: xi.value,
            f1,
            components,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Components {
    pub u_alpha_star: f64,
    pub u_beta_star: f64,
}

/// Output of [`Predictor::predict`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictionReport {
    #[serde(rename = "x_T")]
    pub x_t: f64,
    #[serde(rename = "s_T")]
    pub s_t: f64,
    pub xi_hat: f64,
    pub f1: f64,
    pub components: Option<Components>,
}

//! Generalised Pareto and trial distributions: CDFs, quantiles and seeded sampling.
//!
//! Every variate is produced from exactly one uniform draw (inverse CDF), so
//! the number of random numbers consumed by a replicate is fixed and
//! replicates stay reproducible per stream. The optional location-scale
//! randomisation consumes two further uniforms per call to [`sample`].

use serde::{Deserialize, Serialize};
use statrs::distribution::{Beta, ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Below this |ξ| the GPD formulas switch to their exponential limits.
pub const XI_ZERO: f64 = 1e-8;

/// Location μ, scale σ and shape ξ of a generalised Pareto distribution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GpdParams {
    pub mu: f64,
    pub sigma: f64,
    pub xi: f64,
}

impl GpdParams {
    pub fn new(mu: f64, sigma: f64, xi: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::invalid(format!("GPD scale must be positive, got {sigma}")));
        }
        if !mu.is_finite() || !xi.is_finite() {
            return Err(Error::invalid("GPD location and shape must be finite"));
        }
        Ok(Self { mu, sigma, xi })
    }

    pub fn standard(xi: f64) -> Self {
        Self {
            mu: 0.0,
            sigma: 1.0,
            xi,
        }
    }

    /// α = 1/ξ for heavy tails.
    pub fn alpha(&self) -> Option<f64> {
        (self.xi >= XI_ZERO).then(|| 1.0 / self.xi)
    }

    /// β = −1/ξ for bounded tails.
    pub fn beta(&self) -> Option<f64> {
        (self.xi <= -XI_ZERO).then(|| -1.0 / self.xi)
    }

    /// Upper end of the support (`+∞` unless ξ < 0).
    pub fn upper_bound(&self) -> f64 {
        if self.xi < -XI_ZERO {
            self.mu - self.sigma / self.xi
        } else {
            f64::INFINITY
        }
    }
}

pub fn gpd_cdf(x: f64, p: &GpdParams) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::invalid(format!("gpd_cdf needs finite x, got {x}")));
    }
    let z = (x - p.mu) / p.sigma;
    if z <= 0.0 {
        return Ok(0.0);
    }
    if p.xi.abs() < XI_ZERO {
        return Ok(-(-z).exp_m1());
    }
    let base = p.xi * z;
    if base <= -1.0 {
        return Ok(1.0);
    }
    // 1 − (1 + ξz)^(−1/ξ), written to keep precision in the lower tail.
    Ok(-(-(base.ln_1p()) / p.xi).exp_m1())
}

pub fn gpd_quantile(q: f64, p: &GpdParams) -> Result<f64> {
    if !(0.0..1.0).contains(&q) {
        return Err(Error::invalid(format!("quantile level must lie in [0, 1), got {q}")));
    }
    let e = -(-q).ln_1p();
    Ok(p.mu + p.sigma * gpd_excess_from_exponential(e, p.xi))
}

/// Standardised GPD value `((e^(ξE)) − 1)/ξ` for a standard exponential `E`.
pub(crate) fn gpd_excess_from_exponential(e: f64, xi: f64) -> f64 {
    if xi.abs() < XI_ZERO {
        e
    } else {
        (xi * e).exp_m1() / xi
    }
}

/// Distribution families used for trials.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    Gpd { xi: f64 },
    Uniform,
    Normal,
    HalfCauchy,
    Cauchy,
    /// `F(y) = 1 − (1 + y^a)^(−b)`, `y ≥ 0`.
    Burr { a: f64, b: f64 },
    /// Burr with `(a, b)` redrawn for every sample.
    RandomizedBurr,
    /// `F(y) = 1 − exp(−y^k)`.
    Weibull { shape: f64 },
    Beta { a: f64, b: f64 },
    /// Mixture: mass `1 − p_high` uniform on `[0, low]`, mass `p_high` uniform on `[high, 1]`.
    TwoPopulation { low: f64, high: f64, p_high: f64 },
}

/// A family plus location `mu` and scale `sigma`, with optional per-sample
/// randomisation of the location and scale.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub struct DistributionSpec {
    pub family: Family,
    pub mu: f64,
    pub sigma: f64,
    pub randomize_loc_scale: bool,
}

impl DistributionSpec {
    pub fn new(family: Family) -> Result<Self> {
        let spec = Self {
            family,
            mu: 0.0,
            sigma: 1.0,
            randomize_loc_scale: false,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn gpd(params: GpdParams) -> Self {
        Self {
            family: Family::Gpd { xi: params.xi },
            mu: params.mu,
            sigma: params.sigma,
            randomize_loc_scale: false,
        }
    }

    pub fn with_loc_scale(mut self, mu: f64, sigma: f64) -> Result<Self> {
        self.mu = mu;
        self.sigma = sigma;
        self.validate()?;
        Ok(self)
    }

    pub fn randomized(mut self, on: bool) -> Self {
        self.randomize_loc_scale = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0) || !self.sigma.is_finite() || !self.mu.is_finite() {
            return Err(Error::invalid("distribution needs finite mu and positive sigma"));
        }
        match self.family {
            Family::Gpd { xi } if !xi.is_finite() => Err(Error::invalid("GPD shape must be finite")),
            Family::Burr { a, b } if !(a > 0.0 && b > 0.0) => {
                Err(Error::invalid(format!("Burr shapes must be positive (a={a}, b={b})")))
            }
            Family::Weibull { shape } if !(shape > 0.0) => Err(Error::invalid("Weibull shape must be positive")),
            Family::Beta { a, b } if !(a > 0.0 && b > 0.0) => Err(Error::invalid("Beta shapes must be positive")),
            Family::TwoPopulation { low, high, p_high }
                if !(0.0 < low && low <= high && high < 1.0 && 0.0 < p_high && p_high < 1.0) =>
            {
                Err(Error::invalid("two-population needs 0 < low <= high < 1 and 0 < p_high < 1"))
            }
            _ => Ok(()),
        }
    }

    /// Short label used as the axis value of trial curves.
    pub fn label(&self) -> String {
        match self.family {
            Family::Gpd { xi } => format!("gpd(xi={xi})"),
            Family::Uniform => "uniform".into(),
            Family::Normal => "normal".into(),
            Family::HalfCauchy => "half_cauchy".into(),
            Family::Cauchy => "cauchy".into(),
            Family::Burr { a, b } => format!("burr(a={a},b={b})"),
            Family::RandomizedBurr => "randomized_burr".into(),
            Family::Weibull { shape } => format!("weibull(k={shape})"),
            Family::Beta { a, b } => format!("beta(a={a},b={b})"),
            Family::TwoPopulation { low, high, p_high } => {
                format!("two_population(low={low},high={high},p={p_high})")
            }
        }
    }

    /// CDF of the (non-randomised) distribution.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::invalid(format!("cdf needs finite x, got {x}")));
        }
        let y = (x - self.mu) / self.sigma;
        let v = match self.family {
            Family::Gpd { xi } => return gpd_cdf(x, &GpdParams::new(self.mu, self.sigma, xi)?),
            Family::Uniform => y.clamp(0.0, 1.0),
            Family::Normal => std_normal().cdf(y),
            Family::HalfCauchy => {
                if y <= 0.0 {
                    0.0
                } else {
                    2.0 / std::f64::consts::PI * y.atan()
                }
            }
            Family::Cauchy => 0.5 + y.atan() / std::f64::consts::PI,
            Family::Burr { a, b } => burr_cdf(y, a, b),
            Family::RandomizedBurr => {
                return Err(Error::invalid("randomised Burr has no fixed CDF"));
            }
            Family::Weibull { shape } => {
                if y <= 0.0 {
                    0.0
                } else {
                    -(-y.powf(shape)).exp_m1()
                }
            }
            Family::Beta { a, b } => {
                if y <= 0.0 {
                    0.0
                } else if y >= 1.0 {
                    1.0
                } else {
                    beta_dist(a, b)?.cdf(y)
                }
            }
            Family::TwoPopulation { low, high, p_high } => {
                if y <= 0.0 {
                    0.0
                } else if y <= low {
                    (1.0 - p_high) * y / low
                } else if y <= high {
                    1.0 - p_high
                } else if y < 1.0 {
                    1.0 - p_high + p_high * (y - high) / (1.0 - high)
                } else {
                    1.0
                }
            }
        };
        Ok(v)
    }

    /// Quantile function of the (non-randomised) distribution, `q ∈ (0, 1)`.
    pub fn quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::invalid(format!("quantile level must lie in (0, 1), got {q}")));
        }
        if let Family::RandomizedBurr = self.family {
            return Err(Error::invalid("randomised Burr has no fixed quantile function"));
        }
        Ok(self.mu + self.sigma * standard_quantile(self.family, q)?)
    }
}

fn std_normal() -> Normal {
    Normal::standard()
}

fn beta_dist(a: f64, b: f64) -> Result<Beta> {
    Beta::new(a, b).map_err(|e| Error::invalid(format!("beta distribution: {e}")))
}

fn burr_cdf(y: f64, a: f64, b: f64) -> f64 {
    if y <= 0.0 {
        0.0
    } else {
        // 1 − (1 + y^a)^(−b)
        -(-b * y.powf(a).ln_1p()).exp_m1()
    }
}

fn burr_quantile(q: f64, a: f64, b: f64) -> f64 {
    // y = ((1 − q)^(−1/b) − 1)^(1/a)
    (-(-q).ln_1p() / b).exp_m1().powf(1.0 / a)
}

fn standard_quantile(family: Family, q: f64) -> Result<f64> {
    let pi = std::f64::consts::PI;
    Ok(match family {
        Family::Gpd { xi } => gpd_excess_from_exponential(-(-q).ln_1p(), xi),
        Family::Uniform => q,
        Family::Normal => std_normal().inverse_cdf(q),
        Family::HalfCauchy => (0.5 * pi * q).tan(),
        Family::Cauchy => (pi * (q - 0.5)).tan(),
        Family::Burr { a, b } => burr_quantile(q, a, b),
        Family::RandomizedBurr => unreachable!("handled by caller"),
        Family::Weibull { shape } => (-(-q).ln_1p()).powf(1.0 / shape),
        Family::Beta { a, b } => beta_dist(a, b)?.inverse_cdf(q),
        Family::TwoPopulation { low, high, p_high } => {
            let split = 1.0 - p_high;
            if q < split {
                low * q / split
            } else {
                high + (1.0 - high) * (q - split) / p_high
            }
        }
    })
}

/// Location/scale randomisation law: μ ~ N(0, 10²), σ = 0.1 + |N(0, 10²)|.
pub fn draw_loc_scale(rng: &mut RandomSource) -> (f64, f64) {
    let n = std_normal();
    let mu = 10.0 * n.inverse_cdf(rng.uniform());
    let sigma = 0.1 + (10.0 * n.inverse_cdf(rng.uniform())).abs();
    (mu, sigma)
}

/// Shape law of the randomised Burr: `0.5 + |N(1.5, 1)|`, capped at 6.
pub fn draw_burr_shapes(rng: &mut RandomSource) -> (f64, f64) {
    let n = std_normal();
    let mut draw = || (0.5 + (1.5 + n.inverse_cdf(rng.uniform())).abs()).min(6.0);
    let a = draw();
    let b = draw();
    (a, b)
}

/// Draw `m` i.i.d. values.
pub fn sample(spec: &DistributionSpec, m: usize, rng: &mut RandomSource) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::invalid("sample size must be at least 1"));
    }
    spec.validate()?;
    let (mu, sigma) = if spec.randomize_loc_scale {
        draw_loc_scale(rng)
    } else {
        (spec.mu, spec.sigma)
    };
    let family = match spec.family {
        Family::RandomizedBurr => {
            let (a, b) = draw_burr_shapes(rng);
            Family::Burr { a, b }
        }
        f => f,
    };
    (0..m)
        .map(|_| Ok(mu + sigma * standard_quantile(family, rng.uniform())?))
        .collect()
}

/// Wire format: a flat JSON object tagged by `kind`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    xi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shape: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    low: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    high: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p_high: Option<f64>,
    #[serde(default)]
    randomize_loc_scale: bool,
}

impl TryFrom<SpecJson> for DistributionSpec {
    type Error = Error;

    fn try_from(j: SpecJson) -> Result<Self> {
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| Error::Config(format!("distribution kind '{}' requires '{name}'", j.kind)))
        };
        let family = match j.kind.as_str() {
            "gpd" => Family::Gpd { xi: need(j.xi, "xi")? },
            "uniform" => Family::Uniform,
            "normal" => Family::Normal,
            "half_cauchy" => Family::HalfCauchy,
            "cauchy" => Family::Cauchy,
            "burr" => Family::Burr {
                a: need(j.a, "a")?,
                b: need(j.b, "b")?,
            },
            "randomized_burr" => Family::RandomizedBurr,
            "weibull" => Family::Weibull {
                shape: need(j.shape, "shape")?,
            },
            "beta" => Family::Beta {
                a: need(j.a, "a")?,
                b: need(j.b, "b")?,
            },
            "two_population" => Family::TwoPopulation {
                low: need(j.low, "low")?,
                high: need(j.high, "high")?,
                p_high: need(j.p_high, "p_high")?,
            },
            other => return Err(Error::Config(format!("unknown distribution kind '{other}'"))),
        };
        let spec = DistributionSpec {
            family,
            mu: j.mu.unwrap_or(0.0),
            sigma: j.sigma.unwrap_or(1.0),
            randomize_loc_scale: j.randomize_loc_scale,
        };
        spec.validate().map_err(|e| Error::Config(e.to_string()))?;
        Ok(spec)
    }
}

impl From<DistributionSpec> for SpecJson {
    fn from(s: DistributionSpec) -> Self {
        let mut j = SpecJson {
            mu: Some(s.mu),
            sigma: Some(s.sigma),
            randomize_loc_scale: s.randomize_loc_scale,
            ..Default::default()
        };
        j.kind = match s.family {
            Family::Gpd { xi } => {
                j.xi = Some(xi);
                "gpd"
            }
            Family::Uniform => "uniform",
            Family::Normal => "normal",
            Family::HalfCauchy => "half_cauchy",
            Family::Cauchy => "cauchy",
            Family::Burr { a, b } => {
                j.a = Some(a);
                j.b = Some(b);
                "burr"
            }
            Family::RandomizedBurr => "randomized_burr",
            Family::Weibull { shape } => {
                j.shape = Some(shape);
                "weibull"
            }
            Family::Beta { a, b } => {
                j.a = Some(a);
                j.b = Some(b);
                "beta"
            }
            Family::TwoPopulation { low, high, p_high } => {
                j.low = Some(low);
                j.high = Some(high);
                j.p_high = Some(p_high);
                "two_population"
            }
        }
        .to_string();
        j
    }
}

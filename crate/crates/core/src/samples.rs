//! Ordered samples, spacings and the location-scale-free statistics `t`.
//!
//! [`NormalizedData`] keeps `ln tⱼ`, `ln τⱼ` and the log-spacings alongside
//! `t`. Predictors and the Monte Carlo harness work from the logs: for very
//! heavy or very short tails the raw `tⱼ` or `τⱼ = 1 − tⱼ` routinely fall far
//! below `1e−300` relative to the span, and both would round to 0 or 1.

use std::path::Path;

use crate::error::{Error, Result};
use crate::math::ln_sum_exp;
use crate::rng::RandomSource;

/// Sorted observations, `N ≥ 3`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderedSample {
    values: Vec<f64>,
}

impl OrderedSample {
    /// Sorts `values` ascending. Non-finite values are rejected.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::invalid(format!(
                "an ordered sample needs at least 3 values, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("sample contains a non-finite value"));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Apply `x ↦ a·x + b` (`a > 0`).
    pub fn affine(&self, a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::invalid("affine scale must be positive"));
        }
        Self::new(self.values.iter().map(|&x| a * x + b).collect())
    }
}

/// Consecutive differences `Δⱼ = X₍ⱼ₊₁₎ − X₍ⱼ₎`, all strictly positive.
#[derive(Clone, Debug, PartialEq)]
pub struct Spacings {
    pub delta: Vec<f64>,
}

pub fn spacings(x: &OrderedSample) -> Result<Spacings> {
    let delta: Vec<f64> = x.values.windows(2).map(|w| w[1] - w[0]).collect();
    if let Some(j) = delta.iter().position(|&d| !(d > 0.0)) {
        return Err(Error::degenerate(format!(
            "tie between order statistics {} and {}",
            j + 1,
            j + 2
        )));
    }
    Ok(Spacings { delta })
}

/// Normalised statistics of an ordered sample of size `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedData {
    t: Vec<f64>,
    ln_t: Vec<f64>,
    ln_tau: Vec<f64>,
    /// `ln(Δᵢ / (X_N − X₁))`, `i = 1..N−1`.
    ln_spacing: Vec<f64>,
    x1: f64,
    xn: f64,
}

impl NormalizedData {
    /// Build from log-spacings `ln Δ₁ … ln Δ_{N−1}` given up to a common
    /// additive constant. Entries may be `-∞` (ties) as long as the span is
    /// positive. `x1`, `xn` are the data extremes used for [`denormalize`].
    pub fn from_log_spacings(ln_delta: &[f64], x1: f64, xn: f64) -> Result<Self> {
        let n = ln_delta.len() + 1;
        if n < 3 {
            return Err(Error::invalid("need at least 3 order statistics"));
        }
        if ln_delta.iter().any(|v| v.is_nan() || *v == f64::INFINITY) {
            return Err(Error::invalid("log-spacings must be finite or -inf"));
        }
        let ln_span = ln_sum_exp(ln_delta);
        if ln_span == f64::NEG_INFINITY {
            return Err(Error::degenerate("sample has no spread (X₁ = X_N)"));
        }
        let ln_spacing: Vec<f64> = ln_delta.iter().map(|d| d - ln_span).collect();
        let mut ln_t = Vec::with_capacity(n - 2);
        let mut ln_tau = Vec::with_capacity(n - 2);
        for j in 1..=n - 2 {
            ln_t.push(ln_sum_exp(&ln_spacing[..j]).min(0.0));
            ln_tau.push(ln_sum_exp(&ln_spacing[j..]).min(0.0));
        }
        let t = ln_t.iter().map(|v| v.exp()).collect();
        Ok(Self {
            t,
            ln_t,
            ln_tau,
            ln_spacing,
            x1,
            xn,
        })
    }

    /// Build from exact `t` and `τ = 1 − t` pairs (both supplied so that
    /// neither loses precision near its end of the interval).
    pub fn from_t_tau(t: &[f64], tau: &[f64]) -> Result<Self> {
        if t.is_empty() || t.len() != tau.len() {
            return Err(Error::invalid("t and tau must be non-empty and equally long"));
        }
        for (j, (&a, &b)) in t.iter().zip(tau).enumerate() {
            if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
                return Err(Error::invalid(format!("t[{j}]={a}, tau[{j}]={b} outside [0, 1]")));
            }
            if j > 0 && a < t[j - 1] {
                return Err(Error::invalid("t must be nondecreasing"));
            }
        }
        let m = t.len();
        let mut ln_spacing = Vec::with_capacity(m + 1);
        ln_spacing.push(t[0].ln());
        for j in 1..m {
            ln_spacing.push((t[j] - t[j - 1]).ln());
        }
        ln_spacing.push(tau[m - 1].ln());
        Ok(Self {
            t: t.to_vec(),
            ln_t: t.iter().map(|v| v.ln()).collect(),
            ln_tau: tau.iter().map(|v| v.ln()).collect(),
            ln_spacing,
            x1: 0.0,
            xn: 1.0,
        })
    }

    /// Sample size `N`.
    pub fn n(&self) -> usize {
        self.t.len() + 2
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    /// `τⱼ = 1 − tⱼ`.
    pub fn tau(&self) -> impl Iterator<Item = f64> + '_ {
        self.ln_tau.iter().map(|v| v.exp())
    }

    pub fn ln_t(&self) -> &[f64] {
        &self.ln_t
    }

    pub fn ln_tau(&self) -> &[f64] {
        &self.ln_tau
    }

    /// Log-spacings relative to the data span, length `N − 1`.
    pub fn ln_spacing(&self) -> &[f64] {
        &self.ln_spacing
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn xn(&self) -> f64 {
        self.xn
    }
}

/// `tⱼ = (X_{j+1} − X₁)/(X_N − X₁)`, `j = 1..N−2`.
pub fn normalize(x: &OrderedSample) -> Result<NormalizedData> {
    let v = &x.values;
    let n = v.len();
    let (x1, xn) = (v[0], v[n - 1]);
    let span = xn - x1;
    if !(span > 0.0) {
        return Err(Error::degenerate("sample has no spread (X₁ = X_N)"));
    }
    let t: Vec<f64> = v[1..n - 1].iter().map(|&xj| (xj - x1) / span).collect();
    let ln_t = t.iter().map(|v| v.ln()).collect();
    let ln_tau = v[1..n - 1].iter().map(|&xj| ((xn - xj) / span).ln()).collect();
    let ln_spacing = v.windows(2).map(|w| ((w[1] - w[0]) / span).ln()).collect();
    Ok(NormalizedData {
        t,
        ln_t,
        ln_tau,
        ln_spacing,
        x1,
        xn,
    })
}

/// `x = X₁ + s·(X_N − X₁)`.
pub fn denormalize(s: f64, nd: &NormalizedData) -> f64 {
    nd.x1 + s * (nd.xn - nd.x1)
}

/// The `n` largest values of `x`, ascending.
pub fn select_top(x: &[f64], n: usize) -> Result<OrderedSample> {
    if n < 3 {
        return Err(Error::invalid(format!("top-N selection needs n >= 3, got {n}")));
    }
    if x.len() < n {
        return Err(Error::invalid(format!(
            "cannot select the top {n} of {} values",
            x.len()
        )));
    }
    let mut v = x.to_vec();
    if v.iter().any(|a| a.is_nan()) {
        return Err(Error::invalid("sample contains NaN"));
    }
    let cut = v.len() - n;
    if cut > 0 {
        v.select_nth_unstable_by(cut, f64::total_cmp);
    }
    OrderedSample::new(v.split_off(cut))
}

/// Break ties by adding uniform noise of magnitude `1e−9·(X_N − X₁)`.
/// Never applied implicitly.
pub fn jitter(x: &[f64], rng: &mut RandomSource) -> Vec<f64> {
    let lo = x.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let scale = 1e-9 * (hi - lo);
    x.iter().map(|&v| v + scale * (2.0 * rng.uniform() - 1.0)).collect()
}

/// Read one real per line. `#` starts a comment; for CSV input the first
/// column is used and a non-numeric first line is treated as a header.
pub fn read_data_file(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)?;
    parse_data(&text)
}

pub fn parse_data(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut first = true;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let field = line.split(',').next().unwrap_or("").trim().trim_matches('"');
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => out.push(v),
            _ if first => {}
            _ => {
                return Err(Error::invalid(format!(
                    "line {}: cannot parse '{field}' as a number",
                    lineno + 1
                )))
            }
        }
        first = false;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[f64]) -> OrderedSample {
        OrderedSample::new(v.to_vec()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let nd = normalize(&os(&[0.0, 0.25, 1.0])).unwrap();
        assert_eq!(nd.t(), &[0.25]);
        let nd = normalize(&os(&[1.0, 2.0, 3.0, 4.0])).unwrap();
        assert!((nd.t()[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((nd.t()[1] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn normalize_errors() {
        assert!(matches!(
            normalize(&os(&[2.0, 2.0, 2.0])),
            Err(Error::DegenerateSample(_))
        ));
        assert!(matches!(OrderedSample::new(vec![1.0, 2.0]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn affine_invariance() {
        let x = os(&[0.3, 1.7, 2.2, 5.0, 9.5]);
        let a = normalize(&x).unwrap();
        let b = normalize(&x.affine(2.0, 3.0).unwrap()).unwrap();
        for (p, q) in a.t().iter().zip(b.t()) {
            assert!((p - q).abs() <= 1e-12 * p.abs());
        }
    }

    #[test]
    fn denormalize_examples() {
        let nd = normalize(&os(&[0.0, 0.25, 1.0])).unwrap();
        assert_eq!(denormalize(1.0, &nd), 1.0);
        assert_eq!(denormalize(0.0, &nd), 0.0);
        let nd = normalize(&os(&[1.0, 2.0, 3.0, 4.0])).unwrap();
        assert_eq!(denormalize(3.0, &nd), 10.0);
    }

    #[test]
    fn spacings_examples() {
        assert_eq!(spacings(&os(&[0.0, 1.0, 3.0])).unwrap().delta, vec![1.0, 2.0]);
        assert_eq!(spacings(&os(&[0.0, 1.0, 2.0, 4.0])).unwrap().delta, vec![1.0, 1.0, 2.0]);
        assert!(matches!(
            spacings(&os(&[5.0, 5.0, 6.0])),
            Err(Error::DegenerateSample(_))
        ));
    }

    #[test]
    fn select_top_examples() {
        assert_eq!(select_top(&[3.0, 1.0, 2.0], 3).unwrap().values(), &[1.0, 2.0, 3.0]);
        let x: Vec<f64> = (1..=10).map(f64::from).collect();
        assert_eq!(
            select_top(&x, 7).unwrap().values(),
            &[4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0]
        );
        assert!(select_top(&[1.0, 2.0, 3.0, 4.0, 5.0], 7).is_err());
    }

    #[test]
    fn log_spacings_match_direct() {
        let x = os(&[0.0, 0.1, 0.5, 0.55, 2.0]);
        let direct = normalize(&x).unwrap();
        let d = spacings(&x).unwrap();
        let ln: Vec<f64> = d.delta.iter().map(|v| v.ln()).collect();
        let via = NormalizedData::from_log_spacings(&ln, 0.0, 2.0).unwrap();
        for j in 0..3 {
            assert!((direct.ln_t()[j] - via.ln_t()[j]).abs() < 1e-14);
            assert!((direct.ln_tau()[j] - via.ln_tau()[j]).abs() < 1e-14);
        }
    }

    #[test]
    fn log_spacings_survive_extreme_ratios() {
        // Spacings spanning 800 orders of magnitude in e.
        let nd = NormalizedData::from_log_spacings(&[-900.0, -400.0, 0.0], 0.0, 1.0).unwrap();
        assert!((nd.ln_t()[0] + 900.0).abs() < 1e-12);
        assert!((nd.ln_tau()[1] - 0.0).abs() < 1e-12);
        assert_eq!(nd.t()[0], 0.0);
    }

    #[test]
    fn data_file_parsing() {
        let v = parse_data("# header comment\n1.5\n\n2 # trailing\n3e1\n").unwrap();
        assert_eq!(v, vec![1.5, 2.0, 30.0]);
        let v = parse_data("value,other\n1,9\n2,8\n").unwrap();
        assert_eq!(v, vec![1.0, 2.0]);
        assert!(parse_data("1\nabc\n").is_err());
    }

    #[test]
    fn jitter_breaks_ties() {
        let x = vec![1.0, 1.0, 2.0];
        let j = jitter(&x, &mut RandomSource::new(1, 0));
        assert_ne!(j[0], j[1]);
        assert!(j.iter().zip(&x).all(|(a, b)| (a - b).abs() <= 1e-9));
    }
}

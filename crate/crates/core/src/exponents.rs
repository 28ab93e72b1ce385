//! Exponent constraints for the two limiting power-law predictors.
//!
//! Heavy-tail limit: exponents `λⱼ` of `s_T = ∏ tⱼ^(−λⱼ)` with partial sums
//! `γⱼ = λ₁ + … + λⱼ` must satisfy
//!
//! ```text
//! ∏_{j=1}^{N−2} (1 + γⱼ/(N−j)) = T/(N+1).
//! ```
//!
//! Bounded-tail limit: exponents `ρⱼ` of `u_β` with reverse partial sums
//! `η_k = ρ_{N−1−k} + … + ρ_{N−2}` must satisfy
//!
//! ```text
//! ∏_{k=1}^{N−2} (2η_k/(k+2) + 1) = 1 / (1 − (N+1)/T).
//! ```
//!
//! Both products are increasing in every exponent, so single-parameter
//! schemes reduce to monotone scalar equations solved by bisection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::bisect_expanding;

const SOLVE_REL_TOL: f64 = 1e-15;

/// Sample size `N` and return level `T`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReturnSpec {
    n: usize,
    t: f64,
}

impl ReturnSpec {
    /// `n ≥ 3`, `t > 1` finite. Solvers additionally require `t > n + 1`.
    pub fn new(n: usize, t: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("sample size must be at least 3, got {n}")));
        }
        if !(t > 1.0) || !t.is_finite() {
            return Err(Error::invalid(format!("return level must be finite and > 1, got {t}")));
        }
        Ok(Self { n, t })
    }

    /// From the ratio `T/(N+1)`.
    pub fn from_ratio(n: usize, ratio: f64) -> Result<Self> {
        Self::new(n, ratio * (n as f64 + 1.0))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// `T/(N+1)`.
    pub fn ratio(&self) -> f64 {
        self.t / (self.n as f64 + 1.0)
    }

    /// True when `T = N+1`, where every anchored predictor returns the data maximum.
    pub fn is_data_max(&self) -> bool {
        (self.ratio() - 1.0).abs() <= 4.0 * f64::EPSILON
    }

    fn require_beyond_max(&self) -> Result<()> {
        if self.ratio() <= 1.0 {
            return Err(Error::invalid(format!(
                "exponent solvers need T > N+1 (N={}, T={})",
                self.n, self.t
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HeavyScheme {
    /// All `λⱼ` equal, solved numerically.
    Equal,
    /// Every factor of the constraint product equal.
    EqualFactor,
    /// Minimises the expected log prediction.
    MinLog,
}

impl HeavyScheme {
    pub fn solve(self, spec: &ReturnSpec) -> Result<HeavyExponents> {
        match self {
            HeavyScheme::Equal => solve_lambda_equal(spec),
            HeavyScheme::EqualFactor => gammas_equal_factor(spec),
            HeavyScheme::MinLog => gammas_min_log(spec),
        }
    }
}

/// Heavy-tail exponents `λⱼ` and their partial sums `γⱼ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeavyExponents {
    pub lambda: Vec<f64>,
    pub gamma: Vec<f64>,
    pub scheme: HeavyScheme,
}

impl HeavyExponents {
    fn from_gamma(gamma: Vec<f64>, scheme: HeavyScheme) -> Self {
        let lambda = gamma
            .iter()
            .enumerate()
            .map(|(j, &g)| if j == 0 { g } else { g - gamma[j - 1] })
            .collect();
        Self {
            lambda,
            gamma,
            scheme,
        }
    }

    /// `∏(1 + γⱼ/(N−j)) / (T/(N+1)) − 1`.
    pub fn relative_residual(&self, spec: &ReturnSpec) -> Result<f64> {
        Ok(heavy_constraint_residual(&self.gamma, spec)? / spec.ratio())
    }

    /// Some scheme/level combinations (min-log at small T) give negative
    /// partial sums, which voids the `u_α ≥ 0` guarantee.
    pub fn has_negative_gamma(&self) -> bool {
        self.gamma.iter().any(|&g| g < 0.0)
    }
}

/// Bounded-tail exponents `ρⱼ` and reverse partial sums `η_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundedExponents {
    pub rho: Vec<f64>,
    pub eta: Vec<f64>,
}

impl BoundedExponents {
    pub fn from_rho(rho: Vec<f64>) -> Self {
        let m = rho.len();
        let eta = (1..=m).map(|k| rho[m - k..].iter().sum()).collect();
        Self { rho, eta }
    }

    pub fn relative_residual(&self, spec: &ReturnSpec) -> Result<f64> {
        let rhs = bounded_rhs(spec);
        Ok(bounded_constraint_residual(&self.eta, spec)? / rhs)
    }
}

fn check_len(len: usize, spec: &ReturnSpec) -> Result<()> {
    if len != spec.n - 2 {
        return Err(Error::invalid(format!(
            "expected {} exponents for N={}, got {len}",
            spec.n - 2,
            spec.n
        )));
    }
    Ok(())
}

/// `∏_{j=1}^{N−2}(1 + γⱼ/(N−j)) − T/(N+1)`.
pub fn heavy_constraint_residual(gamma: &[f64], spec: &ReturnSpec) -> Result<f64> {
    check_len(gamma.len(), spec)?;
    let n = spec.n as f64;
    let mut prod = 1.0;
    for (j, &g) in gamma.iter().enumerate() {
        let factor = 1.0 + g / (n - (j as f64 + 1.0));
        if !(factor > 0.0) {
            return Err(Error::domain(format!("constraint factor {} is {factor}", j + 1)));
        }
        prod *= factor;
    }
    Ok(prod - spec.ratio())
}

fn bounded_rhs(spec: &ReturnSpec) -> f64 {
    1.0 / (1.0 - 1.0 / spec.ratio())
}

/// `∏_{k=1}^{N−2}(2η_k/(k+2) + 1) − 1/(1 − (N+1)/T)`.
pub fn bounded_constraint_residual(eta: &[f64], spec: &ReturnSpec) -> Result<f64> {
    check_len(eta.len(), spec)?;
    let mut prod = 1.0;
    for (i, &e) in eta.iter().enumerate() {
        let k = i as f64 + 1.0;
        let factor = 2.0 * e / (k + 2.0) + 1.0;
        if !(factor > 0.0) {
            return Err(Error::domain(format!("constraint factor {} is {factor}", i + 1)));
        }
        prod *= factor;
    }
    Ok(prod - bounded_rhs(spec))
}

/// All `λⱼ = λ`; `γⱼ = jλ`.
pub fn solve_lambda_equal(spec: &ReturnSpec) -> Result<HeavyExponents> {
    spec.require_beyond_max()?;
    let n = spec.n as f64;
    let target = spec.ratio().ln();
    let lambda = bisect_expanding(
        |l| {
            (1..spec.n - 1)
                .map(|j| (j as f64 * l / (n - j as f64)).ln_1p())
                .sum::<f64>()
                - target
        },
        SOLVE_REL_TOL,
    )?;
    let gamma = (1..spec.n - 1).map(|j| j as f64 * lambda).collect();
    Ok(HeavyExponents {
        lambda: vec![lambda; spec.n - 2],
        gamma,
        scheme: HeavyScheme::Equal,
    })
}

/// `γⱼ = (N−j)[(T/(N+1))^(1/(N−2)) − 1]`.
pub fn gammas_equal_factor(spec: &ReturnSpec) -> Result<HeavyExponents> {
    spec.require_beyond_max()?;
    let n = spec.n as f64;
    let excess = (spec.ratio().ln() / (n - 2.0)).exp_m1();
    let gamma = (1..spec.n - 1).map(|j| (n - j as f64) * excess).collect();
    Ok(HeavyExponents::from_gamma(gamma, HeavyScheme::EqualFactor))
}

/// `γⱼ = (N−j−1)K − (N−j)` with `K = [T(N−1)/(N+1)]^(1/(N−2))`.
pub fn gammas_min_log(spec: &ReturnSpec) -> Result<HeavyExponents> {
    spec.require_beyond_max()?;
    let n = spec.n as f64;
    let k = ((spec.t * (n - 1.0) / (n + 1.0)).ln() / (n - 2.0)).exp();
    let gamma = (1..spec.n - 1)
        .map(|j| {
            let j = j as f64;
            (n - j - 1.0) * k - (n - j)
        })
        .collect();
    let h = HeavyExponents::from_gamma(gamma, HeavyScheme::MinLog);
    if h.has_negative_gamma() {
        log::warn!(
            "min-log exponents for N={}, T={} include negative partial sums",
            spec.n,
            spec.t
        );
    }
    Ok(h)
}

/// All `ρⱼ = ρ`; `η_k = kρ`.
pub fn solve_rho_equal(spec: &ReturnSpec) -> Result<BoundedExponents> {
    spec.require_beyond_max()?;
    let target = bounded_rhs(spec).ln();
    let rho = bisect_expanding(
        |r| {
            (1..spec.n - 1)
                .map(|k| {
                    let k = k as f64;
                    (2.0 * k * r / (k + 2.0)).ln_1p()
                })
                .sum::<f64>()
                - target
        },
        SOLVE_REL_TOL,
    )?;
    Ok(BoundedExponents::from_rho(vec![rho; spec.n - 2]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, ratio: f64) -> ReturnSpec {
        ReturnSpec::from_ratio(n, ratio).unwrap()
    }

    #[test]
    fn residual_examples() {
        // Zero exponents leave only the ratio.
        let s = ReturnSpec::new(5, 6.0 * (1.0 + 1e-9)).unwrap();
        let r = heavy_constraint_residual(&[0.0; 3], &s).unwrap();
        assert!(r.abs() < 1e-8);
        // N = 3, T = 8: γ₁ = 2(T/4 − 1) = 2.
        let s = ReturnSpec::new(3, 8.0).unwrap();
        assert_eq!(heavy_constraint_residual(&[2.0], &s).unwrap(), 0.0);
        let s = spec(7, 32.0);
        let h = gammas_equal_factor(&s).unwrap();
        assert!(heavy_constraint_residual(&h.gamma, &s).unwrap().abs() < 1e-12 * 32.0);
    }

    #[test]
    fn residual_domain_and_length_errors() {
        let s = spec(3, 2.0);
        assert!(matches!(heavy_constraint_residual(&[-5.0], &s), Err(Error::Domain(_))));
        assert!(heavy_constraint_residual(&[1.0, 2.0], &s).is_err());
        assert!(matches!(bounded_constraint_residual(&[-5.0], &s), Err(Error::Domain(_))));
    }

    #[test]
    fn bounded_residual_examples() {
        let s = ReturnSpec::new(3, 8.0).unwrap();
        assert!(bounded_constraint_residual(&[1.5], &s).unwrap().abs() < 1e-15);
        let s = ReturnSpec::new(3, 16.0).unwrap();
        assert!(bounded_constraint_residual(&[0.5], &s).unwrap().abs() < 1e-15);
        // Large η: the product grows without bound while the target stays finite.
        assert!(bounded_constraint_residual(&[1e12], &s).unwrap() > 1e11);
    }

    #[test]
    fn equal_lambda_examples() {
        assert!((solve_lambda_equal(&spec(3, 2.0)).unwrap().lambda[0] - 2.0).abs() < 1e-12);
        assert!((solve_lambda_equal(&spec(7, 4.0)).unwrap().lambda[0] - 0.3363).abs() <= 0.5e-4);
        assert!((solve_lambda_equal(&spec(15, 4096.0)).unwrap().lambda[0] - 0.7430).abs() <= 0.5e-4);
    }

    #[test]
    fn equal_factor_examples() {
        let h = gammas_equal_factor(&ReturnSpec::new(3, 16.0).unwrap()).unwrap();
        assert!((h.gamma[0] - 6.0).abs() < 1e-12);
        let h = gammas_equal_factor(&ReturnSpec::new(4, 20.0).unwrap()).unwrap();
        assert!((h.gamma[0] - 3.0).abs() < 1e-12);
        assert!((h.gamma[1] - 2.0).abs() < 1e-12);
        assert!((h.lambda[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn min_log_examples() {
        let s = spec(7, 4.0);
        let h = gammas_min_log(&s).unwrap();
        assert!(h.relative_residual(&s).unwrap().abs() < 1e-12);
        let h = gammas_min_log(&ReturnSpec::new(3, 16.0).unwrap()).unwrap();
        assert!((h.gamma[0] - 6.0).abs() < 1e-12);
        // γ_{N−2} = K − 2 turns negative at small T.
        let h = gammas_min_log(&ReturnSpec::new(7, 9.0).unwrap()).unwrap();
        assert!(h.has_negative_gamma());
        let s = ReturnSpec::new(7, 64.0).unwrap();
        assert!(!gammas_min_log(&s).unwrap().has_negative_gamma());
    }

    #[test]
    fn equal_rho_examples() {
        assert!((solve_rho_equal(&spec(3, 2.0)).unwrap().rho[0] - 1.5).abs() < 1e-12);
        assert!((solve_rho_equal(&spec(3, 8.0)).unwrap().rho[0] - 3.0 / 14.0).abs() < 1e-13);
        assert!((solve_rho_equal(&spec(7, 8.0)).unwrap().rho[0] - 0.0241).abs() <= 0.5e-4);
    }

    #[test]
    fn solvers_reject_data_max_level() {
        let s = ReturnSpec::new(5, 6.0).unwrap();
        assert!(solve_lambda_equal(&s).is_err());
        assert!(solve_rho_equal(&s).is_err());
        assert!(gammas_equal_factor(&s).is_err());
        assert!(gammas_min_log(&s).is_err());
        assert!(ReturnSpec::new(2, 10.0).is_err());
    }

    #[test]
    fn limits_near_anchor() {
        let s = ReturnSpec::from_ratio(3, 1.0 + 1e-6).unwrap();
        assert!(solve_rho_equal(&s).unwrap().rho[0] > 1e3);
        for n in [3, 7, 15, 31] {
            let s = ReturnSpec::from_ratio(n, 1.0 + 1e-6).unwrap();
            assert!(solve_lambda_equal(&s).unwrap().lambda[0] < 1e-4);
            // For N > 3 the product has degree N−2 in ρ, so ρ diverges only
            // like (T/(N+1) − 1)^(−1/(N−2)).
            let mut last = 0.0;
            for eps in [1e-2, 1e-4, 1e-6, 1e-8] {
                let s = ReturnSpec::from_ratio(n, 1.0 + eps).unwrap();
                let rho = solve_rho_equal(&s).unwrap().rho[0];
                assert!(rho > last);
                last = rho;
            }
        }
    }

    #[test]
    fn eta_is_reverse_partial_sum() {
        let b = BoundedExponents::from_rho(vec![1.0, 2.0, 4.0]);
        assert_eq!(b.eta, vec![4.0, 6.0, 7.0]);
    }
}

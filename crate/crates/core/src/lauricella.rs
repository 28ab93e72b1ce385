//! Lauricella `F_D` functions and the sampling densities built from them.
//!
//! `F_D` is evaluated from its Euler integral
//!
//! ```text
//! F_D(a; b; c; x) = Γ(c)/(Γ(a)Γ(c−a)) ∫₀¹ u^(a−1) (1−u)^(c−a−1) ∏ (1 − xⱼu)^(−bⱼ) du,   c > a > 0,
//! ```
//!
//! in log space. Arguments close to 1 (or large and negative) produce
//! narrow peaks near `u = 1` (or `u = 0`); the integral is split at those
//! scales and the pieces near each scale are integrated in `ln u` (or
//! `ln(1−u)`), where every feature has unit width. Each argument carries its
//! complement `1 − xⱼ`, so `xⱼ = 1 − 10⁻³⁰⁰` is as easy as `xⱼ = 0.5`.

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

use crate::distributions::XI_ZERO;
use crate::error::{Error, Result};
use crate::math::{ln_add_exp, ln_gamma_signed, ln_sum_exp};
use crate::predictors::Excess;
use crate::quadrature::{adaptive, tanh_sinh, Estimate, Tolerance};
use crate::samples::NormalizedData;

/// `Γ[p₁, p₂, … ; q₁, q₂, …] = ∏Γ(pᵢ) / ∏Γ(qᵢ)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GammaRatioSpec {
    pub numerator: Vec<f64>,
    pub denominator: Vec<f64>,
}

/// Natural log of `|Γ[num; den]|` and its sign.
pub fn ln_gamma_ratio(spec: &GammaRatioSpec) -> Result<(f64, f64)> {
    let mut ln = 0.0;
    let mut sign = 1.0;
    for (&x, s) in spec
        .numerator
        .iter()
        .map(|x| (x, 1.0))
        .chain(spec.denominator.iter().map(|x| (x, -1.0)))
    {
        let (l, g) = ln_gamma_signed(x).ok_or_else(|| Error::domain(format!("gamma pole at {x}")))?;
        ln += s * l;
        sign *= g;
    }
    Ok((ln, sign))
}

pub fn gamma_ratio(spec: &GammaRatioSpec) -> Result<f64> {
    let (l, s) = ln_gamma_ratio(spec)?;
    Ok(s * l.exp())
}

fn ln_gamma_pos(x: f64) -> Result<f64> {
    match ln_gamma_signed(x) {
        Some((l, s)) if s > 0.0 => Ok(l),
        _ => Err(Error::domain(format!("expected Γ({x}) > 0"))),
    }
}

/// Parameters of `F_D^(n)(a; b₁…bₙ; c; x₁…xₙ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LauricellaArgs {
    pub a: f64,
    pub b: Vec<f64>,
    pub c: f64,
    pub x: Vec<f64>,
    /// `1 − xⱼ`, supplied when it is known more precisely than `x`.
    pub one_minus_x: Vec<f64>,
}

impl LauricellaArgs {
    pub fn new(a: f64, b: Vec<f64>, c: f64, x: Vec<f64>) -> Result<Self> {
        let one_minus_x = x.iter().map(|v| 1.0 - v).collect();
        Self::with_complements(a, b, c, x, one_minus_x)
    }

    pub fn with_complements(a: f64, b: Vec<f64>, c: f64, x: Vec<f64>, one_minus_x: Vec<f64>) -> Result<Self> {
        if b.len() != x.len() || x.len() != one_minus_x.len() {
            return Err(Error::invalid("b, x and 1−x must have equal length"));
        }
        let all = [a, c].into_iter().chain(b.iter().copied()).chain(x.iter().copied());
        if all.clone().any(|v| !v.is_finite()) || one_minus_x.iter().any(|v| v.is_nan()) {
            return Err(Error::invalid("Lauricella parameters must be finite"));
        }
        Ok(Self {
            a,
            b,
            c,
            x,
            one_minus_x,
        })
    }

    /// Permute the `(bⱼ, xⱼ)` pairs.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Self {
            a: self.a,
            b: order.iter().map(|&i| self.b[i]).collect(),
            c: self.c,
            x: order.iter().map(|&i| self.x[i]).collect(),
            one_minus_x: order.iter().map(|&i| self.one_minus_x[i]).collect(),
        }
    }
}

fn fd_tol() -> Tolerance {
    Tolerance {
        abs: 1e-300,
        rel: 1e-12,
        max_intervals: 4000,
    }
}

/// Accept a quadrature estimate that missed its target but is still good
/// to `1e−8`.
fn salvage(r: Result<Estimate>) -> Result<Estimate> {
    match r {
        Err(Error::Numeric {
            estimate, error, ..
        }) if estimate.is_finite() && error <= 1e-8 * estimate.abs() => Ok(Estimate {
            value: estimate,
            error,
        }),
        other => other,
    }
}

/// `ln ∫_lo^hi e^(h(y)) dy`, splitting at `breaks` and rescaling by the
/// largest sampled value of `h`.
fn ln_integral_exp<H: Fn(f64) -> f64>(h: H, lo: f64, hi: f64, breaks: &[f64]) -> Result<f64> {
    let mut pts = vec![lo];
    pts.extend(breaks.iter().copied().filter(|&b| b > lo && b < hi));
    pts.push(hi);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut logs = Vec::with_capacity(pts.len());
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let shift = (1..=9)
            .map(|k| h(a + (b - a) * k as f64 / 10.0))
            .filter(|v| !v.is_nan())
            .fold(f64::NEG_INFINITY, f64::max);
        if shift == f64::NEG_INFINITY {
            continue;
        }
        if shift == f64::INFINITY {
            return Err(Error::Numeric {
                message: "Lauricella integrand overflowed".into(),
                estimate: f64::INFINITY,
                error: f64::NAN,
            });
        }
        let r = salvage(adaptive(|y| (h(y) - shift).exp(), a, b, fd_tol()))?;
        if r.value > 0.0 {
            logs.push(shift + r.value.ln());
        }
    }
    Ok(ln_sum_exp(&logs))
}

/// `ln F_D` by the Euler integral. Requires `c > a > 0` and all `xⱼ ≤ 1`.
pub fn ln_lauricella_fd(args: &LauricellaArgs) -> Result<f64> {
    let (a, c) = (args.a, args.c);
    if !(a > 0.0 && c > a) {
        return Err(Error::domain(format!(
            "Euler integral needs c > a > 0 (a={a}, c={c})"
        )));
    }
    if let Some(j) = args.one_minus_x.iter().position(|&w| w < 0.0) {
        return Err(Error::domain(format!("x[{j}] = {} exceeds 1", args.x[j])));
    }
    let active: Vec<(f64, f64, f64)> = args
        .b
        .iter()
        .zip(&args.x)
        .zip(&args.one_minus_x)
        .filter(|((&b, &x), _)| b != 0.0 && x != 0.0)
        .map(|((&b, &x), &w)| (b, x, w))
        .collect();
    let (p, q) = (a, c - a);
    let ln_norm = ln_gamma_pos(c)? - ln_gamma_pos(a)? - ln_gamma_pos(q)?;
    if active.is_empty() {
        return Ok(0.0);
    }
    // xⱼ = 1 turns (1 − xⱼz)^(−bⱼ) into a power of 1 − z.
    let at_one: f64 = active.iter().filter(|e| e.2 == 0.0).map(|e| e.0).sum();
    let active: Vec<_> = active.into_iter().filter(|e| e.2 != 0.0).collect();
    let q_eff = q - at_one;
    if q_eff <= 0.0 {
        return Err(Error::domain(format!("F_D diverges at x = 1 (c − a − Σb = {q_eff})")));
    }
    // ln ∏(1 − xⱼu)^(−bⱼ), near u = 0 from u and near u = 1 from v = 1 − u.
    // The v side works with ln v so that tiny 1 − xⱼ keep full precision.
    let ln_w: Vec<f64> = active.iter().map(|e| e.2.ln()).collect();
    let ln_left = |u: f64| -> f64 { active.iter().map(|&(b, x, _)| -b * (1.0 - x * u).ln()).sum() };
    let ln_right = |ln_v: f64, v: f64| -> f64 {
        active
            .iter()
            .zip(&ln_w)
            .map(|(&(b, x, w), &lw)| {
                let f = if x > 0.0 { ln_add_exp(lw, x.ln() + ln_v) } else { (w + x * v).ln() };
                -b * f
            })
            .sum()
    };
    // Feature scales: u ≈ 1/|x| for x ≪ −1, v ≈ (1−x)/x for x near 1.
    let left: Vec<f64> = active.iter().filter(|e| e.1 < -8.0).map(|e| -(-e.1).ln()).collect();
    let right: Vec<f64> = active
        .iter()
        .zip(&ln_w)
        .filter(|(e, _)| e.1 > 0.0 && e.2 < 0.125 * e.1)
        .map(|(e, &lw)| lw - e.1.ln())
        .collect();
    let l = half(p, q_eff, &left, |_, z, _| ln_left(z))?;
    let r = half(q_eff, p, &right, |lz, z, _| ln_right(lz, z))?;
    Ok(ln_norm + ln_sum_exp(&[l, r]))
}

/// `ln ∫₀^½ z^(p−1) (1−z)^(q−1) e^(g(ln z, z, 1−z)) dz` with features at
/// `ln z = ln_scales`.
fn half<G: Fn(f64, f64, f64) -> f64>(p: f64, q: f64, ln_scales: &[f64], g: G) -> Result<f64> {
    let half_ln = 0.5f64.ln();
    let ln_z0 = if ln_scales.is_empty() {
        half_ln
    } else {
        ln_scales.iter().copied().fold(half_ln, f64::min) - 32f64.ln()
    };
    // [0, z0] with z = z0·ω^(1/p): dz·z^(p−1) = z0^p dω/p.
    let near = ln_integral_exp(
        |om: f64| {
            let lz = ln_z0 + om.ln() / p;
            let z = lz.exp();
            let y = 1.0 - z;
            (q - 1.0) * y.ln() + g(lz, z, y)
        },
        0.0,
        1.0,
        &[],
    )? + p * ln_z0
        - p.ln();
    if ln_scales.is_empty() {
        return Ok(near);
    }
    // [z0, ½] in s = ln z.
    let far = ln_integral_exp(
        |s: f64| {
            let z = s.exp();
            let y = 1.0 - z;
            p * s + (q - 1.0) * y.ln() + g(s, z, y)
        },
        ln_z0,
        half_ln,
        ln_scales,
    )?;
    Ok(ln_sum_exp(&[near, far]))
}

/// `F_D` by the Euler integral.
pub fn lauricella_fd(args: &LauricellaArgs) -> Result<f64> {
    Ok(ln_lauricella_fd(args)?.exp())
}

/// `F_D` by direct summation of its multiple series (`n ≤ 2`, `|xⱼ| < 1`).
pub fn lauricella_fd_series(args: &LauricellaArgs) -> Result<f64> {
    let n = args.x.len();
    if n > 2 {
        return Err(Error::domain("series route is implemented for n <= 2 only"));
    }
    if args.x.iter().any(|x| !(x.abs() < 1.0)) {
        return Err(Error::domain("series route needs |x| < 1"));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let (b1, x1) = (args.b[0], args.x[0]);
    let (b2, x2) = if n == 2 { (args.b[1], args.x[1]) } else { (0.0, 0.0) };
    const MAX: usize = 20_000;
    let mut p1 = vec![1.0f64];
    let mut p2 = vec![1.0f64];
    let mut ac = 1.0;
    let mut sum = 0.0;
    let mut quiet = 0;
    for k in 0..MAX {
        if k > 0 {
            let m = (k - 1) as f64;
            ac *= (args.a + m) / (args.c + m);
            p1.push(p1[k - 1] * (b1 + m) * x1 / (m + 1.0));
            p2.push(p2[k - 1] * (b2 + m) * x2 / (m + 1.0));
        }
        let shell: f64 = ac * (0..=k).map(|i| p1[i] * p2[k - i]).sum::<f64>();
        sum += shell;
        if shell.abs() <= 1e-17 * sum.abs() {
            quiet += 1;
            if quiet >= 4 && k > 8 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Numeric {
        message: "Lauricella series did not converge".into(),
        estimate: sum,
        error: f64::NAN,
    })
}

/// Which of the two equivalent density expressions to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Arguments `τ` (heavy) or `t` (bounded).
    Direct,
    /// Euler-transformed arguments `κ` (heavy) or `ψ` (bounded).
    Transformed,
}

fn require_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::domain(format!("{name} must be positive and finite, got {v}")));
    }
    Ok(())
}

/// `ln p(t | α)` for `ξ = 1/α > 0`.
pub fn ln_density_t_heavy(nd: &NormalizedData, alpha: f64, route: Route) -> Result<f64> {
    require_positive("alpha", alpha)?;
    let n = nd.n();
    let n1 = (n - 1) as f64;
    let ln_c = ln_gamma_pos(n as f64)? + n1 * alpha.ln() + ln_gamma_pos(n1)? + ln_gamma_pos(n1 * alpha)?
        - ln_gamma_pos(n1 * (1.0 + alpha))?;
    let m = n - 2;
    let b = vec![1.0 + alpha; m];
    let (lt, ltau) = (nd.ln_t(), nd.ln_tau());
    match route {
        Route::Direct => {
            let x = ltau.iter().map(|l| l.exp()).collect();
            let w = nd.t().to_vec();
            let args = LauricellaArgs::with_complements(n1, b, n1 * (1.0 + alpha), x, w)?;
            Ok(ln_c + ln_lauricella_fd(&args)?)
        }
        Route::Transformed => {
            let mut x = Vec::with_capacity(m);
            let mut w = Vec::with_capacity(m);
            x.push(ltau[0].exp());
            w.push(lt[0].exp());
            for j in 1..m {
                let d = lt[0] - lt[j];
                x.push(-d.exp_m1());
                w.push(d.exp());
            }
            let lead = ((m as f64) * alpha - 1.0) * lt[0] - (1.0 + alpha) * lt[1..].iter().sum::<f64>();
            let args = LauricellaArgs::with_complements(n1 * alpha, b, n1 * (1.0 + alpha), x, w)?;
            Ok(ln_c + lead + ln_lauricella_fd(&args)?)
        }
    }
}

/// `ln p(t | β)` for `ξ = −1/β < 0`.
pub fn ln_density_t_bounded(nd: &NormalizedData, beta: f64, route: Route) -> Result<f64> {
    require_positive("beta", beta)?;
    let n = nd.n();
    let n1 = (n - 1) as f64;
    let ln_c = ln_gamma_pos(n as f64)? + n1 * beta.ln() + ln_gamma_pos(n1)? + ln_gamma_pos(beta)?
        - ln_gamma_pos(n1 + beta)?;
    let m = n - 2;
    let ltau = nd.ln_tau();
    match route {
        Route::Direct => {
            let x = nd.t().to_vec();
            let w = ltau.iter().map(|l| l.exp()).collect();
            let args = LauricellaArgs::with_complements(n1, vec![1.0 - beta; m], n1 + beta, x, w)?;
            Ok(ln_c + ln_lauricella_fd(&args)?)
        }
        Route::Transformed => {
            let last = ltau[m - 1];
            let mut b = vec![n1 * beta + 1.0];
            let mut x = vec![nd.t()[m - 1]];
            let mut w = vec![last.exp()];
            for &l in &ltau[..m - 1] {
                let d = last - l;
                b.push(1.0 - beta);
                x.push(-d.exp_m1());
                w.push(d.exp());
            }
            let lead = (2.0 * beta - 1.0) * last - (1.0 - beta) * ltau[..m - 1].iter().sum::<f64>();
            let args = LauricellaArgs::with_complements(beta, b, n1 + beta, x, w)?;
            Ok(ln_c + lead + ln_lauricella_fd(&args)?)
        }
    }
}

/// `ln p(t | ξ = 0)`, `p = (N−1)!(N−2)!/(1 + Σtⱼ)^(N−1)`.
pub fn ln_density_t_exponential(nd: &NormalizedData) -> f64 {
    let n = nd.n() as f64;
    let s: f64 = nd.t().iter().sum();
    ln_gamma_pos(n).unwrap() + ln_gamma_pos(n - 1.0).unwrap() - (n - 1.0) * (1.0 + s).ln()
}

pub fn density_t_exponential(nd: &NormalizedData) -> f64 {
    ln_density_t_exponential(nd).exp()
}

pub fn density_t_heavy(nd: &NormalizedData, alpha: f64) -> Result<f64> {
    Ok(ln_density_t_heavy(nd, alpha, Route::Direct)?.exp())
}

pub fn density_t_bounded(nd: &NormalizedData, beta: f64) -> Result<f64> {
    Ok(ln_density_t_bounded(nd, beta, Route::Direct)?.exp())
}

/// `ln p(t | ξ)` by the chosen route.
pub fn ln_density_t(nd: &NormalizedData, xi: f64, route: Route) -> Result<f64> {
    if !xi.is_finite() {
        return Err(Error::domain("shape must be finite"));
    }
    if xi.abs() < XI_ZERO {
        Ok(ln_density_t_exponential(nd))
    } else if xi > 0.0 {
        ln_density_t_heavy(nd, 1.0 / xi, route)
    } else {
        ln_density_t_bounded(nd, -1.0 / xi, route)
    }
}

/// Density of the normalised data at shape `ξ` by the chosen route.
pub fn density_t(nd: &NormalizedData, xi: f64, route: Route) -> Result<f64> {
    Ok(ln_density_t(nd, xi, route)?.exp())
}

fn require_above_max(u: &Excess) -> Result<()> {
    if u.negative && !u.is_zero() {
        return Err(Error::domain("exceedance integrand needs s_T >= 1 for nonzero shape"));
    }
    Ok(())
}

/// `ln G·p` for `ξ = 1/α > 0`: density of the data times the probability
/// that the next point exceeds `s_T = 1 + u`.
pub fn ln_integrand_g_heavy(u: Excess, nd: &NormalizedData, alpha: f64) -> Result<f64> {
    require_positive("alpha", alpha)?;
    require_above_max(&u)?;
    let n = nd.n();
    let nf = n as f64;
    let ln_s = ln_s_from(u);
    let ln_c = ln_gamma_pos(nf + 1.0)? - (nf + 1.0).ln() + (nf - 1.0) * alpha.ln() + ln_gamma_pos(nf - 1.0)?
        + ln_gamma_pos(nf * alpha)?
        - ln_gamma_pos(nf - 1.0 + nf * alpha)?;
    let lt = nd.ln_t();
    let ltau = nd.ln_tau();
    let (mut b, mut x, mut w) = (Vec::new(), Vec::new(), Vec::new());
    for &l in &lt[1..] {
        let d = lt[0] - l;
        b.push(1.0 + alpha);
        x.push(-d.exp_m1());
        w.push(d.exp());
    }
    // t_{N−1} = 1
    b.push(1.0 + alpha);
    x.push(ltau[0].exp());
    w.push(lt[0].exp());
    // t_N = s_T: 1 − t₁/s = (u + τ₁)/s
    let d = lt[0] - ln_s;
    b.push(alpha);
    x.push((u.add(Excess::positive(ltau[0])).ln_abs - ln_s).exp());
    w.push(d.exp());
    let lead = ((nf - 1.0) * alpha - 1.0) * lt[0] - (1.0 + alpha) * lt[1..].iter().sum::<f64>() - alpha * ln_s;
    let args = LauricellaArgs::with_complements(nf * alpha, b, nf - 1.0 + nf * alpha, x, w)?;
    Ok(ln_c + lead + ln_lauricella_fd(&args)?)
}

/// `ln(1 + u)` accurate for huge `u`.
fn ln_s_from(u: Excess) -> f64 {
    if u.is_zero() {
        return 0.0;
    }
    let v = u.ln_abs;
    if u.negative {
        (-v.exp()).ln_1p()
    } else if v > 0.0 {
        v + (-v).exp().ln_1p()
    } else {
        v.exp().ln_1p()
    }
}

/// `ln G·p` for `ξ = −1/β < 0`.
pub fn ln_integrand_g_bounded(u: Excess, nd: &NormalizedData, beta: f64) -> Result<f64> {
    require_positive("beta", beta)?;
    require_above_max(&u)?;
    let n = nd.n();
    let nf = n as f64;
    let ln_s = ln_s_from(u);
    let ln_c = ln_gamma_pos(nf + 1.0)? - (nf + 1.0).ln() + (nf - 1.0) * beta.ln() + ln_gamma_pos(nf - 1.0)?
        + ln_gamma_pos(1.0 + beta)?
        - ln_gamma_pos(nf + beta)?;
    let mut x: Vec<f64> = nd.ln_t().iter().map(|l| (l - ln_s).exp()).collect();
    let mut w: Vec<f64> = nd
        .ln_tau()
        .iter()
        .map(|&l| (u.add(Excess::positive(l)).ln_abs - ln_s).exp())
        .collect();
    x.push((-ln_s).exp());
    w.push((u.ln_abs - ln_s).exp());
    let args = LauricellaArgs::with_complements(nf - 1.0, vec![1.0 - beta; n - 1], nf + beta, x, w)?;
    Ok(ln_c - (nf - 1.0) * ln_s + ln_lauricella_fd(&args)?)
}

/// `ln G·p` at `ξ = 0`, `G·p = N!(N−2)!/((N+1)(2 + Σtⱼ + u)^(N−1))`, valid for `u ≥ −1`.
pub fn ln_integrand_g_exponential(u: Excess, nd: &NormalizedData) -> Result<f64> {
    let uv = u.value();
    if uv < -1.0 {
        return Err(Error::domain("prediction below the sample minimum"));
    }
    let nf = nd.n() as f64;
    let s: f64 = nd.t().iter().sum();
    Ok(ln_gamma_pos(nf + 1.0)? + ln_gamma_pos(nf - 1.0)? - (nf + 1.0).ln() - (nf - 1.0) * (2.0 + s + uv).ln())
}

/// `ln G·p` at shape `ξ`.
pub fn ln_integrand_g(u: Excess, nd: &NormalizedData, xi: f64) -> Result<f64> {
    if xi.abs() < XI_ZERO {
        ln_integrand_g_exponential(u, nd)
    } else if xi > 0.0 {
        ln_integrand_g_heavy(u, nd, 1.0 / xi)
    } else {
        ln_integrand_g_bounded(u, nd, -1.0 / xi)
    }
}

/// `G·p` at shape `ξ`.
pub fn integrand_g(u: Excess, nd: &NormalizedData, xi: f64) -> Result<f64> {
    Ok(ln_integrand_g(u, nd, xi)?.exp())
}

/// Joint density `p(s, t | α)` of the data and a next point `s > 1`.
pub fn joint_density_heavy(s: f64, nd: &NormalizedData, alpha: f64) -> Result<f64> {
    require_positive("alpha", alpha)?;
    if !(s > 1.0) {
        return Err(Error::domain("joint density is defined for s > 1"));
    }
    let nf = nd.n() as f64;
    let ln_c = ln_gamma_pos(nf + 1.0)? - (nf + 1.0).ln() + nf * alpha.ln() + ln_gamma_pos(nf)?
        + ln_gamma_pos(nf * alpha)?
        - ln_gamma_pos(nf * (1.0 + alpha))?;
    let mut x: Vec<f64> = nd.t().iter().map(|t| 1.0 - t / s).collect();
    let mut w: Vec<f64> = nd.t().iter().map(|t| t / s).collect();
    x.push(1.0 - 1.0 / s);
    w.push(1.0 / s);
    let args = LauricellaArgs::with_complements(nf, vec![1.0 + alpha; nd.n() - 1], nf * (1.0 + alpha), x, w)?;
    Ok((ln_c - nf * s.ln() + ln_lauricella_fd(&args)?).exp())
}

/// Integrate `exp(ln_f(t))` over the ordered simplex
/// `0 ≤ t₁ ≤ … ≤ t_{N−2} ≤ 1` for `N ∈ {3, 4}`. Working with the log keeps
/// integrable singularities at the simplex edges from overflowing.
pub fn integrate_simplex<F>(n: usize, ln_f: F, tol: Tolerance) -> Result<Estimate>
where
    F: Fn(&NormalizedData) -> Result<f64>,
{
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let ln_eval = |ln_spacing: &[f64]| -> f64 {
        // A spacing that underflowed to zero sits where the node weight is negligible.
        if ln_spacing.contains(&f64::NEG_INFINITY) {
            return f64::NEG_INFINITY;
        }
        match NormalizedData::from_log_spacings(ln_spacing, 0.0, 1.0).and_then(|nd| ln_f(&nd)) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let half_ln = 0.5f64.ln();
    let (shift, est) = match n {
        3 => {
            let shift = finite_or_zero(ln_eval(&[half_ln, half_ln]));
            (shift, tanh_sinh(|t, tau| (ln_eval(&[t.ln(), tau.ln()]) - shift).exp(), 0.0, 1.0, tol)?)
        }
        4 => {
            // ln of the inner integral over t₁ ∈ [0, t₂], rescaled at its midpoint.
            let ln_inner = |t2: f64, tau2: f64| -> f64 {
                let (lt2, ltau2) = (t2.ln(), tau2.ln());
                let mid = finite_or_zero(ln_eval(&[lt2 + half_ln, lt2 + half_ln, ltau2]));
                let r = tanh_sinh(|t1, gap| (ln_eval(&[t1.ln(), gap.ln(), ltau2]) - mid).exp(), 0.0, t2, tol);
                match salvage(r) {
                    Ok(e) if e.value > 0.0 => mid + e.value.ln(),
                    Ok(_) => f64::NEG_INFINITY,
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        f64::NAN
                    }
                }
            };
            let shift = finite_or_zero(ln_inner(0.5, 0.5));
            (shift, tanh_sinh(|t2, tau2| (ln_inner(t2, tau2) - shift).exp(), 0.0, 1.0, tol)?)
        }
        _ => return Err(Error::invalid(format!("simplex quadrature supports N = 3 or 4, got {n}"))),
    };
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let scale = shift.exp();
    Ok(Estimate {
        value: est.value * scale,
        error: est.error * scale,
    })
}

fn finite_or_zero(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        0.0
    }
}

/// `P(s > s_T(t) | ξ)` by quadrature of `G·p` over the data simplex.
pub fn exceedance_by_quadrature<P>(predictor: P, xi: f64, n: usize) -> Result<Estimate>
where
    P: Fn(&NormalizedData) -> Result<Excess>,
{
    integrate_simplex(n, |nd| ln_integrand_g(predictor(nd)?, nd, xi), Tolerance::new(1e-10, 1e-9))
}

/// Both sides of `∫_{s_T}^∞ F_D(a, b₁, b₂; c; 1−s, x₂) ds
/// = (c−1)/((b₁−1)(a−1)) F_D(a−1, b₁−1, b₂; c−1; 1−s_T, x₂)`.
pub fn tail_identity_sides(a: f64, b: [f64; 2], c: f64, x2: f64, s_t: f64) -> Result<(f64, f64)> {
    let fd = |s: f64| {
        LauricellaArgs::with_complements(a, b.to_vec(), c, vec![1.0 - s, x2], vec![s, 1.0 - x2])
            .and_then(|args| lauricella_fd(&args))
    };
    let failure = RefCell::new(None);
    let lhs = crate::quadrature::adaptive_upper(
        |s| match fd(s) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        s_t,
        Tolerance::new(1e-14, 1e-10),
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let args = LauricellaArgs::with_complements(a - 1.0, vec![b[0] - 1.0, b[1]], c - 1.0, vec![1.0 - s_t, x2], vec![s_t, 1.0 - x2])?;
    let rhs = (c - 1.0) / ((b[0] - 1.0) * (a - 1.0)) * lauricella_fd(&args)?;
    Ok((lhs.value, rhs))
}

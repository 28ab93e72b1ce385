//! One-dimensional quadrature.
//!
//! Three tools, each suited to a different integrand shape:
//!
//! * [`adaptive`]: globally adaptive Gauss–Kronrod (7/15 point) bisection for
//!   integrands that are smooth apart from a few localised features.
//! * [`jacobi_weighted`]: integrals of the form
//!   `∫₀¹ u^(p−1) (1−u)^(q−1) g(u) du` with known algebraic endpoint
//!   behaviour. Each half of the interval is mapped by `u = w^(1/p)`
//!   (resp. `1−u = w^(1/q)`), which removes the weight exactly and leaves a
//!   smooth integrand for the adaptive rule.
//! * [`tanh_sinh`]: double-exponential quadrature for integrands with
//!   unknown integrable endpoint singularities. The integrand receives both
//!   the abscissa and its exact distance to the upper endpoint so that
//!   complements like `1 − t` keep full relative precision.

use crate::error::{Error, Result};

/// Tolerances for the adaptive rules.
#[derive(Clone, Copy, Debug)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Self {
            abs,
            rel,
            max_intervals: 2000,
        }
    }

    fn target(&self, estimate: f64) -> f64 {
        self.abs.max(self.rel * estimate.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::new(1e-13, 1e-11)
    }
}

/// Integration result with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the odd-indexed Kronrod nodes (and the centre).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Single 15-point Kronrod panel with the QUADPACK error heuristic.
pub fn gauss_kronrod15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Estimate {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let value = resk * half;
    resabs *= half.abs();
    resasc *= half.abs();
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Estimate { value, error }
}

/// Globally adaptive Gauss–Kronrod integration over `[a, b]`.
pub fn adaptive<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    }
    let first = gauss_kronrod15(&mut f, a, b);
    let mut panels = vec![(a, b, first)];
    let mut total = first.value;
    let mut err = first.error;
    while err > tol.target(total) {
        if !total.is_finite() {
            return Err(Error::Numeric {
                message: "non-finite integrand".into(),
                estimate: total,
                error: err,
            });
        }
        if panels.len() >= tol.max_intervals {
            return Err(Error::Numeric {
                message: format!("adaptive quadrature hit {} panels", tol.max_intervals),
                estimate: total,
                error: err,
            });
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2.error.total_cmp(&y.1 .2.error))
            .expect("non-empty");
        let (lo, hi, old) = panels.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // Interval cannot be split further in floating point.
            return Err(Error::Numeric {
                message: "interval collapsed during subdivision".into(),
                estimate: total,
                error: err,
            });
        }
        let left = gauss_kronrod15(&mut f, lo, mid);
        let right = gauss_kronrod15(&mut f, mid, hi);
        total += left.value + right.value - old.value;
        err += left.error + right.error - old.error;
        panels.push((lo, mid, left));
        panels.push((mid, hi, right));
        // Re-sum periodically to stop drift from the running updates.
        if panels.len() % 64 == 0 {
            total = panels.iter().map(|p| p.2.value).sum();
            err = panels.iter().map(|p| p.2.error).sum();
        }
    }
    total = panels.iter().map(|p| p.2.value).sum();
    err = panels.iter().map(|p| p.2.error).sum();
    Ok(Estimate {
        value: total,
        error: err,
    })
}

/// `∫_a^∞ f(x) dx` via `x = a + (1 − s)/s`, `s ∈ (0, 1]`.
pub fn adaptive_upper<F: FnMut(f64) -> f64>(mut f: F, a: f64, tol: Tolerance) -> Result<Estimate> {
    adaptive(
        |s: f64| {
            let x = a + (1.0 - s) / s;
            let v = f(x) / (s * s);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        0.0,
        1.0,
        tol,
    )
}

/// `∫₀¹ u^(p−1) (1−u)^(q−1) g(u, 1−u) du` for `p, q > 0`.
///
/// `g` must be smooth on the closed interval apart from behaviour the
/// adaptive rule can resolve. Its second argument is `1 − u` computed
/// without cancellation.
pub fn jacobi_weighted<G: FnMut(f64, f64) -> f64>(
    mut g: G,
    p: f64,
    q: f64,
    tol: Tolerance,
) -> Result<Estimate> {
    if !(p > 0.0 && q > 0.0) {
        return Err(Error::domain(format!(
            "jacobi weight exponents must be positive (p={p}, q={q})"
        )));
    }
    // Left half: u = w^(1/p), w ∈ [0, 2^-p].
    let left = adaptive(
        |w: f64| {
            let u = w.powf(1.0 / p);
            let v = 1.0 - u;
            v.powf(q - 1.0) * g(u, v)
        },
        0.0,
        0.5f64.powf(p),
        tol,
    )?;
    // Right half: 1 − u = w^(1/q).
    let right = adaptive(
        |w: f64| {
            let v = w.powf(1.0 / q);
            let u = 1.0 - v;
            u.powf(p - 1.0) * g(u, v)
        },
        0.0,
        0.5f64.powf(q),
        tol,
    )?;
    Ok(Estimate {
        value: left.value / p + right.value / q,
        error: left.error / p + right.error / q,
    })
}

/// Double-exponential (tanh-sinh) quadrature over `[a, b]`.
///
/// `f(x, b − x)` is called with the exact distance to the upper endpoint.
/// Levels are refined until two successive estimates agree to `tol`
/// (absolute or relative, whichever is looser).
pub fn tanh_sinh<F: FnMut(f64, f64) -> f64>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<Estimate> {
    const MAX_LEVEL: u32 = 10;
    const T_MAX: f64 = 6.5;
    let width = b - a;
    if width == 0.0 {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    }
    let half = 0.5 * width;
    let hpi = std::f64::consts::FRAC_PI_2;

    // Contribution of the node pair at ±t (or the centre when t == 0).
    let pair = |t: f64, f: &mut F| -> f64 {
        let s = hpi * t.sinh();
        let e = (-2.0 * s).exp();
        let w = hpi * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if t == 0.0 {
            return w * f(a + half, half);
        }
        let off = half * 2.0 * e / (1.0 + e);
        let mut acc = 0.0;
        // Near a.
        let xl = a + off;
        if xl > a && off < width {
            let v = f(xl, width - off);
            if v.is_finite() {
                acc += w * v;
            }
        }
        // Near b.
        // The integrand gets the exact complement even when b − off rounds to b.
        let xr = b - off;
        if off > 0.0 && off < width {
            let v = f(xr, off);
            if v.is_finite() {
                acc += w * v;
            }
        }
        acc
    };

    let mut h = 1.0;
    let mut sum = pair(0.0, &mut f);
    let mut k = 1;
    while (k as f64) * h <= T_MAX {
        sum += pair(k as f64 * h, &mut f);
        k += 1;
    }
    let mut estimate = half * h * sum;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= T_MAX {
            sum += pair(k as f64 * h, &mut f);
            k += 2;
        }
        let next = half * h * sum;
        let diff = (next - estimate).abs();
        estimate = next;
        if diff <= tol.target(next) && level >= 3 {
            return Ok(Estimate {
                value: next,
                error: diff,
            });
        }
    }
    Err(Error::Numeric {
        message: "tanh-sinh quadrature did not converge".into(),
        estimate,
        error: f64::NAN,
    })
}

//! Small numerical helpers shared across modules.

/// `ln(Σ exp(xs))`, robust to large magnitudes and `-∞` entries.
pub fn ln_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m.is_infinite() {
        return m;
    }
    m + xs.iter().map(|&x| (x - m).exp()).sum::<f64>().ln()
}

/// `ln(eᵃ + eᵇ)`.
pub fn ln_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(eˣ − 1)` for `x > 0`.
pub fn ln_expm1(x: f64) -> f64 {
    if x > 36.0 {
        x + (-(-x).exp()).ln_1p()
    } else {
        x.exp_m1().ln()
    }
}

/// `ln(1 − eˣ)` for `x < 0`.
pub fn ln_one_minus_exp(x: f64) -> f64 {
    if x > -std::f64::consts::LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

/// Logistic function `1 / (1 + e^(−x))`.
pub fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// `ln(logistic(x))`.
pub fn ln_logistic(x: f64) -> f64 {
    if x >= 0.0 {
        -(-x).exp().ln_1p()
    } else {
        x - x.exp().ln_1p()
    }
}

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `ln|Γ(x)|` and the sign of `Γ(x)`; `None` at the poles.
pub fn ln_gamma_signed(x: f64) -> Option<(f64, f64)> {
    use statrs::function::gamma::ln_gamma;
    if x <= 0.0 && x == x.floor() {
        return None;
    }
    if x >= 0.5 {
        return Some((ln_gamma(x), 1.0));
    }
    // Reflection: Γ(x)Γ(1−x) = π / sin(πx).
    let s = (std::f64::consts::PI * x).sin();
    Some((std::f64::consts::PI.ln() - s.abs().ln() - ln_gamma(1.0 - x), s.signum()))
}

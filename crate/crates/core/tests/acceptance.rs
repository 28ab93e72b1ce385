//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::Command;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tailcast::distributions::{sample, DistributionSpec, Family, GpdParams};
use tailcast::exponents::{gammas_equal_factor, gammas_min_log, solve_lambda_equal, solve_rho_equal, ReturnSpec};
use tailcast::harness::{
    elemental_check, run_gpd_curve, run_trial, GpdCurveConfig, PerformanceCurve, TrialConfig,
};
use tailcast::lauricella::{
    density_t, exceedance_by_quadrature, integrate_simplex, ln_density_t, tail_identity_sides, Route,
};
use tailcast::predictors::{xi_hat_normalized, Excess, Method, Predictor, PredictorOverrides, XI_CLIP};
use tailcast::quadrature::Tolerance;
use tailcast::rng::RandomSource;
use tailcast::samples::{NormalizedData, OrderedSample};

const RATIOS: [f64; 12] = [
    2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0, 1024.0, 2048.0, 4096.0,
];

// Equal-λ exponents, columns N = 7, 15, 31.
const TABLE_LAMBDA: [[f64; 3]; 12] = [
    [0.1507, 0.0354, 0.0113],
    [0.3363, 0.0750, 0.0233],
    [0.5615, 0.1188, 0.0361],
    [0.8317, 0.1672, 0.0498],
    [1.1530, 0.2202, 0.0642],
    [1.5325, 0.2782, 0.0795],
    [1.9785, 0.3412, 0.0956],
    [2.5003, 0.4097, 0.1125],
    [3.1086, 0.4838, 0.1303],
    [3.8157, 0.5638, 0.1489],
    [4.6359, 0.6501, 0.1684],
    [5.5854, 0.7430, 0.1888],
];
const TABLE_LAMBDA_N3: [f64; 12] = [
    2.0, 6.0, 14.0, 30.0, 62.0, 126.0, 254.0, 510.0, 1022.0, 2046.0, 4094.0, 8190.0,
];

// Equal-ρ exponents, columns N = 3, 7, 15, 31.
const TABLE_RHO: [[f64; 4]; 12] = [
    [1.5, 0.1326, 0.0381, 0.0147],
    [0.5, 0.0527, 0.0155, 6.0377e-3],
    [0.2066, 0.0241, 7.1688e-3, 2.7948e-3],
    [0.1, 11.544e-3, 3.4548e-3, 1.3491e-3],
    [0.0484, 5.6596e-3, 1.6975e-3, 0.6633e-3],
    [0.0238, 2.8022e-3, 0.8414e-3, 0.3271e-3],
    [11.809e-3, 1.3945e-3, 0.4189e-3, 0.1638e-3],
    [5.8796e-3, 0.6953e-3, 0.2089e-3, 0.0817e-3],
    [2.9337e-3, 0.3457e-3, 0.1044e-3, 0.0408e-3],
    [1.4644e-3, 0.1733e-3, 0.0521e-3, 0.0204e-3],
    [0.7186e-3, 0.0866e-3, 0.0261e-3, 0.0102e-3],
    [0.3662e-3, 0.0432e-3, 0.0130e-3, 0.0050e-3],
];

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn spec(n: usize, ratio: f64) -> ReturnSpec {
    ReturnSpec::from_ratio(n, ratio).unwrap()
}

fn table1() -> Outcome {
    let start = Instant::now();
    let mut worst_printed = 0.0f64;
    let mut worst_closed = 0.0f64;
    for (i, &r) in RATIOS.iter().enumerate() {
        let l3 = solve_lambda_equal(&spec(3, r)).unwrap().lambda[0];
        worst_closed = worst_closed.max(rel(l3, 2.0 * (r - 1.0)));
        worst_printed = worst_printed.max((l3 - TABLE_LAMBDA_N3[i]).abs());
        for (c, &n) in [7usize, 15, 31].iter().enumerate() {
            let l = solve_lambda_equal(&spec(n, r)).unwrap().lambda[0];
            worst_printed = worst_printed.max((l - TABLE_LAMBDA[i][c]).abs() / 1e-4);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    // Integer entries must be exact; four-decimal entries within one unit of 1e-4.
    let pass = worst_printed <= 1.0 + 1e-9 && worst_closed < 1e-12 && secs < 1.0;
    outcome(
        pass,
        format!("worst |Δ| = {worst_printed:.3} last-digit units, N=3 closed-form rel {worst_closed:.1e}, {secs:.3}s"),
    )
}

fn table2() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut worst_closed = 0.0f64;
    let mut worst_recip = 0.0f64;
    for (i, &r) in RATIOS.iter().enumerate() {
        for (c, &n) in [3usize, 7, 15, 31].iter().enumerate() {
            if n == 3 && r == 8.0 {
                continue;
            }
            let rho = solve_rho_equal(&spec(n, r)).unwrap().rho[0];
            worst = worst.max(rel(rho, TABLE_RHO[i][c]));
        }
        let rho = solve_rho_equal(&spec(3, r)).unwrap().rho[0];
        let lambda = solve_lambda_equal(&spec(3, r)).unwrap().lambda[0];
        worst_closed = worst_closed.max(rel(rho, 1.5 / (r - 1.0)));
        worst_recip = worst_recip.max(rel(rho * lambda, 3.0));
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = worst <= 0.03 && worst_closed < 1e-12 && worst_recip < 1e-12 && secs < 1.0;
    outcome(
        pass,
        format!(
            "worst rel {:.3}%, N=3 closed-form rel {worst_closed:.1e}, ρ₁λ₁−3 rel {worst_recip:.1e}, {secs:.3}s",
            100.0 * worst
        ),
    )
}

fn scheme_identities() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in 3..=31 {
        for &r in &RATIOS {
            let s = spec(n, r);
            for h in [gammas_equal_factor(&s).unwrap(), gammas_min_log(&s).unwrap()] {
                worst = worst.max(h.relative_residual(&s).unwrap().abs());
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(worst < 1e-10 && secs < 1.0, format!("worst residual {worst:.1e}, {secs:.3}s"))
}

fn normalization() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    for n in [3usize, 4] {
        for xi in [-5.0, -1.0, -0.5, 0.5, 1.0, 5.0] {
            match integrate_simplex(n, |nd| ln_density_t(nd, xi, Route::Direct), Tolerance::new(1e-11, 1e-10)) {
                Ok(e) => worst = worst.max((e.value - 1.0).abs()),
                Err(e) => {
                    worst = f64::INFINITY;
                    notes.push(format!("N={n} ξ={xi}: {e}"));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst_route = 0.0f64;
    for _ in 0..100 {
        let n = rng.random_range(3..=7usize);
        let mut xi: f64 = rng.random_range(-5.0..5.0);
        if xi.abs() < 0.05 {
            xi = 0.05f64.copysign(xi);
        }
        let mut t: Vec<f64> = (0..n - 2).map(|_| rng.random::<f64>()).collect();
        t.sort_by(f64::total_cmp);
        let tau: Vec<f64> = t.iter().map(|v| 1.0 - v).collect();
        let nd = NormalizedData::from_t_tau(&t, &tau).unwrap();
        match (density_t(&nd, xi, Route::Direct), density_t(&nd, xi, Route::Transformed)) {
            (Ok(a), Ok(b)) => worst_route = worst_route.max(rel(a, b)),
            (a, b) => {
                worst_route = f64::INFINITY;
                notes.push(format!("N={n} ξ={xi:.3}: {a:?} {b:?}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = worst <= 1e-6 && worst_route <= 1e-8 && secs < 30.0;
    outcome(
        pass,
        format!(
            "worst |∫p−1| {worst:.1e}, worst route disagreement {worst_route:.1e}, {secs:.1}s {}",
            notes.join("; ")
        ),
    )
}

fn tail_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let a = rng.random_range(1.5..4.0);
        let b1 = rng.random_range(1.2..3.0);
        let b2 = rng.random_range(0.3..2.0);
        let c = a + rng.random_range(0.5..3.0);
        let x2: f64 = rng.random_range(-3.0..0.9);
        let s_t = rng.random_range(1.0..5.0);
        let (lhs, rhs) = tail_identity_sides(a, [b1, b2], c, x2, s_t).unwrap();
        worst = worst.max(rel(lhs, rhs));
    }
    let mut worst_gp = 0.0f64;
    for xi in [-2.0, -0.5, 0.5, 2.0] {
        let e = exceedance_by_quadrature(|_| Ok(Excess::ZERO), xi, 3).unwrap();
        worst_gp = worst_gp.max((e.value - 0.25).abs());
    }
    outcome(
        worst <= 1e-6 && worst_gp <= 1e-6,
        format!("tail identity worst rel {worst:.1e}; |∫G·p − 1/4| worst {worst_gp:.1e}"),
    )
}

fn gpd_curve(method: Method, n: usize, ratios: &[f64], xi: &[f64], reps: u64, seed: u64) -> PerformanceCurve {
    run_gpd_curve(
        &GpdCurveConfig {
            method,
            n,
            t_ratios: ratios.to_vec(),
            xi_grid: xi.to_vec(),
            reps,
            seed,
            overrides: PredictorOverrides::default(),
        },
        None,
    )
    .unwrap()
}

fn log2_bound(curve: &PerformanceCurve, bound: impl Fn(f64) -> f64) -> (bool, String) {
    let mut ok = true;
    let mut cells = Vec::new();
    for r in &curve.rows {
        let e = r.log2_error();
        let good = e.abs() <= bound(r.target_ratio);
        ok &= good;
        cells.push(format!("{}@{}:{:+.3}{}", r.axis, r.target_ratio, e, if good { "" } else { "!" }));
    }
    (ok, cells.join(" "))
}

fn within_se(curve: &PerformanceCurve) -> (bool, String) {
    let mut ok = true;
    let mut cells = Vec::new();
    for r in &curve.rows {
        let z = (r.delivered_t - r.target_t) / r.std_err;
        let good = r.within_se(3.0);
        ok &= good;
        cells.push(format!("{}@{}:z={:+.2}{}", r.axis, r.target_ratio, z, if good { "" } else { "!" }));
    }
    (ok, cells.join(" "))
}

fn heavy_limit() -> Outcome {
    let c = gpd_curve(Method::HeavyEqual, 7, &[4.0, 16.0, 64.0, 256.0], &[50.0], 400_000, SEED + 6);
    let (ok, d) = log2_bound(&c, |_| 0.15);
    outcome(ok, d)
}

fn bounded_limit() -> Outcome {
    let c = gpd_curve(Method::BoundedEqual, 7, &[4.0, 16.0, 64.0, 256.0], &[-50.0], 400_000, SEED + 7);
    let (ok, d) = log2_bound(&c, |_| 0.15);
    outcome(ok, d)
}

const ANCHOR_RATIOS: [f64; 5] = [4.0, 8.0, 16.0, 32.0, 64.0];

fn bayes_anchors() -> Outcome {
    let u = gpd_curve(Method::BayesUniform, 7, &ANCHOR_RATIOS, &[-1.0], 200_000, SEED + 8);
    let e = gpd_curve(Method::BayesExponential, 7, &ANCHOR_RATIOS, &[0.0], 200_000, SEED + 9);
    let (a, da) = within_se(&u);
    let (b, db) = within_se(&e);
    outcome(a && b, format!("uniform {da} | exponential {db}"))
}

fn data_max_anchor() -> Outcome {
    let families = [
        Family::Gpd { xi: -2.0 },
        Family::Gpd { xi: 0.0 },
        Family::Gpd { xi: 0.5 },
        Family::Gpd { xi: 3.0 },
        Family::Uniform,
        Family::Normal,
        Family::HalfCauchy,
        Family::Cauchy,
        Family::Burr { a: 2.0, b: 1.0 },
        Family::RandomizedBurr,
        Family::Weibull { shape: 0.5 },
        Family::Beta { a: 2.0, b: 3.0 },
        Family::TwoPopulation {
            low: 0.5,
            high: 0.9,
            p_high: 0.05,
        },
    ];
    let mut ok = true;
    let mut bad = Vec::new();
    let mut cells = 0;
    for (i, f) in families.iter().enumerate() {
        for m in [7usize, 31] {
            let dist = DistributionSpec::new(*f).unwrap().randomized(true);
            let c = run_trial(
                &TrialConfig {
                    dist,
                    m,
                    n: 7,
                    t_ratios: vec![1.0],
                    reps: 100_000,
                    seed: SEED + 100 + i as u64,
                    method: Method::DataMax,
                    overrides: PredictorOverrides::default(),
                },
                None,
            )
            .unwrap();
            let (good, d) = within_se(&c);
            cells += 1;
            if !good {
                ok = false;
                bad.push(format!("M={m} {d}"));
            }
        }
    }
    outcome(ok, format!("{cells} distribution/M cells; failures: [{}]", bad.join("; ")))
}

fn interpolated() -> Outcome {
    let xi = [-4.0, -2.0, -1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0, 2.0, 4.0];
    let c = gpd_curve(
        Method::Interpolated,
        7,
        &[2.0, 4.0, 8.0, 16.0, 32.0, 64.0],
        &xi,
        200_000,
        SEED + 10,
    );
    let (ok, d) = log2_bound(&c, |r| if r <= 16.0 { 0.5 } else { 1.0 });
    let worst = c.rows.iter().map(|r| r.log2_error().abs()).fold(0.0, f64::max);
    outcome(ok, format!("worst |log₂ error| {worst:.3}; {d}"))
}

fn trial(dist: DistributionSpec, m: usize, reps: u64, seed: u64) -> PerformanceCurve {
    run_trial(
        &TrialConfig {
            dist,
            m,
            n: 7,
            t_ratios: vec![2.0, 4.0, 8.0, 16.0],
            reps,
            seed,
            method: Method::Interpolated,
            overrides: PredictorOverrides::default(),
        },
        None,
    )
    .unwrap()
}

fn other_distributions() -> Outcome {
    let cauchy = trial(DistributionSpec::new(Family::HalfCauchy).unwrap(), 31, 200_000, SEED + 11);
    let burr = trial(DistributionSpec::new(Family::Burr { a: 2.0, b: 1.0 }).unwrap(), 31, 200_000, SEED + 12);
    let uniform = trial(DistributionSpec::new(Family::Uniform).unwrap(), 15, 200_000, SEED + 13);
    let normal = trial(DistributionSpec::new(Family::Normal).unwrap(), 7, 200_000, SEED + 14);
    let (a, da) = log2_bound(&cauchy, |_| 1.0);
    let (b, db) = log2_bound(&burr, |_| 1.0);
    let (c, dc) = within_se(&uniform);
    let (_, dn) = log2_bound(&normal, |_| f64::INFINITY);
    outcome(
        a && b && c,
        format!("half-Cauchy {da} | Burr(2,1) {db} | uniform {dc} | normal M=7 (not gated) {dn}"),
    )
}

fn elemental() -> Outcome {
    let mut ok = true;
    let mut cells = Vec::new();
    for xi in [-2.0, 0.0, 2.0] {
        let e = elemental_check(xi, 7, 100_000, SEED + 15, None).unwrap();
        let mut worst_z = 0.0f64;
        for ((m, s), x) in e.pair_mean.iter().zip(&e.pair_se).zip(&e.pair_expected) {
            worst_z = worst_z.max((m - x).abs() / s);
        }
        let bias = e.xi_hat_mean - xi;
        let good = worst_z <= 3.0 && bias.abs() <= 0.05;
        ok &= good;
        cells.push(format!(
            "ξ={xi}: worst pair |z| {worst_z:.2}, mean ξ̂ − ξ = {bias:+.4}{}",
            if good { "" } else { "!" }
        ));
    }
    outcome(ok, cells.join("; "))
}

fn quadrature_vs_mc() -> Outcome {
    let s = ReturnSpec::new(3, 8.0).unwrap();
    let p = Predictor::new(Method::Interpolated, s).unwrap();
    let mut ok = true;
    let mut cells = Vec::new();
    for (i, xi) in [-2.0, -1.0, 1.0, 2.0].into_iter().enumerate() {
        let q = exceedance_by_quadrature(
            |nd| p.excess(nd, xi_hat_normalized(nd, XI_CLIP).value),
            xi,
            3,
        )
        .unwrap()
        .value;
        let c = gpd_curve(Method::Interpolated, 3, &[2.0], &[xi], 400_000, SEED + 20 + i as u64);
        let r = &c.rows[0];
        let p_mc = r.exceed_count as f64 / r.reps as f64;
        let se = (p_mc * (1.0 - p_mc) / r.reps as f64).sqrt();
        let z = (p_mc - q) / se;
        ok &= z.abs() <= 3.0;
        cells.push(format!("ξ={xi}: quad {q:.5} mc {p_mc:.5} z={z:+.2}"));
    }
    outcome(ok, cells.join("; "))
}

fn equivariance_and_determinism() -> Outcome {
    let methods = [
        Method::DataMax,
        Method::HeavyEqual,
        Method::HeavyEqualFactor,
        Method::HeavyMinLog,
        Method::BoundedEqual,
        Method::ModeratedHeavy,
        Method::ModeratedBounded,
        Method::Interpolated,
        Method::BayesExponential,
        Method::BayesUniform,
    ];
    // Exact transforms: a = 2^k and data and b on a common dyadic grid, so
    // aX + b is representable and any deviation is the predictor's own.
    // Arbitrary (a, b) are also reported; there the rounding of aX + b itself,
    // amplified by large exponents, dominates.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 30);
    let mut worst = 0.0f64;
    let mut worst_inexact = 0.0f64;
    let mut cases = 0u64;
    let mut draw = 0u64;
    while cases < 1000 {
        draw += 1;
        let n = rng.random_range(3..=15usize);
        let xi = rng.random_range(-3.0..3.0);
        let ratio = rng.random_range(1.0..200.0);
        let method = methods[cases as usize % methods.len()];
        let dist = DistributionSpec::gpd(GpdParams::standard(xi));
        let mut src = RandomSource::new(SEED + 31, draw);
        let raw = sample(&dist, n, &mut src).unwrap();
        let top = raw.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let grid = 2f64.powi(top.log2().ceil() as i32 - 40);
        let Ok(x) = OrderedSample::new(raw.iter().map(|v| (v / grid).round() * grid).collect()) else {
            continue;
        };
        if tailcast::samples::spacings(&x).is_err() {
            continue;
        }
        let a = 2f64.powi(rng.random_range(-10..=10));
        let b = a * (rng.random_range(-1e3..1e3) * top.max(1.0) / grid).round() * grid;
        let p = Predictor::new(method, spec(n, ratio)).unwrap();
        let px = p.predict(&x).unwrap().x_t;
        let check = |a: f64, b: f64| {
            let y = x.affine(a, b).unwrap();
            let py = p.predict(&y).unwrap().x_t;
            let expect = a * px + b;
            (py - expect).abs() / expect.abs().max(a * (x.max() - x.min()))
        };
        worst = worst.max(check(a, b));
        let a2 = 10f64.powf(rng.random_range(-3.0..3.0));
        let b2 = rng.random_range(-1e3..1e3);
        worst_inexact = worst_inexact.max(check(a2, b2));
        cases += 1;
    }

    let bin = env!("CARGO_BIN_EXE_tailcast");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let mut identical = true;
    for base in [
        vec!["evaluate", "--n", "7", "--t-ratios", "4,16", "--xi", "-1,0,1", "--reps", "20000", "--seed", "42"],
        vec![
            "trial", "--dist", r#"{"kind":"burr","a":2,"b":1}"#, "--m", "31", "--n", "7", "--t-ratios", "2,8",
            "--reps", "20000", "--seed", "7", "--format", "json",
        ],
    ] {
        let outs: Vec<_> = ["1", "3", "8"]
            .iter()
            .map(|w| {
                let mut a = base.clone();
                a.extend(["--workers", w]);
                run(&a)
            })
            .collect();
        identical &= outs.iter().all(|o| o.status.success() && !o.stdout.is_empty());
        identical &= outs.windows(2).all(|w| w[0].stdout == w[1].stdout);
    }
    outcome(
        worst <= 1e-9 && identical,
        format!(
            "worst affine rel deviation {worst:.1e} over {cases} exact transforms \
             (arbitrary a, b, not gated: {worst_inexact:.1e}); CLI byte-identical across workers: {identical}"
        ),
    )
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("1 equal-λ table", table1),
        ("2 equal-ρ table", table2),
        ("3 scheme identities", scheme_identities),
        ("4 density normalization and routes", normalization),
        ("5 tail identity and data-max integral", tail_identities),
        ("6 heavy limit ξ=+50", heavy_limit),
        ("7 bounded limit ξ=−50", bounded_limit),
        ("8 Bayes anchors", bayes_anchors),
        ("9 data-max anchor", data_max_anchor),
        ("10 interpolated predictor", interpolated),
        ("11 non-GPD trials", other_distributions),
        ("12 elemental estimator", elemental),
        ("13 quadrature vs Monte Carlo", quadrature_vs_mc),
        ("14 equivariance and determinism", equivariance_and_determinism),
    ];
    let only: Option<String> = std::env::args().nth(1).filter(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (name, f) in criteria {
        if let Some(o) = &only {
            if !name.starts_with(&format!("{o} ")) {
                continue;
            }
        }
        let start = Instant::now();
        let r = f();
        if !r.pass {
            failed += 1;
        }
        println!(
            "{} criterion {name} ({:.1}s): {}",
            if r.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            r.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

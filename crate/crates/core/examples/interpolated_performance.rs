//! The interpolated predictor against GPD samples, next to the two exact
//! Bayesian anchors (uniform at ξ = −1, exponential at ξ = 0).

use tailcast::harness::{run_gpd_curve, GpdCurveConfig, PerformanceCurve};
use tailcast::predictors::{Method, PredictorOverrides};

fn curve(method: Method, xi_grid: Vec<f64>) -> tailcast::Result<PerformanceCurve> {
    run_gpd_curve(
        &GpdCurveConfig {
            method,
            n: 7,
            t_ratios: vec![2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0],
            xi_grid,
            reps: 200_000,
            seed: 3,
            overrides: PredictorOverrides::default(),
        },
        None,
    )
}

fn main() -> tailcast::Result<()> {
    let interp = curve(Method::Interpolated, vec![-4.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 4.0])?;
    println!("interpolated, N=7: log₂(delivered/target)");
    for chunk in interp.rows.chunks(7) {
        let cells: Vec<String> = chunk.iter().map(|r| format!("{:+.2}", r.log2_delivered_ratio - r.log2_target_ratio)).collect();
        println!("  ξ={:>5}: {}", chunk[0].axis, cells.join(" "));
    }

    for (m, xi) in [(Method::BayesUniform, -1.0), (Method::BayesExponential, 0.0)] {
        let c = curve(m, vec![xi])?;
        println!("{} at ξ={xi}:", m.name());
        for r in &c.rows {
            let z = (r.delivered_t - r.target_t) / r.std_err;
            println!("  T={:>5} delivered {:>8.1}  z = {z:+.2}", r.target_t, r.delivered_t);
        }
    }

    // CSV as written by the CLI.
    interp.to_csv(std::io::stdout().lock())?;
    Ok(())
}

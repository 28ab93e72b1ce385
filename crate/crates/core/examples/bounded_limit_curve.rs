//! Equal-ρ bounded-tail predictor: exact in the ξ → −∞ limit, conservative elsewhere.

use tailcast::harness::{run_gpd_curve, GpdCurveConfig};
use tailcast::predictors::{Method, PredictorOverrides};

fn main() -> tailcast::Result<()> {
    for n in [3usize, 7, 15] {
        let curve = run_gpd_curve(
            &GpdCurveConfig {
                method: Method::BoundedEqual,
                n,
                t_ratios: vec![4.0, 16.0, 64.0, 256.0],
                xi_grid: vec![-50.0, -10.0, -4.0, -1.0, 0.0, 1.0],
                reps: 100_000,
                seed: 2,
                overrides: PredictorOverrides::default(),
            },
            None,
        )?;
        println!("N={n}");
        for r in &curve.rows {
            println!(
                "  ξ={:>4} target {:>5} delivered {:>9.1} ± {:>7.1}  log₂(delivered/target) {:+.3}",
                r.axis,
                r.target_t,
                r.delivered_t,
                r.std_err,
                r.log2_delivered_ratio - r.log2_target_ratio
            );
        }
    }
    Ok(())
}

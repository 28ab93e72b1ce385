//! Delivered return levels of the heavy-tail limit predictors across shapes.
//! All three schemes should converge on the target as ξ grows. Cells with no
//! exceedances in the simulated replicates print as `inf`.

use tailcast::exponents::ReturnSpec;
use tailcast::harness::{run_gpd_curve, GpdCurveConfig};
use tailcast::predictors::{Method, PredictorOverrides};

fn main() -> tailcast::Result<()> {
    let ratios = vec![4.0, 16.0, 64.0, 256.0, 1024.0, 4096.0];
    let xi_grid = vec![-1.0, 0.0, 1.0, 2.0, 5.0, 10.0, 50.0];
    for method in [Method::HeavyEqual, Method::HeavyEqualFactor, Method::HeavyMinLog] {
        let curve = run_gpd_curve(
            &GpdCurveConfig {
                method,
                n: 7,
                t_ratios: ratios.clone(),
                xi_grid: xi_grid.clone(),
                reps: 200_000,
                seed: 1,
                overrides: PredictorOverrides::default(),
            },
            None,
        )?;
        println!("{}: log₂(delivered/(N+1)) by ξ", method.name());
        print!("{:>6}", "ξ");
        for r in &ratios {
            print!("{:>8}", ReturnSpec::from_ratio(7, *r)?.ratio().log2());
        }
        println!();
        for chunk in curve.rows.chunks(ratios.len()) {
            print!("{:>6}", chunk[0].axis);
            for row in chunk {
                print!("{:>8.2}", row.log2_delivered_ratio);
            }
            println!();
        }
        println!();
    }
    Ok(())
}

//! Exact exceedance probabilities for N = 3 by quadrature, checked against
//! simulation.

use tailcast::exponents::ReturnSpec;
use tailcast::harness::{run_gpd_curve, GpdCurveConfig};
use tailcast::lauricella::exceedance_by_quadrature;
use tailcast::predictors::{xi_hat_normalized, Method, Predictor, PredictorOverrides, XI_CLIP};

fn main() -> tailcast::Result<()> {
    let t = 8.0;
    for method in [Method::Interpolated, Method::HeavyEqual, Method::BoundedEqual, Method::BayesUniform] {
        let p = Predictor::new(method, ReturnSpec::new(3, t)?)?;
        println!("{} (target 1/T = {:.5})", method.name(), 1.0 / t);
        for xi in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            let q = exceedance_by_quadrature(|nd| p.excess(nd, xi_hat_normalized(nd, XI_CLIP).value), xi, 3)?;
            let mc = run_gpd_curve(
                &GpdCurveConfig {
                    method,
                    n: 3,
                    t_ratios: vec![t / 4.0],
                    xi_grid: vec![xi],
                    reps: 200_000,
                    seed: 11,
                    overrides: PredictorOverrides::default(),
                },
                None,
            )?;
            let r = &mc.rows[0];
            println!(
                "  ξ={xi:>4}: quadrature {:.5}  simulation {:.5}",
                q.value,
                r.exceed_count as f64 / r.reps as f64
            );
        }
    }
    Ok(())
}

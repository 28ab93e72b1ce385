//! Extrapolating one GPD sample to long return periods.

use tailcast::distributions::{sample, DistributionSpec, GpdParams};
use tailcast::harness::extrapolation_demo;
use tailcast::rng::RandomSource;
use tailcast::samples::OrderedSample;

fn main() -> tailcast::Result<()> {
    let truth = GpdParams::new(10.0, 2.0, 0.3)?;
    let mut rng = RandomSource::new(2024, 0);
    let x = OrderedSample::new(sample(&DistributionSpec::gpd(truth), 15, &mut rng)?)?;
    println!("sample max {:.2}", x.max());
    let levels = [16.0, 32.0, 100.0, 320.0, 1000.0, 3200.0];
    println!("{:>6} {:>12} {:>12} {:>12}", "T", "interpolated", "bayes-exp", "true");
    for r in extrapolation_demo(&x, &levels, Some(&truth))? {
        println!(
            "{:>6} {:>12.2} {:>12.2} {:>12.2}",
            r.t,
            r.interpolated,
            r.bayes_exponential,
            r.true_quantile.unwrap()
        );
    }
    Ok(())
}

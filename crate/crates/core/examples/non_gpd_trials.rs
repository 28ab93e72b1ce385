//! Top-N predictions from larger samples of non-GPD distributions.
//! Half-Cauchy, Burr and uniform match well; normal at M=7 does not; the last
//! three families are known hard cases.

use tailcast::distributions::{DistributionSpec, Family};
use tailcast::harness::{run_trial, TrialConfig};
use tailcast::predictors::{Method, PredictorOverrides};

fn main() -> tailcast::Result<()> {
    let cases = [
        (Family::HalfCauchy, 31),
        (Family::Burr { a: 2.0, b: 1.0 }, 31),
        (Family::Uniform, 15),
        (Family::Normal, 7),
        (Family::Normal, 31),
        (Family::RandomizedBurr, 31),
        (Family::Weibull { shape: 0.3 }, 31),
        (Family::Beta { a: 0.5, b: 0.5 }, 31),
        (Family::TwoPopulation { low: 0.3, high: 0.9, p_high: 0.02 }, 31),
    ];
    for (i, (family, m)) in cases.into_iter().enumerate() {
        let dist = DistributionSpec::new(family)?.randomized(true);
        let curve = run_trial(
            &TrialConfig {
                dist,
                m,
                n: 7,
                t_ratios: vec![2.0, 4.0, 8.0, 16.0],
                reps: 100_000,
                seed: 40 + i as u64,
                method: Method::Interpolated,
                overrides: PredictorOverrides::default(),
            },
            None,
        )?;
        let cells: Vec<String> = curve.rows.iter().map(|r| format!("{:+.2}", r.log2_delivered_ratio - r.log2_target_ratio)).collect();
        println!("{:<40} M={m:<3} log₂(delivered/target) at ratios 2..16: {}", dist.label(), cells.join(" "));
    }
    Ok(())
}

//! Exponents of the limit predictors for a range of sample sizes and levels.

use tailcast::exponents::{solve_lambda_equal, solve_rho_equal, HeavyScheme, ReturnSpec};

fn main() -> tailcast::Result<()> {
    let sizes = [3usize, 7, 15, 31];
    let ratios: Vec<f64> = (1..=12).map(|k| 2f64.powi(k)).collect();

    println!("equal λ (heavy-tail limit)");
    println!("{:>8} {}", "T/(N+1)", sizes.map(|n| format!("{:>12}", format!("N={n}"))).join(""));
    for &r in &ratios {
        let row: Vec<String> = sizes
            .iter()
            .map(|&n| Ok(format!("{:>12.4}", solve_lambda_equal(&ReturnSpec::from_ratio(n, r)?)?.lambda[0])))
            .collect::<tailcast::Result<_>>()?;
        println!("{r:>8} {}", row.join(""));
    }

    println!("\nequal ρ (bounded-tail limit)");
    for &r in &ratios {
        let row: Vec<String> = sizes
            .iter()
            .map(|&n| Ok(format!("{:>12.4e}", solve_rho_equal(&ReturnSpec::from_ratio(n, r)?)?.rho[0])))
            .collect::<tailcast::Result<_>>()?;
        println!("{r:>8} {}", row.join(""));
    }

    // The three heavy schemes differ in how γ is spread over j but share the constraint.
    let spec = ReturnSpec::from_ratio(7, 64.0)?;
    println!("\nN=7, T/(N+1)=64");
    for s in [HeavyScheme::Equal, HeavyScheme::EqualFactor, HeavyScheme::MinLog] {
        let h = s.solve(&spec)?;
        let lambda: Vec<String> = h.lambda.iter().map(|l| format!("{l:.4}")).collect();
        println!("{s:?}: λ = [{}], residual {:.1e}", lambda.join(", "), h.relative_residual(&spec)?);
    }
    Ok(())
}

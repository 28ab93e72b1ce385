//! Return-level predictions from one small sample with every method.

use tailcast::exponents::ReturnSpec;
use tailcast::predictors::{xi_hat, Method, Predictor};
use tailcast::samples::{parse_data, select_top};

const DATA: &str = "
# annual maxima
41.2
37.9
55.0
46.3
39.4
61.8
44.7
50.1
38.6
72.4
";

fn main() -> tailcast::Result<()> {
    let all = parse_data(DATA)?;
    let x = select_top(&all, 7)?;
    println!("top 7 of {}: {:?}", all.len(), x.values());
    let xi = xi_hat(&x)?;
    println!("ξ̂ = {:.3} (single-pair roots {:?})", xi.value, xi.per_pair.iter().map(|v| (v * 1e3).round() / 1e3).collect::<Vec<_>>());

    let methods = [
        Method::Interpolated,
        Method::BayesExponential,
        Method::BayesUniform,
        Method::HeavyEqual,
        Method::BoundedEqual,
        Method::ModeratedHeavy,
        Method::ModeratedBounded,
        Method::DataMax,
    ];
    println!("\n{:>18} {:>10} {:>10} {:>10}", "method", "T=16", "T=64", "T=256");
    for m in methods {
        let cells: Vec<String> = [16.0, 64.0, 256.0]
            .iter()
            .map(|&t| Ok(format!("{:>10.2}", Predictor::new(m, ReturnSpec::new(7, t)?)?.predict(&x)?.x_t)))
            .collect::<tailcast::Result<_>>()?;
        println!("{:>18} {}", m.name(), cells.join(" "));
    }

    let report = Predictor::new(Method::Interpolated, ReturnSpec::new(7, 64.0)?)?.predict(&x)?;
    println!("\n{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(())
}

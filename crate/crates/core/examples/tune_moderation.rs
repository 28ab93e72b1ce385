//! Re-fit the moderation exponents A and B by simulation and compare with
//! the tabulated values.

use tailcast::exponents::ReturnSpec;
use tailcast::predictors::{moderation_exponents, tune_moderation};

fn main() -> tailcast::Result<()> {
    let grid = [-4.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 4.0];
    for ratio in [4.0, 16.0, 64.0] {
        let spec = ReturnSpec::from_ratio(7, ratio)?;
        let (a, b) = moderation_exponents(&spec);
        let t = tune_moderation(&spec, &grid, 20_000, 9)?;
        println!(
            "T/(N+1)={ratio:>3}: table A={a:.3} B={b:.4} (objective {:.4}/{:.4}); tuned A={:.3} B={:.4} (objective {:.4}/{:.4})",
            t.table_objective_a, t.table_objective_b, t.a, t.b, t.objective_a, t.objective_b
        );
    }
    Ok(())
}

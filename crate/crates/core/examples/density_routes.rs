//! Densities of the normalised data via Lauricella F_D, by both routes, and
//! their normalisation over the simplex.

use tailcast::lauricella::{density_t, integrate_simplex, lauricella_fd, lauricella_fd_series, ln_density_t, LauricellaArgs, Route};
use tailcast::quadrature::Tolerance;
use tailcast::samples::NormalizedData;

fn main() -> tailcast::Result<()> {
    let args = LauricellaArgs::new(1.5, vec![0.7, 1.2], 3.0, vec![0.4, -0.8])?;
    println!("F_D integral {:.15}", lauricella_fd(&args)?);
    println!("F_D series   {:.15}", lauricella_fd_series(&args)?);

    let t = [0.05, 0.3, 0.62];
    let tau: Vec<f64> = t.iter().map(|v| 1.0 - v).collect();
    let nd = NormalizedData::from_t_tau(&t, &tau)?;
    println!("\np(t | ξ) at t = {t:?}");
    for xi in [-5.0, -1.0, -0.2, 0.0, 0.2, 1.0, 5.0] {
        let a = density_t(&nd, xi, Route::Direct)?;
        let b = density_t(&nd, xi, Route::Transformed)?;
        println!("  ξ={xi:>5}: {a:.12e}  {b:.12e}");
    }

    println!("\n∫p dt over the simplex");
    for n in [3usize, 4] {
        for xi in [-2.0, -0.5, 0.5, 2.0] {
            let e = integrate_simplex(n, |nd| ln_density_t(nd, xi, Route::Direct), Tolerance::new(1e-11, 1e-10))?;
            println!("  N={n} ξ={xi:>4}: {:.12} (error {:.1e})", e.value, e.error);
        }
    }
    Ok(())
}

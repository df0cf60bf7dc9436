//! Gaussian model: region quantities along alpha (nats) and the tightness of
//! the entropy-power steps at the jointly Gaussian auxiliary.
//!
//! cargo run --example gaussian_region

use bis_keys::models::GaussianBis;
use bis_keys::region::{epi_verify, gaussian_sweep, AlphaGrid, RcRule};

fn main() -> bis_keys::Result<()> {
    let g = GaussianBis::new(0.9, 0.8)?;
    let grid = AlphaGrid::explicit(vec![1e-3, 0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 1.0])?;
    let rows = gaussian_sweep(g, 0.1, 0.0, RcRule::HalfIzu, &grid)?;
    println!(
        "{:>7} {:>8} {:>8} {:>8} {:>8} {:>8}",
        "alpha", "I(Z;U)", "I(Y;U)", "I(X;U)", "R_J min", "R_G max"
    );
    for r in &rows {
        let p = r.point;
        println!(
            "{:>7} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            p.alpha,
            p.izu,
            p.iyu,
            p.ixu,
            r.rj_min,
            r.rg_max.unwrap_or(f64::NAN)
        );
    }
    println!("(the region keeps growing as alpha -> 0; first row is an open end)");

    let r = epi_verify(0.3, g)?;
    println!("\nentropy-power slacks at alpha = 0.3: {r:#?}");
    Ok(())
}

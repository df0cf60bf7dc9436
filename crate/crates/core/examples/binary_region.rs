//! Boundary of the (R_J, R_G) region for the binary model with p_E = 0.03
//! and p_D = 0.1, for correlation budgets 0 and 0.2 and both chosen-key
//! rules. Writes the full sweeps as CSV next to the build output.
//!
//! cargo run --example binary_region

use std::fs::File;
use std::io::BufWriter;

use bis_keys::models::TestChannel;
use bis_keys::region::{fig3_sweep, mgl_check, write_binary_csv, RcRule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out_dir = std::env::temp_dir();
    for rule in [RcRule::FullIzu, RcRule::HalfIzu] {
        println!("R_C rule {rule:?}");
        println!(
            "{:>7} {:>9} {:>9} {:>12} {:>12}",
            "gamma", "I(Z;U)", "R_J min", "R_G (G=0)", "R_G (G=0.2)"
        );
        let none = fig3_sweep(0.03, 0.1, 0.0, 0.0, rule, 513)?;
        let some = fig3_sweep(0.03, 0.1, 0.2, 0.0, rule, 513)?;
        for (a, b) in none.iter().zip(&some).step_by(64) {
            println!(
                "{:>7.4} {:>9.5} {:>9.5} {:>12.5} {:>12.5}",
                a.gamma,
                a.izu,
                a.rj_min,
                a.rg_max.unwrap_or(f64::NAN),
                b.rg_max.unwrap_or(f64::NAN)
            );
        }
        let path = out_dir.join(format!("binary_region_{rule:?}.csv").to_lowercase());
        write_binary_csv(BufWriter::new(File::create(&path)?), &some)?;
        println!("wrote {}\n", path.display());
    }

    // Mrs. Gerber's Lemma is tight for symmetric auxiliaries and slack otherwise.
    let skewed = TestChannel::from_rows(vec![vec![0.9, 0.1, 0.0], vec![0.0, 0.3, 0.7]])?;
    for (name, test) in [("BSC(0.1)", TestChannel::bsc(0.1)?), ("skewed", skewed)] {
        let r = mgl_check(0.03, 0.1, &test)?;
        println!(
            "{name}: identification slack {:.2e}, enrollment slack {:.2e}",
            r.identification_slack, r.enrollment_slack
        );
    }
    Ok(())
}

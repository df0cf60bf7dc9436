//! Capacity-region evaluation.
//!
//! Every region is described by three information quantities `I(Z;U)`,
//! `I(Y;U)`, `I(X;U)` of an auxiliary `U`. [`discrete`] computes them for an
//! arbitrary finite model and searches for a witness auxiliary; [`binary`] and
//! [`gaussian`] give the closed-form parametrizations and boundary sweeps.

pub mod binary;
pub mod discrete;
pub mod gaussian;

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

pub use binary::{
    binary_point, fig3_sweep, mgl_check, BinaryRegionPoint, BinarySweepRow, MglReport,
};
pub use discrete::{
    check_rates, corollary_region, max_rg, search_test_channel, theorem1_bounds, Corollary,
    RateCheck, SearchConfig, SearchOutcome,
};
pub use gaussian::{
    epi_verify, gaussian_point, gaussian_sweep, AlphaGrid, EpiReport, GaussianRegionPoint,
    GaussianSweepRow,
};

/// How the chosen-key rate is tied to `I(Z;U)` along a boundary sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RcRule {
    /// `R_C = I(Z;U)`
    FullIzu,
    /// `R_C = I(Z;U) / 2`
    HalfIzu,
}

impl RcRule {
    pub fn chosen_rate(self, izu: f64) -> f64 {
        match self {
            RcRule::FullIzu => izu,
            RcRule::HalfIzu => 0.5 * izu,
        }
    }
}

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros trimmed.
pub fn fmt_sig(v: f64) -> String {
    const DIGITS: i32 = 12;
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn write_csv<W: Write>(
    mut out: W,
    unit: &str,
    header: &str,
    rows: impl Iterator<Item = (Vec<f64>, bool)>,
) -> io::Result<()> {
    writeln!(out, "# unit={unit}")?;
    writeln!(out, "{header}")?;
    for (values, feasible) in rows {
        let cols: Vec<String> = values.into_iter().map(fmt_sig).collect();
        writeln!(out, "{},{}", cols.join(","), feasible)?;
    }
    Ok(())
}

/// Writes a binary sweep as `gamma,izu,rj_min,rg_max,feasible` (bits).
pub fn write_binary_csv<W: Write>(out: W, rows: &[BinarySweepRow]) -> io::Result<()> {
    write_csv(
        out,
        "bits",
        "gamma,izu,rj_min,rg_max,feasible",
        rows.iter().map(|r| {
            (
                vec![r.gamma, r.izu, r.rj_min, r.rg_max.unwrap_or(f64::NAN)],
                r.rg_max.is_some(),
            )
        }),
    )
}

/// Writes a Gaussian sweep as `alpha,izu,iyu,ixu,rj_min,rg_max,feasible` (nats).
pub fn write_gaussian_csv<W: Write>(out: W, rows: &[GaussianSweepRow]) -> io::Result<()> {
    write_csv(
        out,
        "nats",
        "alpha,izu,iyu,ixu,rj_min,rg_max,feasible",
        rows.iter().map(|r| {
            (
                vec![
                    r.point.alpha,
                    r.point.izu,
                    r.point.iyu,
                    r.point.ixu,
                    r.rj_min,
                    r.rg_max.unwrap_or(f64::NAN),
                ],
                r.rg_max.is_some(),
            )
        }),
    )
}

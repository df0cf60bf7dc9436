//! Closed-form region for a uniform binary source seen through two binary
//! symmetric channels. All quantities are in bits.
//!
//! With a binary symmetric auxiliary of crossover `gamma`:
//!
//! ```text
//! I(Z;U) = 1 - H_b(gamma * p_E * p_D)
//! I(Y;U) - I(Z;U) = H_b(gamma * p_E * p_D) - H_b(gamma)
//! I(X;U) - I(Z;U) = H_b(gamma * p_E * p_D) - H_b(gamma * p_E)
//! ```
//!
//! and Mrs. Gerber's Lemma shows no other auxiliary does better.

use rayon::prelude::*;
use serde::Serialize;

use super::discrete::max_rg_raw;
use super::RcRule;
use crate::error::{Error, Result};
use crate::info::{conditional_entropy, hb, inv_hb, star_raw, Base};
use crate::models::{
    binary_to_discrete, induced_joint, BinaryBis, RegionBounds, TestChannel, AXIS_U, AXIS_X,
    AXIS_Y, AXIS_Z,
};

/// Default number of `gamma` grid points on `[0, 0.5]`.
pub const DEFAULT_GRID: usize = 513;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinaryRegionPoint {
    pub gamma_param: f64,
    pub izu: f64,
    pub rj_offset: f64,
    pub rl_offset: f64,
}

impl BinaryRegionPoint {
    /// The three mutual informations this point stands for.
    pub fn bounds(&self) -> RegionBounds {
        RegionBounds::from_amounts(
            self.izu,
            self.izu + self.rj_offset,
            self.izu + self.rl_offset,
            Base::Bits,
        )
    }
}

fn check_half(v: f64) -> Result<f64> {
    if (0.0..=0.5).contains(&v) {
        Ok(v)
    } else {
        Err(Error::Domain {
            value: v,
            domain: "[0, 0.5]",
        })
    }
}

pub fn binary_point(gamma_param: f64, p_e: f64, p_d: f64) -> Result<BinaryRegionPoint> {
    for v in [gamma_param, p_e, p_d] {
        check_half(v)?;
    }
    let through_enrollment = star_raw(gamma_param, p_e);
    let h_total = hb(star_raw(through_enrollment, p_d));
    Ok(BinaryRegionPoint {
        gamma_param,
        izu: 1.0 - h_total,
        rj_offset: h_total - hb(gamma_param),
        rl_offset: h_total - hb(through_enrollment),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinarySweepRow {
    pub gamma: f64,
    pub izu: f64,
    pub r_c: f64,
    pub rj_min: f64,
    /// `None` where `r_i + R_C` exceeds `I(Z;U)`.
    pub rg_max: Option<f64>,
}

/// Boundary of `(R_J, R_G)` along a uniform `gamma` grid on `[0, 0.5]`.
pub fn fig3_sweep(
    p_e: f64,
    p_d: f64,
    gamma_budget: f64,
    r_i: f64,
    rule: RcRule,
    grid_points: usize,
) -> Result<Vec<BinarySweepRow>> {
    if grid_points < 2 {
        return Err(Error::Config("grid needs at least two points".into()));
    }
    if !(gamma_budget >= 0.0 && r_i >= 0.0) {
        return Err(Error::Config("Gamma and R_I must be nonnegative".into()));
    }
    check_half(p_e)?;
    check_half(p_d)?;
    (0..grid_points)
        .into_par_iter()
        .map(|k| {
            let gamma = 0.5 * k as f64 / (grid_points - 1) as f64;
            let p = binary_point(gamma, p_e, p_d)?;
            let r_c = rule.chosen_rate(p.izu);
            Ok(BinarySweepRow {
                gamma,
                izu: p.izu,
                r_c,
                rj_min: p.rj_offset + r_i + r_c,
                rg_max: max_rg_raw(p.izu, r_i, r_c, gamma_budget),
            })
        })
        .collect()
}

/// Conditional entropies of a binary model under one auxiliary, and the
/// margins of the two Mrs. Gerber's Lemma steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MglReport {
    pub h_x_given_u: f64,
    pub h_y_given_u: f64,
    pub h_z_given_u: f64,
    /// `H(Z|U) - H_b(H_b^{-1}(H(X|U)) * p_D)` along `U - X - Z`.
    pub identification_slack: f64,
    /// `H(X|U) - H_b(H_b^{-1}(H(Y|U)) * p_E)` along `U - Y - X`.
    pub enrollment_slack: f64,
}

pub fn mgl_check(p_e: f64, p_d: f64, test: &TestChannel) -> Result<MglReport> {
    let bis = binary_to_discrete(BinaryBis::new(p_e, p_d)?);
    if test.u_size() > 4 {
        return Err(Error::Dimension(format!(
            "auxiliary alphabet {} exceeds 4",
            test.u_size()
        )));
    }
    let joint = induced_joint(&bis, test)?;
    let h = |axis| -> Result<f64> {
        Ok(conditional_entropy(&joint, axis, &[AXIS_U], Base::Bits)?.amount())
    };
    let (hx, hy, hz) = (h(AXIS_X)?, h(AXIS_Y)?, h(AXIS_Z)?);
    let clamp = |v: f64| v.clamp(0.0, 1.0);
    Ok(MglReport {
        h_x_given_u: hx,
        h_y_given_u: hy,
        h_z_given_u: hz,
        identification_slack: hz - hb(star_raw(inv_hb(clamp(hx)), p_d)),
        enrollment_slack: hx - hb(star_raw(inv_hb(clamp(hy)), p_e)),
    })
}

//! Parametric region for the scalar Gaussian model, in nats.
//!
//! The auxiliary is `Y = U + Phi` with `U ~ N(0, 1 - alpha)` and
//! `Phi ~ N(0, alpha)`, `0 < alpha <= 1`.

use std::f64::consts::{E, PI};

use rayon::prelude::*;
use serde::Serialize;

use super::discrete::max_rg_raw;
use super::RcRule;
use crate::error::{Error, Result};
use crate::info::Base;
use crate::models::{converted_gaussian, GaussianBis, RegionBounds};

const TWO_PI_E: f64 = 2.0 * PI * E;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianRegionPoint {
    pub alpha: f64,
    pub izu: f64,
    pub iyu: f64,
    pub ixu: f64,
    pub rj_offset: f64,
    pub rl_offset: f64,
}

impl GaussianRegionPoint {
    pub fn bounds(&self) -> RegionBounds {
        RegionBounds::from_amounts(self.izu, self.iyu, self.ixu, Base::Nats)
    }

    /// Same point with every information field expressed in bits.
    pub fn to_bits(&self) -> GaussianRegionPoint {
        let c = std::f64::consts::LN_2;
        GaussianRegionPoint {
            alpha: self.alpha,
            izu: self.izu / c,
            iyu: self.iyu / c,
            ixu: self.ixu / c,
            rj_offset: self.rj_offset / c,
            rl_offset: self.rl_offset / c,
        }
    }
}

fn check_alpha(alpha: f64) -> Result<f64> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(alpha)
    } else {
        Err(Error::Domain {
            value: alpha,
            domain: "(0, 1]",
        })
    }
}

/// `alpha rho^2 + 1 - rho^2`, written to stay exact at `alpha = 1`.
fn residual(alpha: f64, rho_sq: f64) -> f64 {
    1.0 - (1.0 - alpha) * rho_sq
}

/// `0.5 ln(1 / v)`, with `+0.0` rather than `-0.0` at `v = 1`.
fn half_log_inv(v: f64) -> f64 {
    -0.5 * v.ln() + 0.0
}

pub fn gaussian_point(alpha: f64, g: GaussianBis) -> Result<GaussianRegionPoint> {
    check_alpha(alpha)?;
    let r1 = g.rho1() * g.rho1();
    let r12 = r1 * g.rho2() * g.rho2();
    let x_res = residual(alpha, r1);
    let z_res = residual(alpha, r12);
    Ok(GaussianRegionPoint {
        alpha,
        izu: half_log_inv(z_res),
        iyu: half_log_inv(alpha),
        ixu: half_log_inv(x_res),
        rj_offset: 0.5 * (z_res / alpha).ln(),
        rl_offset: 0.5 * (z_res / x_res).ln(),
    })
}

/// Values of `alpha` visited by a sweep, ascending, all in `(0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaGrid(Vec<f64>);

impl AlphaGrid {
    /// `points` log-spaced values from `min` to 1 inclusive.
    pub fn log(points: usize, min: f64) -> Result<Self> {
        if points < 2 {
            return Err(Error::Config("grid needs at least two points".into()));
        }
        check_alpha(min)?;
        let lo = min.ln();
        let mut v: Vec<f64> = (0..points)
            .map(|k| (lo * (1.0 - k as f64 / (points - 1) as f64)).exp())
            .collect();
        v[0] = min;
        v[points - 1] = 1.0;
        Ok(Self(v))
    }

    pub fn explicit(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Config("empty alpha grid".into()));
        }
        for &a in &values {
            check_alpha(a)?;
        }
        values.sort_by(f64::total_cmp);
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

impl Default for AlphaGrid {
    fn default() -> Self {
        Self::log(256, 1e-4).expect("valid default grid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianSweepRow {
    pub point: GaussianRegionPoint,
    pub r_c: f64,
    pub rj_min: f64,
    pub rg_max: Option<f64>,
    /// Set on the smallest `alpha`; the region keeps growing towards `alpha = 0`.
    pub open_end: bool,
}

pub fn gaussian_sweep(
    g: GaussianBis,
    gamma_budget: f64,
    r_i: f64,
    rule: RcRule,
    grid: &AlphaGrid,
) -> Result<Vec<GaussianSweepRow>> {
    if !(gamma_budget >= 0.0 && r_i >= 0.0) {
        return Err(Error::Config("Gamma and R_I must be nonnegative".into()));
    }
    grid.values()
        .par_iter()
        .enumerate()
        .map(|(k, &alpha)| {
            let point = gaussian_point(alpha, g)?;
            let r_c = rule.chosen_rate(point.izu);
            Ok(GaussianSweepRow {
                point,
                r_c,
                rj_min: point.rj_offset + r_i + r_c,
                rg_max: max_rg_raw(point.izu, r_i, r_c, gamma_budget),
                open_end: k == 0,
            })
        })
        .collect()
}

/// Conditional differential entropies of the Gaussian auxiliary and the
/// margins of the entropy-power steps that bound them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpiReport {
    /// Fixed to `0.5 ln(2 pi e (alpha rho1^2 + 1 - rho1^2))`.
    pub h_x_given_u: f64,
    pub h_y_given_u: f64,
    pub h_z_given_u: f64,
    /// `[e^{2h(Z|U)} - rho2^2 e^{2h(X|U)} - 2 pi e (1 - rho2^2)] / (2 pi e)`
    pub z_power_slack: f64,
    /// `h(Z|U) - 0.5 ln(2 pi e (alpha rho1^2 rho2^2 + 1 - rho1^2 rho2^2))`
    pub z_entropy_slack: f64,
    /// `[e^{2h(X|U)} - rho1^2 e^{2h(Y|U)} - 2 pi e (1 - rho1^2)] / (2 pi e)`
    pub x_power_slack: f64,
    /// `0.5 ln(2 pi e alpha) - h(Y|U)`
    pub y_entropy_slack: f64,
}

fn gaussian_entropy(var: f64) -> f64 {
    0.5 * (TWO_PI_E * var).ln()
}

fn entropy_power(h: f64) -> f64 {
    (2.0 * h).exp() / TWO_PI_E
}

/// Evaluates the conditional entropy-power bounds at the jointly Gaussian
/// auxiliary, where each holds with equality.
pub fn epi_verify(alpha: f64, g: GaussianBis) -> Result<EpiReport> {
    check_alpha(alpha)?;
    let conv = converted_gaussian(g);
    let (r1, r2) = (g.rho1() * g.rho1(), g.rho2() * g.rho2());

    let h_x = gaussian_entropy(residual(alpha, r1));
    // Given U, Y carries only Phi ~ N(0, alpha); push it through the stages.
    let var_y = alpha;
    let var_z = conv.z_given_y().output_var(var_y);
    let (h_y, h_z) = (gaussian_entropy(var_y), gaussian_entropy(var_z));

    Ok(EpiReport {
        h_x_given_u: h_x,
        h_y_given_u: h_y,
        h_z_given_u: h_z,
        z_power_slack: entropy_power(h_z) - r2 * entropy_power(h_x) - conv.z_given_x.noise_var,
        z_entropy_slack: h_z - gaussian_entropy(residual(alpha, r1 * r2)),
        x_power_slack: entropy_power(h_x) - r1 * entropy_power(h_y) - conv.x_given_y.noise_var,
        y_entropy_slack: gaussian_entropy(alpha) - h_y,
    })
}

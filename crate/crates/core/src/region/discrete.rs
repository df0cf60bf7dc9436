//! Region membership for arbitrary discrete models.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::info::{mutual_information, Base};
use crate::models::{
    induced_joint, Channel, DiscreteBis, RateQuery, RegionBounds, TestChannel, AXIS_U, AXIS_X,
    AXIS_Y, AXIS_Z,
};

/// Slack allowed on the feasible side of every inequality.
pub const FEASIBILITY_TOL: f64 = 1e-9;

pub fn theorem1_bounds(bis: &DiscreteBis, test: &TestChannel, base: Base) -> Result<RegionBounds> {
    let joint = induced_joint(bis, test)?;
    RegionBounds::new(
        mutual_information(&joint, AXIS_Z, AXIS_U, base)?,
        mutual_information(&joint, AXIS_Y, AXIS_U, base)?,
        mutual_information(&joint, AXIS_X, AXIS_U, base)?,
    )
}

/// Per-inequality margins; nonnegative means satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateCheck {
    /// `I(Z;U) - (R_I + R_C)`
    pub identification_chosen: f64,
    /// `I(Z;U) - (R_I + R_G)`
    pub identification_generated: f64,
    /// `I(Z;U) + min{Gamma, R_C, R_G} - (R_I + R_C + R_G)`
    pub sum_rate: f64,
    /// `R_J - (I(Y;U) - I(Z;U) + R_I + R_C)`
    pub storage: f64,
    /// `R_L - (I(X;U) - I(Z;U) + R_I)`
    pub privacy: f64,
}

impl RateCheck {
    pub fn margins(&self) -> [f64; 5] {
        [
            self.identification_chosen,
            self.identification_generated,
            self.sum_rate,
            self.storage,
            self.privacy,
        ]
    }

    pub fn min_margin(&self) -> f64 {
        self.margins().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn satisfied(&self) -> bool {
        self.margins().iter().all(|&m| m >= -FEASIBILITY_TOL)
    }
}

fn same_base(q: &RateQuery, b: &RegionBounds) -> Result<()> {
    if q.base != b.base() {
        return Err(Error::BaseMismatch {
            expected: b.base(),
            found: q.base,
        });
    }
    Ok(())
}

pub fn check_rates(q: &RateQuery, b: &RegionBounds) -> Result<RateCheck> {
    same_base(q, b)?;
    let (izu, iyu, ixu) = (b.izu.amount(), b.iyu.amount(), b.ixu.amount());
    Ok(RateCheck {
        identification_chosen: izu - (q.r_i + q.r_c),
        identification_generated: izu - (q.r_i + q.r_g),
        sum_rate: izu + q.gamma.min(q.r_c).min(q.r_g) - (q.r_i + q.r_c + q.r_g),
        storage: q.r_j - (iyu - izu + q.r_i + q.r_c),
        privacy: q.r_l - (ixu - izu + q.r_i),
    })
}

/// Largest generated-key rate compatible with `(r_i, r_c, gamma)` when storage
/// and leakage are unconstrained; `None` when `r_i + r_c` already exceeds `I(Z;U)`.
pub fn max_rg(b: &RegionBounds, r_i: f64, r_c: f64, gamma: f64) -> Option<f64> {
    max_rg_raw(b.izu.amount(), r_i, r_c, gamma)
}

pub(crate) fn max_rg_raw(izu: f64, r_i: f64, r_c: f64, gamma: f64) -> Option<f64> {
    if r_i + r_c > izu + FEASIBILITY_TOL {
        return None;
    }
    let rg = (izu - r_i).min(izu - r_i - r_c + gamma.min(r_c));
    Some(rg.max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Corollary {
    /// No generated key and no correlation: `R_G = 0`, `Gamma = 0`.
    Cor1,
    /// Single user and no correlation: `R_I = 0`, `Gamma = 0`.
    Cor2,
}

/// Evaluates the reduced inequality set of a corollary.
pub fn corollary_region(q: &RateQuery, b: &RegionBounds, variant: Corollary) -> Result<bool> {
    same_base(q, b)?;
    let (izu, iyu, ixu) = (b.izu.amount(), b.iyu.amount(), b.ixu.amount());
    let tol = FEASIBILITY_TOL;
    match variant {
        Corollary::Cor1 => {
            if q.r_g != 0.0 || q.gamma != 0.0 {
                return Err(Error::Precondition(
                    "the first corollary needs R_G = 0 and Gamma = 0".into(),
                ));
            }
            Ok(q.r_i + q.r_c <= izu + tol
                && q.r_j >= iyu - izu + q.r_i + q.r_c - tol
                && q.r_l >= ixu - izu + q.r_i - tol)
        }
        Corollary::Cor2 => {
            if q.r_i != 0.0 || q.gamma != 0.0 {
                return Err(Error::Precondition(
                    "the second corollary needs R_I = 0 and Gamma = 0".into(),
                ));
            }
            Ok(q.r_c + q.r_g <= izu + tol
                && q.r_j >= iyu - izu + q.r_c - tol
                && q.r_l >= ixu - izu - tol)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub steps: usize,
    pub seed: u64,
    /// Mixing weight of the first proposal; decays geometrically to `final_step`.
    pub initial_step: f64,
    pub final_step: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            steps: 500,
            seed: 0,
            initial_step: 0.5,
            final_step: 0.005,
        }
    }
}

/// Result of a witness search. `BudgetExhausted` is not a proof of
/// non-membership.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SearchOutcome {
    Witness {
        restart: usize,
        step: usize,
        test_channel: TestChannel,
        bounds: RegionBounds,
        check: RateCheck,
    },
    BudgetExhausted {
        restarts: usize,
        steps: usize,
        best_min_margin: f64,
    },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&TestChannel> {
        match self {
            SearchOutcome::Witness { test_channel, .. } => Some(test_channel),
            SearchOutcome::BudgetExhausted { .. } => None,
        }
    }
}

struct Climb {
    found: Option<(usize, TestChannel, RegionBounds, RateCheck)>,
    best: f64,
}

/// Multi-start randomized hill climbing over `P_{U|Y}` with `|U| = |Y| + 2`,
/// maximizing the smallest inequality margin until all five hold.
pub fn search_test_channel(
    bis: &DiscreteBis,
    q: &RateQuery,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    if cfg.restarts == 0 {
        return Err(Error::Config("search needs at least one restart".into()));
    }
    if !(cfg.initial_step > 0.0 && cfg.initial_step <= 1.0 && cfg.final_step > 0.0) {
        return Err(Error::Config("step sizes must lie in (0, 1]".into()));
    }
    let climbs: Vec<Result<Climb>> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| climb(bis, q, cfg, r))
        .collect();
    let mut best = f64::NEG_INFINITY;
    for (restart, c) in climbs.into_iter().enumerate() {
        let c = c?;
        if let Some((step, test_channel, bounds, check)) = c.found {
            return Ok(SearchOutcome::Witness {
                restart,
                step,
                test_channel,
                bounds,
                check,
            });
        }
        best = best.max(c.best);
    }
    Ok(SearchOutcome::BudgetExhausted {
        restarts: cfg.restarts,
        steps: cfg.steps,
        best_min_margin: best,
    })
}

fn random_row(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let mut row: Vec<f64> = (0..len).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = row.iter().sum();
    row.iter_mut().for_each(|w| *w /= total);
    row
}

fn normalized(mut row: Vec<f64>) -> Vec<f64> {
    let total: f64 = row.iter().sum();
    row.iter_mut().for_each(|w| *w /= total);
    row
}

fn climb(bis: &DiscreteBis, q: &RateQuery, cfg: &SearchConfig, restart: usize) -> Result<Climb> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart as u64);
    let (ys, us) = (bis.y_size(), bis.y_size() + 2);
    let mut rows: Vec<Vec<f64>> = match restart {
        0 => TestChannel::constant(ys, us).table().rows().to_vec(),
        1 => TestChannel::identity(ys, us).table().rows().to_vec(),
        _ => (0..ys).map(|_| random_row(&mut rng, us)).collect(),
    };
    let evaluate = |rows: &[Vec<f64>]| -> Result<(TestChannel, RegionBounds, RateCheck)> {
        let t = TestChannel::new(Channel::new(rows.to_vec())?);
        let b = theorem1_bounds(bis, &t, q.base)?;
        let c = check_rates(q, &b)?;
        Ok((t, b, c))
    };
    let (mut t, mut b, mut c) = evaluate(&rows)?;
    let mut score = c.min_margin();
    let decay = if cfg.steps > 1 {
        (cfg.final_step / cfg.initial_step).powf(1.0 / (cfg.steps - 1) as f64)
    } else {
        1.0
    };
    let mut step_size = cfg.initial_step;
    for step in 0..=cfg.steps {
        if c.satisfied() {
            return Ok(Climb {
                found: Some((step, t, b, c)),
                best: score,
            });
        }
        if step == cfg.steps {
            break;
        }
        let y = rng.gen_range(0..ys);
        let target = random_row(&mut rng, us);
        let mut proposal = rows.clone();
        proposal[y] = normalized(
            rows[y]
                .iter()
                .zip(&target)
                .map(|(&w, &d)| (1.0 - step_size) * w + step_size * d)
                .collect(),
        );
        let (pt, pb, pc) = evaluate(&proposal)?;
        if pc.min_margin() >= score {
            score = pc.min_margin();
            rows = proposal;
            (t, b, c) = (pt, pb, pc);
        }
        step_size *= decay;
    }
    Ok(Climb {
        found: None,
        best: score,
    })
}

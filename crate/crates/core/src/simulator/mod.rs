//! Finite-blocklength random-coding scheme for the identification system.
//!
//! Per user, enrollment finds a codeword `u(s1, s2, m)` jointly typical with
//! the enrollment sequence, stores the helper data `(m, (s_C + s1) mod M_C)`
//! and derives the generated key `(shared part of s_C, s2)`. Identification
//! searches all users' `m` for a unique typical codeword and unmasks the
//! chosen key.
//!
//! Set sizes are integers; rates are reported as `log2(size) / n`.

mod codebook;
mod keys;
mod leakage;
mod scheme;
mod typical;

pub use codebook::{generate_codebook, CodeIndex, Codebook};
pub use keys::{join_key, split_key, KeySplit};
pub use leakage::{exact_leakage, support_size, ExactLeakage, SUPPORT_LIMIT};
pub use scheme::{
    classify_error, decoder_events, EncoderOutcome, Enrollment, EnrollmentRecord, ErrorEvent,
    EventFlags, Helper, Identification, Scheme, TrialTruth,
};
pub use typical::JointTypicality;

use std::collections::BTreeMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{DiscreteBis, TestChannel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    /// Blocklength.
    pub n: usize,
    /// Number of enrolled users.
    pub m_i: usize,
    /// Values of the key part shared by the chosen and generated keys.
    pub m_gamma: usize,
    /// Values of the unshared part of the chosen key.
    pub m_c_rest: usize,
    /// Values of the unshared part of the generated key.
    pub m_g_rest: usize,
    /// Values of the dummy message stored in the helper data.
    pub m_m: usize,
    pub epsilon: f64,
    pub seed: u64,
    pub trials: usize,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let sizes = [
            ("n", self.n),
            ("m_i", self.m_i),
            ("m_gamma", self.m_gamma),
            ("m_c_rest", self.m_c_rest),
            ("m_g_rest", self.m_g_rest),
            ("m_m", self.m_m),
            ("trials", self.trials),
        ];
        if let Some((name, _)) = sizes.iter().find(|(_, v)| *v == 0) {
            return Err(Error::Config(format!("{name} must be at least 1")));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Config("epsilon must be positive".into()));
        }
        if self.n > u16::MAX as usize {
            return Err(Error::Config("blocklength too large".into()));
        }
        self.codebook_size()
            .filter(|&s| s <= 1 << 24)
            .ok_or_else(|| Error::Config("codebook exceeds 2^24 sequences".into()))?;
        Ok(())
    }

    /// `M_C = m_gamma * m_c_rest`.
    pub fn m_c(&self) -> usize {
        self.m_gamma * self.m_c_rest
    }

    /// `M_G = m_gamma * m_g_rest`.
    pub fn m_g(&self) -> usize {
        self.m_gamma * self.m_g_rest
    }

    pub fn codebook_size(&self) -> Option<usize> {
        self.m_c().checked_mul(self.m_g_rest)?.checked_mul(self.m_m)
    }

    pub fn rates(&self) -> DerivedRates {
        let r = |size: usize| (size as f64).log2() / self.n as f64;
        DerivedRates {
            r_i: r(self.m_i),
            r_c: r(self.m_c()),
            r_g: r(self.m_g()),
            r_m: r(self.m_m),
            r_j: r(self.m_m * self.m_c()),
            gamma: r(self.m_gamma),
        }
    }
}

/// Operating rates implied by the set sizes, bits per symbol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedRates {
    pub r_i: f64,
    pub r_c: f64,
    pub r_g: f64,
    pub r_m: f64,
    pub r_j: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EventTallies {
    pub e1: usize,
    pub e2: usize,
    pub e3: usize,
    pub e4: usize,
    pub e5: usize,
    pub e6: usize,
}

impl EventTallies {
    fn record(&mut self, e: ErrorEvent) {
        match e {
            ErrorEvent::E1 => self.e1 += 1,
            ErrorEvent::E2 => self.e2 += 1,
            ErrorEvent::E3 => self.e3 += 1,
            ErrorEvent::E4 => self.e4 += 1,
            ErrorEvent::E5 => self.e5 += 1,
            ErrorEvent::E6 => self.e6 += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.e1 + self.e2 + self.e3 + self.e4 + self.e5 + self.e6
    }
}

/// A leakage quantity in bits (unnormalized), exact or plug-in estimated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Leakage {
    pub bits: f64,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub unit: &'static str,
    pub n: usize,
    pub trials: usize,
    pub errors: usize,
    pub error_rate: f64,
    /// Binomial standard error of `error_rate`.
    pub std_error: f64,
    pub event_tallies: EventTallies,
    pub rates: DerivedRates,
    /// `I(S_C, S_G; J)` for one user.
    pub secrecy_leakage: Leakage,
    /// `I(X^n; J)` for one user; absent when `x^n` cannot be indexed in 64 bits.
    pub privacy_leakage: Option<Leakage>,
    /// `I(S_C; S_G)` for one user.
    pub key_correlation: Leakage,
}

impl SimReport {
    /// Replaces the estimated leakage fields with exact values.
    pub fn with_exact(mut self, exact: &ExactLeakage) -> Self {
        self.secrecy_leakage = Leakage {
            bits: exact.secrecy_leakage,
            exact: true,
        };
        self.privacy_leakage = Some(Leakage {
            bits: exact.privacy_leakage,
            exact: true,
        });
        self.key_correlation = Leakage {
            bits: exact.key_correlation,
            exact: true,
        };
        self
    }
}

/// One line of the optional transcript.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub event: Option<ErrorEvent>,
    pub w: usize,
    pub w_hat: Option<usize>,
    pub correct: bool,
    s_c: usize,
    s_g: KeySplit,
    helper: Helper,
    x_index: Option<u64>,
}

/// Header of the transcript CSV.
pub const TRANSCRIPT_HEADER: &str = "trial,event,w,w_hat,correct";

impl TrialRecord {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.trial,
            self.event.map_or("none", ErrorEvent::label),
            self.w,
            self.w_hat
                .map_or_else(|| "none".to_string(), |w| w.to_string()),
            self.correct
        )
    }
}

pub(crate) fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

struct Samplers {
    px: WeightedIndex<f64>,
    enrollment: Vec<WeightedIndex<f64>>,
    identification: Vec<WeightedIndex<f64>>,
}

impl Samplers {
    fn new(bis: &DiscreteBis) -> Result<Self> {
        let w = |p: &[f64]| {
            WeightedIndex::new(p.iter().copied())
                .map_err(|e| Error::InvalidDistribution(e.to_string()))
        };
        Ok(Self {
            px: w(bis.px().as_slice())?,
            enrollment: bis
                .enrollment()
                .rows()
                .iter()
                .map(|r| w(r))
                .collect::<Result<_>>()?,
            identification: bis
                .identification()
                .rows()
                .iter()
                .map(|r| w(r))
                .collect::<Result<_>>()?,
        })
    }

    fn through(rows: &[WeightedIndex<f64>], input: &[u8], rng: &mut impl Rng) -> Vec<u8> {
        input
            .iter()
            .map(|&x| rows[x as usize].sample(rng) as u8)
            .collect()
    }
}

fn x_index(x: &[u8], x_size: usize) -> Option<u64> {
    x.iter().try_fold(0u64, |acc, &s| {
        acc.checked_mul(x_size as u64)?.checked_add(s as u64)
    })
}

/// Runs `cfg.trials` independent identification trials on one codebook drawn
/// from `cfg.seed`. Trial `t` uses its own random stream.
pub fn run_monte_carlo(
    cfg: &SimConfig,
    bis: &DiscreteBis,
    test: &TestChannel,
) -> Result<(SimReport, Vec<TrialRecord>)> {
    let scheme = Scheme::new(cfg, bis, test)?;
    let mut cb_rng = trial_rng(cfg.seed, 0);
    let codebook = generate_codebook(cfg, scheme.p_u(), &mut cb_rng)?;
    run_with_codebook(&scheme, bis, &codebook)
}

/// Monte Carlo run, plus exact leakage on the same codebook when `exact` is
/// set. The enumeration guard is checked before any trial runs.
pub fn simulate(
    cfg: &SimConfig,
    bis: &DiscreteBis,
    test: &TestChannel,
    exact: bool,
) -> Result<(SimReport, Vec<TrialRecord>, Option<ExactLeakage>)> {
    if exact {
        let support = support_size(cfg, bis);
        if support > SUPPORT_LIMIT {
            return Err(Error::SupportTooLarge {
                support,
                limit: SUPPORT_LIMIT,
            });
        }
    }
    let scheme = Scheme::new(cfg, bis, test)?;
    let codebook = generate_codebook(cfg, scheme.p_u(), &mut trial_rng(cfg.seed, 0))?;
    let (report, records) = run_with_codebook(&scheme, bis, &codebook)?;
    if !exact {
        return Ok((report, records, None));
    }
    let leak = exact_leakage(cfg, bis, test, &codebook)?;
    Ok((report.with_exact(&leak), records, Some(leak)))
}

pub(crate) fn run_with_codebook(
    scheme: &Scheme,
    bis: &DiscreteBis,
    codebook: &Codebook,
) -> Result<(SimReport, Vec<TrialRecord>)> {
    let cfg = scheme.config();
    let samplers = Samplers::new(bis)?;
    let records: Vec<TrialRecord> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(scheme, &samplers, bis, codebook, t))
        .collect();

    let mut tallies = EventTallies::default();
    let mut errors = 0;
    for r in &records {
        if let Some(e) = r.event {
            tallies.record(e);
            errors += 1;
        }
    }
    let trials = cfg.trials;
    let error_rate = errors as f64 / trials as f64;
    let report = SimReport {
        unit: "bits",
        n: cfg.n,
        trials,
        errors,
        error_rate,
        std_error: (error_rate * (1.0 - error_rate) / trials as f64).sqrt(),
        event_tallies: tallies,
        rates: cfg.rates(),
        secrecy_leakage: Leakage {
            bits: plugin_mi(records.iter().map(|r| ((r.s_c, r.s_g.rest), r.helper))),
            exact: false,
        },
        privacy_leakage: records
            .iter()
            .map(|r| r.x_index.map(|x| (x, r.helper)))
            .collect::<Option<Vec<_>>>()
            .map(|pairs| Leakage {
                bits: plugin_mi(pairs.into_iter()),
                exact: false,
            }),
        key_correlation: Leakage {
            bits: plugin_mi(records.iter().map(|r| (r.s_c, r.s_g))),
            exact: false,
        },
    };
    Ok((report, records))
}

fn run_trial(
    scheme: &Scheme,
    samplers: &Samplers,
    bis: &DiscreteBis,
    codebook: &Codebook,
    trial: usize,
) -> TrialRecord {
    let cfg = scheme.config();
    let mut rng = trial_rng(cfg.seed, trial as u64 + 1);
    let mut db = Vec::with_capacity(cfg.m_i);
    let mut truths = Vec::with_capacity(cfg.m_i);
    let mut sources = Vec::with_capacity(cfg.m_i);
    for _ in 0..cfg.m_i {
        let x: Vec<u8> = (0..cfg.n)
            .map(|_| samplers.px.sample(&mut rng) as u8)
            .collect();
        let y = Samplers::through(&samplers.enrollment, &x, &mut rng);
        let s_c = rng.gen_range(0..cfg.m_c());
        let outcome = scheme
            .enroll(&y, s_c, codebook, &mut rng)
            .expect("enrollment inputs are generated in range");
        let failed = matches!(outcome, EncoderOutcome::Failure { .. });
        let e = outcome.enrollment();
        db.push(e.record);
        truths.push(TrialTruth {
            user: truths.len(),
            s_c,
            s_g: e.record.generated_key,
            tuple: e.tuple,
            encoder_failed: failed,
        });
        sources.push(x);
    }
    let w = rng.gen_range(0..cfg.m_i);
    let z = Samplers::through(&samplers.identification, &sources[w], &mut rng);
    let outcome = scheme.identify(&z, &db, codebook);
    let truth = truths[w];
    let flags = decoder_events(scheme, &z, &truth, &db, codebook);
    let event = classify_error(&truth, &flags, &outcome);
    let w_hat = match outcome {
        Identification::Decoded { w, .. } => Some(w),
        Identification::Failure { .. } => None,
    };
    TrialRecord {
        trial,
        event,
        w,
        w_hat,
        correct: event.is_none(),
        s_c: truths[0].s_c,
        s_g: truths[0].s_g,
        helper: db[0].helper,
        x_index: x_index(&sources[0], bis.x_size()),
    }
}

/// Plug-in mutual information (bits) of the empirical joint of the pairs.
fn plugin_mi<A, B>(pairs: impl Iterator<Item = (A, B)>) -> f64
where
    A: Ord + Clone,
    B: Ord + Clone,
{
    let mut joint: BTreeMap<(A, B), usize> = BTreeMap::new();
    let mut left: BTreeMap<A, usize> = BTreeMap::new();
    let mut right: BTreeMap<B, usize> = BTreeMap::new();
    let mut total = 0usize;
    for (a, b) in pairs {
        *left.entry(a.clone()).or_default() += 1;
        *right.entry(b.clone()).or_default() += 1;
        *joint.entry((a, b)).or_default() += 1;
        total += 1;
    }
    if total == 0 {
        return 0.0;
    }
    let n = total as f64;
    let h = |counts: &mut dyn Iterator<Item = usize>| -> f64 {
        counts
            .map(|c| {
                let p = c as f64 / n;
                -p * p.log2()
            })
            .sum()
    };
    let mi = h(&mut left.values().copied()) + h(&mut right.values().copied())
        - h(&mut joint.values().copied());
    mi.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{binary_to_discrete, BinaryBis};

    fn cfg() -> SimConfig {
        SimConfig {
            n: 4,
            m_i: 2,
            m_gamma: 1,
            m_c_rest: 2,
            m_g_rest: 1,
            m_m: 4,
            epsilon: 1.0,
            seed: 11,
            trials: 200,
        }
    }

    #[test]
    fn config_validation() {
        assert!(cfg().validate().is_ok());
        assert!(SimConfig { trials: 0, ..cfg() }.validate().is_err());
        assert!(SimConfig {
            m_gamma: 0,
            ..cfg()
        }
        .validate()
        .is_err());
        assert!(SimConfig {
            epsilon: 0.0,
            ..cfg()
        }
        .validate()
        .is_err());
        let c = SimConfig {
            m_gamma: 4,
            m_c_rest: 2,
            m_g_rest: 8,
            m_m: 2,
            ..cfg()
        };
        assert_eq!((c.m_c(), c.m_g(), c.codebook_size()), (8, 32, Some(128)));
        assert!((c.rates().gamma - 0.5).abs() < 1e-15);
        assert!((c.rates().r_j - 1.0).abs() < 1e-15);
    }

    #[test]
    fn config_json_round_trip() {
        let s = serde_json::to_string(&cfg()).unwrap();
        assert_eq!(serde_json::from_str::<SimConfig>(&s).unwrap(), cfg());
    }

    #[test]
    fn noiseless_system_never_errs() {
        let bis = binary_to_discrete(BinaryBis::new(0.0, 0.0).unwrap());
        let test = TestChannel::identity(2, 2);
        // One user, codebook of all 16 binary words of length 4.
        let c = SimConfig {
            m_i: 1,
            m_c_rest: 1,
            m_m: 16,
            n: 4,
            ..cfg()
        };
        let scheme = Scheme::new(&c, &bis, &test).unwrap();
        let words: Vec<u8> = (0..16u8)
            .flat_map(|w| (0..4).map(move |b| (w >> b) & 1))
            .collect();
        let cb = Codebook::from_symbols(&c, 2, words).unwrap();
        let (report, _) = run_with_codebook(&scheme, &bis, &cb).unwrap();
        assert_eq!(report.errors, 0, "{report:?}");
    }

    #[test]
    fn seeded_runs_repeat() {
        let bis = binary_to_discrete(BinaryBis::new(0.03, 0.1).unwrap());
        let test = TestChannel::bsc(0.1).unwrap();
        let a = run_monte_carlo(&cfg(), &bis, &test).unwrap();
        let b = run_monte_carlo(&cfg(), &bis, &test).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.0.event_tallies.total(), a.0.errors);
    }

    #[test]
    fn useless_identification_channel() {
        let bis = binary_to_discrete(BinaryBis::new(0.03, 0.5).unwrap());
        let test = TestChannel::bsc(0.1).unwrap();
        let c = SimConfig {
            trials: 2000,
            ..cfg()
        };
        let (report, _) = run_monte_carlo(&c, &bis, &test).unwrap();
        assert!(report.error_rate > 0.5, "{report:?}");
    }

    #[test]
    fn plugin_estimator() {
        let indep = (0..4).flat_map(|a| (0..4).map(move |b| (a, b)));
        assert!(plugin_mi(indep).abs() < 1e-12);
        let same = (0..8).map(|a| (a, a));
        assert!((plugin_mi(same) - 3.0).abs() < 1e-12);
    }
}

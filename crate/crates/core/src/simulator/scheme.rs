use rand::Rng;
use serde::{Deserialize, Serialize};

use super::codebook::{CodeIndex, Codebook};
use super::keys::{split_key, KeySplit};
use super::typical::JointTypicality;
use super::SimConfig;
use crate::error::{Error, Result};
use crate::info::ProbVector;
use crate::models::{induced_joint, DiscreteBis, TestChannel, AXIS_U, AXIS_Y, AXIS_Z};

/// Public helper data of one user: the dummy message index and the masked
/// chosen key `(s_C + s1) mod M_C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Helper {
    pub m: usize,
    pub masked: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnrollmentRecord {
    pub helper: Helper,
    pub generated_key: KeySplit,
}

/// The codeword picked for a user and the records derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Enrollment {
    pub tuple: CodeIndex,
    pub record: EnrollmentRecord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EncoderOutcome {
    /// `typical` codewords were jointly typical with `y`; one was drawn uniformly.
    Enrolled {
        enrollment: Enrollment,
        typical: usize,
    },
    /// No codeword was typical. The encoder declares an error and stores helper
    /// data for a codeword drawn uniformly from the whole codebook.
    Failure { fallback: Enrollment },
}

impl EncoderOutcome {
    pub fn enrollment(&self) -> Enrollment {
        match *self {
            EncoderOutcome::Enrolled { enrollment, .. } => enrollment,
            EncoderOutcome::Failure { fallback } => fallback,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Identification {
    Decoded {
        w: usize,
        s_c: usize,
        s_g: KeySplit,
        s1: usize,
        s2: usize,
    },
    /// Zero or several `(user, s1, s2)` candidates.
    Failure { candidates: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ErrorEvent {
    /// No codeword typical with the enrollment sequence.
    E1,
    /// The enrolled codeword is not typical with the identification sequence.
    E2,
    /// Another `s2` of the true `(s1, m)` is typical.
    E3,
    /// Another `s1` of the true `(s2, m)` is typical.
    E4,
    /// A codeword with both `s1` and `s2` wrong under the true `m` is typical.
    E5,
    /// A codeword under another user's `m` is typical.
    E6,
}

impl ErrorEvent {
    pub fn label(self) -> &'static str {
        match self {
            ErrorEvent::E1 => "E1",
            ErrorEvent::E2 => "E2",
            ErrorEvent::E3 => "E3",
            ErrorEvent::E4 => "E4",
            ErrorEvent::E5 => "E5",
            ErrorEvent::E6 => "E6",
        }
    }
}

/// What actually happened at enrollment for the identified user.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialTruth {
    pub user: usize,
    pub s_c: usize,
    pub s_g: KeySplit,
    pub tuple: CodeIndex,
    pub encoder_failed: bool,
}

/// Decoder-side events `E2..E6` for one identification attempt.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EventFlags {
    pub e2: bool,
    pub e3: bool,
    pub e4: bool,
    pub e5: bool,
    pub e6: bool,
}

/// Encoder and decoder for one configuration, model and auxiliary.
#[derive(Debug, Clone)]
pub struct Scheme {
    cfg: SimConfig,
    p_u: ProbVector,
    y_size: usize,
    yu: JointTypicality,
    zu: JointTypicality,
}

impl Scheme {
    pub fn new(cfg: &SimConfig, bis: &DiscreteBis, test: &TestChannel) -> Result<Self> {
        cfg.validate()?;
        let max = u8::MAX as usize + 1;
        if bis.x_size() > max || bis.y_size() > max || bis.z_size() > max || test.u_size() > max {
            return Err(Error::Dimension("alphabets above 256 symbols".into()));
        }
        let joint = induced_joint(bis, test)?;
        let p_u = ProbVector::new(joint.marginal(&[AXIS_U])?.mass().to_vec())?;
        let yu = joint.marginal(&[AXIS_Y, AXIS_U])?;
        let zu = joint.marginal(&[AXIS_Z, AXIS_U])?;
        let us = test.u_size();
        Ok(Self {
            cfg: *cfg,
            p_u,
            y_size: bis.y_size(),
            yu: JointTypicality::new(yu.mass(), bis.y_size(), us, cfg.n, cfg.epsilon)?,
            zu: JointTypicality::new(zu.mass(), bis.z_size(), us, cfg.n, cfg.epsilon)?,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    /// Marginal law of the auxiliary, from which codewords are drawn.
    pub fn p_u(&self) -> &ProbVector {
        &self.p_u
    }

    /// Helper data and generated key for codeword `tuple` and chosen key `s_c`.
    pub fn records_for(&self, tuple: CodeIndex, s_c: usize) -> EnrollmentRecord {
        let m_c = self.cfg.m_c();
        let shared = split_key(s_c, self.cfg.m_gamma, self.cfg.m_c_rest)
            .expect("chosen key in range")
            .shared;
        EnrollmentRecord {
            helper: Helper {
                m: tuple.m,
                masked: (s_c + tuple.s1) % m_c,
            },
            generated_key: KeySplit {
                shared,
                rest: tuple.s2,
            },
        }
    }

    /// Flat indices of the codewords jointly typical with `y`.
    pub fn typical_codewords(&self, y: &[u8], cb: &Codebook) -> Vec<usize> {
        (0..cb.len())
            .filter(|&f| self.yu.is_typical(y, cb.word_flat(f)))
            .collect()
    }

    fn check_codebook(&self, cb: &Codebook) -> Result<()> {
        if cb.n() != self.cfg.n || Some(cb.len()) != self.cfg.codebook_size() {
            return Err(Error::Dimension(
                "codebook does not match the configuration".into(),
            ));
        }
        if cb.u_size() > self.p_u.len() {
            return Err(Error::Dimension("codebook alphabet exceeds U".into()));
        }
        Ok(())
    }

    pub fn enroll<R: Rng>(
        &self,
        y: &[u8],
        s_c: usize,
        cb: &Codebook,
        rng: &mut R,
    ) -> Result<EncoderOutcome> {
        self.check_codebook(cb)?;
        if y.len() != self.cfg.n || y.iter().any(|&s| s as usize >= self.y_size) {
            return Err(Error::Dimension("enrollment sequence shape".into()));
        }
        if s_c >= self.cfg.m_c() {
            return Err(Error::Domain {
                value: s_c as f64,
                domain: "[0, M_C)",
            });
        }
        let typical = self.typical_codewords(y, cb);
        Ok(if typical.is_empty() {
            let tuple = cb.index(rng.gen_range(0..cb.len()));
            EncoderOutcome::Failure {
                fallback: Enrollment {
                    tuple,
                    record: self.records_for(tuple, s_c),
                },
            }
        } else {
            let tuple = cb.index(typical[rng.gen_range(0..typical.len())]);
            EncoderOutcome::Enrolled {
                enrollment: Enrollment {
                    tuple,
                    record: self.records_for(tuple, s_c),
                },
                typical: typical.len(),
            }
        })
    }

    fn zu_typical(&self, z: &[u8], cb: &Codebook, s1: usize, s2: usize, m: usize) -> bool {
        self.zu.is_typical(z, cb.word(CodeIndex { s1, s2, m }))
    }

    /// Searches every user's `m` for a unique typical `(user, s1, s2)`.
    pub fn identify(&self, z: &[u8], db: &[EnrollmentRecord], cb: &Codebook) -> Identification {
        let (m_c, m_g_rest) = (self.cfg.m_c(), self.cfg.m_g_rest);
        let mut found = None;
        let mut candidates = 0;
        for (i, rec) in db.iter().enumerate() {
            for s1 in 0..m_c {
                for s2 in 0..m_g_rest {
                    if self.zu_typical(z, cb, s1, s2, rec.helper.m) {
                        candidates += 1;
                        found = Some((i, s1, s2));
                    }
                }
            }
        }
        match (candidates, found) {
            (1, Some((w, s1, s2))) => {
                let s_c = (db[w].helper.masked + m_c - s1) % m_c;
                Identification::Decoded {
                    w,
                    s_c,
                    s_g: KeySplit {
                        shared: s_c / self.cfg.m_c_rest,
                        rest: s2,
                    },
                    s1,
                    s2,
                }
            }
            _ => Identification::Failure { candidates },
        }
    }
}

/// Evaluates `E2..E6` against the true codeword of the identified user.
pub fn decoder_events(
    scheme: &Scheme,
    z: &[u8],
    truth: &TrialTruth,
    db: &[EnrollmentRecord],
    cb: &Codebook,
) -> EventFlags {
    let (m_c, m_g_rest) = (scheme.cfg.m_c(), scheme.cfg.m_g_rest);
    let CodeIndex { s1, s2, m } = truth.tuple;
    let typ = |a: usize, b: usize, m: usize| scheme.zu_typical(z, cb, a, b, m);
    let mut f = EventFlags {
        e2: !typ(s1, s2, m),
        ..Default::default()
    };
    for a in 0..m_c {
        for b in 0..m_g_rest {
            if (a, b) == (s1, s2) || !typ(a, b, m) {
                continue;
            }
            match (a == s1, b == s2) {
                (true, false) => f.e3 = true,
                (false, true) => f.e4 = true,
                _ => f.e5 = true,
            }
        }
    }
    f.e6 = db.iter().enumerate().any(|(i, rec)| {
        i != truth.user && (0..m_c).any(|a| (0..m_g_rest).any(|b| typ(a, b, rec.helper.m)))
    });
    f
}

/// First applicable event in the order `E1..E6`, or `None` for a correct trial.
pub fn classify_error(
    truth: &TrialTruth,
    flags: &EventFlags,
    outcome: &Identification,
) -> Option<ErrorEvent> {
    if truth.encoder_failed {
        return Some(ErrorEvent::E1);
    }
    let correct = matches!(
        *outcome,
        Identification::Decoded { w, s_c, s_g, .. }
            if w == truth.user && s_c == truth.s_c && s_g == truth.s_g
    );
    if correct {
        return None;
    }
    let ordered = [
        (flags.e2, ErrorEvent::E2),
        (flags.e3, ErrorEvent::E3),
        (flags.e4, ErrorEvent::E4),
        (flags.e5, ErrorEvent::E5),
        (flags.e6, ErrorEvent::E6),
    ];
    // A wrong decision always has a missing true candidate or a competing one.
    Some(
        ordered
            .into_iter()
            .find_map(|(hit, e)| hit.then_some(e))
            .unwrap_or(ErrorEvent::E2),
    )
}

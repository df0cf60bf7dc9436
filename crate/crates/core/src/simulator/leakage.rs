//! Exact leakage of one user's helper data for a fixed codebook, by full
//! enumeration of `(x^n, y^n, s_C)` and the encoder's tie-break law.

use serde::Serialize;

use super::codebook::Codebook;
use super::scheme::Scheme;
use super::SimConfig;
use crate::error::{Error, Result};
use crate::info::{mutual_information_sets, Base, JointTable, ProbVector};
use crate::models::{DiscreteBis, TestChannel};

/// Largest enumeration accepted by [`exact_leakage`].
pub const SUPPORT_LIMIT: u128 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactLeakage {
    /// `I(S_C; S_G)`, bits.
    pub key_correlation: f64,
    /// `I(S_C, S_G; J)`, bits.
    pub secrecy_leakage: f64,
    /// `I(X^n; J)`, bits.
    pub privacy_leakage: f64,
    /// `I(S_C; (S_C + S_1) mod M_C)`, bits.
    pub otp_leakage: f64,
    /// `H(S_1)`, bits. The pad term equals `log2 M_C - H(S_1)`.
    pub s1_entropy: f64,
    /// Probability that no codeword is typical with `Y^n`.
    pub encoder_failure: f64,
    pub support: u128,
}

/// `|X|^n |Y|^n M_C |codebook|`, the number of enumerated states.
pub fn support_size(cfg: &SimConfig, bis: &DiscreteBis) -> u128 {
    let pow = |b: usize| (b as u128).checked_pow(cfg.n as u32).unwrap_or(u128::MAX);
    pow(bis.x_size())
        .saturating_mul(pow(bis.y_size()))
        .saturating_mul(cfg.m_c() as u128)
        .saturating_mul(cfg.codebook_size().unwrap_or(usize::MAX) as u128)
}

fn digits(mut index: usize, base: usize, n: usize) -> Vec<u8> {
    let mut out = vec![0u8; n];
    for d in out.iter_mut().rev() {
        *d = (index % base) as u8;
        index /= base;
    }
    out
}

pub fn exact_leakage(
    cfg: &SimConfig,
    bis: &DiscreteBis,
    test: &TestChannel,
    cb: &Codebook,
) -> Result<ExactLeakage> {
    let support = support_size(cfg, bis);
    if support > SUPPORT_LIMIT {
        return Err(Error::SupportTooLarge {
            support,
            limit: SUPPORT_LIMIT,
        });
    }
    let scheme = Scheme::new(cfg, bis, test)?;
    if Some(cb.len()) != cfg.codebook_size() || cb.n() != cfg.n {
        return Err(Error::Dimension(
            "codebook does not match the configuration".into(),
        ));
    }
    let n = cfg.n;
    let (xs, ys) = (bis.x_size(), bis.y_size());
    let (x_count, y_count) = (xs.pow(n as u32), ys.pow(n as u32));
    let words = cb.len();

    // Encoder law q(v | y^n): uniform over the typical set, or over the whole
    // codebook when the typical set is empty.
    let mut failure = 0.0;
    let mut p_xv = vec![0.0; x_count * words];
    let py_sequences: Vec<Vec<u8>> = (0..y_count).map(|k| digits(k, ys, n)).collect();
    let typical: Vec<Vec<usize>> = py_sequences
        .iter()
        .map(|y| scheme.typical_codewords(y, cb))
        .collect();
    let typical_empty: Vec<bool> = typical.iter().map(Vec::is_empty).collect();
    let choice: Vec<Vec<usize>> = typical
        .into_iter()
        .map(|t| {
            if t.is_empty() {
                (0..words).collect()
            } else {
                t
            }
        })
        .collect();

    for xi in 0..x_count {
        let x = digits(xi, xs, n);
        let px: f64 = x.iter().map(|&s| bis.px()[s as usize]).product();
        if px == 0.0 {
            continue;
        }
        for (yi, y) in py_sequences.iter().enumerate() {
            let pyx: f64 = x
                .iter()
                .zip(y)
                .map(|(&a, &b)| bis.enrollment().prob(a as usize, b as usize))
                .product();
            let p = px * pyx;
            if p == 0.0 {
                continue;
            }
            if typical_empty[yi] {
                failure += p;
            }
            let share = p / choice[yi].len() as f64;
            for &v in &choice[yi] {
                p_xv[xi * words + v] += share;
            }
        }
    }

    let m_c = cfg.m_c();
    let (m_g_rest, m_m, m_c_rest) = (cfg.m_g_rest, cfg.m_m, cfg.m_c_rest);
    let m_g = cfg.m_g();
    let mut key_pair = vec![0.0; m_c * m_g];
    let mut secrecy = vec![0.0; m_c * m_g_rest * m_m * m_c];
    let mut privacy = vec![0.0; x_count * m_m * m_c];
    let mut otp = vec![0.0; m_c * m_c];
    let mut s1_law = vec![0.0; m_c];
    let p_sc = 1.0 / m_c as f64;
    for xi in 0..x_count {
        for v in 0..words {
            let p = p_xv[xi * words + v];
            if p == 0.0 {
                continue;
            }
            let t = cb.index(v);
            s1_law[t.s1] += p;
            for s_c in 0..m_c {
                let mass = p * p_sc;
                let masked = (s_c + t.s1) % m_c;
                let s_g = (s_c / m_c_rest) * m_g_rest + t.s2;
                key_pair[s_c * m_g + s_g] += mass;
                secrecy[((s_c * m_g_rest + t.s2) * m_m + t.m) * m_c + masked] += mass;
                privacy[(xi * m_m + t.m) * m_c + masked] += mass;
                otp[s_c * m_c + masked] += mass;
            }
        }
    }

    let mi = |axes: Vec<(&str, usize)>, mass: Vec<f64>, a: &[&str], b: &[&str]| -> Result<f64> {
        let table = JointTable::new(axes, renormalize(mass))?;
        Ok(mutual_information_sets(&table, a, b, Base::Bits)?.amount())
    };
    Ok(ExactLeakage {
        key_correlation: mi(vec![("SC", m_c), ("SG", m_g)], key_pair, &["SC"], &["SG"])?,
        secrecy_leakage: mi(
            vec![("SC", m_c), ("S2", m_g_rest), ("M", m_m), ("MASK", m_c)],
            secrecy,
            &["SC", "S2"],
            &["M", "MASK"],
        )?,
        privacy_leakage: mi(
            vec![("XN", x_count), ("M", m_m), ("MASK", m_c)],
            privacy,
            &["XN"],
            &["M", "MASK"],
        )?,
        otp_leakage: mi(vec![("SC", m_c), ("MASK", m_c)], otp, &["SC"], &["MASK"])?,
        s1_entropy: ProbVector::new(renormalize(s1_law))?
            .entropy(Base::Bits)
            .amount(),
        encoder_failure: failure,
        support,
    })
}

fn renormalize(mut mass: Vec<f64>) -> Vec<f64> {
    let total: f64 = mass.iter().sum();
    mass.iter_mut().for_each(|m| *m /= total);
    mass
}

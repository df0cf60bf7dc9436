use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::SimConfig;
use crate::error::{Error, Result};
use crate::info::ProbVector;

/// Codeword coordinates `(s1, s2, m)` with `s1 < M_C`, `s2 < m_g_rest`, `m < m_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeIndex {
    pub s1: usize,
    pub s2: usize,
    pub m: usize,
}

/// All `M_C * m_g_rest * m_m` codewords of length `n`, stored contiguously.
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    n: usize,
    m_c: usize,
    m_g_rest: usize,
    m_m: usize,
    u_size: usize,
    symbols: Vec<u8>,
}

impl Codebook {
    /// Wraps explicit codewords, laid out in `(s1, s2, m)` row-major order.
    pub fn from_symbols(cfg: &SimConfig, u_size: usize, symbols: Vec<u8>) -> Result<Self> {
        let size = cfg
            .codebook_size()
            .ok_or_else(|| Error::Config("codebook size overflows".into()))?;
        if symbols.len() != size * cfg.n {
            return Err(Error::Dimension(format!(
                "{} symbols given, codebook needs {}",
                symbols.len(),
                size * cfg.n
            )));
        }
        if symbols.iter().any(|&s| s as usize >= u_size) {
            return Err(Error::Dimension(
                "codeword symbol outside the U alphabet".into(),
            ));
        }
        Ok(Self {
            n: cfg.n,
            m_c: cfg.m_c(),
            m_g_rest: cfg.m_g_rest,
            m_m: cfg.m_m,
            u_size,
            symbols,
        })
    }

    pub fn len(&self) -> usize {
        self.m_c * self.m_g_rest * self.m_m
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn u_size(&self) -> usize {
        self.u_size
    }

    pub fn flat(&self, v: CodeIndex) -> usize {
        debug_assert!(v.s1 < self.m_c && v.s2 < self.m_g_rest && v.m < self.m_m);
        (v.s1 * self.m_g_rest + v.s2) * self.m_m + v.m
    }

    pub fn index(&self, flat: usize) -> CodeIndex {
        CodeIndex {
            s1: flat / (self.m_g_rest * self.m_m),
            s2: (flat / self.m_m) % self.m_g_rest,
            m: flat % self.m_m,
        }
    }

    pub fn word(&self, v: CodeIndex) -> &[u8] {
        self.word_flat(self.flat(v))
    }

    pub fn word_flat(&self, flat: usize) -> &[u8] {
        &self.symbols[flat * self.n..(flat + 1) * self.n]
    }
}

/// Draws every codeword symbol i.i.d. from `p_u`.
pub fn generate_codebook<R: Rng>(
    cfg: &SimConfig,
    p_u: &ProbVector,
    rng: &mut R,
) -> Result<Codebook> {
    cfg.validate()?;
    if p_u.len() > u8::MAX as usize + 1 {
        return Err(Error::Dimension("U alphabet exceeds 256 symbols".into()));
    }
    let sampler = WeightedIndex::new(p_u.as_slice().iter().copied())
        .map_err(|e| Error::InvalidDistribution(e.to_string()))?;
    let total = cfg.codebook_size().expect("validated") * cfg.n;
    let symbols = (0..total).map(|_| sampler.sample(rng) as u8).collect();
    Codebook::from_symbols(cfg, p_u.len(), symbols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::trial_rng;

    fn cfg(n: usize, m_m: usize) -> SimConfig {
        SimConfig {
            n,
            m_i: 1,
            m_gamma: 2,
            m_c_rest: 2,
            m_g_rest: 2,
            m_m,
            epsilon: 0.2,
            seed: 5,
            trials: 1,
        }
    }

    #[test]
    fn point_mass_gives_identical_words() {
        let c = cfg(6, 3);
        let cb =
            generate_codebook(&c, &ProbVector::point_mass(3, 2), &mut trial_rng(1, 0)).unwrap();
        assert_eq!(cb.len(), 24);
        for f in 0..cb.len() {
            assert_eq!(cb.word_flat(f), &[2u8; 6]);
        }
    }

    #[test]
    fn seeded_generation_repeats() {
        let c = cfg(8, 4);
        let p = ProbVector::uniform(2);
        let a = generate_codebook(&c, &p, &mut trial_rng(9, 0)).unwrap();
        let b = generate_codebook(&c, &p, &mut trial_rng(9, 0)).unwrap();
        assert_eq!(a, b);
        let other = generate_codebook(&c, &p, &mut trial_rng(10, 0)).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn uniform_symbol_frequency() {
        // 64 words of length 8: 512 fair bits, 3 sigma = 3 * sqrt(512 / 4)
        let c = cfg(8, 8);
        let cb = generate_codebook(&c, &ProbVector::uniform(2), &mut trial_rng(3, 0)).unwrap();
        assert_eq!(cb.len(), 64);
        let ones: usize = (0..cb.len())
            .map(|f| cb.word_flat(f).iter().filter(|&&s| s == 1).count())
            .sum();
        let dev = (ones as f64 - 256.0).abs();
        assert!(dev <= 3.0 * (512.0f64 / 4.0).sqrt(), "ones={ones}");
    }

    #[test]
    fn flat_index_round_trip() {
        let c = cfg(3, 5);
        let cb = generate_codebook(&c, &ProbVector::uniform(2), &mut trial_rng(0, 0)).unwrap();
        for f in 0..cb.len() {
            assert_eq!(cb.flat(cb.index(f)), f);
        }
        assert!(Codebook::from_symbols(&c, 2, vec![0; 3]).is_err());
    }
}

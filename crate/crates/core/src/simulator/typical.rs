//! Strong joint typicality: every pair frequency within `epsilon * P(a, b)`
//! of its probability, and pairs of probability zero never observed.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct JointTypicality {
    b_size: usize,
    /// Inclusive admissible count range per pair, row-major over `(a, b)`.
    ranges: Vec<(usize, usize)>,
    n: usize,
}

impl JointTypicality {
    /// `pair` is the joint law of `(a, b)` as an `a_size x b_size` row-major table.
    pub fn new(pair: &[f64], a_size: usize, b_size: usize, n: usize, epsilon: f64) -> Result<Self> {
        if pair.len() != a_size * b_size {
            return Err(Error::Dimension("pair table size".into()));
        }
        if epsilon.is_nan() || epsilon <= 0.0 {
            return Err(Error::Config("epsilon must be positive".into()));
        }
        let slack = 1e-9;
        let ranges = pair
            .iter()
            .map(|&p| {
                if p <= crate::info::ZERO_MASS {
                    return (0, 0);
                }
                let lo = n as f64 * p * (1.0 - epsilon);
                let hi = n as f64 * p * (1.0 + epsilon);
                let lo = if lo <= 0.0 {
                    0
                } else {
                    (lo - slack).ceil() as usize
                };
                let hi = ((hi + slack).floor() as usize).min(n);
                (lo, hi)
            })
            .collect();
        Ok(Self { b_size, ranges, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_typical(&self, a: &[u8], b: &[u8]) -> bool {
        debug_assert_eq!(a.len(), self.n);
        debug_assert_eq!(b.len(), self.n);
        let mut counts = [0u16; 64];
        let mut heap;
        let counts: &mut [u16] = if self.ranges.len() <= counts.len() {
            &mut counts[..self.ranges.len()]
        } else {
            heap = vec![0u16; self.ranges.len()];
            &mut heap
        };
        for (&x, &y) in a.iter().zip(b) {
            let cell = x as usize * self.b_size + y as usize;
            counts[cell] += 1;
            if counts[cell] as usize > self.ranges[cell].1 {
                return false;
            }
        }
        counts
            .iter()
            .zip(&self.ranges)
            .all(|(&c, &(lo, _))| c as usize >= lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_frequencies_are_typical() {
        let t = JointTypicality::new(&[0.25, 0.25, 0.25, 0.25], 2, 2, 4, 0.1).unwrap();
        assert!(t.is_typical(&[0, 0, 1, 1], &[0, 1, 0, 1]));
        assert!(!t.is_typical(&[0, 0, 1, 1], &[0, 0, 1, 1]));
    }

    #[test]
    fn zero_probability_pairs_forbidden() {
        let t = JointTypicality::new(&[0.5, 0.0, 0.0, 0.5], 2, 2, 4, 5.0).unwrap();
        assert!(t.is_typical(&[0, 1, 0, 1], &[0, 1, 0, 1]));
        assert!(t.is_typical(&[0, 0, 0, 0], &[0, 0, 0, 0]));
        assert!(!t.is_typical(&[0, 1, 0, 1], &[0, 1, 0, 0]));
    }

    #[test]
    fn tolerance_window() {
        // P = (0.45, 0.05, 0.05, 0.45), n = 20, eps = 1: counts in [0, 2] off-diagonal
        let t = JointTypicality::new(&[0.45, 0.05, 0.05, 0.45], 2, 2, 20, 1.0).unwrap();
        let a: Vec<u8> = (0..20).map(|i| (i >= 10) as u8).collect();
        let mut b = a.clone();
        assert!(t.is_typical(&a, &b));
        assert!(!t.is_typical(&[0; 20], &[0; 20]));
        b[0] = 1;
        b[1] = 1;
        assert!(t.is_typical(&a, &b));
        b[2] = 1;
        assert!(!t.is_typical(&a, &b));
    }
}

//! Random instances and independent reference formulas shared by the
//! integration tests.
#![allow(dead_code)]

use bis_keys::models::{Channel, DiscreteBis, TestChannel};
use bis_keys::ProbVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from the simplex.
pub fn simplex(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..len).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|v| v / total).collect()
}

pub fn channel(rng: &mut ChaCha8Rng, inputs: usize, outputs: usize) -> Vec<Vec<f64>> {
    (0..inputs).map(|_| simplex(rng, outputs)).collect()
}

/// Random model with every alphabet in `2..=max_alphabet`.
pub fn discrete_model(rng: &mut ChaCha8Rng, max_alphabet: usize) -> DiscreteBis {
    let (xs, ys, zs) = (
        rng.gen_range(2..=max_alphabet),
        rng.gen_range(2..=max_alphabet),
        rng.gen_range(2..=max_alphabet),
    );
    DiscreteBis::new(
        ProbVector::new(simplex(rng, xs)).unwrap(),
        Channel::new(channel(rng, xs, ys)).unwrap(),
        Channel::new(channel(rng, xs, zs)).unwrap(),
    )
    .unwrap()
}

pub fn test_channel(rng: &mut ChaCha8Rng, y_size: usize, u_size: usize) -> TestChannel {
    TestChannel::from_rows(channel(rng, y_size, u_size)).unwrap()
}

/// Binary entropy in bits, straight from the definition.
pub fn h2(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

pub fn conv(a: f64, b: f64) -> f64 {
    a * (1.0 - b) + (1.0 - a) * b
}

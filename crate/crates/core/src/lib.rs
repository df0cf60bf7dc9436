//! Capacity regions of biometric identification systems that bind a chosen
//! secret key and extract a generated secret key, with a bounded correlation
//! budget between the two keys.
//!
//! The crate covers:
//!
//! * [`info`]: entropies, mutual information, binary entropy and its inverse,
//!   binary convolution.
//! * [`models`]: discrete, binary-symmetric and Gaussian source models, and the
//!   auxiliary test channel `P_{U|Y}`.
//! * [`region`]: membership tests and witness search for arbitrary discrete
//!   models, closed forms for binary and Gaussian sources, boundary sweeps.
//! * [`simulator`]: a finite-blocklength random-coding scheme with typicality
//!   encoding/decoding, one-time-pad helper data and exact leakage evaluation.
//! * [`cli`]: the command implementations behind the `bis-keys` binary.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod cli;
pub mod error;
pub mod info;
pub mod models;
pub mod region;
pub mod simulator;

pub use error::{Error, Result};
pub use info::{Base, InfoValue, JointTable, ProbVector};
pub use models::{
    BinaryBis, Channel, DiscreteBis, GaussianBis, Model, RateQuery, RegionBounds, TestChannel,
};

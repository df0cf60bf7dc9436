//! Information measures on finite distributions.
//!
//! Every quantity carries its logarithm base in an [`InfoValue`]. Binary and
//! discrete regions are evaluated in bits, Gaussian regions in nats.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_prob, Error, Result};

/// Total-mass tolerance for distributions.
pub const MASS_TOL: f64 = 1e-12;

/// Masses below this are treated as exact zeros inside logarithms.
pub const ZERO_MASS: f64 = 1e-15;

const NEG_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    Bits,
    Nats,
}

impl Base {
    fn log(self, x: f64) -> f64 {
        match self {
            Base::Bits => x.log2(),
            Base::Nats => x.ln(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Base::Bits => "bits",
            Base::Nats => "nats",
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A nonnegative amount of information tagged with its unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfoValue {
    amount: f64,
    base: Base,
}

impl InfoValue {
    /// Builds a value, clamping round-off negatives in `[-1e-12, 0)` to zero.
    pub fn new(amount: f64, base: Base) -> Self {
        let amount = if (-NEG_CLAMP..0.0).contains(&amount) {
            0.0
        } else {
            amount
        };
        Self { amount, base }
    }

    pub fn zero(base: Base) -> Self {
        Self { amount: 0.0, base }
    }

    pub fn amount(&self) -> f64 {
        self.amount
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn bits(&self) -> f64 {
        self.in_base(Base::Bits)
    }

    pub fn nats(&self) -> f64 {
        self.in_base(Base::Nats)
    }

    pub fn in_base(&self, base: Base) -> f64 {
        match (self.base, base) {
            (Base::Bits, Base::Nats) => self.amount * std::f64::consts::LN_2,
            (Base::Nats, Base::Bits) => self.amount / std::f64::consts::LN_2,
            _ => self.amount,
        }
    }

    pub fn to_base(&self, base: Base) -> Self {
        Self {
            amount: self.in_base(base),
            base,
        }
    }
}

/// A probability vector over `0..len`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        validate_mass(&values)?;
        Ok(Self(values))
    }

    pub fn uniform(len: usize) -> Self {
        assert!(len > 0, "empty alphabet");
        Self(vec![1.0 / len as f64; len])
    }

    pub fn point_mass(len: usize, at: usize) -> Self {
        assert!(at < len);
        let mut v = vec![0.0; len];
        v[at] = 1.0;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn entropy(&self, base: Base) -> InfoValue {
        InfoValue::new(raw_entropy(&self.0, base), base)
    }
}

impl TryFrom<Vec<f64>> for ProbVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ProbVector> for Vec<f64> {
    fn from(p: ProbVector) -> Self {
        p.0
    }
}

impl std::ops::Index<usize> for ProbVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

pub(crate) fn validate_mass(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidDistribution("empty support".into()));
    }
    if let Some(bad) = values.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
        return Err(Error::InvalidDistribution(format!(
            "entry {bad} is not a nonnegative finite number"
        )));
    }
    let total: f64 = values.iter().sum();
    if (total - 1.0).abs() > MASS_TOL {
        return Err(Error::InvalidDistribution(format!(
            "total mass {total} differs from 1"
        )));
    }
    Ok(())
}

fn raw_entropy(mass: &[f64], base: Base) -> f64 {
    -mass
        .iter()
        .filter(|&&p| p > ZERO_MASS)
        .map(|&p| p * base.log(p))
        .sum::<f64>()
}

/// Joint law over a list of named finite alphabets, stored row-major (last
/// axis varies fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct JointTable {
    axes: Vec<(String, usize)>,
    mass: Vec<f64>,
}

impl JointTable {
    pub fn new<S: Into<String>>(axes: Vec<(S, usize)>, mass: Vec<f64>) -> Result<Self> {
        let axes: Vec<(String, usize)> = axes.into_iter().map(|(n, s)| (n.into(), s)).collect();
        if axes.is_empty() {
            return Err(Error::Dimension(
                "joint table needs at least one axis".into(),
            ));
        }
        for (i, (name, size)) in axes.iter().enumerate() {
            if *size == 0 {
                return Err(Error::Dimension(format!("axis `{name}` is empty")));
            }
            if axes[..i].iter().any(|(n, _)| n == name) {
                return Err(Error::Dimension(format!("duplicate axis `{name}`")));
            }
        }
        let cells: usize = axes.iter().map(|(_, s)| s).product();
        if cells != mass.len() {
            return Err(Error::Dimension(format!(
                "axes describe {cells} cells but {} masses were given",
                mass.len()
            )));
        }
        validate_mass(&mass)?;
        Ok(Self { axes, mass })
    }

    /// Product law of independent marginals.
    pub fn product(named: &[(&str, &ProbVector)]) -> Result<Self> {
        let mut mass = vec![1.0];
        for (_, p) in named {
            mass = mass
                .iter()
                .flat_map(|&m| p.as_slice().iter().map(move |&q| m * q))
                .collect();
        }
        Self::new(
            named
                .iter()
                .map(|(n, p)| (n.to_string(), p.len()))
                .collect(),
            mass,
        )
    }

    /// Joint of an input law and a row-stochastic channel, axes `(input, output)`.
    pub fn from_channel(
        input: (&str, &ProbVector),
        output: &str,
        channel: &[Vec<f64>],
    ) -> Result<Self> {
        let (in_name, px) = input;
        if channel.len() != px.len() {
            return Err(Error::Dimension(format!(
                "channel has {} rows, input alphabet has {}",
                channel.len(),
                px.len()
            )));
        }
        let out_size = channel.first().map_or(0, Vec::len);
        let mut mass = Vec::with_capacity(px.len() * out_size);
        for (row, &p) in channel.iter().zip(px.as_slice()) {
            if row.len() != out_size {
                return Err(Error::Dimension("ragged channel rows".into()));
            }
            validate_mass(row)?;
            mass.extend(row.iter().map(|&w| p * w));
        }
        Self::new(vec![(in_name, px.len()), (output, out_size)], mass)
    }

    pub fn axes(&self) -> impl Iterator<Item = (&str, usize)> {
        self.axes.iter().map(|(n, s)| (n.as_str(), *s))
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn axis_index(&self, name: &str) -> Result<usize> {
        self.axes
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| Error::UnknownAxis(name.to_string()))
    }

    pub fn axis_size(&self, name: &str) -> Result<usize> {
        Ok(self.axes[self.axis_index(name)?].1)
    }

    /// Marginal over `keep`, with axes in the order given.
    pub fn marginal(&self, keep: &[&str]) -> Result<JointTable> {
        let idx: Vec<usize> = keep
            .iter()
            .map(|n| self.axis_index(n))
            .collect::<Result<_>>()?;
        for (i, a) in idx.iter().enumerate() {
            if idx[..i].contains(a) {
                return Err(Error::Dimension(format!("axis `{}` repeated", keep[i])));
            }
        }
        let out_sizes: Vec<usize> = idx.iter().map(|&i| self.axes[i].1).collect();
        let mut out_strides = vec![1usize; idx.len()];
        for k in (0..idx.len().saturating_sub(1)).rev() {
            out_strides[k] = out_strides[k + 1] * out_sizes[k + 1];
        }
        // stride each source axis contributes to the output index
        let mut contrib = vec![0usize; self.axes.len()];
        for (k, &i) in idx.iter().enumerate() {
            contrib[i] = out_strides[k];
        }
        let out_len: usize = out_sizes.iter().product();
        let mut out = vec![0.0; out_len.max(1)];
        let mut digits = vec![0usize; self.axes.len()];
        let mut target = 0usize;
        for &m in &self.mass {
            out[target] += m;
            for ax in (0..self.axes.len()).rev() {
                digits[ax] += 1;
                target += contrib[ax];
                if digits[ax] < self.axes[ax].1 {
                    break;
                }
                target -= contrib[ax] * digits[ax];
                digits[ax] = 0;
            }
        }
        if idx.is_empty() {
            return Ok(JointTable {
                axes: vec![("()".into(), 1)],
                mass: out,
            });
        }
        Ok(JointTable {
            axes: idx.iter().map(|&i| self.axes[i].clone()).collect(),
            mass: out,
        })
    }

    /// Joint entropy of the named axes.
    pub fn entropy_of(&self, axes: &[&str], base: Base) -> Result<InfoValue> {
        let m = self.marginal(axes)?;
        Ok(InfoValue::new(raw_entropy(&m.mass, base), base))
    }
}

/// Binary entropy `-p log p - (1-p) log(1-p)`.
pub fn binary_entropy(p: f64, base: Base) -> Result<InfoValue> {
    check_prob(p)?;
    Ok(InfoValue::new(raw_entropy(&[p, 1.0 - p], base), base))
}

/// Binary entropy in bits for an argument already known to lie in `[0, 1]`.
pub(crate) fn hb(p: f64) -> f64 {
    raw_entropy(&[p, 1.0 - p], Base::Bits)
}

const INV_TOL: f64 = 1e-12;
const INV_MAX_ITER: usize = 200;

/// Inverse of the binary entropy (in bits) on the branch `[0, 0.5]`, by bisection.
pub fn inv_binary_entropy(h: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&h) {
        return Err(Error::Domain {
            value: h,
            domain: "[0, 1] bits",
        });
    }
    Ok(inv_hb(h))
}

pub(crate) fn inv_hb(h: f64) -> f64 {
    if h <= 0.0 {
        return 0.0;
    }
    if h >= 1.0 {
        return 0.5;
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    for _ in 0..INV_MAX_ITER {
        if hi - lo <= INV_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if hb(mid) < h {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Binary convolution `a(1-b) + (1-a)b`.
pub fn star(a: f64, b: f64) -> Result<f64> {
    check_prob(a)?;
    check_prob(b)?;
    Ok(star_raw(a, b))
}

pub(crate) fn star_raw(a: f64, b: f64) -> f64 {
    (a * (1.0 - b) + (1.0 - a) * b).clamp(0.0, 1.0)
}

pub fn entropy(dist: &ProbVector, base: Base) -> InfoValue {
    dist.entropy(base)
}

/// `I(A;B) = H(A) + H(B) - H(A,B)` after marginalizing out every other axis.
pub fn mutual_information(
    joint: &JointTable,
    axis_a: &str,
    axis_b: &str,
    base: Base,
) -> Result<InfoValue> {
    mutual_information_sets(joint, &[axis_a], &[axis_b], base)
}

/// Mutual information between two groups of axes.
pub fn mutual_information_sets(
    joint: &JointTable,
    group_a: &[&str],
    group_b: &[&str],
    base: Base,
) -> Result<InfoValue> {
    let ha = joint.entropy_of(group_a, base)?.amount();
    let hb_ = joint.entropy_of(group_b, base)?.amount();
    let both: Vec<&str> = group_a.iter().chain(group_b).copied().collect();
    let hab = joint.entropy_of(&both, base)?.amount();
    Ok(InfoValue::new(clamp_small(ha + hb_ - hab), base))
}

/// `H(A | B) = H(A, B) - H(B)`.
pub fn conditional_entropy(
    joint: &JointTable,
    target: &str,
    given: &[&str],
    base: Base,
) -> Result<InfoValue> {
    let hg = if given.is_empty() {
        0.0
    } else {
        joint.entropy_of(given, base)?.amount()
    };
    let mut all = vec![target];
    all.extend_from_slice(given);
    let h = joint.entropy_of(&all, base)?.amount();
    Ok(InfoValue::new(clamp_small(h - hg), base))
}

fn clamp_small(v: f64) -> f64 {
    if (-NEG_CLAMP..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Frozen from a 40-digit evaluation of the defining formula.
    const HB_0124: f64 = 0.540_750_477_963_486_6;

    fn bsc_joint(cross: f64) -> JointTable {
        JointTable::from_channel(
            ("a", &ProbVector::uniform(2)),
            "b",
            &[vec![1.0 - cross, cross], vec![cross, 1.0 - cross]],
        )
        .unwrap()
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5, Base::Bits).unwrap().amount(), 1.0);
        assert_eq!(binary_entropy(0.0, Base::Bits).unwrap().amount(), 0.0);
        assert_eq!(binary_entropy(1.0, Base::Bits).unwrap().amount(), 0.0);
        let h = binary_entropy(0.124, Base::Bits).unwrap().amount();
        assert!((h - HB_0124).abs() < 1e-15, "{h}");
        assert!(binary_entropy(1.5, Base::Bits).is_err());
        assert!(binary_entropy(-0.1, Base::Nats).is_err());
    }

    #[test]
    fn inverse_binary_entropy() {
        assert_eq!(inv_binary_entropy(1.0).unwrap(), 0.5);
        assert_eq!(inv_binary_entropy(0.0).unwrap(), 0.0);
        let p = inv_binary_entropy(HB_0124).unwrap();
        assert!((p - 0.124).abs() < 1e-10);
        assert!(inv_binary_entropy(1.01).is_err());
        assert!(inv_binary_entropy(-1e-3).is_err());
    }

    #[test]
    fn inverse_round_trip_grid() {
        let mut prev = -1.0;
        for i in 0..=10_000 {
            let p = 0.5 * i as f64 / 10_000.0;
            let q = inv_hb(hb(p));
            assert!((q - p).abs() < 1e-10, "p={p} q={q}");
            assert!(q >= prev);
            prev = q;
        }
    }

    #[test]
    fn star_values() {
        assert_eq!(star(0.5, 0.3).unwrap(), 0.5);
        assert_eq!(star(0.2, 0.0).unwrap(), 0.2);
        assert!((star(0.03, 0.1).unwrap() - 0.124).abs() < 1e-15);
        assert!(star(0.2, 1.2).is_err());
    }

    #[test]
    fn entropy_values() {
        assert!((entropy(&ProbVector::uniform(4), Base::Bits).amount() - 2.0).abs() < 1e-15);
        assert_eq!(
            entropy(&ProbVector::point_mass(3, 1), Base::Bits).amount(),
            0.0
        );
        let p = ProbVector::new(vec![0.124, 0.876]).unwrap();
        assert!((entropy(&p, Base::Bits).amount() - HB_0124).abs() < 1e-15);
        assert!(ProbVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbVector::new(vec![1.5, -0.5]).is_err());
    }

    #[test]
    fn mutual_information_values() {
        let a = ProbVector::new(vec![0.3, 0.7]).unwrap();
        let b = ProbVector::new(vec![0.2, 0.5, 0.3]).unwrap();
        let prod = JointTable::product(&[("a", &a), ("b", &b)]).unwrap();
        assert_eq!(
            mutual_information(&prod, "a", "b", Base::Bits)
                .unwrap()
                .amount(),
            0.0
        );

        let id = bsc_joint(0.0);
        assert!(
            (mutual_information(&id, "a", "b", Base::Bits)
                .unwrap()
                .amount()
                - 1.0)
                .abs()
                < 1e-15
        );

        let j = bsc_joint(0.124);
        let mi = mutual_information(&j, "a", "b", Base::Bits)
            .unwrap()
            .amount();
        assert!((mi - (1.0 - HB_0124)).abs() < 1e-14);

        assert_eq!(
            mutual_information(&j, "a", "c", Base::Bits),
            Err(Error::UnknownAxis("c".into()))
        );
    }

    #[test]
    fn conditional_entropy_values() {
        let a = ProbVector::new(vec![0.3, 0.7]).unwrap();
        let b = ProbVector::uniform(3);
        let prod = JointTable::product(&[("a", &a), ("b", &b)]).unwrap();
        let h = conditional_entropy(&prod, "a", &["b"], Base::Nats)
            .unwrap()
            .amount();
        assert!((h - a.entropy(Base::Nats).amount()).abs() < 1e-15);

        let id = bsc_joint(0.0);
        assert_eq!(
            conditional_entropy(&id, "b", &["a"], Base::Bits)
                .unwrap()
                .amount(),
            0.0
        );

        let j = bsc_joint(0.124);
        let h = conditional_entropy(&j, "b", &["a"], Base::Bits)
            .unwrap()
            .amount();
        assert!((h - HB_0124).abs() < 1e-14);
    }

    #[test]
    fn marginal_reorders_axes() {
        let j = JointTable::new(
            vec![("x", 2), ("y", 3)],
            vec![0.1, 0.2, 0.05, 0.15, 0.3, 0.2],
        )
        .unwrap();
        let yx = j.marginal(&["y", "x"]).unwrap();
        assert_eq!(yx.mass(), &[0.1, 0.15, 0.2, 0.3, 0.05, 0.2]);
        let y = j.marginal(&["y"]).unwrap();
        for (got, want) in y.mass().iter().zip([0.25, 0.5, 0.25]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn table_validation() {
        assert!(JointTable::new(vec![("x", 2)], vec![0.5, 0.4]).is_err());
        assert!(JointTable::new(vec![("x", 2), ("x", 1)], vec![0.5, 0.5]).is_err());
        assert!(JointTable::new(vec![("x", 3)], vec![0.5, 0.5]).is_err());
    }

    #[test]
    fn unit_conversion() {
        let v = InfoValue::new(1.7, Base::Bits);
        assert!((v.nats() - 1.7 * std::f64::consts::LN_2).abs() < 1e-12);
        assert!((v.to_base(Base::Nats).bits() - 1.7).abs() < 1e-12);
        assert_eq!(InfoValue::new(-1e-13, Base::Bits).amount(), 0.0);
    }
}

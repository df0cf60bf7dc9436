//! Source/channel models, auxiliary test channels and rate queries.
//!
//! Alphabets are `0..k` index ranges. The joint law of `(U, Y, X, Z)` always
//! respects the Markov chain `Z - X - Y - U`: the auxiliary attaches to the
//! enrollment observation only.

use serde::{Deserialize, Serialize};

use crate::error::{check_prob, Error, Result};
use crate::info::{validate_mass, Base, InfoValue, JointTable, ProbVector};

pub const AXIS_U: &str = "U";
pub const AXIS_Y: &str = "Y";
pub const AXIS_X: &str = "X";
pub const AXIS_Z: &str = "Z";

/// Row-stochastic matrix; row `i` is the output law given input `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct Channel(Vec<Vec<f64>>);

impl Channel {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let width = rows
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::Dimension("channel has no rows".into()))?;
        for row in &rows {
            if row.len() != width {
                return Err(Error::Dimension("ragged channel rows".into()));
            }
            validate_mass(row)?;
        }
        Ok(Self(rows))
    }

    /// Binary symmetric channel with the given crossover.
    pub fn bsc(crossover: f64) -> Result<Self> {
        check_prob(crossover)?;
        Ok(Self(vec![
            vec![1.0 - crossover, crossover],
            vec![crossover, 1.0 - crossover],
        ]))
    }

    pub fn identity(size: usize) -> Self {
        Self(
            (0..size)
                .map(|i| ProbVector::point_mass(size, i).into())
                .collect(),
        )
    }

    pub fn inputs(&self) -> usize {
        self.0.len()
    }

    pub fn outputs(&self) -> usize {
        self.0[0].len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.0
    }

    pub fn prob(&self, input: usize, output: usize) -> f64 {
        self.0[input][output]
    }

    /// Output law for the given input law.
    pub fn push_forward(&self, input: &ProbVector) -> Result<ProbVector> {
        if input.len() != self.inputs() {
            return Err(Error::Dimension(format!(
                "input law has {} symbols, channel expects {}",
                input.len(),
                self.inputs()
            )));
        }
        let mut out = vec![0.0; self.outputs()];
        for (row, &p) in self.0.iter().zip(input.as_slice()) {
            for (o, &w) in out.iter_mut().zip(row) {
                *o += p * w;
            }
        }
        renormalized(out)
    }
}

impl TryFrom<Vec<Vec<f64>>> for Channel {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<Channel> for Vec<Vec<f64>> {
    fn from(c: Channel) -> Self {
        c.0
    }
}

fn renormalized(mut v: Vec<f64>) -> Result<ProbVector> {
    let total: f64 = v.iter().sum();
    if total > 0.0 {
        v.iter_mut().for_each(|p| *p /= total);
    }
    ProbVector::new(v)
}

/// Discrete source `P_X` with enrollment channel `P_{Y|X}` and identification
/// channel `P_{Z|X}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDiscrete")]
pub struct DiscreteBis {
    px: ProbVector,
    enrollment: Channel,
    identification: Channel,
}

#[derive(Deserialize)]
struct RawDiscrete {
    px: ProbVector,
    enrollment: Channel,
    identification: Channel,
}

impl TryFrom<RawDiscrete> for DiscreteBis {
    type Error = Error;

    fn try_from(r: RawDiscrete) -> Result<Self> {
        Self::new(r.px, r.enrollment, r.identification)
    }
}

impl DiscreteBis {
    pub fn new(px: ProbVector, enrollment: Channel, identification: Channel) -> Result<Self> {
        if enrollment.inputs() != px.len() || identification.inputs() != px.len() {
            return Err(Error::Dimension(format!(
                "source has {} symbols; enrollment has {} rows, identification has {}",
                px.len(),
                enrollment.inputs(),
                identification.inputs()
            )));
        }
        Ok(Self {
            px,
            enrollment,
            identification,
        })
    }

    pub fn px(&self) -> &ProbVector {
        &self.px
    }

    pub fn enrollment(&self) -> &Channel {
        &self.enrollment
    }

    pub fn identification(&self) -> &Channel {
        &self.identification
    }

    pub fn x_size(&self) -> usize {
        self.px.len()
    }

    pub fn y_size(&self) -> usize {
        self.enrollment.outputs()
    }

    pub fn z_size(&self) -> usize {
        self.identification.outputs()
    }

    pub fn py(&self) -> ProbVector {
        self.enrollment
            .push_forward(&self.px)
            .expect("alphabets checked at construction")
    }
}

/// Uniform binary source observed through two binary symmetric channels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBinary")]
pub struct BinaryBis {
    p_e: f64,
    p_d: f64,
}

#[derive(Deserialize)]
struct RawBinary {
    p_e: f64,
    p_d: f64,
}

impl TryFrom<RawBinary> for BinaryBis {
    type Error = Error;

    fn try_from(r: RawBinary) -> Result<Self> {
        Self::new(r.p_e, r.p_d)
    }
}

impl BinaryBis {
    pub fn new(p_e: f64, p_d: f64) -> Result<Self> {
        for p in [p_e, p_d] {
            if !(0.0..=0.5).contains(&p) {
                return Err(Error::Domain {
                    value: p,
                    domain: "[0, 0.5]",
                });
            }
        }
        Ok(Self { p_e, p_d })
    }

    pub fn p_e(&self) -> f64 {
        self.p_e
    }

    pub fn p_d(&self) -> f64 {
        self.p_d
    }

    pub fn to_discrete(&self) -> DiscreteBis {
        binary_to_discrete(*self)
    }
}

pub fn binary_to_discrete(b: BinaryBis) -> DiscreteBis {
    DiscreteBis {
        px: ProbVector::uniform(2),
        enrollment: Channel::bsc(b.p_e).expect("validated crossover"),
        identification: Channel::bsc(b.p_d).expect("validated crossover"),
    }
}

/// Standard Gaussian source with `Y = rho1 X + N1`, `Z = rho2 X + N2`.
/// Only the correlations are stored; variances are derived on demand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGaussian")]
pub struct GaussianBis {
    rho1: f64,
    rho2: f64,
}

#[derive(Deserialize)]
struct RawGaussian {
    rho1: f64,
    rho2: f64,
}

impl TryFrom<RawGaussian> for GaussianBis {
    type Error = Error;

    fn try_from(r: RawGaussian) -> Result<Self> {
        Self::new(r.rho1, r.rho2)
    }
}

impl GaussianBis {
    pub fn new(rho1: f64, rho2: f64) -> Result<Self> {
        for r in [rho1, rho2] {
            if !(r.is_finite() && r.abs() < 1.0) {
                return Err(Error::Domain {
                    value: r,
                    domain: "(-1, 1)",
                });
            }
        }
        Ok(Self { rho1, rho2 })
    }

    pub fn rho1(&self) -> f64 {
        self.rho1
    }

    pub fn rho2(&self) -> f64 {
        self.rho2
    }

    pub fn enrollment_noise_var(&self) -> f64 {
        1.0 - self.rho1 * self.rho1
    }

    pub fn identification_noise_var(&self) -> f64 {
        1.0 - self.rho2 * self.rho2
    }
}

/// One linear Gaussian stage `out = coef * in + N(0, noise_var)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearStage {
    pub coef: f64,
    pub noise_var: f64,
}

impl LinearStage {
    pub fn then(self, next: LinearStage) -> LinearStage {
        LinearStage {
            coef: self.coef * next.coef,
            noise_var: next.coef * next.coef * self.noise_var + next.noise_var,
        }
    }

    pub fn output_var(&self, input_var: f64) -> f64 {
        self.coef * self.coef * input_var + self.noise_var
    }
}

/// Reverse-direction description `X = rho1 Y + N1'`, `Z = rho2 X + N2`, which
/// has the same joint law as the forward model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvertedGaussian {
    pub x_given_y: LinearStage,
    pub z_given_x: LinearStage,
}

impl ConvertedGaussian {
    pub fn z_given_y(&self) -> LinearStage {
        self.x_given_y.then(self.z_given_x)
    }

    /// Variance of `X` implied by a unit-variance `Y`.
    pub fn x_var(&self) -> f64 {
        self.x_given_y.output_var(1.0)
    }
}

pub fn converted_gaussian(g: GaussianBis) -> ConvertedGaussian {
    ConvertedGaussian {
        x_given_y: LinearStage {
            coef: g.rho1,
            noise_var: g.enrollment_noise_var(),
        },
        z_given_x: LinearStage {
            coef: g.rho2,
            noise_var: g.identification_noise_var(),
        },
    }
}

/// Any of the three supported model forms, as read from a model file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Model {
    Discrete(DiscreteBis),
    Binary(BinaryBis),
    Gaussian(GaussianBis),
}

impl Model {
    /// Finite-alphabet form, when one exists.
    pub fn discrete(&self) -> Option<DiscreteBis> {
        match self {
            Model::Discrete(d) => Some(d.clone()),
            Model::Binary(b) => Some(b.to_discrete()),
            Model::Gaussian(_) => None,
        }
    }
}

/// Auxiliary channel `P_{U|Y}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TestChannel {
    table: Channel,
}

impl TestChannel {
    pub fn new(table: Channel) -> Self {
        Self { table }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        Channel::new(rows).map(Self::new)
    }

    /// Binary symmetric auxiliary with crossover `gamma`.
    pub fn bsc(gamma: f64) -> Result<Self> {
        Channel::bsc(gamma).map(Self::new)
    }

    /// `U` is constant (always symbol 0).
    pub fn constant(y_size: usize, u_size: usize) -> Self {
        Self::new(Channel(vec![
            ProbVector::point_mass(u_size, 0).into();
            y_size
        ]))
    }

    /// `U = Y`, padded with unused symbols up to `u_size`.
    pub fn identity(y_size: usize, u_size: usize) -> Self {
        assert!(u_size >= y_size);
        Self::new(Channel(
            (0..y_size)
                .map(|y| ProbVector::point_mass(u_size, y).into())
                .collect(),
        ))
    }

    pub fn y_size(&self) -> usize {
        self.table.inputs()
    }

    pub fn u_size(&self) -> usize {
        self.table.outputs()
    }

    pub fn table(&self) -> &Channel {
        &self.table
    }

    pub fn prob(&self, y: usize, u: usize) -> f64 {
        self.table.prob(y, u)
    }

    pub fn check_compatible(&self, bis: &DiscreteBis) -> Result<()> {
        if self.y_size() != bis.y_size() {
            return Err(Error::Dimension(format!(
                "test channel has {} input rows, enrollment alphabet has {} symbols",
                self.y_size(),
                bis.y_size()
            )));
        }
        if self.u_size() > bis.y_size() + 2 {
            return Err(Error::Dimension(format!(
                "auxiliary alphabet {} exceeds |Y| + 2 = {}",
                self.u_size(),
                bis.y_size() + 2
            )));
        }
        Ok(())
    }
}

/// Joint law over axes `(U, Y, X, Z)`:
/// `P_X(x) P_{Y|X}(y|x) P_{Z|X}(z|x) P_{U|Y}(u|y)`.
pub fn induced_joint(bis: &DiscreteBis, test: &TestChannel) -> Result<JointTable> {
    test.check_compatible(bis)?;
    let (us, ys, xs, zs) = (test.u_size(), bis.y_size(), bis.x_size(), bis.z_size());
    let mut mass = Vec::with_capacity(us * ys * xs * zs);
    for u in 0..us {
        for y in 0..ys {
            let pu = test.prob(y, u);
            for x in 0..xs {
                let pxy = bis.px[x] * bis.enrollment.prob(x, y) * pu;
                for z in 0..zs {
                    mass.push(pxy * bis.identification.prob(x, z));
                }
            }
        }
    }
    // Products of valid laws can drift by a few ulps from unit mass.
    let total: f64 = mass.iter().sum();
    mass.iter_mut().for_each(|m| *m /= total);
    JointTable::new(
        vec![(AXIS_U, us), (AXIS_Y, ys), (AXIS_X, xs), (AXIS_Z, zs)],
        mass,
    )
}

/// Candidate rate tuple together with the correlation budget, all in one unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRates")]
pub struct RateQuery {
    pub r_i: f64,
    pub r_c: f64,
    pub r_g: f64,
    pub r_j: f64,
    pub r_l: f64,
    pub gamma: f64,
    #[serde(rename = "unit")]
    pub base: Base,
}

#[derive(Deserialize)]
struct RawRates {
    r_i: f64,
    r_c: f64,
    r_g: f64,
    r_j: f64,
    r_l: f64,
    gamma: f64,
    #[serde(default = "default_unit")]
    unit: Base,
}

fn default_unit() -> Base {
    Base::Bits
}

impl TryFrom<RawRates> for RateQuery {
    type Error = Error;

    fn try_from(r: RawRates) -> Result<Self> {
        Self::new([r.r_i, r.r_c, r.r_g, r.r_j, r.r_l], r.gamma, r.unit)
    }
}

impl RateQuery {
    /// Rates in the order `(R_I, R_C, R_G, R_J, R_L)`.
    pub fn new(rates: [f64; 5], gamma: f64, base: Base) -> Result<Self> {
        for v in rates.iter().chain(std::iter::once(&gamma)) {
            if !(v.is_finite() && *v >= 0.0) {
                return Err(Error::Domain {
                    value: *v,
                    domain: "[0, inf)",
                });
            }
        }
        let [r_i, r_c, r_g, r_j, r_l] = rates;
        Ok(Self {
            r_i,
            r_c,
            r_g,
            r_j,
            r_l,
            gamma,
            base,
        })
    }
}

/// `I(Z;U)`, `I(Y;U)`, `I(X;U)` for one auxiliary choice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionBounds {
    pub izu: InfoValue,
    pub iyu: InfoValue,
    pub ixu: InfoValue,
}

impl RegionBounds {
    pub fn new(izu: InfoValue, iyu: InfoValue, ixu: InfoValue) -> Result<Self> {
        let base = izu.base();
        for v in [iyu, ixu] {
            if v.base() != base {
                return Err(Error::BaseMismatch {
                    expected: base,
                    found: v.base(),
                });
            }
        }
        Ok(Self { izu, iyu, ixu })
    }

    /// Plain amounts, for closed-form callers that already fix the unit.
    pub fn from_amounts(izu: f64, iyu: f64, ixu: f64, base: Base) -> Self {
        Self {
            izu: InfoValue::new(izu, base),
            iyu: InfoValue::new(iyu, base),
            ixu: InfoValue::new(ixu, base),
        }
    }

    pub fn base(&self) -> Base {
        self.izu.base()
    }

    /// `iyu >= ixu >= izu >= 0` up to `tol`.
    pub fn is_ordered(&self, tol: f64) -> bool {
        let (z, y, x) = (self.izu.amount(), self.iyu.amount(), self.ixu.amount());
        z >= -tol && x >= z - tol && y >= x - tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::{conditional_entropy, hb, mutual_information, star_raw};

    fn bits(j: &JointTable, a: &str, b: &str) -> f64 {
        mutual_information(j, a, b, Base::Bits).unwrap().amount()
    }

    #[test]
    fn binary_lift_shapes() {
        let d = binary_to_discrete(BinaryBis::new(0.0, 0.0).unwrap());
        assert_eq!(d.enrollment(), &Channel::identity(2));
        assert_eq!(d.identification(), &Channel::identity(2));

        let d = binary_to_discrete(BinaryBis::new(0.5, 0.5).unwrap());
        for ch in [d.enrollment(), d.identification()] {
            assert_eq!(ch.rows()[0], ch.rows()[1]);
        }

        let d = binary_to_discrete(BinaryBis::new(0.03, 0.1).unwrap());
        assert_eq!(d.enrollment().rows()[0], vec![0.97, 0.03]);
        assert_eq!(d.identification().rows()[1], vec![0.1, 0.9]);
        assert_eq!(d.px(), &ProbVector::uniform(2));
    }

    #[test]
    fn rejects_bad_binary_and_gaussian() {
        assert!(BinaryBis::new(0.6, 0.1).is_err());
        assert!(BinaryBis::new(0.1, -0.1).is_err());
        assert!(GaussianBis::new(1.0, 0.2).is_err());
        assert!(GaussianBis::new(0.3, -1.2).is_err());
    }

    #[test]
    fn degenerate_auxiliaries() {
        let d = binary_to_discrete(BinaryBis::new(0.03, 0.1).unwrap());
        let j = induced_joint(&d, &TestChannel::constant(2, 4)).unwrap();
        assert_eq!(bits(&j, AXIS_Y, AXIS_U), 0.0);

        let j = induced_joint(&d, &TestChannel::identity(2, 2)).unwrap();
        let hu = j.entropy_of(&[AXIS_U], Base::Bits).unwrap().amount();
        let hy = j.entropy_of(&[AXIS_Y], Base::Bits).unwrap().amount();
        assert!((hu - hy).abs() < 1e-15);
    }

    #[test]
    fn bsc_auxiliary_matches_closed_form() {
        let d = binary_to_discrete(BinaryBis::new(0.03, 0.1).unwrap());
        let j = induced_joint(&d, &TestChannel::bsc(0.25).unwrap()).unwrap();
        // 1 - H_b(0.25 * 0.03 * 0.1), 40-digit reference
        let want = 0.104_531_358_857_977_82;
        assert!((bits(&j, AXIS_Z, AXIS_U) - want).abs() < 1e-12);
        let hxu = conditional_entropy(&j, AXIS_X, &[AXIS_U], Base::Bits)
            .unwrap()
            .amount();
        assert!((hxu - hb(star_raw(0.25, 0.03))).abs() < 1e-10);
    }

    #[test]
    fn incompatible_auxiliary() {
        let d = binary_to_discrete(BinaryBis::new(0.03, 0.1).unwrap());
        assert!(induced_joint(&d, &TestChannel::constant(3, 2)).is_err());
        assert!(induced_joint(&d, &TestChannel::constant(2, 5)).is_err());
    }

    #[test]
    fn converted_gaussian_forms() {
        let c = converted_gaussian(GaussianBis::new(0.0, 0.6).unwrap());
        assert_eq!(c.x_given_y.coef, 0.0);
        assert_eq!(c.x_given_y.noise_var, 1.0);

        let r: f64 = 0.7;
        let c = converted_gaussian(GaussianBis::new(r, r).unwrap());
        let zy = c.z_given_y();
        assert!((zy.coef - r * r).abs() < 1e-15);
        assert!((zy.noise_var - (1.0 - r.powi(4))).abs() < 1e-15);

        for (a, b) in [(0.9, 0.8), (-0.3, 0.99), (0.5, 0.0)] {
            let c = converted_gaussian(GaussianBis::new(a, b).unwrap());
            assert!((c.x_var() - 1.0).abs() < 1e-15);
            assert!((c.z_given_x.output_var(1.0) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn model_json_forms() {
        let m: Model = serde_json::from_str(r#"{"kind":"binary","p_e":0.03,"p_d":0.1}"#).unwrap();
        assert_eq!(m, Model::Binary(BinaryBis::new(0.03, 0.1).unwrap()));

        let m: Model = serde_json::from_str(
            r#"{"kind":"discrete","px":[0.5,0.5],
                "enrollment":[[0.9,0.1],[0.2,0.8]],
                "identification":[[1.0,0.0,0.0],[0.0,0.5,0.5]]}"#,
        )
        .unwrap();
        assert_eq!(m.discrete().unwrap().z_size(), 3);

        let m: Model =
            serde_json::from_str(r#"{"kind":"gaussian","rho1":0.9,"rho2":0.8}"#).unwrap();
        assert!(m.discrete().is_none());

        assert!(
            serde_json::from_str::<Model>(r#"{"kind":"gaussian","rho1":1.5,"rho2":0.8}"#).is_err()
        );
        assert!(serde_json::from_str::<Model>(
            r#"{"kind":"discrete","px":[0.5,0.5],"enrollment":[[0.9,0.1]],"identification":[[1.0],[1.0]]}"#
        )
        .is_err());
    }

    #[test]
    fn rate_query_json() {
        let q: RateQuery =
            serde_json::from_str(r#"{"r_i":0,"r_c":0.1,"r_g":0.1,"r_j":1,"r_l":1,"gamma":0.2}"#)
                .unwrap();
        assert_eq!(q.base, Base::Bits);
        assert!(serde_json::from_str::<RateQuery>(
            r#"{"r_i":-1,"r_c":0,"r_g":0,"r_j":0,"r_l":0,"gamma":0}"#
        )
        .is_err());
    }
}

mod common;

use bis_keys::info::{
    binary_entropy, conditional_entropy, inv_binary_entropy, mutual_information,
    mutual_information_sets, star,
};
use bis_keys::models::{induced_joint, RateQuery, AXIS_U, AXIS_X, AXIS_Y, AXIS_Z};
use bis_keys::region::{check_rates, max_rg, theorem1_bounds};
use bis_keys::{Base, Error, JointTable, RegionBounds};
use proptest::prelude::*;
use rand::Rng;

fn prob() -> impl Strategy<Value = f64> {
    0.0..=1.0f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn star_associative_and_commutative(a in prob(), b in prob(), c in prob()) {
        let ab_c = star(star(a, b).unwrap(), c).unwrap();
        let a_bc = star(a, star(b, c).unwrap()).unwrap();
        prop_assert!((ab_c - a_bc).abs() < 1e-12);
        prop_assert!((star(a, b).unwrap() - star(b, a).unwrap()).abs() < 1e-15);
        prop_assert!((star(a, 0.0).unwrap() - a).abs() < 1e-15);
        prop_assert!((star(a, 0.5).unwrap() - 0.5).abs() < 1e-15);
    }
}

proptest! {
    #[test]
    fn binary_entropy_inverse(p in 0.0..=0.5f64) {
        let h = binary_entropy(p, Base::Bits).unwrap().bits();
        let back = inv_binary_entropy(h).unwrap();
        prop_assert!((binary_entropy(back, Base::Bits).unwrap().bits() - h).abs() < 1e-10);
        prop_assert!((h - common::h2(p)).abs() < 1e-14);
    }

    #[test]
    fn mutual_information_symmetry_and_chain(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (a, b, c) = (rng.gen_range(1..5), rng.gen_range(1..5), rng.gen_range(1..5));
        let t = JointTable::new(
            vec![("A", a), ("B", b), ("C", c)],
            common::simplex(&mut rng, a * b * c),
        ).unwrap();
        let iab = mutual_information(&t, "A", "B", Base::Nats).unwrap().nats();
        let iba = mutual_information(&t, "B", "A", Base::Nats).unwrap().nats();
        prop_assert!((iab - iba).abs() < 1e-12);
        prop_assert!(iab >= 0.0);

        // I(A; B,C) = I(A;B) + I(A;C|B)
        let i_a_bc = mutual_information_sets(&t, &["A"], &["B", "C"], Base::Nats).unwrap().nats();
        let h_a_b = conditional_entropy(&t, "A", &["B"], Base::Nats).unwrap().nats();
        let h_a_bc = conditional_entropy(&t, "A", &["B", "C"], Base::Nats).unwrap().nats();
        prop_assert!((i_a_bc - (iab + h_a_b - h_a_bc)).abs() < 1e-10);

        let bits = mutual_information(&t, "A", "B", Base::Bits).unwrap().bits();
        prop_assert!((bits * std::f64::consts::LN_2 - iab).abs() < 1e-12);
    }

    #[test]
    fn induced_joint_is_markov(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let bis = common::discrete_model(&mut rng, 4);
        let u = rng.gen_range(1..=bis.y_size() + 2);
        let test = common::test_channel(&mut rng, bis.y_size(), u);
        let j = induced_joint(&bis, &test).unwrap();

        let x = j.marginal(&[AXIS_X]).unwrap();
        for (k, &p) in x.mass().iter().enumerate() {
            prop_assert!((p - bis.px().as_slice()[k]).abs() < 1e-12);
        }
        // U depends on (X, Z) only through Y; Z on (U, Y) only through X.
        let i_u_all = mutual_information_sets(&j, &[AXIS_U], &[AXIS_Y, AXIS_X, AXIS_Z], Base::Bits)
            .unwrap().bits();
        let i_u_y = mutual_information(&j, AXIS_U, AXIS_Y, Base::Bits).unwrap().bits();
        prop_assert!((i_u_all - i_u_y).abs() < 1e-10);
        let i_z_all = mutual_information_sets(&j, &[AXIS_Z], &[AXIS_U, AXIS_Y, AXIS_X], Base::Bits)
            .unwrap().bits();
        let i_z_x = mutual_information(&j, AXIS_Z, AXIS_X, Base::Bits).unwrap().bits();
        prop_assert!((i_z_all - i_z_x).abs() < 1e-10);
    }

    #[test]
    fn more_storage_and_leakage_never_hurt(seed in any::<u64>(), extra in 0.0..1.0f64) {
        let mut rng = common::rng(seed);
        let bis = common::discrete_model(&mut rng, 3);
        let test = common::test_channel(&mut rng, bis.y_size(), bis.y_size());
        let b = theorem1_bounds(&bis, &test, Base::Bits).unwrap();
        let r: [f64; 5] = std::array::from_fn(|_| rng.gen_range(0.0..0.8));
        let q = RateQuery::new(r, rng.gen_range(0.0..0.5), Base::Bits).unwrap();
        let looser = RateQuery { r_j: q.r_j + extra, r_l: q.r_l + extra, ..q };
        if check_rates(&q, &b).unwrap().satisfied() {
            prop_assert!(check_rates(&looser, &b).unwrap().satisfied());
        }
    }

    #[test]
    fn max_rg_grows_with_budget(izu in 0.0..2.0f64, r_i in 0.0..1.0f64, r_c in 0.0..1.0f64,
                                g1 in 0.0..1.0f64, g2 in 0.0..1.0f64) {
        let b = RegionBounds::from_amounts(izu, izu, izu, Base::Bits);
        let (lo, hi) = if g1 <= g2 { (g1, g2) } else { (g2, g1) };
        match (max_rg(&b, r_i, r_c, lo), max_rg(&b, r_i, r_c, hi)) {
            (Some(a), Some(c)) => prop_assert!(c >= a),
            (None, None) => prop_assert!(r_i + r_c > izu),
            other => prop_assert!(false, "feasibility changed with budget: {other:?}"),
        }
    }
}

/// Largest `r_g` on a uniform grid passing the full inequality check.
fn grid_rg(b: &RegionBounds, r_i: f64, r_c: f64, gamma: f64, step: f64) -> Option<f64> {
    let ok = |r_g: f64| {
        let q = RateQuery::new([r_i, r_c, r_g, 50.0, 50.0], gamma, b.base()).unwrap();
        check_rates(&q, b).unwrap().satisfied()
    };
    if !ok(0.0) {
        return None;
    }
    let mut k = 0usize;
    while ok((k + 1) as f64 * step) {
        k += 1;
    }
    Some(k as f64 * step)
}

#[test]
fn max_rg_matches_grid_oracle() {
    let mut rng = common::rng(200);
    let step = 1e-4;
    for _ in 0..200 {
        let bis = common::discrete_model(&mut rng, 3);
        let u = rng.gen_range(1..=bis.y_size() + 2);
        let test = common::test_channel(&mut rng, bis.y_size(), u);
        let b = theorem1_bounds(&bis, &test, Base::Bits).unwrap();
        let izu = b.izu.bits();
        let r_i = rng.gen_range(0.0..=izu.max(1e-3));
        let r_c = rng.gen_range(0.0..=izu.max(1e-3));
        let gamma = rng.gen_range(0.0..0.5);
        let fast = max_rg(&b, r_i, r_c, gamma);
        let slow = grid_rg(&b, r_i, r_c, gamma, step);
        match (fast, slow) {
            (Some(f), Some(s)) => assert!((f - s).abs() <= step + 1e-9, "{f} vs {s}"),
            (None, None) => {}
            other => panic!("disagreement {other:?} for izu={izu} r_i={r_i} r_c={r_c}"),
        }
    }
}

#[test]
fn units_must_match() {
    let b = RegionBounds::from_amounts(0.3, 0.5, 0.4, Base::Nats);
    let q = RateQuery::new([0.0; 5], 0.0, Base::Bits).unwrap();
    assert!(matches!(
        check_rates(&q, &b),
        Err(Error::BaseMismatch { .. })
    ));
}

#[test]
fn nats_and_bits_agree() {
    let mut rng = common::rng(3);
    let bis = common::discrete_model(&mut rng, 4);
    let test = common::test_channel(&mut rng, bis.y_size(), 3);
    let bits = theorem1_bounds(&bis, &test, Base::Bits).unwrap();
    let nats = theorem1_bounds(&bis, &test, Base::Nats).unwrap();
    assert!((bits.izu.nats() - nats.izu.nats()).abs() < 1e-12);
    assert!((bits.iyu.bits() - nats.iyu.bits()).abs() < 1e-12);
}

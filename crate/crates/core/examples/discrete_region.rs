//! Region bounds for a ternary model, rate checks with per-inequality
//! margins, the largest generated-key rate, and the two corollary forms.
//!
//! cargo run --example discrete_region

use bis_keys::models::{Channel, DiscreteBis, RateQuery, TestChannel};
use bis_keys::region::{check_rates, corollary_region, max_rg, theorem1_bounds, Corollary};
use bis_keys::{Base, ProbVector};

fn main() -> bis_keys::Result<()> {
    let noisy = |e: f64| {
        Channel::new(vec![
            vec![1.0 - e, e / 2.0, e / 2.0],
            vec![e / 2.0, 1.0 - e, e / 2.0],
            vec![e / 2.0, e / 2.0, 1.0 - e],
        ])
    };
    let bis = DiscreteBis::new(ProbVector::uniform(3), noisy(0.05)?, noisy(0.2)?)?;
    let test = TestChannel::from_rows(vec![
        vec![0.8, 0.1, 0.1],
        vec![0.1, 0.8, 0.1],
        vec![0.1, 0.1, 0.8],
    ])?;
    let b = theorem1_bounds(&bis, &test, Base::Bits)?;
    println!(
        "I(Z;U) = {:.4}  I(Y;U) = {:.4}  I(X;U) = {:.4} bits",
        b.izu.bits(),
        b.iyu.bits(),
        b.ixu.bits()
    );

    let q = RateQuery::new([0.1, 0.15, 0.1, 0.9, 0.6], 0.05, Base::Bits)?;
    let check = check_rates(&q, &b)?;
    println!("query {q:?}");
    println!(
        "margins {:?} -> inside: {}",
        check.margins(),
        check.satisfied()
    );

    for gamma in [0.0, 0.05, 0.1, 0.2] {
        println!(
            "max R_G at Gamma = {gamma}: {:?}",
            max_rg(&b, 0.1, 0.15, gamma)
        );
    }

    let no_generated = RateQuery::new([0.1, 0.15, 0.0, 0.9, 0.6], 0.0, Base::Bits)?;
    println!(
        "first corollary: {}",
        corollary_region(&no_generated, &b, Corollary::Cor1)?
    );
    let single_user = RateQuery::new([0.0, 0.15, 0.1, 0.9, 0.6], 0.0, Base::Bits)?;
    println!(
        "second corollary: {}",
        corollary_region(&single_user, &b, Corollary::Cor2)?
    );
    Ok(())
}

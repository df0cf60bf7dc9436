//! Searching the auxiliary simplex for a channel that certifies a rate tuple.
//!
//! cargo run --example membership_search

use bis_keys::models::{BinaryBis, Model, RateQuery};
use bis_keys::region::{search_test_channel, SearchConfig, SearchOutcome};
use bis_keys::Base;

fn main() -> bis_keys::Result<()> {
    let bis = Model::Binary(BinaryBis::new(0.03, 0.1)?)
        .discrete()
        .expect("binary model is finite");
    let cfg = SearchConfig {
        restarts: 16,
        steps: 400,
        seed: 7,
        ..SearchConfig::default()
    };
    let queries = [
        ("two users, small keys", [0.05, 0.1, 0.05, 0.6, 0.5], 0.05),
        ("near the boundary", [0.0, 0.2, 0.15, 0.6, 0.5], 0.1),
        (
            "identification rate above log|Z|",
            [1.1, 0.0, 0.0, 3.0, 3.0],
            0.0,
        ),
    ];
    for (name, rates, gamma) in queries {
        let q = RateQuery::new(rates, gamma, Base::Bits)?;
        match search_test_channel(&bis, &q, &cfg)? {
            SearchOutcome::Witness {
                restart,
                step,
                test_channel,
                check,
                ..
            } => {
                println!("{name}: witness at restart {restart}, step {step}");
                println!("  P(U|Y) = {:?}", test_channel.table().rows());
                println!("  margins {:?}", check.margins());
            }
            SearchOutcome::BudgetExhausted {
                best_min_margin, ..
            } => {
                println!("{name}: no witness found (best margin {best_min_margin:.4})");
            }
        }
    }
    Ok(())
}

//! Entropy toolkit: tables, marginals, mutual information and the binary
//! helpers behind the closed-form regions.
//!
//! cargo run --example info_measures

use bis_keys::info::{
    binary_entropy, conditional_entropy, inv_binary_entropy, mutual_information, star,
};
use bis_keys::models::{binary_to_discrete, induced_joint, BinaryBis, TestChannel};
use bis_keys::{Base, JointTable, ProbVector};

fn main() -> bis_keys::Result<()> {
    let p = ProbVector::new(vec![0.5, 0.25, 0.125, 0.125])?;
    println!("H(P) = {} bits", p.entropy(Base::Bits).bits());

    // A doubly symmetric binary pair with crossover 0.1.
    let pair = JointTable::new(vec![("A", 2), ("B", 2)], vec![0.45, 0.05, 0.05, 0.45])?;
    let i = mutual_information(&pair, "A", "B", Base::Bits)?;
    println!("I(A;B) = {:.6} bits = {:.6} nats", i.bits(), i.nats());
    println!(
        "1 - H_b(0.1) = {:.6}",
        1.0 - binary_entropy(0.1, Base::Bits)?.bits()
    );

    let crossover = star(star(0.1, 0.03)?, 0.1)?;
    println!("0.1 * 0.03 * 0.1 = {crossover}");
    let h = binary_entropy(crossover, Base::Bits)?.bits();
    println!("H_b^-1(H_b(.)) = {}", inv_binary_entropy(h)?);

    // The joint law of (U, Y, X, Z) for the binary model and a BSC auxiliary.
    let bis = binary_to_discrete(BinaryBis::new(0.03, 0.1)?);
    let joint = induced_joint(&bis, &TestChannel::bsc(0.1)?)?;
    for (a, b) in [("U", "Y"), ("U", "X"), ("U", "Z")] {
        let v = mutual_information(&joint, a, b, Base::Bits)?;
        println!("I({a};{b}) = {:.6} bits", v.bits());
    }
    let h_z_u = conditional_entropy(&joint, "Z", &["U"], Base::Bits)?;
    println!("H(Z|U) = {:.6} bits", h_z_u.bits());
    Ok(())
}

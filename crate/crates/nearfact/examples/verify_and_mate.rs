//! Verify a near-factorization and recover T from S alone.
//!
//! Run with: cargo run --example verify_and_mate

use nearfact::group::{Group, Subset};
use nearfact::mate::mate;
use nearfact::ring::check_nf;

fn main() -> nearfact::Result<()> {
    // In Z15, S = {1,4,11,14} and T = {0,2,6,7,8,9,13} satisfy
    // S·T = 2(G − e) in the group ring: every non-identity element is
    // covered exactly twice, the identity never.
    let g = Group::parse("Z15")?;
    let s = Subset::parse(&g, "1,4,11,14")?;
    let t = Subset::parse(&g, "0,2,6,7,8,9,13")?;

    match check_nf(&s, &t)? {
        Some(lambda) => println!("S·T = {lambda}·(G − e): near-factorization with λ = {lambda}"),
        None => println!("not a near-factorization"),
    }

    // The mate of S is unique when it exists: solve a linear system over a
    // prime field (with an exact rational fallback) instead of searching.
    let outcome = mate(&s)?;
    let nf = outcome.mate.expect("S has a mate");
    println!(
        "mate(S) = {}  (λ = {}, prime used: {})",
        nf.t().render(),
        nf.lambda(),
        outcome.prime
    );
    assert_eq!(nf.t(), &t);

    // A subset without a mate: {0,1} in Z4 (the system is singular).
    let z4 = Group::parse("Z4")?;
    let no = mate(&Subset::parse(&z4, "0,1")?)?;
    println!("mate({{0,1}} in Z4) exists: {}", no.mate.is_some());
    Ok(())
}

//! Exhaustive search with canonical-form pruning, and nonexistence
//! certification.
//!
//! Run with: cargo run --example exhaustive_search

use nearfact::group::Group;
use nearfact::search::{certify_nonexistence, search, SearchConfig};

fn main() -> nearfact::Result<()> {
    // Find all NF(4,7) of Z15 with λ = 2, up to automorphism and
    // translation.
    let g = Group::parse("Z15")?;
    let mut config = SearchConfig::new(4);
    config.lambda = Some(2);
    let outcome = search(&g, &config)?;
    println!(
        "Z15, |S| = 4, λ = 2: {} class(es), {} candidates, exhausted = {}",
        outcome.found.len(),
        outcome.candidates,
        outcome.exhausted
    );
    for nf in &outcome.found {
        println!("  S = {}  T = {}", nf.s().render(), nf.t().render());
    }

    // Symmetric near-factorizations only (no pruning; translation does
    // not preserve symmetry).
    let mut config = SearchConfig::new(4);
    config.lambda = Some(2);
    config.symmetric_only = true;
    let outcome = search(&g, &config)?;
    println!("symmetric-only: {} class(es)", outcome.found.len());

    // Certified nonexistence: Z11 has no NF(4,5) with λ = 2 although the
    // parameters pass every filter.
    let z11 = Group::parse("Z11")?;
    let none = certify_nonexistence(&z11, 4, 5, 2, false, 0)?;
    println!("Z11 (4,5,2) nonexistence certified: {none}");
    Ok(())
}

//! Difference sets and partial difference sets as sources of
//! near-factorizations, and the converses on the boundary cases
//! |G| = s + t and |G| = s + t + 1.
//!
//! Run with: cargo run --example difference_sets

use nearfact::constructions::{ds_to_nf, nf_to_ds, nf_to_pds, pds_to_nf, SeedDesign};
use nearfact::group::{Group, Subset};

fn main() -> nearfact::Result<()> {
    // {1,3,4,5,9} is an (11,5,2) difference set in Z11; (D, G ∖ D^(-1))
    // is then a near-factorization with λ = k − λ_DS = 3.
    let z11 = Group::parse("Z11")?;
    let d = SeedDesign::ds(Subset::parse(&z11, "1,3,4,5,9")?)?;
    println!("design: {}", d.params_string());
    let nf = ds_to_nf(&d)?;
    println!("NF: S = {}, T = {}, λ = {}", nf.s().render(), nf.t().render(), nf.lambda());

    // Converse: any near-factorization with |G| = s + t yields a
    // difference set.
    let back = nf_to_ds(&nf)?;
    assert_eq!(back.set(), d.set());

    // {1,3,4,9,10,12} is the Paley (13,6,2,3) partial difference set in
    // Z13; (D, G ∖ (D^(-1) ∪ {e})) is a symmetric NF(6,6) with λ = 3.
    let z13 = Group::parse("Z13")?;
    let p = SeedDesign::pds(Subset::parse(&z13, "1,3,4,9,10,12")?)?;
    println!("design: {}", p.params_string());
    let nf = pds_to_nf(&p)?;
    println!(
        "NF: S = {}, T = {}, λ = {}, symmetric = {}",
        nf.s().render(),
        nf.t().render(),
        nf.lambda(),
        nf.is_symmetric()
    );

    // Converse: |G| = s + t + 1 forces a translate of S to be a PDS.
    let (back, shift) = nf_to_pds(&nf)?;
    println!("recovered {} after translating S by {shift}", back.params_string());
    Ok(())
}

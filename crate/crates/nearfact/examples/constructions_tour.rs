//! A tour of the implemented construction families.
//!
//! Run with: cargo run --example constructions_tour

use nearfact::constructions::{
    construct_any, debruijn_nf, ds_to_nf, iterated_halfset, paley_ds, paley_pds, pds_to_nf,
    product_halfset, singer_ds, symmetrize_by_translation, trivial_nf, twin_prime_ds,
};
use nearfact::group::Group;
use nearfact::ring::NearFactorization;

fn show(label: &str, nf: &NearFactorization) {
    let (n, s, t, l) = nf.parameters();
    println!(
        "{label:<34} {} NF({s},{t}) λ={l}{} n={n}",
        nf.group(),
        if nf.is_symmetric() { " symmetric" } else { "" }
    );
}

fn main() -> nearfact::Result<()> {
    show("trivial", &trivial_nf(&Group::parse("Z7")?)?);
    show("de Bruijn (n=15, s=7)", &debruijn_nf(15, 7)?);

    // Quadratic residues, twin primes and Singer sets give Paley-type
    // difference sets, hence half-set near-factorizations after dualizing.
    show("quadratic residues q=11", &ds_to_nf(&paley_ds(11)?)?);
    show("twin primes (3,5)", &ds_to_nf(&twin_prime_ds(3)?)?);
    show("Singer d=4 (Z31)", &ds_to_nf(&singer_ds(4)?)?);
    show("Paley PDS q=13", &pds_to_nf(&paley_pds(13)?)?);
    show("Paley PDS q=25 (field square)", &pds_to_nf(&paley_pds(25)?)?);

    // The half-set product: Z3 seed × Z5 seed gives the symmetric
    // NF(4,7) of Z15 with λ = 2.
    let a = symmetrize_by_translation(&debruijn_nf(3, 2)?).unwrap();
    let b = symmetrize_by_translation(&debruijn_nf(5, 2)?).unwrap();
    let prod = product_halfset(&a, &b)?;
    show("half-set product Z3 × Z5", &prod);
    println!(
        "    S = {}, T = {}",
        prod.s().render(),
        prod.t().render()
    );

    // Iterated over any odd orders: s = 2^k, λ = 2^(k-1).
    show("iterated (3,3,3)", &iterated_halfset(&[3, 3, 3])?);

    // The one-call resolver picks whatever construction applies.
    for (spec, s, t, l) in [("Z21", 8, 10, 4), ("Z35", 8, 17, 4), ("Z13", 6, 6, 3)] {
        let g = Group::parse(spec)?;
        let (nf, method) = construct_any(&g, s, t, l).expect("constructible");
        show(&format!("construct_any {spec} ({s},{t},{l})"), &nf);
        println!("    via {method}");
    }
    Ok(())
}

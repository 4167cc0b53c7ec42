//! Necessary conditions: run the feasibility filters on parameter
//! quadruples and enumerate all surviving parameters for a group.
//!
//! Run with: cargo run --example feasibility_filters

use nearfact::filters::{check_all, enumerate_feasible};
use nearfact::group::Group;

fn main() -> nearfact::Result<()> {
    // (7,8,4) in Z15 meets the bound λ ≤ ⌊(s+t+1)/4⌋ with equality.
    let g = Group::parse("Z15")?;
    let report = check_all(&g, 7, 8, 4);
    println!("Z15 (7,8,4):");
    for (name, verdict) in &report.rules {
        println!("  {name:<16} {verdict}");
    }
    println!("  feasible: {}\n", report.feasible);

    // (2,4,1) in Z3 × Z3 is killed by the congruence conditions modulo 3.
    let g = Group::parse("Z3xZ3")?;
    let report = check_all(&g, 2, 4, 1);
    println!(
        "Z3xZ3 (2,4,1): feasible = {}, first failing rule = {:?}\n",
        report.feasible, report.first_failure
    );

    // All parameters surviving every filter for Z15 with λ ≥ 2.
    let g = Group::parse("Z15")?;
    println!("feasible λ ≥ 2 parameters for Z15:");
    for (s, t, lambda) in enumerate_feasible(&g, 2) {
        println!("  ({s},{t}) λ={lambda}");
    }
    Ok(())
}

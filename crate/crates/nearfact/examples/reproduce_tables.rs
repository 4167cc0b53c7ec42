//! Reproduce the parameter tables for small orders.
//!
//! Run with: cargo run --example reproduce_tables
//! (The full ranges are available through the CLI: `nf tables --which 1`.)

use nearfact::tables::{known_table, open_table, render_text, TableOptions};

fn main() -> nearfact::Result<()> {
    let opts = TableOptions::default();

    // Parameters with λ ≥ 2 admitting a constructed near-factorization,
    // n ≤ 21, with a symmetric-existence flag per row.
    let rows = known_table(21, &opts)?;
    println!("known parameters, n ≤ 21:");
    print!("{}", render_text(&rows));

    // Parameters passing every filter that no construction settles:
    // existence must be decided by exhaustive search.
    let rows = open_table(21)?;
    println!("\nopen parameters, n ≤ 21:");
    print!("{}", render_text(&rows));
    Ok(())
}

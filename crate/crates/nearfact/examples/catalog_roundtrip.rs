//! The catalog: list the built-in records, save/reload a `.nfcat.json`
//! file, and import a plain-text design list.
//!
//! Run with: cargo run --example catalog_roundtrip

use nearfact::catalog::{builtin, import_ds_list, load_file, save_file};
use nearfact::group::Group;

fn main() -> nearfact::Result<()> {
    let entries = builtin();
    println!("built-in catalog: {} records", entries.len());
    for e in entries.iter().take(5) {
        println!("  {}", e.summary());
    }
    println!("  ...");

    // Round-trip through a catalog file; every record is re-verified on
    // load, and bad records are reported rather than accepted.
    let path = std::env::temp_dir().join("nearfact_builtin.nfcat.json");
    save_file(entries, &path)?;
    let outcome = load_file(&path)?;
    println!(
        "reloaded {} records from {} ({} rejected)",
        outcome.entries.len(),
        path.display(),
        outcome.errors.len()
    );
    std::fs::remove_file(&path)?;

    // Design lists: one design per line, elements separated by `;`,
    // coordinates separated by `,`.
    let g = Group::parse("Z11")?;
    let (designs, errors) = import_ds_list(&g, "1;3;4;5;9\n0;1;2;4;7\n1;2;3\n");
    for d in &designs {
        println!("imported {}", d.params_string());
    }
    for e in &errors {
        println!("rejected line: {e}");
    }
    Ok(())
}

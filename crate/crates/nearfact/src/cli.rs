//! Command-line front end.
//!
//! Exit codes: 0 success, 1 valid run with a negative mathematical answer
//! (not a near-factorization, no mate, nothing found, infeasible), 2 usage
//! error, 3 internal error.  The default worker count is taken from the
//! `NF_WORKERS` environment variable when set.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::catalog;
use crate::constructions as cons;
use crate::filters;
use crate::group::{Group, Subset};
use crate::mate;
use crate::ring::NearFactorization;
use crate::search::{self, SearchConfig};
use crate::tables;
use crate::Error;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "nf", about = "Near-factorizations of finite abelian groups", disable_help_subcommand = true)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel operations (default: NF_WORKERS or all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Verify that (S, T) is a near-factorization and report λ.
    Verify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
    },
    /// Compute the unique mate T of S, if one exists.
    Mate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        s: String,
    },
    /// Exhaustively search for near-factorizations with |S| = size.
    Search {
        #[arg(long)]
        group: String,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        lambda: Option<u64>,
        /// Only symmetric candidates.
        #[arg(long)]
        symmetric: bool,
        /// Stop after this many candidates.
        #[arg(long)]
        budget: Option<u64>,
        /// Checkpoint file (written per finished partition; resumed if present).
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Build a near-factorization or seed design from a named family.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Run the feasibility filters on a parameter quadruple.
    Filters {
        #[arg(long)]
        group: String,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        lambda: u64,
    },
    /// Reproduce the parameter tables.
    Tables {
        /// 1: known parameters (λ ≥ 2); 2: symmetric parameters over an
        /// order range; 3: open parameters requiring exhaustive search.
        #[arg(long)]
        which: u8,
        #[arg(long, default_value_t = 35)]
        max_order: u64,
        /// Lower order bound (table 2 only).
        #[arg(long, default_value_t = 36)]
        min_order: u64,
        /// Candidate budget per symmetric-existence search (table 1).
        #[arg(long, default_value_t = 2_000_000)]
        sym_budget: u64,
    },
    /// Catalog operations.
    Catalog {
        #[command(subcommand)]
        op: CatalogOp,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// S = {e}, T = G − e.
    Trivial {
        #[arg(long)]
        group: String,
    },
    /// De Bruijn near-factorization of Z_n with λ = 1.
    Debruijn {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        s: u64,
    },
    /// Near-factorization from a difference set.
    Ds {
        #[arg(long)]
        group: String,
        #[arg(long)]
        d: String,
    },
    /// Near-factorization from a partial difference set.
    Pds {
        #[arg(long)]
        group: String,
        #[arg(long)]
        d: String,
    },
    /// Half-set product of two near-factorizations.
    Product {
        #[arg(long)]
        group_a: String,
        #[arg(long)]
        sa: String,
        #[arg(long)]
        ta: String,
        #[arg(long)]
        group_b: String,
        #[arg(long)]
        sb: String,
        #[arg(long)]
        tb: String,
    },
    /// Iterated half-set construction over odd cyclic orders.
    Iterated {
        /// Comma-separated odd orders, e.g. 3,3,3.
        #[arg(long)]
        orders: String,
    },
    /// Quadratic-residue difference set (q prime, q ≡ 3 mod 4).
    PaleyDs {
        #[arg(long)]
        q: u64,
    },
    /// Paley partial difference set (q ≡ 1 mod 4, prime or prime square).
    PaleyPds {
        #[arg(long)]
        q: u64,
    },
    /// Twin-prime difference set in Z_q × Z_{q+2}.
    Twinprime {
        #[arg(long)]
        q: u64,
    },
    /// Singer difference set in Z_{2^(d+1)−1}.
    Singer {
        #[arg(long)]
        d: u32,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogOp {
    /// List the built-in catalog (or a catalog file).
    List {
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Import and verify a file: `.nfcat.json` catalog or `.dslist.txt`
    /// design list (the latter needs --group).
    Import {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        group: Option<String>,
        /// Write the verified records to this `.nfcat.json` file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the built-in catalog.
    Export {
        /// Target `.nfcat.json` path; omitted: print to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Usage(_) | Error::InvalidSubset(_) | Error::MixedGroups => 2,
        Error::Construction(_) | Error::Verification(_) => 1,
        Error::Io(_) | Error::Json(_) => 3,
    }
}

fn nf_json(nf: &NearFactorization) -> serde_json::Value {
    let g = nf.group();
    json!({
        "group": g.spec(),
        "n": g.order(),
        "s": nf.s().elems().iter().map(|&e| g.format_elem(e)).collect::<Vec<_>>(),
        "t": nf.t().elems().iter().map(|&e| g.format_elem(e)).collect::<Vec<_>>(),
        "lambda": nf.lambda(),
        "symmetric": nf.is_symmetric(),
    })
}

fn print_nf(out: &mut dyn Write, format: Format, nf: &NearFactorization, method: &str) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let mut v = nf_json(nf);
            v["method"] = json!(method);
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)
        }
        _ => {
            writeln!(out, "group  = {}", nf.group())?;
            writeln!(out, "S      = {}", nf.s().render())?;
            writeln!(out, "T      = {}", nf.t().render())?;
            writeln!(out, "lambda = {}", nf.lambda())?;
            writeln!(out, "symmetric = {}", if nf.is_symmetric() { "yes" } else { "no" })?;
            if !method.is_empty() {
                writeln!(out, "method = {method}")?;
            }
            Ok(())
        }
    }
}

fn default_workers(cli_workers: Option<usize>) -> usize {
    cli_workers.or_else(|| {
        std::env::var("NF_WORKERS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

/// Run the CLI on the given arguments, writing all output to `out`.
/// Returns the process exit code.
pub fn run<I, A>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<std::ffi::OsString> + Clone,
{
    let mut argv: Vec<std::ffi::OsString> = vec!["nf".into()];
    argv.extend(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{e}");
            // --help / --version are successful runs
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(RunError::Domain(e)) => {
            let _ = writeln!(out, "error: {e}");
            error_code(&e)
        }
        Err(RunError::Io(e)) => {
            let _ = writeln!(out, "i/o error: {e}");
            3
        }
    }
}

enum RunError {
    Domain(Error),
    Io(std::io::Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Domain(e)
    }
}
impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}
impl From<serde_json::Error> for RunError {
    fn from(e: serde_json::Error) -> Self {
        RunError::Domain(Error::Json(e))
    }
}

fn subset(group: &Group, text: &str) -> Result<Subset, Error> {
    Subset::new(group, group.parse_elems(text)?)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, RunError> {
    let format = cli.format;
    let workers = default_workers(cli.workers);
    match &cli.cmd {
        Cmd::Verify { group, s, t } => {
            let g = Group::parse(group)?;
            let s = subset(&g, s)?;
            let t = subset(&g, t)?;
            match crate::ring::check_nf(&s, &t)? {
                Some(lambda) => {
                    let nf = NearFactorization::new(s, t)?;
                    match format {
                        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&nf_json(&nf))?)?,
                        _ => writeln!(out, "lambda = {lambda}")?,
                    }
                    Ok(0)
                }
                None => {
                    match format {
                        Format::Json => writeln!(out, "{}", json!({"near_factorization": false}))?,
                        _ => writeln!(out, "not a near-factorization")?,
                    }
                    Ok(1)
                }
            }
        }
        Cmd::Mate { group, s } => {
            let g = Group::parse(group)?;
            let s = subset(&g, s)?;
            let outcome = mate::mate(&s)?;
            match outcome.mate {
                Some(nf) => {
                    match format {
                        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&nf_json(&nf))?)?,
                        _ => {
                            writeln!(out, "T      = {}", nf.t().render())?;
                            writeln!(out, "lambda = {}", nf.lambda())?;
                        }
                    }
                    Ok(0)
                }
                None => {
                    match format {
                        Format::Json => writeln!(out, "{}", json!({"mate": false}))?,
                        _ => writeln!(out, "no mate")?,
                    }
                    Ok(1)
                }
            }
        }
        Cmd::Search {
            group,
            size,
            lambda,
            symmetric,
            budget,
            checkpoint,
        } => {
            let g = Group::parse(group)?;
            let mut config = SearchConfig::new(*size);
            config.lambda = *lambda;
            config.symmetric_only = *symmetric;
            config.workers = workers;
            config.budget = *budget;
            config.checkpoint = checkpoint.clone();
            let outcome = search::search(&g, &config)?;
            match format {
                Format::Json => {
                    let v = json!({
                        "group": g.spec(),
                        "size": size,
                        "symmetric_only": symmetric,
                        "exhausted": outcome.exhausted,
                        "candidates": outcome.candidates,
                        "found": outcome.found.iter().map(nf_json).collect::<Vec<_>>(),
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
                }
                _ => {
                    for nf in &outcome.found {
                        writeln!(
                            out,
                            "S = {}  T = {}  lambda = {}{}",
                            nf.s().render(),
                            nf.t().render(),
                            nf.lambda(),
                            if nf.is_symmetric() { "  (symmetric)" } else { "" }
                        )?;
                    }
                    writeln!(
                        out,
                        "{}; {} near-factorization(s); {} candidates examined",
                        if outcome.exhausted { "exhausted" } else { "budget reached" },
                        outcome.found.len(),
                        outcome.candidates
                    )?;
                }
            }
            Ok(if outcome.found.is_empty() { 1 } else { 0 })
        }
        Cmd::Construct { family } => {
            let (nf, method) = build_family(family)?;
            print_nf(out, format, &nf, &method)?;
            Ok(0)
        }
        Cmd::Filters { group, s, t, lambda } => {
            let g = Group::parse(group)?;
            let report = filters::check_all(&g, *s, *t, *lambda);
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
                _ => {
                    for (name, verdict) in &report.rules {
                        writeln!(out, "{name:<16} {verdict}")?;
                    }
                    writeln!(out, "feasible: {}", if report.feasible { "yes" } else { "no" })?;
                }
            }
            Ok(if report.feasible { 0 } else { 1 })
        }
        Cmd::Tables {
            which,
            max_order,
            min_order,
            sym_budget,
        } => {
            let opts = tables::TableOptions {
                workers,
                sym_search_budget: *sym_budget,
            };
            let rows = match which {
                1 => tables::known_table(*max_order, &opts)?,
                2 => tables::symmetric_table(*min_order, *max_order, &opts)?,
                3 => tables::open_table(*max_order)?,
                _ => {
                    return Err(Error::Usage("--which must be 1, 2 or 3".into()).into());
                }
            };
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
                Format::Csv => write!(out, "{}", tables::render_csv(&rows))?,
                Format::Text => write!(out, "{}", tables::render_text(&rows))?,
            }
            Ok(0)
        }
        Cmd::Catalog { op } => run_catalog(op, format, out),
    }
}

fn build_family(family: &Family) -> Result<(NearFactorization, String), Error> {
    Ok(match family {
        Family::Trivial { group } => {
            let g = Group::parse(group)?;
            (cons::trivial_nf(&g)?, "trivial".into())
        }
        Family::Debruijn { n, s } => (cons::debruijn_nf(*n, *s)?, "de Bruijn".into()),
        Family::Ds { group, d } => {
            let g = Group::parse(group)?;
            let design = cons::SeedDesign::ds(subset(&g, d)?)?;
            let label = design.params_string();
            (cons::ds_to_nf(&design)?, label)
        }
        Family::Pds { group, d } => {
            let g = Group::parse(group)?;
            let design = cons::SeedDesign::pds(subset(&g, d)?)?;
            let label = design.params_string();
            (cons::pds_to_nf(&design)?, label)
        }
        Family::Product {
            group_a,
            sa,
            ta,
            group_b,
            sb,
            tb,
        } => {
            let ga = Group::parse(group_a)?;
            let gb = Group::parse(group_b)?;
            let a = NearFactorization::new(subset(&ga, sa)?, subset(&ga, ta)?)?;
            let b = NearFactorization::new(subset(&gb, sb)?, subset(&gb, tb)?)?;
            (cons::product_halfset(&a, &b)?, "half-set product".into())
        }
        Family::Iterated { orders } => {
            let parsed: Result<Vec<u64>, Error> = orders
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad order `{p}`")))
                })
                .collect();
            let parsed = parsed?;
            let label = format!("iterated half-set ({orders})");
            (cons::iterated_halfset(&parsed)?, label)
        }
        Family::PaleyDs { q } => {
            let design = cons::paley_ds(*q)?;
            let label = design.params_string();
            (cons::ds_to_nf(&design)?, format!("quadratic residues, {label}"))
        }
        Family::PaleyPds { q } => {
            let design = cons::paley_pds(*q)?;
            let label = design.params_string();
            (cons::pds_to_nf(&design)?, format!("Paley, {label}"))
        }
        Family::Twinprime { q } => {
            let design = cons::twin_prime_ds(*q)?;
            let label = design.params_string();
            (cons::ds_to_nf(&design)?, format!("twin primes, {label}"))
        }
        Family::Singer { d } => {
            let design = cons::singer_ds(*d)?;
            let label = design.params_string();
            (cons::ds_to_nf(&design)?, format!("Singer, {label}"))
        }
    })
}

fn run_catalog(op: &CatalogOp, format: Format, out: &mut dyn Write) -> Result<i32, RunError> {
    match op {
        CatalogOp::List { file } => {
            let owned;
            let entries: &[catalog::Entry] = match file {
                Some(path) => {
                    let outcome = catalog::load_file(path)?;
                    for e in &outcome.errors {
                        writeln!(out, "rejected: {e}")?;
                    }
                    owned = outcome.entries;
                    &owned
                }
                None => catalog::builtin(),
            };
            match format {
                Format::Json => writeln!(out, "{}", catalog::to_json(entries)?)?,
                _ => {
                    for e in entries {
                        writeln!(out, "{}", e.summary())?;
                    }
                    writeln!(out, "{} record(s)", entries.len())?;
                }
            }
            Ok(0)
        }
        CatalogOp::Import { file, group, out: target } => {
            let text = std::fs::read_to_string(file)?;
            let is_ds_list = file
                .extension()
                .is_some_and(|e| e.eq_ignore_ascii_case("txt"));
            let (entries, errors) = if is_ds_list {
                let spec = group.as_deref().ok_or_else(|| {
                    Error::Usage("--group is required for design-list imports".into())
                })?;
                let g = Group::parse(spec)?;
                let (designs, errors) = catalog::import_ds_list(&g, &text);
                let entries = designs
                    .into_iter()
                    .map(|d| catalog::Entry {
                        payload: catalog::Payload::Design(d),
                        provenance: catalog::Provenance {
                            method: "imported design".into(),
                            source: file.display().to_string(),
                            timestamp: None,
                        },
                    })
                    .collect::<Vec<_>>();
                (entries, errors)
            } else {
                let outcome = catalog::load_str(&text)?;
                (outcome.entries, outcome.errors)
            };
            for e in &errors {
                writeln!(out, "rejected: {e}")?;
            }
            writeln!(out, "verified {} record(s), rejected {}", entries.len(), errors.len())?;
            if let Some(path) = target {
                catalog::save_file(&entries, path)?;
                writeln!(out, "wrote {}", path.display())?;
            }
            Ok(if entries.is_empty() { 1 } else { 0 })
        }
        CatalogOp::Export { out: target } => {
            let json = catalog::to_json(catalog::builtin())?;
            match target {
                Some(path) => {
                    std::fs::write(path, json)?;
                    writeln!(out, "wrote {}", path.display())?;
                }
                None => writeln!(out, "{json}")?,
            }
            Ok(0)
        }
    }
}

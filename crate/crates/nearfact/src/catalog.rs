//! Catalog persistence: a JSON file format (`.nfcat.json`) for verified
//! near-factorizations, difference sets, and partial difference sets, a
//! plain-text import format for externally published design lists
//! (`.dslist.txt`), and a built-in catalog of explicit designs and sporadic
//! solutions of small order.
//!
//! Every record is re-verified on load; records that fail verification are
//! reported, not silently accepted.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::{ds_to_nf, pds_to_nf, DesignKind, SeedDesign};
use crate::group::{Group, Subset};
use crate::ring::NearFactorization;
use crate::{Error, Result};

/// Where a record came from and how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub method: String,
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timestamp: Option<String>,
}

/// A verified catalog entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub payload: Payload,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Nf(NearFactorization),
    Design(SeedDesign),
}

impl Entry {
    pub fn group(&self) -> &Group {
        match &self.payload {
            Payload::Nf(nf) => nf.group(),
            Payload::Design(d) => d.group(),
        }
    }

    /// One-line description for listings.
    pub fn summary(&self) -> String {
        match &self.payload {
            Payload::Nf(nf) => {
                let (n, s, t, l) = nf.parameters();
                format!(
                    "{} n={n} NF({s},{t}) λ={l}{} [{}]",
                    nf.group(),
                    if nf.is_symmetric() { " symmetric" } else { "" },
                    self.provenance.method
                )
            }
            Payload::Design(d) => format!(
                "{} {} [{}]",
                d.group(),
                d.params_string(),
                self.provenance.method
            ),
        }
    }

    /// If this entry yields a near-factorization with parameters
    /// `(s, t, λ)` in `group` (directly, via a design conversion, or via
    /// duality), return it with a method label.
    pub fn matching_nf(
        &self,
        group: &Group,
        s: u64,
        t: u64,
        lambda: u64,
    ) -> Option<(NearFactorization, String)> {
        if self.group() != group {
            return None;
        }
        let label = format!("catalog: {}", self.provenance.method);
        let nf = match &self.payload {
            Payload::Nf(nf) => nf.clone(),
            Payload::Design(d) => match d.kind() {
                DesignKind::Ds { .. } => ds_to_nf(d).ok()?,
                DesignKind::Pds { .. } => pds_to_nf(d).ok()?,
            },
        };
        let (_, ns, nt, nl) = nf.parameters();
        if (ns as u64, nt as u64, nl) == (s, t, lambda) {
            return Some((nf, label));
        }
        if (nt as u64, ns as u64, nl) == (s, t, lambda) {
            return Some((nf.dual(), format!("{label} (dual)")));
        }
        None
    }
}

#[derive(Serialize, Deserialize)]
struct RawFile {
    version: u32,
    records: Vec<RawRecord>,
}

#[derive(Serialize, Deserialize)]
struct RawRecord {
    kind: String,
    group: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    s: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    t: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    d: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    lambda: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    symmetric: Option<bool>,
    provenance: Provenance,
}

fn elem_from_value(group: &Group, v: &Value) -> Result<usize> {
    match v {
        Value::Number(x) => {
            let x = x
                .as_u64()
                .ok_or_else(|| Error::Parse(format!("bad element {v}")))?;
            group.elem_from_tuple(&[x])
        }
        Value::Array(coords) => {
            let tuple: Vec<u64> = coords
                .iter()
                .map(|c| {
                    c.as_u64()
                        .ok_or_else(|| Error::Parse(format!("bad coordinate {c}")))
                })
                .collect::<Result<_>>()?;
            group.elem_from_tuple(&tuple)
        }
        _ => Err(Error::Parse(format!("bad element {v}"))),
    }
}

fn elem_to_value(group: &Group, e: usize) -> Value {
    let tuple = group.elem_tuple(e);
    if tuple.len() == 1 {
        Value::from(tuple[0])
    } else {
        Value::Array(tuple.iter().map(|&c| Value::from(c)).collect())
    }
}

fn subset_from_values(group: &Group, vals: &[Value]) -> Result<Subset> {
    let elems = vals
        .iter()
        .map(|v| elem_from_value(group, v))
        .collect::<Result<Vec<_>>>()?;
    Subset::new(group, elems)
}

fn subset_to_values(set: &Subset) -> Vec<Value> {
    set.elems()
        .iter()
        .map(|&e| elem_to_value(set.group(), e))
        .collect()
}

fn record_to_entry(rec: &RawRecord) -> Result<Entry> {
    let group = Group::parse(&rec.group)?;
    let payload = match rec.kind.as_str() {
        "nf" => {
            let s = rec
                .s
                .as_ref()
                .ok_or_else(|| Error::Parse("nf record without s".into()))?;
            let t = rec
                .t
                .as_ref()
                .ok_or_else(|| Error::Parse("nf record without t".into()))?;
            let nf = NearFactorization::new(
                subset_from_values(&group, s)?,
                subset_from_values(&group, t)?,
            )?;
            if let Some(l) = rec.lambda {
                if nf.lambda() != l {
                    return Err(Error::Verification(format!(
                        "record claims λ = {l}, verified λ = {}",
                        nf.lambda()
                    )));
                }
            }
            if let Some(sym) = rec.symmetric {
                if nf.is_symmetric() != sym {
                    return Err(Error::Verification(
                        "record symmetric flag disagrees with the sets".into(),
                    ));
                }
            }
            Payload::Nf(nf)
        }
        "ds" | "pds" => {
            let d = rec
                .d
                .as_ref()
                .ok_or_else(|| Error::Parse(format!("{} record without d", rec.kind)))?;
            let set = subset_from_values(&group, d)?;
            let design = if rec.kind == "ds" {
                SeedDesign::ds(set)?
            } else {
                SeedDesign::pds(set)?
            };
            Payload::Design(design)
        }
        other => return Err(Error::Parse(format!("unknown record kind {other:?}"))),
    };
    Ok(Entry {
        payload,
        provenance: rec.provenance.clone(),
    })
}

fn entry_to_record(entry: &Entry) -> RawRecord {
    let group = entry.group().spec().to_string();
    match &entry.payload {
        Payload::Nf(nf) => RawRecord {
            kind: "nf".into(),
            group,
            s: Some(subset_to_values(nf.s())),
            t: Some(subset_to_values(nf.t())),
            d: None,
            lambda: Some(nf.lambda()),
            symmetric: Some(nf.is_symmetric()),
            provenance: entry.provenance.clone(),
        },
        Payload::Design(d) => RawRecord {
            kind: match d.kind() {
                DesignKind::Ds { .. } => "ds".into(),
                DesignKind::Pds { .. } => "pds".into(),
            },
            group,
            s: None,
            t: None,
            d: Some(subset_to_values(d.set())),
            lambda: None,
            symmetric: Some(d.set().is_symmetric()),
            provenance: entry.provenance.clone(),
        },
    }
}

/// Result of loading a catalog file: verified entries plus messages for
/// every rejected record.
pub struct LoadOutcome {
    pub entries: Vec<Entry>,
    pub errors: Vec<String>,
}

/// Parse and verify a catalog from JSON text.
pub fn load_str(text: &str) -> Result<LoadOutcome> {
    let raw: RawFile = serde_json::from_str(text)?;
    if raw.version != 1 {
        return Err(Error::Parse(format!(
            "unsupported catalog version {}",
            raw.version
        )));
    }
    let mut entries = Vec::new();
    let mut errors = Vec::new();
    for (i, rec) in raw.records.iter().enumerate() {
        match record_to_entry(rec) {
            Ok(e) => entries.push(e),
            Err(e) => errors.push(format!("record {i} ({} in {}): {e}", rec.kind, rec.group)),
        }
    }
    Ok(LoadOutcome { entries, errors })
}

/// Load and verify a `.nfcat.json` file.
pub fn load_file(path: impl AsRef<Path>) -> Result<LoadOutcome> {
    load_str(&std::fs::read_to_string(path)?)
}

/// Serialize entries to catalog JSON.
pub fn to_json(entries: &[Entry]) -> Result<String> {
    let raw = RawFile {
        version: 1,
        records: entries.iter().map(entry_to_record).collect(),
    };
    Ok(serde_json::to_string_pretty(&raw)?)
}

/// Write entries to a `.nfcat.json` file.
pub fn save_file(entries: &[Entry], path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_json(entries)?)?;
    Ok(())
}

/// Import a plain-text design list: one design per line, elements separated
/// by `;`, coordinates within an element separated by `,`.  Blank lines and
/// `#` comments are skipped.  Each line is accepted as a difference set or
/// a partial difference set in `group`; failures are reported per line.
pub fn import_ds_list(group: &Group, text: &str) -> (Vec<SeedDesign>, Vec<String>) {
    let mut designs = Vec::new();
    let mut errors = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed: Result<Vec<usize>> = line
            .split(';')
            .map(|elem| {
                let tuple: Vec<u64> = elem
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::Parse(format!("bad coordinate {c:?}")))
                    })
                    .collect::<Result<_>>()?;
                group.elem_from_tuple(&tuple)
            })
            .collect();
        let outcome = parsed
            .and_then(|elems| Subset::new(group, elems))
            .and_then(|set| {
                SeedDesign::ds(set.clone()).or_else(|_| SeedDesign::pds(set))
            });
        match outcome {
            Ok(d) => designs.push(d),
            Err(e) => errors.push(format!("line {}: {e}", lineno + 1)),
        }
    }
    (designs, errors)
}

/// The built-in catalog: explicit difference sets, partial difference
/// sets, and sporadic computer-search near-factorizations of small order,
/// verified at first use.
pub fn builtin() -> &'static [Entry] {
    use std::sync::OnceLock;
    static BUILTIN: OnceLock<Vec<Entry>> = OnceLock::new();
    BUILTIN.get_or_init(|| {
        let outcome = load_str(include_str!("data/builtin_catalog.json"))
            .expect("built-in catalog must parse");
        assert!(
            outcome.errors.is_empty(),
            "built-in catalog must verify: {:?}",
            outcome.errors
        );
        outcome.entries
    })
}

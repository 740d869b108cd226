//! Text formats for point and half-space lists, run reports, and an
//! optional on-disk cache of facet enumerations.
//!
//! The formats follow the classical vertex/facet enumeration layout:
//!
//! ```text
//! * name
//! V-representation
//! begin
//! 3 3 rational
//! 1 0 0
//! 1 1 0
//! 1 0 1
//! end
//! ```
//!
//! A V-row `1 x₁ … x_d` is a point; an H-row `b a₁ … a_d` is the half-space
//! `b + Σ aᵢxᵢ ≥ 0`, as in the classical tools (so `⟨n, x⟩ ≤ c` is written
//! `c −n₁ … −n_d`).  Lines starting with `*` are comments; the first one,
//! if any, names the object.  Files written by this module are canonical:
//! parsing and re-emitting them reproduces them byte for byte.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Hyperplane, Rational, Vector};
use crate::hull::{facet_enumeration, Facet, FacetList, VPolytope};

/// Environment variable naming a directory for cached facet enumerations.
pub const CACHE_ENV: &str = "PRISMATOID_CACHE";

/// A parsed representation: its name (possibly empty) and its rows, with
/// the leading homogenizing column kept.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RawFile {
    name: String,
    rows: Vec<Vec<Rational>>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_raw(text: &str, tag: &str) -> Result<RawFile> {
    let mut name = String::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut seen_tag = false;
    // Header: comments, the representation tag, then `begin`.
    loop {
        let (no, line) = lines.next().ok_or_else(|| parse_err(0, "missing `begin`"))?;
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('*') {
            if name.is_empty() {
                name = c.trim().to_string();
            }
        } else if line == tag {
            seen_tag = true;
        } else if line == "begin" {
            if !seen_tag {
                return Err(parse_err(no, format!("expected `{tag}` before `begin`")));
            }
            break;
        } else {
            return Err(parse_err(no, format!("unexpected header line `{line}`")));
        }
    }
    let (no, line) = lines.next().ok_or_else(|| parse_err(0, "missing size line"))?;
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 3 || fields[2] != "rational" {
        return Err(parse_err(no, "size line must read `<rows> <columns> rational`"));
    }
    let parse_count = |s: &str| s.parse::<usize>().map_err(|_| parse_err(no, format!("bad count `{s}`")));
    let (nrows, ncols) = (parse_count(fields[0])?, parse_count(fields[1])?);
    if ncols < 2 {
        return Err(parse_err(no, "need at least two columns"));
    }
    let mut rows = Vec::with_capacity(nrows);
    loop {
        let (no, line) = lines.next().ok_or_else(|| parse_err(0, "missing `end`"))?;
        if line == "end" {
            break;
        }
        let row = line
            .split_whitespace()
            .map(|t| parse_rational(t).map_err(|_| parse_err(no, format!("`{t}` is not a rational number"))))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != ncols {
            return Err(parse_err(no, format!("row has {} entries, expected {ncols}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != nrows {
        return Err(parse_err(0, format!("header announces {nrows} rows, found {}", rows.len())));
    }
    Ok(RawFile { name, rows })
}

fn emit_raw(name: &str, tag: &str, ncols: usize, rows: &[Vec<Rational>]) -> String {
    let mut s = String::new();
    if !name.is_empty() {
        s.push_str(&format!("* {name}\n"));
    }
    s.push_str(&format!("{tag}\nbegin\n{} {ncols} rational\n", rows.len()));
    for r in rows {
        let cells: Vec<String> = r.iter().map(format_rational).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s.push_str("end\n");
    s
}

/// Parses a V-file into its name and polytope.
pub fn parse_vfile(text: &str) -> Result<(String, VPolytope)> {
    let raw = parse_raw(text, "V-representation")?;
    if raw.rows.is_empty() {
        return Err(parse_err(0, "no points"));
    }
    let one = Rational::from_integer(1.into());
    let mut points = Vec::with_capacity(raw.rows.len());
    for (k, r) in raw.rows.iter().enumerate() {
        if r[0] != one {
            return Err(Error::Parse { line: 0, message: format!("row {} is not a point (leading entry {})", k + 1, r[0]) });
        }
        points.push(Vector(r[1..].to_vec()));
    }
    Ok((raw.name, VPolytope::new(points)?))
}

/// Canonical V-file text of a polytope.
pub fn emit_vfile(name: &str, p: &VPolytope) -> String {
    let one = Rational::from_integer(1.into());
    let rows: Vec<Vec<Rational>> =
        p.vertices.iter().map(|v| std::iter::once(one.clone()).chain(v.0.iter().cloned()).collect()).collect();
    emit_raw(name, "V-representation", p.dim + 1, &rows)
}

/// Parses an H-file into its name and half-spaces `⟨a, x⟩ ≤ b`.
pub fn parse_hfile(text: &str) -> Result<(String, Vec<Hyperplane>)> {
    let raw = parse_raw(text, "H-representation")?;
    let planes = raw
        .rows
        .iter()
        .map(|r| Hyperplane::new(Vector(r[1..].iter().map(|a| -a).collect()), r[0].clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok((raw.name, planes))
}

/// Canonical H-file text of a list of half-spaces.
pub fn emit_hfile(name: &str, planes: &[Hyperplane]) -> String {
    let ncols = planes.first().map_or(1, |h| h.normal.dim()) + 1;
    let rows: Vec<Vec<Rational>> =
        planes.iter().map(|h| std::iter::once(h.offset.clone()).chain(h.normal.0.iter().map(|a| -a)).collect()).collect();
    emit_raw(name, "H-representation", ncols, &rows)
}

/// Hex SHA-256 of some bytes.
pub fn digest_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Digest identifying a point list (of its canonical V-file, unnamed).
pub fn polytope_digest(p: &VPolytope) -> String {
    digest_hex(emit_vfile("", p).as_bytes())
}

/// Rebuilds a facet list from half-spaces, recomputing incidences.
pub fn facets_from_planes(p: &VPolytope, planes: Vec<Hyperplane>, polytope_dim: usize) -> FacetList {
    let facets = planes
        .into_iter()
        .map(|plane| {
            let incident = BitSet::from_indices(p.n(), (0..p.n()).filter(|&i| num_traits::Zero::is_zero(&plane.slack(&p.vertices[i]))));
            Facet { plane, incident }
        })
        .collect();
    FacetList { source: p.clone(), facets, polytope_dim }
}

/// The cache directory, if [`CACHE_ENV`] is set.
pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// [`facet_enumeration`] through the cache in `dir` (when given): results
/// are stored as H-files named by the input digest and reused when present.
pub fn cached_facet_enumeration_in(p: &VPolytope, dir: Option<&Path>) -> Result<FacetList> {
    let Some(dir) = dir else { return facet_enumeration(p) };
    let path = dir.join(format!("{}.ine", polytope_digest(p)));
    if let Ok(text) = std::fs::read_to_string(&path) {
        let (_, planes) = parse_hfile(&text)?;
        return Ok(facets_from_planes(p, planes, p.dim));
    }
    let fl = facet_enumeration(p)?;
    // Only full-dimensional results are cached: the H-file does not record
    // the affine hull.
    if fl.polytope_dim == p.dim {
        let planes: Vec<Hyperplane> = fl.facets.iter().map(|f| f.plane.clone()).collect();
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        std::fs::write(&path, emit_hfile("", &planes)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(fl)
}

/// [`facet_enumeration`] through the cache named by [`CACHE_ENV`].
pub fn cached_facet_enumeration(p: &VPolytope) -> Result<FacetList> {
    cached_facet_enumeration_in(p, cache_dir().as_deref())
}

/// Machine-readable summary of one command-line run.
///
/// Exact quantities are strings (rationals) or integers; times are
/// milliseconds per phase.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: Option<String>,
    pub n: Option<usize>,
    pub dim: Option<usize>,
    pub facets: Option<usize>,
    pub width: Option<usize>,
    /// Named excesses, e.g. `prismatoid_excess`, as exact rationals.
    pub excesses: BTreeMap<String, String>,
    /// Named pass/fail flags.
    pub checks: BTreeMap<String, bool>,
    pub elapsed_ms: BTreeMap<String, u128>,
    pub seed: Option<u64>,
    /// Command-specific payload.
    pub details: serde_json::Value,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport { command: command.to_string(), details: serde_json::Value::Null, ..Default::default() }
    }

    /// `true` iff every recorded check passed.
    pub fn passed(&self) -> bool {
        self.checks.values().all(|&b| b)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_errors_carry_line_numbers() {
        let text = "V-representation\nbegin\n1 3 rational\n1 2 x\nend\n";
        match parse_vfile(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }
}

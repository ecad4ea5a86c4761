//! The system spec file: exponent data as exact rationals, one `p:` row per
//! component, optional `theta:` and `attestations:`.
//!
//! ```text
//! # three coupled components
//! n: 3
//! d: 3
//! kind: h01
//! p: 0 3/5 3/5
//! p: 3/5 0 3/5
//! p: 3/5 3/5 0
//! r: 1 1 1
//! theta: 2
//! attestations: superlinearity
//! ```
//!
//! Decimal literals are rejected everywhere: a decimal would silently move an
//! instance across a strict critical inequality.

use std::collections::BTreeSet;

use sha2::{Digest, Sha256};

use crate::criticality::Attestation;
use crate::matrix::RMatrix;
use crate::rational::{ExtRational, Rational};
use crate::system::{SolutionKind, SystemSpec};

use super::{check_size, keyed_lines, DocError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedSpec {
    pub spec: SystemSpec,
    pub attestations: BTreeSet<Attestation>,
}

pub fn parse(text: &str) -> Result<ParsedSpec, DocError> {
    check_size(text)?;
    let mut n: Option<(usize, u64)> = None;
    let mut d: Option<(usize, u64)> = None;
    let mut kind: Option<(usize, SolutionKind)> = None;
    let mut p_rows: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut r: Option<(usize, Vec<Rational>)> = None;
    let mut theta: Option<(usize, ExtRational)> = None;
    let mut attestations: Option<(usize, BTreeSet<Attestation>)> = None;

    for item in keyed_lines(text) {
        let (line, key, value) = item?;
        match key {
            "n" => set_once(&mut n, line, parse_count(line, value, "n")?)?,
            "d" => set_once(&mut d, line, parse_count(line, value, "d")?)?,
            "kind" => {
                let k = SolutionKind::parse(value).ok_or_else(|| {
                    DocError::at(line, format!("unknown kind `{value}`; expected h01, l1 or l1delta"))
                })?;
                set_once(&mut kind, line, k)?;
            }
            "p" => {
                if p_rows.len() >= crate::system::MAX_COMPONENTS {
                    return Err(DocError::at(line, "too many p rows"));
                }
                p_rows.push((line, parse_rational_list(line, value)?));
            }
            "r" => set_once(&mut r, line, parse_rational_list(line, value)?)?,
            "theta" => {
                let t = ExtRational::parse(value)
                    .map_err(|e| DocError::at(line, format!("theta: {e}")))?;
                set_once(&mut theta, line, t)?;
            }
            "attestations" => {
                let mut set = BTreeSet::new();
                for token in value.split_whitespace() {
                    let att = Attestation::parse(token).ok_or_else(|| {
                        DocError::at(line, format!("unknown attestation `{token}`"))
                    })?;
                    set.insert(att);
                }
                set_once(&mut attestations, line, set)?;
            }
            other => {
                return Err(DocError::at(line, format!("unknown key `{other}`")));
            }
        }
    }

    let (_, n) = n.ok_or_else(|| DocError::whole("missing required key `n`"))?;
    let (_, d) = d.ok_or_else(|| DocError::whole("missing required key `d`"))?;
    let (_, kind) = kind.ok_or_else(|| DocError::whole("missing required key `kind`"))?;
    let (r_line, r) = r.ok_or_else(|| DocError::whole("missing required key `r`"))?;
    if p_rows.is_empty() {
        return Err(DocError::whole("missing exponent rows `p`"));
    }

    let n_usize = usize::try_from(n).map_err(|_| DocError::whole("n out of range"))?;
    if p_rows.len() != n_usize {
        return Err(DocError::at(
            p_rows.last().map(|(l, _)| *l).unwrap_or(0),
            format!("expected {n_usize} p rows, found {}", p_rows.len()),
        ));
    }
    for (line, row) in &p_rows {
        if row.len() != n_usize {
            return Err(DocError::at(
                *line,
                format!("p row has {} entries, expected {n_usize}", row.len()),
            ));
        }
    }
    if r.len() != n_usize {
        return Err(DocError::at(
            r_line,
            format!("r has {} entries, expected {n_usize}", r.len()),
        ));
    }
    let d_u32 = u32::try_from(d).map_err(|_| DocError::whole("d out of range"))?;
    let p = RMatrix::from_rows(p_rows.into_iter().map(|(_, row)| row).collect());
    let spec = SystemSpec::new(d_u32, p, r, kind, theta.map(|(_, t)| t))
        .map_err(|e| DocError::whole(e.to_string()))?;
    Ok(ParsedSpec {
        spec,
        attestations: attestations.map(|(_, a)| a).unwrap_or_default(),
    })
}

fn set_once<T>(slot: &mut Option<(usize, T)>, line: usize, value: T) -> Result<(), DocError> {
    if let Some((first, _)) = slot {
        return Err(DocError::at(line, format!("duplicate key (first on line {first})")));
    }
    *slot = Some((line, value));
    Ok(())
}

fn parse_count(line: usize, value: &str, key: &str) -> Result<u64, DocError> {
    if value.len() > 9 {
        return Err(DocError::at(line, format!("{key} literal too long")));
    }
    value
        .parse::<u64>()
        .map_err(|_| DocError::at(line, format!("{key} must be a positive integer")))
}

fn parse_rational_list(line: usize, value: &str) -> Result<Vec<Rational>, DocError> {
    let mut out = Vec::new();
    for token in value.split_whitespace() {
        let q = Rational::parse(token).map_err(|e| DocError::at(line, format!("`{token}`: {e}")))?;
        out.push(q);
        if out.len() > crate::system::MAX_COMPONENTS {
            return Err(DocError::at(line, "too many entries in row"));
        }
    }
    if out.is_empty() {
        return Err(DocError::at(line, "empty value"));
    }
    Ok(out)
}

/// Serialize a spec (plus attestations) in the document grammar; `parse` of
/// the result reproduces the input exactly.
pub fn render(spec: &SystemSpec, attestations: &BTreeSet<Attestation>) -> String {
    let mut out = String::new();
    out.push_str(&format!("n: {}\n", spec.n()));
    out.push_str(&format!("d: {}\n", spec.d()));
    out.push_str(&format!("kind: {}\n", spec.kind()));
    for i in 0..spec.n() {
        let row: Vec<String> = (0..spec.n()).map(|j| spec.p_at(i, j).to_string()).collect();
        out.push_str(&format!("p: {}\n", row.join(" ")));
    }
    let r: Vec<String> = spec.r().iter().map(Rational::to_string).collect();
    out.push_str(&format!("r: {}\n", r.join(" ")));
    if let Some(theta) = spec.theta() {
        out.push_str(&format!("theta: {theta}\n"));
    }
    if !attestations.is_empty() {
        let tokens: Vec<&str> = attestations.iter().map(|a| a.as_str()).collect();
        out.push_str(&format!("attestations: {}\n", tokens.join(" ")));
    }
    out
}

/// Canonical one-line form of the mathematical content (attestations do not
/// participate: they never change a certificate).
pub fn canonical_string(spec: &SystemSpec) -> String {
    let mut rows = Vec::with_capacity(spec.n());
    for i in 0..spec.n() {
        let row: Vec<String> = (0..spec.n()).map(|j| spec.p_at(i, j).to_string()).collect();
        rows.push(row.join(","));
    }
    let r: Vec<String> = spec.r().iter().map(Rational::to_string).collect();
    let theta = match spec.theta() {
        Some(t) => t.to_string(),
        None => "-".to_string(),
    };
    format!(
        "n:{};d:{};kind:{};p:{};r:{};theta:{}",
        spec.n(),
        spec.d(),
        spec.kind(),
        rows.join("|"),
        r.join(","),
        theta
    )
}

/// SHA-256 of the canonical string, lowercase hex.
pub fn digest_hex(spec: &SystemSpec) -> String {
    let hash = Sha256::digest(canonical_string(spec).as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

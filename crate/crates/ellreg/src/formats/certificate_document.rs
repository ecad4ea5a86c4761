//! The certificate file: digest, initial state, one `step:` line per
//! improvement, final state.
//!
//! ```text
//! certificate: bootstrap-v1
//! spec-sha256: 9f2c...
//! initial: 101/300
//! step: 1 1/75 101/150 1/150
//! step: 1 0/1 2/75 16/25
//! final: 0/1
//! ```
//!
//! A `step:` line carries `component new_s sigma margin` with a 1-based
//! component. Pre-states are not serialized; the parser reconstructs them by
//! replaying the chain, and the checker re-derives sigma and margin from
//! scratch anyway.

use crate::bootstrap::{BootstrapCertificate, Slowness, Step};
use crate::rational::Rational;

use super::{check_size, keyed_lines, DocError};

pub const FORMAT_TAG: &str = "bootstrap-v1";
/// Hard cap on steps accepted from disk.
pub const MAX_STEPS: usize = 200_000;

pub fn render(cert: &BootstrapCertificate) -> String {
    let mut out = String::new();
    out.push_str(&format!("certificate: {FORMAT_TAG}\n"));
    out.push_str(&format!("spec-sha256: {}\n", cert.spec_digest));
    out.push_str(&format!("initial: {}\n", join_slowness(&cert.initial)));
    for step in &cert.steps {
        out.push_str(&format!(
            "step: {} {} {} {}\n",
            step.component + 1,
            step.new_s,
            step.sigma,
            step.margin
        ));
    }
    out.push_str(&format!("final: {}\n", join_slowness(&cert.final_state)));
    out
}

fn join_slowness(values: &[Slowness]) -> String {
    values
        .iter()
        .map(Slowness::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse(text: &str) -> Result<BootstrapCertificate, DocError> {
    check_size(text)?;
    let mut tag: Option<String> = None;
    let mut digest: Option<String> = None;
    let mut initial: Option<Vec<Slowness>> = None;
    let mut raw_steps: Vec<(usize, usize, Slowness, Rational, Rational)> = Vec::new();
    let mut final_state: Option<Vec<Slowness>> = None;

    for item in keyed_lines(text) {
        let (line, key, value) = item?;
        if final_state.is_some() {
            return Err(DocError::at(line, "content after `final:`"));
        }
        match key {
            "certificate" => {
                if tag.is_some() {
                    return Err(DocError::at(line, "duplicate `certificate:`"));
                }
                if value != FORMAT_TAG {
                    return Err(DocError::at(
                        line,
                        format!("unsupported format `{value}`, expected `{FORMAT_TAG}`"),
                    ));
                }
                tag = Some(value.to_string());
            }
            "spec-sha256" => {
                if digest.is_some() {
                    return Err(DocError::at(line, "duplicate `spec-sha256:`"));
                }
                if value.len() != 64 || !value.bytes().all(|b| b.is_ascii_hexdigit()) {
                    return Err(DocError::at(line, "spec-sha256 must be 64 hex digits"));
                }
                digest = Some(value.to_ascii_lowercase());
            }
            "initial" => {
                if initial.is_some() {
                    return Err(DocError::at(line, "duplicate `initial:`"));
                }
                initial = Some(parse_slowness_list(line, value)?);
            }
            "step" => {
                if raw_steps.len() >= MAX_STEPS {
                    return Err(DocError::at(line, "too many steps"));
                }
                let fields: Vec<&str> = value.split_whitespace().collect();
                if fields.len() != 4 {
                    return Err(DocError::at(
                        line,
                        "step needs `component new_s sigma margin`",
                    ));
                }
                let component: usize = fields[0]
                    .parse()
                    .ok()
                    .filter(|&c| c >= 1)
                    .ok_or_else(|| DocError::at(line, "component must be a positive integer"))?;
                let new_s = parse_slowness(line, fields[1])?;
                let sigma = Rational::parse(fields[2])
                    .map_err(|e| DocError::at(line, format!("sigma: {e}")))?;
                let margin = Rational::parse(fields[3])
                    .map_err(|e| DocError::at(line, format!("margin: {e}")))?;
                raw_steps.push((line, component - 1, new_s, sigma, margin));
            }
            "final" => {
                final_state = Some(parse_slowness_list(line, value)?);
            }
            other => return Err(DocError::at(line, format!("unknown key `{other}`"))),
        }
    }

    tag.ok_or_else(|| DocError::whole("missing `certificate:` header"))?;
    let spec_digest = digest.ok_or_else(|| DocError::whole("missing `spec-sha256:`"))?;
    let initial = initial.ok_or_else(|| DocError::whole("missing `initial:`"))?;
    let final_state = final_state.ok_or_else(|| DocError::whole("missing `final:`"))?;

    // reconstruct pre-states by replaying the chain
    let n = initial.len();
    let mut state = initial.clone();
    let mut steps = Vec::with_capacity(raw_steps.len());
    for (line, component, new_s, sigma, margin) in raw_steps {
        if component >= n {
            return Err(DocError::at(
                line,
                format!("component {} out of range 1..={n}", component + 1),
            ));
        }
        let pre_state = state.clone();
        state[component] = new_s.clone();
        steps.push(Step {
            component,
            pre_state,
            new_s,
            sigma,
            margin,
        });
    }

    Ok(BootstrapCertificate {
        spec_digest,
        initial,
        steps,
        final_state,
    })
}

fn parse_slowness_list(line: usize, value: &str) -> Result<Vec<Slowness>, DocError> {
    let mut out = Vec::new();
    for token in value.split_whitespace() {
        out.push(parse_slowness(line, token)?);
        if out.len() > crate::system::MAX_COMPONENTS {
            return Err(DocError::at(line, "too many entries"));
        }
    }
    if out.is_empty() {
        return Err(DocError::at(line, "empty state"));
    }
    Ok(out)
}

fn parse_slowness(line: usize, token: &str) -> Result<Slowness, DocError> {
    let q = Rational::parse(token).map_err(|e| DocError::at(line, format!("`{token}`: {e}")))?;
    Slowness::new(q).map_err(|e| DocError::at(line, e.to_string()))
}

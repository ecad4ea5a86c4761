//! Deterministic plain-text reports: fixed key order, rationals as
//! `num/den`, `-` for absent values.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::bootstrap::CheckOutcome;
use crate::counterexample::{MembershipReport, SingularSolution, VerificationReport};
use crate::criticality::{Attestation, AuditEntry, RegularityVerdict};
use crate::rational::Rational;
use crate::scaling::{ChainData, ChainError, ScalingData};
use crate::system::{StructureReport, SystemSpec};

fn push_kv(out: &mut String, key: &str, value: impl AsRef<str>) {
    out.push_str(key);
    out.push_str(": ");
    out.push_str(value.as_ref());
    out.push('\n');
}

fn join_rationals(values: &[Rational]) -> String {
    values
        .iter()
        .map(Rational::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn ordering_str(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

#[allow(clippy::too_many_arguments)]
pub fn render_analysis(
    spec: &SystemSpec,
    attestations: &BTreeSet<Attestation>,
    structure: &StructureReport,
    scaling: Option<&ScalingData>,
    chain: &Result<ChainData, ChainError>,
    verdict: &RegularityVerdict,
    audit: &[AuditEntry],
) -> String {
    let mut out = String::new();
    push_kv(&mut out, "report", "analyze");
    push_kv(&mut out, "spec.n", spec.n().to_string());
    push_kv(&mut out, "spec.d", spec.d().to_string());
    push_kv(&mut out, "spec.kind", spec.kind().to_string());
    push_kv(
        &mut out,
        "spec.theta",
        spec.theta().map_or("-".to_string(), |t| t.to_string()),
    );
    push_kv(
        &mut out,
        "spec.attestations",
        if attestations.is_empty() {
            "-".to_string()
        } else {
            attestations
                .iter()
                .map(|a| a.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        },
    );

    push_kv(
        &mut out,
        "structure.irreducible",
        structure.irreducible.to_string(),
    );
    push_kv(
        &mut out,
        "structure.principal_minors_positive",
        structure.principal_minors_positive.to_string(),
    );
    push_kv(
        &mut out,
        "structure.det_i_minus_p",
        structure.det_i_minus_p.to_string(),
    );
    push_kv(
        &mut out,
        "structure.admissible",
        structure.admissible.to_string(),
    );
    push_kv(
        &mut out,
        "structure.failures",
        if structure.failures.is_empty() {
            "-".to_string()
        } else {
            structure
                .failures
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        },
    );

    match scaling {
        Some(s) => {
            push_kv(&mut out, "scaling.alpha", join_rationals(&s.alpha));
            push_kv(&mut out, "scaling.lambda", join_rationals(&s.lambda));
            push_kv(
                &mut out,
                "scaling.argmax_alpha",
                s.argmax_alpha
                    .iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
        }
        None => {
            push_kv(&mut out, "scaling.alpha", "-");
            push_kv(
                &mut out,
                "scaling.lambda",
                join_rationals(&verdict.evidence.lambda),
            );
            push_kv(&mut out, "scaling.argmax_alpha", "-");
        }
    }

    match chain {
        Ok(c) => {
            push_kv(
                &mut out,
                "chain.permutation",
                c.permutation
                    .iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            push_kv(
                &mut out,
                "chain.values",
                if c.chain.is_empty() {
                    "-".to_string()
                } else {
                    join_rationals(&c.chain)
                },
            );
        }
        Err(e) => {
            push_kv(&mut out, "chain.permutation", "-");
            push_kv(&mut out, "chain.values", format!("- ({e})"));
        }
    }

    let ev = &verdict.evidence;
    push_kv(&mut out, "verdict.status", verdict.status.to_string());
    push_kv(&mut out, "verdict.p_c", ev.p_c.to_string());
    push_kv(&mut out, "verdict.threshold", ev.threshold.to_string());
    push_kv(
        &mut out,
        "verdict.inv_conjugate",
        ev.inv_conjugate.to_string(),
    );
    push_kv(&mut out, "verdict.conjugate", ev.conjugate.to_string());
    push_kv(
        &mut out,
        "verdict.max_alpha",
        ev.max_alpha.as_ref().map_or("-".to_string(), |a| a.to_string()),
    );
    push_kv(
        &mut out,
        "verdict.alpha_vs_threshold",
        ev.alpha_vs_threshold
            .map_or("-", ordering_str),
    );
    push_kv(&mut out, "verdict.max_r", ev.max_r.to_string());
    push_kv(
        &mut out,
        "verdict.r_below_critical",
        ev.r_below_critical.to_string(),
    );
    push_kv(
        &mut out,
        "verdict.theta_above_conjugate",
        ev.theta_above_conjugate
            .map_or("-".to_string(), |b| b.to_string()),
    );
    push_kv(
        &mut out,
        "verdict.all_lambda_positive",
        ev.all_lambda_positive.to_string(),
    );
    push_kv(&mut out, "verdict.citation", &verdict.citation);

    for entry in audit {
        let mut line = entry.status.as_str().to_string();
        if !entry.missing.is_empty() {
            line.push_str(" | missing: ");
            line.push_str(&entry.missing.join("; "));
        }
        if !entry.assumed.is_empty() {
            line.push_str(" | assumed: ");
            line.push_str(&entry.assumed.join("; "));
        }
        if !entry.notes.is_empty() {
            line.push_str(" | note: ");
            line.push_str(&entry.notes.join("; "));
        }
        push_kv(&mut out, &format!("audit.{}", entry.subject), line);
    }

    use crate::criticality::VerdictStatus;
    let next = match verdict.status {
        VerdictStatus::Supercritical | VerdictStatus::AutoRegular => {
            "`certify` emits a machine-checkable bootstrap certificate"
        }
        VerdictStatus::Subcritical => match spec.kind() {
            crate::system::SolutionKind::H01 | crate::system::SolutionKind::L1 => {
                "`counterexample` builds the explicit unbounded radial solution"
            }
            crate::system::SolutionKind::L1Delta => {
                "the witnessing boundary-cone construction is outside this tool's scope"
            }
        },
        _ => "-",
    };
    push_kv(&mut out, "next", next);

    out
}

pub fn render_certify_summary(step_count: usize, digest: &str) -> String {
    let mut out = String::new();
    push_kv(&mut out, "certify.steps", step_count.to_string());
    push_kv(&mut out, "certify.spec_sha256", digest);
    out
}

pub fn render_check(outcome: &CheckOutcome) -> String {
    let mut out = String::new();
    push_kv(&mut out, "check", if outcome.ok { "ok" } else { "invalid" });
    if let Some(finding) = &outcome.first_failure {
        push_kv(
            &mut out,
            "check.step",
            finding
                .step
                .map_or("-".to_string(), |s| (s + 1).to_string()),
        );
        push_kv(&mut out, "check.reason", finding.reason.as_str());
    }
    out
}

pub fn render_counterexample(
    spec: &SystemSpec,
    sol: &SingularSolution,
    membership: &MembershipReport,
    verification: &VerificationReport,
) -> String {
    let mut out = String::new();
    push_kv(&mut out, "report", "counterexample");
    push_kv(&mut out, "spec.kind", spec.kind().to_string());
    push_kv(&mut out, "solution.d", sol.d.to_string());
    push_kv(
        &mut out,
        "solution.form",
        "u_i(r) = c_i * (r^(-2*alpha_i) - 1) on 0 < r <= 1",
    );
    push_kv(&mut out, "solution.alpha", join_rationals(&sol.alpha));
    push_kv(&mut out, "solution.b", join_rationals(&sol.b));
    push_kv(&mut out, "solution.digits", sol.digits.to_string());
    for (i, c) in sol.coefficients.iter().enumerate() {
        let idx = i + 1;
        push_kv(
            &mut out,
            &format!("c.{idx}.exact"),
            c.exact.as_ref().map_or("-".to_string(), |v| v.to_string()),
        );
        push_kv(&mut out, &format!("c.{idx}.decimal"), &c.decimal);
        // provenance: ln c_i as a rational combination of ln b_j
        let terms: Vec<String> = sol.log_weights[i]
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(j, w)| format!("{w}*ln({})", sol.b[j]))
            .collect();
        push_kv(
            &mut out,
            &format!("c.{idx}.log"),
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            },
        );
    }
    for (i, m) in membership.components.iter().enumerate() {
        let idx = i + 1;
        push_kv(&mut out, &format!("membership.{idx}.in_linf"), m.in_linf.to_string());
        push_kv(&mut out, &format!("membership.{idx}.in_h01"), m.in_h01.to_string());
        push_kv(&mut out, &format!("membership.{idx}.in_l1"), m.in_l1.to_string());
        push_kv(
            &mut out,
            &format!("membership.{idx}.f_in_l1"),
            m.f_in_l1.to_string(),
        );
        for (k, member) in &m.in_lk {
            push_kv(
                &mut out,
                &format!("membership.{idx}.in_l[{k}]"),
                member.to_string(),
            );
        }
    }
    push_kv(
        &mut out,
        "membership.solution_in_kind",
        membership.solution_in_kind.to_string(),
    );
    push_kv(
        &mut out,
        "verify.exact_components",
        verification.exact_components.to_string(),
    );
    push_kv(
        &mut out,
        "verify.max_numeric_residual",
        format!("{:e}", verification.max_numeric_residual),
    );
    push_kv(
        &mut out,
        "verify.radii",
        verification.radii_sampled.to_string(),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criticality::{analyze, theorem_audit};
    use crate::scaling::compute_chain;

    #[test]
    fn analysis_report_is_deterministic_and_ordered() {
        let parsed = crate::formats::spec_document::parse(
            "n: 2\nd: 3\nkind: l1\np: 0 2\np: 3 0\nr: 0 0\n",
        )
        .unwrap();
        let analysis = analyze(&parsed.spec);
        let chain = compute_chain(&parsed.spec);
        let audit = theorem_audit(&parsed.spec, &parsed.attestations);
        let a = render_analysis(
            &parsed.spec,
            &parsed.attestations,
            &analysis.report,
            analysis.scaling.as_ref(),
            &chain,
            &analysis.verdict,
            &audit,
        );
        let b = render_analysis(
            &parsed.spec,
            &parsed.attestations,
            &analysis.report,
            analysis.scaling.as_ref(),
            &chain,
            &analysis.verdict,
            &audit,
        );
        assert_eq!(a, b);
        let first_keys: Vec<&str> = a
            .lines()
            .take(4)
            .map(|l| l.split(':').next().unwrap())
            .collect();
        assert_eq!(first_keys, vec!["report", "spec.n", "spec.d", "spec.kind"]);
        assert!(a.contains("scaling.alpha: 3/5 4/5"));
        assert!(a.contains("verdict.status: "));
    }
}

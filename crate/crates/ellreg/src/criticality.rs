//! Critical exponents, the regularity verdict, and hypothesis audits for the
//! a-priori-estimate and existence results.
//!
//! Each notion of weak solution has a critical exponent `p_c` (Sobolev for
//! H01, the singular exponent for L1, the boundary-trace exponent for very
//! weak solutions). The verdict compares `max alpha` against `1/(p_c - 1)`
//! and records every comparison as an exact rational inequality.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::rational::{ExtRational, Rational};
use crate::scaling::{compute_scaling, lambda_by_replacement, ScalingData};
use crate::system::{validate_structure, SolutionKind, StructureReport, SystemSpec};

/// Critical exponent data for one dimension and solution kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalExponent {
    pub p_c: ExtRational,
    /// `1/p_c' = 1 - 1/p_c`, in `(0, 1]`; the right-hand side of the step rule.
    pub inv_conjugate: Rational,
    pub kind: SolutionKind,
    pub d: u32,
}

impl CriticalExponent {
    /// `1/(p_c - 1)`: the threshold `max alpha` is compared against.
    /// Zero when `p_c` is infinite.
    pub fn threshold(&self) -> Rational {
        match &self.p_c {
            ExtRational::Finite(p) => (p.clone() - Rational::one()).recip(),
            ExtRational::Infinity => Rational::zero(),
        }
    }

    /// The Holder conjugate `p_c' = p_c/(p_c - 1)`; equals 1 when `p_c` is
    /// infinite.
    pub fn conjugate(&self) -> Rational {
        self.inv_conjugate.recip()
    }
}

/// The piecewise table of critical exponents.
pub fn critical_exponent(d: u32, kind: SolutionKind) -> CriticalExponent {
    let di = i64::from(d);
    let p_c = match kind {
        SolutionKind::H01 => {
            if d <= 2 {
                ExtRational::Infinity
            } else {
                ExtRational::Finite(Rational::new(di + 2, di - 2))
            }
        }
        SolutionKind::L1 => {
            if d <= 2 {
                ExtRational::Infinity
            } else {
                ExtRational::Finite(Rational::new(di, di - 2))
            }
        }
        SolutionKind::L1Delta => {
            if d <= 1 {
                ExtRational::Infinity
            } else {
                ExtRational::Finite(Rational::new(di + 1, di - 1))
            }
        }
    };
    let inv_conjugate = Rational::one() - p_c.recip();
    CriticalExponent {
        p_c,
        inv_conjugate,
        kind,
        d,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    Supercritical,
    Subcritical,
    Critical,
    AutoRegular,
    NotCovered,
    InvalidStructure,
}

impl VerdictStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictStatus::Supercritical => "supercritical",
            VerdictStatus::Subcritical => "subcritical",
            VerdictStatus::Critical => "critical",
            VerdictStatus::AutoRegular => "auto-regular",
            VerdictStatus::NotCovered => "not-covered",
            VerdictStatus::InvalidStructure => "invalid-structure",
        }
    }
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Every comparison behind a verdict, recorded exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub p_c: ExtRational,
    pub threshold: Rational,
    pub inv_conjugate: Rational,
    pub conjugate: Rational,
    pub max_alpha: Option<Rational>,
    /// `max alpha` vs `1/(p_c - 1)`; `None` when `alpha` is undefined
    /// (singular `I - P`).
    pub alpha_vs_threshold: Option<Ordering>,
    pub max_r: Rational,
    /// `max r < p_c`, strict.
    pub r_below_critical: bool,
    pub theta: Option<ExtRational>,
    /// `theta > p_c'`, strict; `None` when the bound carries no `h`.
    pub theta_above_conjugate: Option<bool>,
    pub lambda: Vec<Rational>,
    pub all_lambda_positive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub status: VerdictStatus,
    pub evidence: Evidence,
    /// Which mathematical result the verdict rests on, in plain words.
    pub citation: String,
}

/// Decide the verdict for a spec. Total: structural failures yield
/// `InvalidStructure`, never an error.
pub fn classify(spec: &SystemSpec) -> RegularityVerdict {
    let report = validate_structure(spec);
    classify_with_report(spec, &report)
}

pub fn classify_with_report(spec: &SystemSpec, report: &StructureReport) -> RegularityVerdict {
    let crit = critical_exponent(spec.d(), spec.kind());
    let threshold = crit.threshold();
    let conjugate = crit.conjugate();
    let lambda = lambda_by_replacement(spec);
    let all_lambda_positive = lambda.iter().all(Rational::is_positive);
    let max_r = spec.max_r();
    let r_below_critical = crit.p_c > max_r;
    let theta = spec.theta().cloned();
    let theta_above_conjugate = theta
        .as_ref()
        .map(|t| *t > ExtRational::Finite(conjugate.clone()));

    let scaling = if report.det_i_minus_p.is_zero() {
        None
    } else {
        Some(compute_scaling(spec).expect("nonzero determinant"))
    };
    let max_alpha = scaling.as_ref().map(|s| s.max_alpha().clone());
    let alpha_vs_threshold = max_alpha.as_ref().map(|a| a.cmp(&threshold));

    let evidence = Evidence {
        p_c: crit.p_c.clone(),
        threshold,
        inv_conjugate: crit.inv_conjugate.clone(),
        conjugate,
        max_alpha,
        alpha_vs_threshold,
        max_r,
        r_below_critical,
        theta,
        theta_above_conjugate,
        lambda,
        all_lambda_positive,
    };

    let kind = spec.kind();
    let (status, citation) = if report.admissible {
        match evidence.alpha_vs_threshold.expect("determinant nonzero") {
            Ordering::Greater => {
                if evidence.r_below_critical && evidence.theta_above_conjugate.unwrap_or(true) {
                    debug_assert!(
                        min_row_sum_below(spec, &evidence.p_c),
                        "supercritical verdict must force min row sum below p_c"
                    );
                    (
                        VerdictStatus::Supercritical,
                        format!(
                            "sufficiency direction of the optimal L-infinity criterion for {kind}-solutions: every such solution with subcritical norm control is bounded"
                        ),
                    )
                } else {
                    (
                        VerdictStatus::NotCovered,
                        "rate condition holds but a side condition fails: the self-exponents or the inhomogeneity exceed what the bootstrap absorbs".to_string(),
                    )
                }
            }
            Ordering::Equal => (
                VerdictStatus::Critical,
                "max alpha sits exactly at the threshold; neither direction of the criterion applies".to_string(),
            ),
            Ordering::Less => (
                VerdictStatus::Subcritical,
                match kind {
                    SolutionKind::H01 | SolutionKind::L1 => format!(
                        "optimality direction for {kind}-solutions: an explicit unbounded radial solution exists on the unit ball (d >= 3)"
                    ),
                    SolutionKind::L1Delta => "optimality direction for l1delta-solutions: an unbounded very-weak solution exists via a boundary-cone construction (not built by this tool)".to_string(),
                },
            ),
        }
    } else if report.irreducible
        && report.principal_minors_positive
        && !report.det_i_minus_p.is_negative()
        && evidence.all_lambda_positive
    {
        (
            VerdictStatus::AutoRegular,
            "nonnegative det(I-P) with positive replacement determinants: the rate condition is automatic and the bootstrap applies unconditionally".to_string(),
        )
    } else {
        (
            VerdictStatus::InvalidStructure,
            "structural hypotheses violated; no verdict".to_string(),
        )
    };

    RegularityVerdict {
        status,
        evidence,
        citation,
    }
}

fn min_row_sum_below(spec: &SystemSpec, p_c: &ExtRational) -> bool {
    let min = (0..spec.n())
        .map(|i| spec.row_sum(i))
        .min()
        .expect("n >= 1");
    *p_c > min
}

/// Analytic hypotheses the tool cannot decide; supplied by the caller and
/// echoed back as assumptions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Attestation {
    /// Total reaction grows superlinearly past the principal eigenvalue:
    /// `sum_i f_i >= lambda * sum_i u_i - C` with `lambda > lambda_1`.
    Superlinearity,
    /// Coercive lower bound `sum_i f_i >= -C * sum_i u_i - h_1` with
    /// weighted-integrable `h_1`.
    LowerBound,
    /// The system has the absorbed-reaction (nuclear reactor) form
    /// `f_i = a_i(x) prod_j u_j^{p_ij} - b_i(x) u_i` with bounded
    /// coefficients, `a_i >= 0` not a.e. zero, and positive bottom spectrum
    /// for `-Delta + b_i`.
    NuclearReactorForm,
}

impl Attestation {
    pub fn as_str(self) -> &'static str {
        match self {
            Attestation::Superlinearity => "superlinearity",
            Attestation::LowerBound => "lower_bound",
            Attestation::NuclearReactorForm => "nuclear_reactor_form",
        }
    }

    pub fn parse(s: &str) -> Option<Attestation> {
        match s {
            "superlinearity" => Some(Attestation::Superlinearity),
            "lower_bound" => Some(Attestation::LowerBound),
            "nuclear_reactor_form" => Some(Attestation::NuclearReactorForm),
            _ => None,
        }
    }
}

impl fmt::Display for Attestation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditStatus {
    Holds,
    Fails,
    NeedsAttestation,
}

impl AuditStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            AuditStatus::Holds => "holds",
            AuditStatus::Fails => "fails",
            AuditStatus::NeedsAttestation => "needs-attestation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditEntry {
    /// Which result is audited, named by what it concludes.
    pub subject: &'static str,
    pub status: AuditStatus,
    /// Hypotheses that failed or are unattested.
    pub missing: Vec<String>,
    /// Caller-supplied analytic hypotheses this conclusion leans on.
    pub assumed: Vec<String>,
    pub notes: Vec<String>,
}

/// Audit the hypotheses of the a-priori-estimate and existence results.
///
/// These results all concern very weak solutions, so the exponent conditions
/// are evaluated against the `l1delta` critical data regardless of the spec's
/// own solution kind; `theta` is read in the very-weak scale for this audit.
pub fn theorem_audit(spec: &SystemSpec, attestations: &BTreeSet<Attestation>) -> Vec<AuditEntry> {
    let report = validate_structure(spec);
    let crit = critical_exponent(spec.d(), SolutionKind::L1Delta);
    let threshold = crit.threshold();
    let conjugate = crit.conjugate();

    let auto_regular = !report.admissible
        && report.irreducible
        && report.principal_minors_positive
        && !report.det_i_minus_p.is_negative()
        && lambda_by_replacement(spec).iter().all(Rational::is_positive);
    let structure_ok = report.admissible || auto_regular;

    let mut alpha_note = None;
    let alpha_ok = if !structure_ok {
        false
    } else if auto_regular {
        alpha_note = Some(
            "nonnegative det(I-P) extension: rate condition automatic from positive replacement determinants"
                .to_string(),
        );
        true
    } else {
        let scaling = compute_scaling(spec).expect("admissible");
        scaling.max_alpha() > &threshold
    };
    let alpha_critical = structure_ok
        && !auto_regular
        && compute_scaling(spec).expect("admissible").max_alpha() == &threshold;

    let r_ok = crit.p_c > spec.max_r();
    let theta_ok = match spec.theta() {
        None => true,
        Some(t) => *t > ExtRational::Finite(conjugate.clone()),
    };

    let mut failed_base: Vec<String> = Vec::new();
    if !structure_ok {
        failed_base.push("structural hypotheses on I-P".to_string());
    }
    if structure_ok && !alpha_ok {
        failed_base.push(if alpha_critical {
            "max alpha sits exactly at the very-weak threshold (critical case)".to_string()
        } else {
            "max alpha above the very-weak threshold (an unbounded very-weak solution exists below it)".to_string()
        });
    }
    let mut failed_growth = failed_base.clone();
    if !r_ok {
        failed_growth.push("max self-exponent below the very-weak critical exponent".to_string());
    }
    if !theta_ok {
        failed_growth.push("inhomogeneity exponent above the very-weak conjugate".to_string());
    }

    let has = |a: Attestation| attestations.contains(&a);
    let mut entries = Vec::new();

    // Uniform L-infinity bound for nonnegative very-weak solutions with
    // bounded weighted mass, under a coercive lower bound on the reaction.
    entries.push(audit_entry(
        "a-priori-estimate",
        &failed_growth,
        &[(Attestation::LowerBound, has(Attestation::LowerBound))],
        &[],
        alpha_note.as_deref(),
    ));

    // Superlinear coercivity upgrades the bound to all solutions of
    // uncontrolled mass...
    entries.push(audit_entry(
        "existence-superlinear(a)",
        &failed_growth,
        &[(
            Attestation::Superlinearity,
            has(Attestation::Superlinearity),
        )],
        &["superlinearity past the principal eigenvalue"],
        alpha_note.as_deref(),
    ));
    // ...and existence additionally needs smallness of the reaction at zero,
    // for which no attestation token exists.
    entries.push(audit_entry(
        "existence-superlinear(b)",
        &failed_growth,
        &[(
            Attestation::Superlinearity,
            has(Attestation::Superlinearity),
        )],
        &["superlinearity past the principal eigenvalue"],
        alpha_note.as_deref(),
    ));
    if let Some(last) = entries.last_mut() {
        if last.status != AuditStatus::Fails {
            last.status = AuditStatus::NeedsAttestation;
            last.missing.push(
                "smallness of the total reaction at zero (no attestation token; cannot be certified here)"
                    .to_string(),
            );
        }
    }

    // Absorbed-reaction systems need only the structure and rate conditions;
    // the form itself bounds the self-term and carries no inhomogeneity.
    for subject in ["nuclear-reactor(a)", "nuclear-reactor(b)"] {
        entries.push(audit_entry(
            subject,
            &failed_base,
            &[(
                Attestation::NuclearReactorForm,
                has(Attestation::NuclearReactorForm),
            )],
            &["bounded coefficients with positive bottom spectrum for the absorption"],
            alpha_note.as_deref(),
        ));
    }

    // Pure power systems are the special case with unit reaction coefficients
    // and no absorption.
    let mut pure = audit_entry(
        "pure-power-existence",
        &failed_base,
        &[(
            Attestation::NuclearReactorForm,
            has(Attestation::NuclearReactorForm),
        )],
        &[],
        alpha_note.as_deref(),
    );
    pure.notes
        .push("pure power reaction is the unit-coefficient absorbed-reaction form".to_string());
    entries.push(pure);

    entries
}

fn audit_entry(
    subject: &'static str,
    failed_conditions: &[String],
    attestation_slots: &[(Attestation, bool)],
    extra_assumed: &[&str],
    alpha_note: Option<&str>,
) -> AuditEntry {
    let mut notes: Vec<String> = alpha_note.iter().map(|s| s.to_string()).collect();
    if !failed_conditions.is_empty() {
        return AuditEntry {
            subject,
            status: AuditStatus::Fails,
            missing: failed_conditions.to_vec(),
            assumed: Vec::new(),
            notes,
        };
    }
    let mut missing = Vec::new();
    let mut assumed: Vec<String> = Vec::new();
    for (att, present) in attestation_slots {
        if *present {
            assumed.push(att.as_str().to_string());
        } else {
            missing.push(format!("attestation: {att}"));
        }
    }
    for extra in extra_assumed {
        if missing.is_empty() {
            assumed.push((*extra).to_string());
        }
    }
    notes.extend(std::iter::empty::<String>());
    AuditEntry {
        subject,
        status: if missing.is_empty() {
            AuditStatus::Holds
        } else {
            AuditStatus::NeedsAttestation
        },
        missing,
        assumed,
        notes,
    }
}

/// Convenience bundle for the analysis pipeline: structure, scaling when
/// available, and the verdict.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub report: StructureReport,
    pub scaling: Option<ScalingData>,
    pub verdict: RegularityVerdict,
}

pub fn analyze(spec: &SystemSpec) -> Analysis {
    let report = validate_structure(spec);
    let scaling = if report.det_i_minus_p.is_zero() {
        None
    } else {
        compute_scaling(spec).ok()
    };
    let verdict = classify_with_report(spec, &report);
    Analysis {
        report,
        scaling,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::RMatrix;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn spec(
        d: u32,
        rows: Vec<Vec<Rational>>,
        r: Vec<Rational>,
        kind: SolutionKind,
        theta: Option<ExtRational>,
    ) -> SystemSpec {
        SystemSpec::new(d, RMatrix::from_rows(rows), r, kind, theta).unwrap()
    }

    fn sym3(d: u32, kind: SolutionKind, r: Vec<Rational>, theta: Option<ExtRational>) -> SystemSpec {
        let t = q(3, 5);
        let z = q(0, 1);
        spec(
            d,
            vec![
                vec![z.clone(), t.clone(), t.clone()],
                vec![t.clone(), z.clone(), t.clone()],
                vec![t.clone(), t.clone(), z.clone()],
            ],
            r,
            kind,
            theta,
        )
    }

    #[test]
    fn critical_exponent_table_examples() {
        let c = critical_exponent(3, SolutionKind::H01);
        assert_eq!(c.p_c, ExtRational::from_int(5));
        assert_eq!(c.threshold(), q(1, 4));
        assert_eq!(c.inv_conjugate, q(4, 5));
        assert_eq!(c.conjugate(), q(5, 4));

        let c = critical_exponent(3, SolutionKind::L1);
        assert_eq!(c.p_c, ExtRational::from_int(3));
        assert_eq!(c.threshold(), q(1, 2));

        let c = critical_exponent(2, SolutionKind::L1Delta);
        assert_eq!(c.p_c, ExtRational::from_int(3));
        assert_eq!(c.threshold(), q(1, 2));

        let c = critical_exponent(2, SolutionKind::H01);
        assert_eq!(c.p_c, ExtRational::Infinity);
        assert_eq!(c.threshold(), q(0, 1));
        assert_eq!(c.inv_conjugate, q(1, 1));
    }

    #[test]
    fn threshold_matches_closed_forms() {
        for d in 3..=10u32 {
            let di = i64::from(d);
            assert_eq!(
                critical_exponent(d, SolutionKind::H01).threshold(),
                q(di - 2, 4)
            );
            assert_eq!(
                critical_exponent(d, SolutionKind::L1).threshold(),
                q(di - 2, 2)
            );
        }
        for d in 2..=10u32 {
            let di = i64::from(d);
            assert_eq!(
                critical_exponent(d, SolutionKind::L1Delta).threshold(),
                q(di - 1, 2)
            );
        }
    }

    #[test]
    fn supercritical_symmetric_example() {
        let s = sym3(
            3,
            SolutionKind::H01,
            vec![q(1, 1); 3],
            Some(ExtRational::from_int(2)),
        );
        let v = classify(&s);
        assert_eq!(v.status, VerdictStatus::Supercritical);
        assert_eq!(v.evidence.max_alpha, Some(q(5, 1)));
        assert_eq!(v.evidence.threshold, q(1, 4));
        assert!(v.evidence.r_below_critical);
        assert_eq!(v.evidence.theta_above_conjugate, Some(true));
    }

    #[test]
    fn subcritical_high_dimension() {
        let s = sym3(23, SolutionKind::H01, vec![q(0, 1); 3], None);
        let v = classify(&s);
        // threshold (23-2)/4 = 21/4 > 5
        assert_eq!(v.status, VerdictStatus::Subcritical);
        assert_eq!(v.evidence.threshold, q(21, 4));
    }

    #[test]
    fn critical_equality_scalar() {
        // alpha = 1/(p-1) = 1; L1 threshold (d-2)/2 = 1 at d = 4
        let s = spec(
            4,
            vec![vec![q(2, 1)]],
            vec![q(0, 1)],
            SolutionKind::L1,
            None,
        );
        let v = classify(&s);
        assert_eq!(v.status, VerdictStatus::Critical);
    }

    #[test]
    fn not_covered_when_r_too_large() {
        // supercritical alpha but r = p_c exactly
        let s = spec(
            3,
            vec![vec![q(2, 1)]],
            vec![q(3, 1)],
            SolutionKind::L1,
            None,
        );
        let v = classify(&s);
        assert_eq!(v.status, VerdictStatus::NotCovered);
        assert!(!v.evidence.r_below_critical);
    }

    #[test]
    fn not_covered_when_theta_at_conjugate() {
        // theta = p_c' exactly: strict inequality fails
        let s = spec(
            3,
            vec![vec![q(2, 1)]],
            vec![q(0, 1)],
            SolutionKind::L1,
            Some(ExtRational::Finite(q(3, 2))),
        );
        let v = classify(&s);
        assert_eq!(v.status, VerdictStatus::NotCovered);
        assert_eq!(v.evidence.theta_above_conjugate, Some(false));
    }

    #[test]
    fn invalid_structure_reducible() {
        let s = spec(
            3,
            vec![vec![q(0, 1), q(2, 1)], vec![q(0, 1), q(0, 1)]],
            vec![q(0, 1); 2],
            SolutionKind::H01,
            None,
        );
        assert_eq!(classify(&s).status, VerdictStatus::InvalidStructure);
    }

    #[test]
    fn auto_regular_unit_product() {
        // p12 * p21 = 1: det(I-P) = 0, minors positive, lambdas 1+a, 1+b > 0
        let s = spec(
            3,
            vec![vec![q(0, 1), q(2, 1)], vec![q(1, 2), q(0, 1)]],
            vec![q(0, 1); 2],
            SolutionKind::L1,
            None,
        );
        let v = classify(&s);
        assert_eq!(v.status, VerdictStatus::AutoRegular);
        assert!(v.evidence.all_lambda_positive);
        assert_eq!(v.evidence.lambda, vec![q(3, 1), q(3, 2)]);
    }

    #[test]
    fn scalar_anchor_h01_d5_is_supercritical() {
        // alpha = 1 vs threshold 3/4: strictly greater, r and theta fine
        let s = spec(
            5,
            vec![vec![q(2, 1)]],
            vec![q(0, 1)],
            SolutionKind::H01,
            None,
        );
        let v = classify(&s);
        assert_eq!(v.status, VerdictStatus::Supercritical);
        assert_eq!(v.evidence.alpha_vs_threshold, Some(Ordering::Greater));
        assert_eq!(v.evidence.threshold, q(3, 4));
    }

    #[test]
    fn audit_supercritical_with_superlinearity() {
        // d = 3 very-weak data: p_c = 2, conjugate 2, so theta must exceed 2
        let s = sym3(
            3,
            SolutionKind::L1Delta,
            vec![q(1, 1); 3],
            Some(ExtRational::from_int(3)),
        );
        let mut atts = BTreeSet::new();
        atts.insert(Attestation::Superlinearity);
        let audit = theorem_audit(&s, &atts);
        let by_subject = |name: &str| audit.iter().find(|e| e.subject == name).unwrap();
        assert_eq!(
            by_subject("existence-superlinear(a)").status,
            AuditStatus::Holds
        );
        let b = by_subject("existence-superlinear(b)");
        assert_eq!(b.status, AuditStatus::NeedsAttestation);
        assert!(b.missing.iter().any(|m| m.contains("smallness")));
        assert_eq!(
            by_subject("a-priori-estimate").status,
            AuditStatus::NeedsAttestation
        );
    }

    #[test]
    fn audit_subcritical_all_fail() {
        let s = sym3(23, SolutionKind::L1Delta, vec![q(0, 1); 3], None);
        // threshold (23-1)/2 = 11 > 5: below the very-weak threshold
        let audit = theorem_audit(&s, &BTreeSet::new());
        assert!(audit.iter().all(|e| e.status == AuditStatus::Fails));
        assert!(audit[0]
            .missing
            .iter()
            .any(|m| m.contains("unbounded very-weak solution")));
    }

    #[test]
    fn audit_nuclear_reactor_holds() {
        let s = sym3(3, SolutionKind::L1Delta, vec![q(0, 1); 3], None);
        let mut atts = BTreeSet::new();
        atts.insert(Attestation::NuclearReactorForm);
        let audit = theorem_audit(&s, &atts);
        for subject in ["nuclear-reactor(a)", "nuclear-reactor(b)", "pure-power-existence"] {
            let e = audit.iter().find(|e| e.subject == subject).unwrap();
            assert_eq!(e.status, AuditStatus::Holds, "{subject}");
        }
    }
}

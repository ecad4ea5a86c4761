//! Regularity certification for semilinear elliptic systems.
//!
//! Given the exponent signature of a Dirichlet system `-Δu_i = f_i(x, u)`
//! with `|f_i| <= C(∏_j u_j^{p_ij} + u_i^{r_i}) + h(x)`, this crate decides
//! the optimal boundedness conditions for the three standard notions of weak
//! solution, and makes the decision auditable in both directions:
//!
//! * in the supercritical case it emits a finite, independently checkable
//!   certificate of integrability improvements ending in `L^∞` for every
//!   component;
//! * in the subcritical case it constructs the explicit unbounded radial
//!   solution on the unit ball, verifies the equation it satisfies, and
//!   classifies its function-space membership.
//!
//! Everything that feeds a strict inequality is exact rational arithmetic;
//! floating point appears only in a-posteriori residual checks.

pub mod bootstrap;
pub mod counterexample;
pub mod criticality;
pub mod digraph;
pub mod formats;
pub mod hiprec;
pub mod matrix;
pub mod rational;
pub mod scaling;
pub mod system;

pub use bootstrap::{
    check_certificate, generate_certificate, source_slowness, step_valid, waypoints,
    BootstrapCertificate, BootstrapState, CertifyConfig, CheckFailure, CheckFinding, CheckOutcome,
    GenerateError, Slowness, Step, StepCheck, WaypointCase, WaypointExponent, WaypointTable,
};
pub use counterexample::{
    boundary_cone_scope, classify_membership, construct_interior_singular, verify_identity,
    Coefficient, ConstructError, IdentityViolation, MembershipReport, SingularSolution,
    VerificationReport,
};
pub use criticality::{
    analyze, classify, critical_exponent, theorem_audit, Analysis, Attestation, AuditEntry,
    AuditStatus, CriticalExponent, Evidence, RegularityVerdict, VerdictStatus,
};
pub use matrix::{MatrixError, RMatrix};
pub use rational::{ExtRational, Rational};
pub use scaling::{
    build_q, compute_chain, compute_scaling, lambda_by_replacement, ChainData, ChainError,
    ScalingData, ScalingError,
};
pub use system::{
    diagonal_subunit_check, validate_structure, MalformedSpec, SolutionKind, StructureFailure,
    StructureReport, SystemSpec,
};

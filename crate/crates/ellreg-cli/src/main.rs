//! `ellreg`: decide the optimal boundedness conditions for a semilinear
//! elliptic system from its exponent data, emit and check bootstrap
//! certificates, and construct explicit singular solutions.
//!
//! Exit codes are part of the contract:
//!
//! | code | meaning                                          |
//! |------|--------------------------------------------------|
//! | 0    | primary claim verified                           |
//! | 2    | unreadable or malformed input                    |
//! | 10   | subcritical verdict                              |
//! | 11   | critical verdict                                 |
//! | 12   | not covered (side conditions fail)               |
//! | 13   | invalid structure                                |
//! | 20   | certificate search exhausted                     |
//! | 30   | certificate invalid                              |
//! | 31   | certificate/spec digest mismatch                 |
//! | 40   | counterexample construction precondition failed  |

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ellreg::formats::{certificate_document, report, spec_document};
use ellreg::{
    check_certificate, classify_membership, compute_chain, compute_scaling,
    construct_interior_singular, generate_certificate, theorem_audit, verify_identity,
    CertifyConfig, GenerateError, Rational, SolutionKind, VerdictStatus,
};

const EXIT_PARSE: u8 = 2;
const EXIT_SUBCRITICAL: u8 = 10;
const EXIT_CRITICAL: u8 = 11;
const EXIT_NOT_COVERED: u8 = 12;
const EXIT_INVALID_STRUCTURE: u8 = 13;
const EXIT_SEARCH_EXHAUSTED: u8 = 20;
const EXIT_CHECK_INVALID: u8 = 30;
const EXIT_DIGEST_MISMATCH: u8 = 31;
const EXIT_COUNTEREXAMPLE_PRECONDITION: u8 = 40;
const EXIT_INTERNAL: u8 = 1;

#[derive(Parser)]
#[command(name = "ellreg", version, about = "Regularity certification for semilinear elliptic systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the structure, compute scaling data, and report the verdict
    /// with its evidence and hypothesis audit.
    Analyze {
        /// Spec file
        spec: PathBuf,
    },
    /// Generate a machine-checkable bootstrap certificate for a
    /// supercritical (or auto-regular) spec.
    Certify {
        /// Spec file
        spec: PathBuf,
        /// Margin fraction kept on every step, as an exact rational in (0,1)
        #[arg(long, default_value = "1/100")]
        epsilon: String,
        /// Step budget for the generator
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        /// Write the certificate here; without it the document goes to stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Independently re-derive every step of a certificate.
    Check {
        /// Spec file
        spec: PathBuf,
        /// Certificate file
        certificate: PathBuf,
    },
    /// Construct the explicit unbounded radial solution for a subcritical
    /// spec, verify its equation, and classify its memberships.
    Counterexample {
        /// Spec file
        spec: PathBuf,
        /// Significant digits for the coefficients
        #[arg(long, default_value_t = 50)]
        digits: usize,
        /// Radii sampled by the numeric verification
        #[arg(long, default_value_t = 100)]
        radii: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze { spec } => cmd_analyze(&spec),
        Command::Certify {
            spec,
            epsilon,
            max_steps,
            out,
        } => cmd_certify(&spec, &epsilon, max_steps, out.as_deref()),
        Command::Check { spec, certificate } => cmd_check(&spec, &certificate),
        Command::Counterexample {
            spec,
            digits,
            radii,
        } => cmd_counterexample(&spec, digits, radii),
    };
    ExitCode::from(code)
}

fn load_spec(path: &Path) -> Result<spec_document::ParsedSpec, u8> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_PARSE
    })?;
    spec_document::parse(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_PARSE
    })
}

fn verdict_exit(status: VerdictStatus) -> u8 {
    match status {
        VerdictStatus::Supercritical | VerdictStatus::AutoRegular => 0,
        VerdictStatus::Subcritical => EXIT_SUBCRITICAL,
        VerdictStatus::Critical => EXIT_CRITICAL,
        VerdictStatus::NotCovered => EXIT_NOT_COVERED,
        VerdictStatus::InvalidStructure => EXIT_INVALID_STRUCTURE,
    }
}

fn cmd_analyze(path: &Path) -> u8 {
    let parsed = match load_spec(path) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let analysis = ellreg::analyze(&parsed.spec);
    let chain = compute_chain(&parsed.spec);
    let audit = theorem_audit(&parsed.spec, &parsed.attestations);
    print!(
        "{}",
        report::render_analysis(
            &parsed.spec,
            &parsed.attestations,
            &analysis.report,
            analysis.scaling.as_ref(),
            &chain,
            &analysis.verdict,
            &audit,
        )
    );
    verdict_exit(analysis.verdict.status)
}

fn cmd_certify(path: &Path, epsilon: &str, max_steps: usize, out: Option<&Path>) -> u8 {
    let parsed = match load_spec(path) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let epsilon = match Rational::parse(epsilon) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: --epsilon: {e}");
            return EXIT_PARSE;
        }
    };
    let config = CertifyConfig {
        epsilon,
        max_steps,
        delta0: None,
    };
    let cert = match generate_certificate(&parsed.spec, &config) {
        Ok(c) => c,
        Err(GenerateError::NotSupercritical { status }) => {
            eprintln!(
                "error: certification requires a supercritical or auto-regular verdict, got {status}"
            );
            return verdict_exit(status);
        }
        Err(e @ GenerateError::SearchExhausted { .. }) => {
            eprintln!("error: {e}");
            return EXIT_SEARCH_EXHAUSTED;
        }
        Err(e @ GenerateError::InvalidConfig { .. }) => {
            eprintln!("error: {e}");
            return EXIT_PARSE;
        }
    };
    let document = certificate_document::render(&cert);
    let summary = report::render_certify_summary(cert.steps.len(), &cert.spec_digest);
    match out {
        Some(out_path) => {
            if let Err(e) = fs::write(out_path, document) {
                eprintln!("error: cannot write {}: {e}", out_path.display());
                return EXIT_INTERNAL;
            }
            print!("{summary}");
        }
        None => {
            print!("{document}");
            eprint!("{summary}");
        }
    }
    0
}

fn cmd_check(spec_path: &Path, cert_path: &Path) -> u8 {
    let parsed = match load_spec(spec_path) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let cert_text = match fs::read_to_string(cert_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cert_path.display());
            return EXIT_PARSE;
        }
    };
    let cert = match certificate_document::parse(&cert_text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", cert_path.display());
            return EXIT_PARSE;
        }
    };
    let expected = spec_document::digest_hex(&parsed.spec);
    if cert.spec_digest != expected {
        eprintln!(
            "error: certificate belongs to a different spec (digest {}, expected {expected})",
            cert.spec_digest
        );
        return EXIT_DIGEST_MISMATCH;
    }
    let outcome = check_certificate(&parsed.spec, &cert);
    print!("{}", report::render_check(&outcome));
    if outcome.ok {
        0
    } else {
        EXIT_CHECK_INVALID
    }
}

fn cmd_counterexample(path: &Path, digits: usize, radii: usize) -> u8 {
    let parsed = match load_spec(path) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let analysis = ellreg::analyze(&parsed.spec);
    if analysis.verdict.status != VerdictStatus::Subcritical {
        eprintln!(
            "error: the explicit singular solution exists only below the threshold; verdict is {}",
            analysis.verdict.status
        );
        return EXIT_COUNTEREXAMPLE_PRECONDITION;
    }
    if parsed.spec.kind() == SolutionKind::L1Delta {
        let scope = ellreg::boundary_cone_scope();
        eprintln!("error: {}", scope.message);
        for input in scope.required_inputs {
            eprintln!("  requires: {input}");
        }
        return EXIT_COUNTEREXAMPLE_PRECONDITION;
    }
    let scaling = match compute_scaling(&parsed.spec) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_COUNTEREXAMPLE_PRECONDITION;
        }
    };
    let sol = match construct_interior_singular(&parsed.spec, &scaling, digits) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_COUNTEREXAMPLE_PRECONDITION;
        }
    };
    let verification = match verify_identity(&parsed.spec, &sol, radii) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: identity verification failed: {e}");
            return EXIT_INTERNAL;
        }
    };
    let membership = classify_membership(&sol, parsed.spec.kind(), &[]);
    print!(
        "{}",
        report::render_counterexample(&parsed.spec, &sol, &membership, &verification)
    );
    0
}

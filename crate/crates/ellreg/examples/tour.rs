//! End-to-end tour of the library on one family of systems: the three-way
//! symmetric coupling with exponent 3/5, which flips from supercritical to
//! subcritical as the dimension grows.

use ellreg::{
    check_certificate, classify, classify_membership, compute_chain, compute_scaling,
    construct_interior_singular, generate_certificate, verify_identity, CertifyConfig, RMatrix,
    Rational, SolutionKind, SystemSpec, VerdictStatus,
};

fn sym3(d: u32) -> SystemSpec {
    let t = Rational::new(3, 5);
    let z = Rational::zero();
    SystemSpec::new(
        d,
        RMatrix::from_rows(vec![
            vec![z.clone(), t.clone(), t.clone()],
            vec![t.clone(), z.clone(), t.clone()],
            vec![t.clone(), t.clone(), z.clone()],
        ]),
        vec![Rational::zero(); 3],
        SolutionKind::H01,
        None,
    )
    .unwrap()
}

fn main() {
    // low dimension: the growth rate wins
    let spec = sym3(3);
    let scaling = compute_scaling(&spec).unwrap();
    println!("d=3: alpha = {:?}", scaling.alpha);
    let chain = compute_chain(&spec).unwrap();
    println!("d=3: chain = {:?}", chain.chain);
    let verdict = classify(&spec);
    assert_eq!(verdict.status, VerdictStatus::Supercritical);
    let cert = generate_certificate(&spec, &CertifyConfig::default()).unwrap();
    println!(
        "d=3: {} -> certificate with {} steps, checker says {}",
        verdict.status,
        cert.steps.len(),
        check_certificate(&spec, &cert).ok
    );

    // high dimension: the same coupling admits an unbounded solution
    let spec = sym3(23);
    let verdict = classify(&spec);
    assert_eq!(verdict.status, VerdictStatus::Subcritical);
    let scaling = compute_scaling(&spec).unwrap();
    let sol = construct_interior_singular(&spec, &scaling, 50).unwrap();
    println!(
        "d=23: {} -> c_1 = {} (exact: {})",
        verdict.status,
        sol.coefficients[0].decimal,
        sol.coefficients[0]
            .exact
            .as_ref()
            .map_or("-".to_string(), |v| v.to_string())
    );
    let report = verify_identity(&spec, &sol, 100).unwrap();
    println!(
        "d=23: residual {:e} over {} radii",
        report.max_numeric_residual, report.radii_sampled
    );
    let membership = classify_membership(&sol, SolutionKind::H01, &[]);
    println!(
        "d=23: unbounded yet a genuine h01-solution: {}",
        membership.solution_in_kind
    );
}

//! Explicit unbounded radial solutions on the unit ball for subcritical
//! exponent data.
//!
//! When `max alpha < (d-2)/2` the system with reactions
//! `f_i = prod_j (u_j + c_j)^{p_ij}` admits the positive singular solution
//! `u_i(x) = c_i (|x|^{-2 alpha_i} - 1)`: the radial Laplacian of the power
//! law produces `2 c_i alpha_i (d - 2 - 2 alpha_i) |x|^{-2 alpha_i - 2}`, and
//! the coefficients `c_i` are fixed by the log-linear system
//! `prod_j c_j^{p_ij} = 2 c_i alpha_i (d - 2 - 2 alpha_i)`. The exponent
//! balance is exactly the scaling identity, so the construction certifies the
//! optimality side of the regularity criterion.
//!
//! Coefficients are generally irrational (rational powers of rational
//! products), so each `c_i` is stored as exact provenance — a rational
//! combination of logarithms — plus a fixed-point decimal evaluation, with an
//! exact value attached whenever the combination is a perfect root.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::hiprec::{approx_ln_f64, EvalError, Evaluator, Fixed};
use crate::rational::Rational;
use crate::scaling::ScalingData;
use crate::system::{validate_structure, SolutionKind, SystemSpec};

/// Bit budget for exact monomial expansion; beyond this only the decimal
/// evaluation is kept.
const EXACT_MONOMIAL_BIT_CAP: u64 = 2_000_000;

/// One coefficient of the singular solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coefficient {
    /// Present when the monomial is a perfect root, i.e. `c_i` is rational.
    pub exact: Option<Rational>,
    /// Decimal rendering at the construction precision.
    pub decimal: String,
}

/// The radial singular solution `u_i(r) = c_i (r^{-2 alpha_i} - 1)` on
/// `0 < r <= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularSolution {
    pub d: u32,
    pub alpha: Vec<Rational>,
    pub coefficients: Vec<Coefficient>,
    /// Exact provenance: `ln c_i = sum_j log_weights[i][j] * ln b_j`.
    pub log_weights: Vec<Vec<Rational>>,
    /// `b_i = 2 alpha_i (d - 2 - 2 alpha_i)`, all positive under the
    /// construction precondition.
    pub b: Vec<Rational>,
    /// Significant digits of the decimal evaluations.
    pub digits: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructError {
    /// `d < 3`, inadmissible structure, or `max alpha >= (d-2)/2`.
    PreconditionViolated { detail: String },
    /// Coefficient magnitudes outside the evaluable range.
    MagnitudeOutOfRange,
    /// The fixed-point residual check failed; indicates an evaluation bug,
    /// never expected on valid inputs.
    NumericalCheckFailed { component: usize },
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::PreconditionViolated { detail } => {
                write!(f, "construction precondition violated: {detail}")
            }
            ConstructError::MagnitudeOutOfRange => {
                write!(f, "coefficient magnitude outside the evaluable range")
            }
            ConstructError::NumericalCheckFailed { component } => {
                write!(
                    f,
                    "fixed-point residual check failed for component {}",
                    component + 1
                )
            }
        }
    }
}

impl std::error::Error for ConstructError {}

impl From<EvalError> for ConstructError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::MagnitudeOutOfRange | EvalError::DigitsOutOfRange => {
                ConstructError::MagnitudeOutOfRange
            }
            EvalError::NonPositiveLog => ConstructError::PreconditionViolated {
                detail: "logarithm of a non-positive coefficient".to_string(),
            },
        }
    }
}

/// Build the singular solution for an admissible spec with `d >= 3` and
/// `max alpha < (d-2)/2`.
///
/// The log-linear system `(I-P) ln c = -ln b` is solved symbolically: the
/// weight matrix `-(I-P)^{-1}` is computed exactly, so each `ln c_i` is an
/// exact rational combination of the `ln b_j`. Exponentiation happens in
/// fixed-point decimal arithmetic at the requested precision and the
/// coefficient identity is re-checked a posteriori with a
/// `10^-(digits-10)` relative tolerance.
pub fn construct_interior_singular(
    spec: &SystemSpec,
    scaling: &ScalingData,
    digits: usize,
) -> Result<SingularSolution, ConstructError> {
    let n = spec.n();
    let d = spec.d();
    if d < 3 {
        return Err(ConstructError::PreconditionViolated {
            detail: format!("dimension {d} < 3"),
        });
    }
    let report = validate_structure(spec);
    if !report.admissible {
        return Err(ConstructError::PreconditionViolated {
            detail: "structure is not admissible".to_string(),
        });
    }
    let half_gap = Rational::new(i64::from(d) - 2, 2);
    if scaling.max_alpha() >= &half_gap {
        return Err(ConstructError::PreconditionViolated {
            detail: format!(
                "max alpha {} is not below (d-2)/2 = {half_gap}",
                scaling.max_alpha()
            ),
        });
    }

    // b_i = 2 alpha_i (d - 2 - 2 alpha_i) > 0
    let two = Rational::from_int(2);
    let d_minus_2 = Rational::from_int(i64::from(d) - 2);
    let b: Vec<Rational> = scaling
        .alpha
        .iter()
        .map(|a| &(&two * a) * &(&d_minus_2 - &(&two * a)))
        .collect();
    debug_assert!(b.iter().all(Rational::is_positive));

    // ln c = -(I-P)^{-1} ln b: solve one column at a time
    let imp = spec.i_minus_p();
    let mut log_weights = vec![vec![Rational::zero(); n]; n];
    for j in 0..n {
        let mut rhs = vec![Rational::zero(); n];
        rhs[j] = -Rational::one();
        let col = imp.solve(&rhs).expect("admissible implies nonsingular");
        for i in 0..n {
            log_weights[i][j] = col[i].clone();
        }
    }

    // exponent identity: sum_j p_ij alpha_j = alpha_i + 1, exactly
    for i in 0..n {
        let mut acc = Rational::zero();
        for j in 0..n {
            acc += &(spec.p_at(i, j) * &scaling.alpha[j]);
        }
        assert_eq!(acc, &scaling.alpha[i] + &Rational::one());
    }

    let ev = Evaluator::new(digits).map_err(ConstructError::from)?;
    let ln_b: Vec<Fixed> = b
        .iter()
        .map(|v| ev.ln_rational(v).map_err(ConstructError::from))
        .collect::<Result<_, _>>()?;
    let ln_c: Vec<Fixed> = (0..n)
        .map(|i| {
            let mut acc = ev.zero();
            for j in 0..n {
                acc = ev.add(&acc, &ev.mul_rational(&ln_b[j], &log_weights[i][j]));
            }
            acc
        })
        .collect();
    let c_fix: Vec<Fixed> = ln_c
        .iter()
        .map(|x| ev.exp(x).map_err(ConstructError::from))
        .collect::<Result<_, _>>()?;

    // a-posteriori residual of the coefficient identity
    let tolerance = ev.pow10_neg(digits.saturating_sub(10).max(1));
    for i in 0..n {
        let mut lhs_log = ev.zero();
        for j in 0..n {
            lhs_log = ev.add(&lhs_log, &ev.mul_rational(&ln_c[j], spec.p_at(i, j)));
        }
        let lhs = ev.exp(&lhs_log).map_err(ConstructError::from)?;
        let rhs = ev.mul_rational(&c_fix[i], &b[i]);
        let residual = ev.div_fixed(&ev.sub(&lhs, &rhs).abs(), &rhs);
        if residual > tolerance {
            return Err(ConstructError::NumericalCheckFailed { component: i });
        }
    }

    let coefficients: Vec<Coefficient> = (0..n)
        .map(|i| {
            let exact = exact_monomial(&b, &log_weights[i]);
            let decimal = match &exact {
                Some(v) => ev.to_decimal_string(&ev.from_rational(v), digits),
                None => ev.to_decimal_string(&c_fix[i], digits),
            };
            Coefficient { exact, decimal }
        })
        .collect();

    Ok(SingularSolution {
        d,
        alpha: scaling.alpha.clone(),
        coefficients,
        log_weights,
        b,
        digits,
    })
}

/// Try to express `prod_j base_j^(w_j)` as an exact rational: raise to the
/// common denominator of the weights and test for a perfect root.
fn exact_monomial(bases: &[Rational], weights: &[Rational]) -> Option<Rational> {
    let mut denom_lcm = BigInt::from(1u8);
    for w in weights {
        denom_lcm = denom_lcm.lcm(w.denom());
    }
    // integer exponents m_j = w_j * lcm
    let mut num = BigInt::from(1u8);
    let mut den = BigInt::from(1u8);
    let mut bits: u64 = 0;
    for (base, w) in bases.iter().zip(weights) {
        let m = (w.numer() * &denom_lcm) / w.denom();
        let m_i64 = m.to_i64()?;
        let e = m_i64.unsigned_abs().try_into().ok()?;
        bits += (base.numer().bits() + base.denom().bits()) * u64::from(e);
        if bits > EXACT_MONOMIAL_BIT_CAP {
            return None;
        }
        let (bn, bd) = if m_i64 >= 0 {
            (base.numer().clone(), base.denom().clone())
        } else {
            (base.denom().clone(), base.numer().clone())
        };
        num *= bn.pow(e);
        den *= bd.pow(e);
    }
    let root = denom_lcm.to_u32()?;
    if root == 1 {
        return Rational::from_big(num, den).ok();
    }
    let num_root = num.nth_root(root);
    let den_root = den.nth_root(root);
    if num_root.clone().pow(root) == num && den_root.clone().pow(root) == den {
        Rational::from_big(num_root, den_root).ok()
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    /// Components whose coefficient identity was certified exactly by
    /// integer-power comparison.
    pub exact_components: usize,
    /// Worst relative residual of the numeric check over all radii and
    /// components.
    pub max_numeric_residual: f64,
    pub radii_sampled: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum IdentityViolation {
    ExponentBalance { component: usize },
    CoefficientIdentity { component: usize },
    NumericResidual { component: usize, radius: f64, residual: f64 },
}

impl fmt::Display for IdentityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityViolation::ExponentBalance { component } => {
                write!(f, "exponent balance fails for component {}", component + 1)
            }
            IdentityViolation::CoefficientIdentity { component } => {
                write!(f, "coefficient identity fails for component {}", component + 1)
            }
            IdentityViolation::NumericResidual {
                component,
                radius,
                residual,
            } => write!(
                f,
                "numeric residual {residual:.3e} at radius {radius:.6e} for component {}",
                component + 1
            ),
        }
    }
}

/// Numeric residual accepted when sampling the equation at radii.
pub const NUMERIC_RESIDUAL_BOUND: f64 = 1e-9;

/// Verify that the stored solution satisfies its equation.
///
/// Symbolically: the exponent balance `2 alpha_i + 2 = 2 sum_j p_ij alpha_j`
/// is checked in exact rational arithmetic, and the coefficient identity
/// `prod_j c_j^{p_ij} = b_i c_i` is certified by exact integer-power
/// comparison whenever every participating coefficient is exactly rational.
/// Numerically: both sides are evaluated in floating point at log-spaced
/// radii in `[1e-3, 1)` — the radial Laplacian from the closed form, the
/// right side from the product — and the relative residual must stay below
/// `1e-9`.
pub fn verify_identity(
    spec: &SystemSpec,
    sol: &SingularSolution,
    sample_radii: usize,
) -> Result<VerificationReport, IdentityViolation> {
    let n = spec.n();
    let two = Rational::from_int(2);

    for i in 0..n {
        let mut acc = Rational::zero();
        for j in 0..n {
            acc += &(spec.p_at(i, j) * &sol.alpha[j]);
        }
        // 2 alpha_i + 2 = 2 sum_j p_ij alpha_j
        if &two * &acc != &(&two * &sol.alpha[i]) + &two {
            return Err(IdentityViolation::ExponentBalance { component: i });
        }
    }

    let mut exact_components = 0;
    for i in 0..n {
        if let Some(count) = check_coefficient_exact(spec, sol, i) {
            if !count {
                return Err(IdentityViolation::CoefficientIdentity { component: i });
            }
            exact_components += 1;
        }
    }

    // float evaluation in log space; ln c_i from the exact provenance
    let ln_b: Vec<f64> = sol.b.iter().map(approx_ln_f64).collect();
    let ln_c: Vec<f64> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| sol.log_weights[i][j].approx_f64() * ln_b[j])
                .sum()
        })
        .collect();
    let alpha_f: Vec<f64> = sol.alpha.iter().map(Rational::approx_f64).collect();

    let mut max_residual = 0.0f64;
    let m = sample_radii.max(1);
    for t in 0..m {
        let exponent = -3.0 * ((m - t) as f64) / (m as f64);
        let radius = 10f64.powf(exponent);
        let ln_r = radius.ln();
        for i in 0..n {
            // -Δu_i = b_i c_i r^(-2 alpha_i - 2), in logs
            let lhs = ln_b[i] + ln_c[i] + (-2.0 * alpha_f[i] - 2.0) * ln_r;
            // prod_j (u_j + c_j)^{p_ij} = prod_j (c_j r^(-2 alpha_j))^{p_ij}
            let rhs: f64 = (0..n)
                .map(|j| spec.p_at(i, j).approx_f64() * (ln_c[j] - 2.0 * alpha_f[j] * ln_r))
                .sum();
            let residual = (lhs - rhs).exp_m1().abs();
            if residual > max_residual {
                max_residual = residual;
            }
            if residual >= NUMERIC_RESIDUAL_BOUND {
                return Err(IdentityViolation::NumericResidual {
                    component: i,
                    radius,
                    residual,
                });
            }
        }
    }

    Ok(VerificationReport {
        exact_components,
        max_numeric_residual: max_residual,
        radii_sampled: m,
    })
}

/// Exact check of `prod_j c_j^{p_ij} = b_i c_i` when all participating
/// coefficients are rational: raise both sides to the common denominator of
/// the exponents and compare integers. `None` when not exactly checkable.
fn check_coefficient_exact(spec: &SystemSpec, sol: &SingularSolution, i: usize) -> Option<bool> {
    let n = spec.n();
    let c_i = sol.coefficients[i].exact.as_ref()?;
    let mut denom_lcm = BigInt::from(1u8);
    for j in 0..n {
        if spec.p_at(i, j).is_positive() {
            sol.coefficients[j].exact.as_ref()?;
        }
        denom_lcm = denom_lcm.lcm(spec.p_at(i, j).denom());
    }
    let root = denom_lcm.to_u32()?;
    let mut lhs = Rational::one();
    let mut bits: u64 = 0;
    for j in 0..n {
        let p = spec.p_at(i, j);
        if !p.is_positive() {
            continue;
        }
        let c_j = sol.coefficients[j].exact.as_ref()?;
        let e_big = (p.numer() * &denom_lcm) / p.denom();
        let e: u32 = e_big.to_u32()?;
        bits += (c_j.numer().bits() + c_j.denom().bits()) * u64::from(e);
        if bits > EXACT_MONOMIAL_BIT_CAP {
            return None;
        }
        lhs = lhs * c_j.pow(e as i32);
    }
    let rhs = (&sol.b[i] * c_i).pow(root as i32);
    Some(lhs == rhs)
}

/// Which spaces each component of the singular solution lives in, by the
/// exact power-law rule `r^(-beta) in L^k(B_1) iff beta * k < d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentMembership {
    /// Always false: the solution is unbounded at the origin.
    pub in_linf: bool,
    /// Gradient square-integrable: `alpha_i < (d-2)/4`.
    pub in_h01: bool,
    /// `u_i in L^1`: `2 alpha_i < d`.
    pub in_l1: bool,
    /// `f_i in L^1`: `alpha_i < (d-2)/2`.
    pub f_in_l1: bool,
    /// Queried exponents: `u_i in L^k iff 2 alpha_i k < d`.
    pub in_lk: Vec<(Rational, bool)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub components: Vec<ComponentMembership>,
    /// The vector is a weak solution of the queried kind: all gradients in
    /// `L^2` for `h01`; `u` and `f` integrable for `l1` (the boundary-weight
    /// variant coincides for an interior singularity).
    pub solution_in_kind: bool,
}

pub fn classify_membership(
    sol: &SingularSolution,
    kind: SolutionKind,
    queried_k: &[Rational],
) -> MembershipReport {
    let d = Rational::from_int(i64::from(sol.d));
    let grad_threshold = Rational::new(i64::from(sol.d) - 2, 4);
    let source_threshold = Rational::new(i64::from(sol.d) - 2, 2);
    let two = Rational::from_int(2);
    let components: Vec<ComponentMembership> = sol
        .alpha
        .iter()
        .map(|a| ComponentMembership {
            in_linf: false,
            in_h01: *a < grad_threshold,
            in_l1: &two * a < d,
            f_in_l1: *a < source_threshold,
            in_lk: queried_k
                .iter()
                .map(|k| (k.clone(), &(&two * a) * k < d))
                .collect(),
        })
        .collect();
    let solution_in_kind = match kind {
        SolutionKind::H01 => components.iter().all(|c| c.in_h01),
        SolutionKind::L1 | SolutionKind::L1Delta => {
            components.iter().all(|c| c.in_l1 && c.f_in_l1)
        }
    };
    MembershipReport {
        components,
        solution_in_kind,
    }
}

/// What building the boundary-cone counterexample for very weak solutions
/// would take; this tool deliberately does not compute it.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryConstructionScope {
    pub message: &'static str,
    pub required_inputs: &'static [&'static str],
}

pub fn boundary_cone_scope() -> BoundaryConstructionScope {
    BoundaryConstructionScope {
        message: "unbounded very-weak solutions below the threshold concentrate on a cone at a \
                  boundary vertex; building them requires Green-function lower bounds that this \
                  tool does not compute",
        required_inputs: &[
            "Green-function lower bound on a revolution cone at a boundary point",
            "admissible cone aperture for the prescribed singularity exponents",
        ],
    }
}

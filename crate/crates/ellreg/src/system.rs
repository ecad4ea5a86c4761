//! The input data model: the exponent signature of a semilinear elliptic
//! system and the structural hypotheses it must satisfy.
//!
//! A system `-Δu_i = f_i(x, u)` with `|f_i| <= C(∏_j u_j^{p_ij} + u_i^{r_i}) + h`
//! is described here purely by its exponent data: the matrix `P = (p_ij)`,
//! the self-exponents `r_i`, the space dimension `d`, the notion of weak
//! solution, and the integrability exponent of the inhomogeneity `h` when one
//! is present.

use std::fmt;

use crate::digraph::strongly_connected;
use crate::matrix::RMatrix;
use crate::rational::{ExtRational, Rational};

/// Component counts beyond this are rejected outright; the principal-minor
/// enumeration is exponential and real instances are tiny.
pub const MAX_COMPONENTS: usize = 16;

/// The three notions of weak solution with an L^m-L^k linear theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolutionKind {
    /// Variational solutions in H_0^1.
    H01,
    /// Distributional solutions with L^1 data.
    L1,
    /// Very weak solutions tested against C^2 functions vanishing on the
    /// boundary, with data integrable against the boundary distance.
    L1Delta,
}

impl SolutionKind {
    pub const ALL: [SolutionKind; 3] = [SolutionKind::H01, SolutionKind::L1, SolutionKind::L1Delta];

    pub fn as_str(self) -> &'static str {
        match self {
            SolutionKind::H01 => "h01",
            SolutionKind::L1 => "l1",
            SolutionKind::L1Delta => "l1delta",
        }
    }

    pub fn parse(s: &str) -> Option<SolutionKind> {
        match s {
            "h01" => Some(SolutionKind::H01),
            "l1" => Some(SolutionKind::L1),
            "l1delta" => Some(SolutionKind::L1Delta),
            _ => None,
        }
    }
}

impl fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Exponent signature of one elliptic system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSpec {
    n: usize,
    d: u32,
    p: RMatrix,
    r: Vec<Rational>,
    kind: SolutionKind,
    /// Integrability exponent of `h` in the solution kind's own scale;
    /// `None` means the growth bound carries no inhomogeneous term.
    theta: Option<ExtRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MalformedSpec {
    ZeroComponents,
    TooManyComponents { n: usize },
    ZeroDimension,
    ExponentMatrixShape { rows: usize, cols: usize, n: usize },
    NegativeExponent { i: usize, j: usize },
    SelfExponentCount { got: usize, n: usize },
    NegativeSelfExponent { i: usize },
    NonpositiveTheta,
}

impl fmt::Display for MalformedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MalformedSpec::ZeroComponents => write!(f, "component count must be at least 1"),
            MalformedSpec::TooManyComponents { n } => {
                write!(f, "component count {n} exceeds the supported maximum {MAX_COMPONENTS}")
            }
            MalformedSpec::ZeroDimension => write!(f, "dimension must be at least 1"),
            MalformedSpec::ExponentMatrixShape { rows, cols, n } => {
                write!(f, "exponent matrix is {rows}x{cols}, expected {n}x{n}")
            }
            MalformedSpec::NegativeExponent { i, j } => {
                write!(f, "exponent p[{},{}] is negative", i + 1, j + 1)
            }
            MalformedSpec::SelfExponentCount { got, n } => {
                write!(f, "expected {n} self-exponents, got {got}")
            }
            MalformedSpec::NegativeSelfExponent { i } => {
                write!(f, "self-exponent r[{}] is negative", i + 1)
            }
            MalformedSpec::NonpositiveTheta => write!(f, "theta must be positive"),
        }
    }
}

impl std::error::Error for MalformedSpec {}

impl SystemSpec {
    pub fn new(
        d: u32,
        p: RMatrix,
        r: Vec<Rational>,
        kind: SolutionKind,
        theta: Option<ExtRational>,
    ) -> Result<Self, MalformedSpec> {
        let n = p.rows();
        if n == 0 {
            return Err(MalformedSpec::ZeroComponents);
        }
        if n > MAX_COMPONENTS {
            return Err(MalformedSpec::TooManyComponents { n });
        }
        if d == 0 {
            return Err(MalformedSpec::ZeroDimension);
        }
        if p.cols() != n {
            return Err(MalformedSpec::ExponentMatrixShape {
                rows: p.rows(),
                cols: p.cols(),
                n,
            });
        }
        for i in 0..n {
            for j in 0..n {
                if p.at(i, j).is_negative() {
                    return Err(MalformedSpec::NegativeExponent { i, j });
                }
            }
        }
        if r.len() != n {
            return Err(MalformedSpec::SelfExponentCount { got: r.len(), n });
        }
        if let Some(i) = r.iter().position(Rational::is_negative) {
            return Err(MalformedSpec::NegativeSelfExponent { i });
        }
        if let Some(t) = &theta {
            if !t.is_positive() {
                return Err(MalformedSpec::NonpositiveTheta);
            }
        }
        Ok(SystemSpec { n, d, p, r, kind, theta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn p(&self) -> &RMatrix {
        &self.p
    }

    pub fn p_at(&self, i: usize, j: usize) -> &Rational {
        self.p.at(i, j)
    }

    pub fn r(&self) -> &[Rational] {
        &self.r
    }

    pub fn kind(&self) -> SolutionKind {
        self.kind
    }

    pub fn theta(&self) -> Option<&ExtRational> {
        self.theta.as_ref()
    }

    pub fn has_h(&self) -> bool {
        self.theta.is_some()
    }

    pub fn max_r(&self) -> Rational {
        self.r
            .iter()
            .cloned()
            .fold(Rational::zero(), Rational::max)
    }

    /// Row sum `Σ_j p_ij`.
    pub fn row_sum(&self, i: usize) -> Rational {
        let mut acc = Rational::zero();
        for j in 0..self.n {
            acc += self.p.at(i, j);
        }
        acc
    }

    /// `I - P`, the structural matrix everything else is built from.
    pub fn i_minus_p(&self) -> RMatrix {
        let mut m = RMatrix::zero(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let v = if i == j {
                    Rational::one() - self.p.at(i, j).clone()
                } else {
                    -self.p.at(i, j)
                };
                *m.at_mut(i, j) = v;
            }
        }
        m
    }

    /// Positivity digraph: edge `i -> j` iff `p_ij > 0`, `i != j`.
    pub fn positivity_digraph(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| i != j && self.p.at(i, j).is_positive())
                    .collect()
            })
            .collect()
    }
}

/// Named structural condition that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureFailure {
    NotIrreducible,
    /// A proper principal minor of `I - P` that is not strictly positive.
    /// Components are 1-based in the report.
    NonpositivePrincipalMinor { subset: Vec<usize>, value: Rational },
    DeterminantNotNegative { value: Rational },
}

impl fmt::Display for StructureFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureFailure::NotIrreducible => {
                write!(f, "positivity digraph is not strongly connected")
            }
            StructureFailure::NonpositivePrincipalMinor { subset, value } => {
                let names: Vec<String> = subset.iter().map(|i| (i + 1).to_string()).collect();
                write!(
                    f,
                    "principal minor on components {{{}}} is {value}, not positive",
                    names.join(",")
                )
            }
            StructureFailure::DeterminantNotNegative { value } => {
                write!(f, "det(I-P) = {value} is not negative")
            }
        }
    }
}

/// Outcome of the structural audit of `I - P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub irreducible: bool,
    /// All `2^n - 2` proper nonempty principal minors of `I - P` strictly positive.
    pub principal_minors_positive: bool,
    pub det_i_minus_p: Rational,
    pub admissible: bool,
    pub failures: Vec<StructureFailure>,
}

/// Check irreducibility, all proper principal minors, and the sign of
/// `det(I - P)`. Admissible means all three hold, with the determinant
/// strictly negative.
pub fn validate_structure(spec: &SystemSpec) -> StructureReport {
    let n = spec.n();
    let imp = spec.i_minus_p();
    let mut failures = Vec::new();

    let irreducible = strongly_connected(&spec.positivity_digraph());
    if !irreducible {
        failures.push(StructureFailure::NotIrreducible);
    }

    let mut principal_minors_positive = true;
    // proper nonempty subsets, smallest first, lexicographic within a size
    for mask in 1u32..(1 << n) - 1 {
        let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let det = imp
            .principal_submatrix(&subset)
            .det()
            .expect("square by construction");
        if !det.is_positive() {
            principal_minors_positive = false;
            failures.push(StructureFailure::NonpositivePrincipalMinor {
                subset,
                value: det,
            });
        }
    }

    let det_i_minus_p = imp.det().expect("square by construction");
    if !det_i_minus_p.is_negative() {
        failures.push(StructureFailure::DeterminantNotNegative {
            value: det_i_minus_p.clone(),
        });
    }

    let admissible =
        irreducible && principal_minors_positive && det_i_minus_p.is_negative();
    StructureReport {
        irreducible,
        principal_minors_positive,
        det_i_minus_p,
        admissible,
        failures,
    }
}

/// `p_ii < 1` for every component. For two or more components this is
/// implied by the positivity of the 1x1 principal minors and kept as a
/// cross-check, not an independent gate; a scalar system has no proper
/// minors and its admissibility means `p > 1`, so the check fails there.
pub fn diagonal_subunit_check(spec: &SystemSpec) -> bool {
    (0..spec.n()).all(|i| spec.p_at(i, i) < &Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    pub(crate) fn spec_from_p(
        d: u32,
        rows: Vec<Vec<Rational>>,
        kind: SolutionKind,
    ) -> SystemSpec {
        let n = rows.len();
        SystemSpec::new(d, RMatrix::from_rows(rows), vec![Rational::zero(); n], kind, None)
            .unwrap()
    }

    #[test]
    fn admissible_two_component() {
        let spec = spec_from_p(
            3,
            vec![vec![q(0, 1), q(2, 1)], vec![q(3, 1), q(0, 1)]],
            SolutionKind::H01,
        );
        let rep = validate_structure(&spec);
        assert!(rep.admissible);
        assert!(rep.irreducible);
        assert!(rep.principal_minors_positive);
        assert_eq!(rep.det_i_minus_p, q(-5, 1));
        assert!(rep.failures.is_empty());
        // the two 1x1 minors are 1 and 1
        let imp = spec.i_minus_p();
        assert_eq!(imp.principal_submatrix(&[0]).det().unwrap(), q(1, 1));
        assert_eq!(imp.principal_submatrix(&[1]).det().unwrap(), q(1, 1));
    }

    #[test]
    fn all_ones_off_diagonal_fails_minor() {
        let one = q(1, 1);
        let zero = q(0, 1);
        let spec = spec_from_p(
            3,
            vec![
                vec![zero.clone(), one.clone(), one.clone()],
                vec![one.clone(), zero.clone(), one.clone()],
                vec![one.clone(), one.clone(), zero.clone()],
            ],
            SolutionKind::L1,
        );
        let rep = validate_structure(&spec);
        assert!(!rep.admissible);
        assert!(!rep.principal_minors_positive);
        // the 2x2 principal minor 1 - 1*1 = 0 is not > 0
        assert!(rep.failures.iter().any(|fail| matches!(
            fail,
            StructureFailure::NonpositivePrincipalMinor { subset, value }
                if subset.len() == 2 && value.is_zero()
        )));
    }

    #[test]
    fn reducible_pattern_rejected() {
        let spec = spec_from_p(
            3,
            vec![vec![q(0, 1), q(2, 1)], vec![q(0, 1), q(0, 1)]],
            SolutionKind::H01,
        );
        let rep = validate_structure(&spec);
        assert!(!rep.admissible);
        assert!(!rep.irreducible);
        assert!(rep
            .failures
            .iter()
            .any(|fail| matches!(fail, StructureFailure::NotIrreducible)));
    }

    #[test]
    fn scalar_component() {
        // n = 1, p > 1: no proper minors, irreducible vacuously, det = 1 - p < 0
        let spec = spec_from_p(3, vec![vec![q(2, 1)]], SolutionKind::L1);
        let rep = validate_structure(&spec);
        assert!(rep.admissible);
        assert_eq!(rep.det_i_minus_p, q(-1, 1));
    }

    #[test]
    fn diagonal_check_examples() {
        let spec = spec_from_p(
            3,
            vec![vec![q(0, 1), q(2, 1)], vec![q(3, 1), q(0, 1)]],
            SolutionKind::H01,
        );
        assert!(diagonal_subunit_check(&spec));
        let spec = spec_from_p(
            3,
            vec![vec![q(1, 1), q(2, 1)], vec![q(3, 1), q(0, 1)]],
            SolutionKind::H01,
        );
        assert!(!diagonal_subunit_check(&spec));
        let spec = spec_from_p(
            3,
            vec![vec![q(1, 2), q(2, 1)], vec![q(3, 1), q(1, 2)]],
            SolutionKind::H01,
        );
        assert!(diagonal_subunit_check(&spec));
    }

    #[test]
    fn admissible_implies_diagonal_subunit() {
        // 1x1 minors positive means 1 - p_ii > 0
        let spec = spec_from_p(
            3,
            vec![vec![q(1, 2), q(2, 1)], vec![q(3, 1), q(1, 4)]],
            SolutionKind::L1Delta,
        );
        let rep = validate_structure(&spec);
        if rep.admissible {
            assert!(diagonal_subunit_check(&spec));
        }
    }

    #[test]
    fn malformed_specs_rejected() {
        let p = RMatrix::from_rows(vec![vec![q(0, 1), q(-1, 1)], vec![q(1, 1), q(0, 1)]]);
        let err = SystemSpec::new(3, p, vec![q(0, 1); 2], SolutionKind::H01, None).unwrap_err();
        assert!(matches!(err, MalformedSpec::NegativeExponent { i: 0, j: 1 }));

        let p = RMatrix::from_rows(vec![vec![q(2, 1)]]);
        let err = SystemSpec::new(0, p, vec![q(0, 1)], SolutionKind::H01, None).unwrap_err();
        assert!(matches!(err, MalformedSpec::ZeroDimension));

        let p = RMatrix::from_rows(vec![vec![q(2, 1)]]);
        let err = SystemSpec::new(
            3,
            p,
            vec![q(0, 1)],
            SolutionKind::H01,
            Some(ExtRational::from_int(0)),
        )
        .unwrap_err();
        assert!(matches!(err, MalformedSpec::NonpositiveTheta));
    }

    #[test]
    fn validation_is_deterministic() {
        let spec = spec_from_p(
            3,
            vec![vec![q(0, 1), q(2, 1)], vec![q(3, 1), q(0, 1)]],
            SolutionKind::H01,
        );
        assert_eq!(validate_structure(&spec), validate_structure(&spec));
    }
}

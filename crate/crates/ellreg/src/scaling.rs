//! Scaling data of an admissible system: the growth-rate vector `alpha`
//! solving `(I-P) alpha = -1`, its Cramer determinants, and the monotone
//! chain of truncated-system ratios that drives the bootstrap ordering.

use std::fmt;

use crate::matrix::{MatrixError, RMatrix};
use crate::rational::Rational;
use crate::system::{validate_structure, SystemSpec};

/// Largest component count for which the ordering search enumerates
/// permutations. Beyond this the factorial search is refused.
pub const MAX_ORDER_SEARCH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingData {
    /// Solution of `(I-P) alpha = -1`; strictly positive under admissibility.
    pub alpha: Vec<Rational>,
    pub det_i_minus_p: Rational,
    /// `lambda_j = -det(I-P) * alpha_j`, equal to the determinant of `I-P`
    /// with column `j` replaced by the all-ones vector.
    pub lambda: Vec<Rational>,
    /// Indices of the maximizers of `alpha`, ascending.
    pub argmax_alpha: Vec<usize>,
}

impl ScalingData {
    pub fn max_alpha(&self) -> &Rational {
        &self.alpha[self.argmax_alpha[0]]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalingError {
    SingularMatrix,
}

impl fmt::Display for ScalingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalingError::SingularMatrix => write!(f, "det(I-P) = 0, scaling vector undefined"),
        }
    }
}

impl std::error::Error for ScalingError {}

/// Determinant of `I-P` with column `j` replaced by all ones, for every `j`.
/// Well-defined even when `I-P` is singular.
pub fn lambda_by_replacement(spec: &SystemSpec) -> Vec<Rational> {
    let imp = spec.i_minus_p();
    let ones = vec![Rational::one(); spec.n()];
    (0..spec.n())
        .map(|j| {
            imp.with_column(j, &ones)
                .det()
                .expect("square by construction")
        })
        .collect()
}

/// Solve for `alpha` and cross-check the Cramer determinants two ways: from
/// the solve (`-det * alpha_j`) and directly by column replacement. The two
/// routes must agree exactly.
pub fn compute_scaling(spec: &SystemSpec) -> Result<ScalingData, ScalingError> {
    let imp = spec.i_minus_p();
    let det = imp.det().expect("square by construction");
    if det.is_zero() {
        return Err(ScalingError::SingularMatrix);
    }
    let minus_ones = vec![-Rational::one(); spec.n()];
    let alpha = match imp.solve(&minus_ones) {
        Ok(x) => x,
        Err(MatrixError::SingularMatrix) => return Err(ScalingError::SingularMatrix),
        Err(e) => unreachable!("solve on square system: {e}"),
    };
    let lambda: Vec<Rational> = alpha.iter().map(|a| -(&det * a)).collect();
    let replaced = lambda_by_replacement(spec);
    assert_eq!(
        lambda, replaced,
        "Cramer cross-check failed: solve route and replacement route disagree"
    );
    let max = alpha
        .iter()
        .cloned()
        .fold(alpha[0].clone(), Rational::max);
    let argmax_alpha = (0..spec.n()).filter(|&i| alpha[i] == max).collect();
    Ok(ScalingData {
        alpha,
        det_i_minus_p: det,
        lambda,
        argmax_alpha,
    })
}

/// The `r x r` truncated matrix of the relabeled system: the first `r-1`
/// columns are those of `I-P`, and the last column aggregates the whole tail,
/// entry `i` being `delta_{i,r} - sum_{j=r..n} p_ij` (1-based ranks).
pub fn build_q(spec: &SystemSpec, r: usize, order: &[usize]) -> RMatrix {
    let n = spec.n();
    assert!((2..=n).contains(&r), "rank out of range: {r} not in 2..={n}");
    assert!(is_permutation(order, n), "order is not a permutation of 0..{n}");
    let mut q = RMatrix::zero(r, r);
    for a in 0..r {
        let pa = order[a];
        for b in 0..r - 1 {
            let pb = order[b];
            let v = if a == b {
                Rational::one() - spec.p_at(pa, pb).clone()
            } else {
                -spec.p_at(pa, pb)
            };
            *q.at_mut(a, b) = v;
        }
        let mut tail = Rational::zero();
        for jb in r - 1..n {
            tail += spec.p_at(pa, order[jb]);
        }
        let v = if a == r - 1 {
            Rational::one() - tail
        } else {
            -tail
        };
        *q.at_mut(a, r - 1) = v;
    }
    q
}

fn is_permutation(order: &[usize], n: usize) -> bool {
    if order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainData {
    /// Relabeling of components (0-based original indices); a maximizer of
    /// `alpha` is last.
    pub permutation: Vec<usize>,
    /// `-|Q_r| / Lambda_r^r` for `r = 2..=n`; nondecreasing, ending at
    /// `1 / max alpha`. Empty when `n = 1`.
    pub chain: Vec<Rational>,
    pub q_dets: Vec<Rational>,
    pub lambda_rr: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainError {
    NotAdmissible,
    /// No tested ordering satisfies the column-dominance hypothesis
    /// `Lambda_r^j <= Lambda_r^r`. Reported, never guessed around.
    NoAdmissibleOrdering,
    SearchSpaceTooLarge { n: usize, limit: usize },
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainError::NotAdmissible => write!(f, "chain requires an admissible structure"),
            ChainError::NoAdmissibleOrdering => {
                write!(f, "no component ordering satisfies the column-dominance hypothesis")
            }
            ChainError::SearchSpaceTooLarge { n, limit } => {
                write!(f, "ordering search over {n}! permutations exceeds the n <= {limit} bound")
            }
        }
    }
}

impl std::error::Error for ChainError {}

/// Search for a component ordering with an `alpha`-maximizer last that
/// satisfies `Lambda_r^j <= Lambda_r^r` for every rank, then compute the
/// monotone chain. Trials run in lexicographic order and the first valid
/// ordering wins, so the result is deterministic.
pub fn compute_chain(spec: &SystemSpec) -> Result<ChainData, ChainError> {
    compute_chain_with_limit(spec, MAX_ORDER_SEARCH)
}

pub fn compute_chain_with_limit(spec: &SystemSpec, limit: usize) -> Result<ChainData, ChainError> {
    let report = validate_structure(spec);
    if !report.admissible {
        return Err(ChainError::NotAdmissible);
    }
    let scaling = compute_scaling(spec).expect("admissible implies nonsingular");
    let n = spec.n();
    if n == 1 {
        return Ok(ChainData {
            permutation: vec![0],
            chain: Vec::new(),
            q_dets: Vec::new(),
            lambda_rr: Vec::new(),
        });
    }
    if n > limit {
        return Err(ChainError::SearchSpaceTooLarge { n, limit });
    }

    let mut order: Vec<usize> = (0..n).collect();
    loop {
        if scaling.argmax_alpha.contains(order.last().unwrap())
            && hypothesis_holds(spec, &order)
        {
            return Ok(chain_for_order(spec, &scaling, &order));
        }
        if !next_permutation(&mut order) {
            break;
        }
    }
    Err(ChainError::NoAdmissibleOrdering)
}

/// `Lambda_r^j <= Lambda_r^r` for all `2 <= r <= n`, `1 <= j <= r-1`.
fn hypothesis_holds(spec: &SystemSpec, order: &[usize]) -> bool {
    let n = spec.n();
    for r in 2..=n {
        let q = build_q(spec, r, order);
        let ones = vec![Rational::one(); r];
        let lam_rr = q
            .with_column(r - 1, &ones)
            .det()
            .expect("square by construction");
        for j in 0..r - 1 {
            let lam_rj = q
                .with_column(j, &ones)
                .det()
                .expect("square by construction");
            if lam_rj > lam_rr {
                return false;
            }
        }
    }
    true
}

fn chain_for_order(spec: &SystemSpec, scaling: &ScalingData, order: &[usize]) -> ChainData {
    let n = spec.n();
    let mut chain = Vec::with_capacity(n - 1);
    let mut q_dets = Vec::with_capacity(n - 1);
    let mut lambda_rr = Vec::with_capacity(n - 1);
    for r in 2..=n {
        let q = build_q(spec, r, order);
        let det_q = q.det().expect("square by construction");
        let ones = vec![Rational::one(); r];
        let lam = q
            .with_column(r - 1, &ones)
            .det()
            .expect("square by construction");
        assert!(
            lam.is_positive(),
            "Lambda_r^r must be positive under admissibility"
        );
        chain.push(&(-&det_q) / &lam);
        q_dets.push(det_q);
        lambda_rr.push(lam);
    }
    for w in chain.windows(2) {
        assert!(w[0] <= w[1], "chain must be nondecreasing: {:?}", chain);
    }
    let expected_tail = scaling.max_alpha().recip();
    assert_eq!(
        chain.last().unwrap(),
        &expected_tail,
        "chain must terminate at 1/max(alpha)"
    );
    ChainData {
        permutation: order.to_vec(),
        chain,
        q_dets,
        lambda_rr,
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

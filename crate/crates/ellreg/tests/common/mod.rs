//! Shared random-instance machinery for the integration suites.
//!
//! Admissible exponent matrices are built around a spanning cycle: every
//! proper principal submatrix of `I - P` then breaks the cycle and has
//! determinant `prod (1 - p_ii) > 0`, while the full determinant is
//! `prod (1 - p_ii) - prod a_i`, driven negative by making the cycle product
//! large. Extra off-cycle entries are sprinkled on top and kept only when the
//! full structural audit still passes, so the samples are not just cycles.

use ellreg::{validate_structure, RMatrix, Rational, SolutionKind, SystemSpec};
use rand::rngs::StdRng;
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn pick<T: Clone>(rng: &mut StdRng, items: &[T]) -> T {
    items[rng.random_range(0..items.len())].clone()
}

/// A random admissible exponent matrix with `n` components.
pub fn random_admissible_p(rng: &mut StdRng, n: usize) -> RMatrix {
    loop {
        let diag_choices = [q(0, 1), q(0, 1), q(0, 1), q(1, 4), q(1, 2)];
        let edge_choices = [
            q(1, 4),
            q(1, 2),
            q(3, 4),
            q(1, 1),
            q(3, 2),
            q(2, 1),
            q(3, 1),
        ];
        let sprinkle_choices = [q(1, 8), q(1, 4), q(1, 2)];

        let mut p = RMatrix::zero(n, n);
        let mut one_minus_diag = Rational::one();
        for i in 0..n {
            let d = pick(rng, &diag_choices);
            one_minus_diag = one_minus_diag * (Rational::one() - d.clone());
            *p.at_mut(i, i) = d;
        }
        // spanning cycle i -> i+1 with product forced past the diagonal product
        let mut cycle_product = Rational::one();
        for i in 0..n {
            let a = pick(rng, &edge_choices);
            cycle_product = cycle_product * a.clone();
            *p.at_mut(i, (i + 1) % n) = a;
        }
        if cycle_product <= one_minus_diag {
            // boost one cycle edge to push the determinant negative
            let i = rng.random_range(0..n);
            let boost = (&one_minus_diag / &cycle_product) * q(3, 1);
            let j = (i + 1) % n;
            let v = p.at(i, j) * &boost;
            *p.at_mut(i, j) = v;
        }
        // sprinkle extra couplings, kept only if admissibility survives
        let candidate = {
            let mut extra = p.clone();
            for i in 0..n {
                for j in 0..n {
                    if i != j && extra.at(i, j).is_zero() && rng.random_bool(0.3) {
                        *extra.at_mut(i, j) = pick(rng, &sprinkle_choices);
                    }
                }
            }
            extra
        };
        for attempt in [candidate, p] {
            let spec = SystemSpec::new(
                3,
                attempt.clone(),
                vec![Rational::zero(); n],
                SolutionKind::H01,
                None,
            )
            .expect("nonnegative by construction");
            if validate_structure(&spec).admissible {
                return attempt;
            }
        }
    }
}

/// Dress an admissible matrix as a full spec with the given dimension, kind,
/// self-exponents, and inhomogeneity exponent.
pub fn spec_with(
    p: RMatrix,
    d: u32,
    kind: SolutionKind,
    r: Vec<Rational>,
    theta: Option<ellreg::ExtRational>,
) -> SystemSpec {
    SystemSpec::new(d, p, r, kind, theta).expect("valid by construction")
}

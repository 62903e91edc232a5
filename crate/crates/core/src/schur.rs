//! Schur polynomial evaluation as a ratio of alternants, and the numerical
//! product-expansion check used as an independent oracle for [`lr_coefficient`].
//!
//! [`lr_coefficient`]: crate::lr::lr_coefficient

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::determinant;
use crate::lr::lr_coefficient;
use crate::partition::{partitions_of, Partition};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchurError {
    #[error("evaluation points are not pairwise distinct")]
    SingularDenominator,
}

/// `s_λ(x_1, …, x_m) = det(x_i^{λ_j + m − j}) / det(x_i^{m − j})`.
///
/// Partitions with more than `m` parts evaluate to zero.
pub fn schur_eval<T: Scalar>(lambda: &Partition, x: &[T]) -> Result<T, SchurError> {
    let m = x.len();
    let denominator = alternant(x, |_| 0);
    if denominator.is_zero() {
        return Err(SchurError::SingularDenominator);
    }
    if lambda.len() > m {
        return Ok(T::zero());
    }
    Ok(alternant(x, |j| lambda.part(j)) / denominator)
}

/// `det(x_i^{shift(j) + m − 1 − j})` with 0-based `j`.
fn alternant<T: Scalar>(x: &[T], shift: impl Fn(usize) -> usize) -> T {
    let m = x.len();
    let rows = x
        .iter()
        .map(|xi| {
            (0..m)
                .map(|j| num_traits::pow(xi.clone(), shift(j) + m - 1 - j))
                .collect()
        })
        .collect();
    determinant(rows)
}

/// Checks `s_λ · s_μ = Σ_ν c_{λμ}^ν s_ν` exactly at `trials` random rational
/// points in `ℓ(λ) + ℓ(μ)` variables (at least one).
///
/// Coordinates are `p/q` with `|p| ≤ 100`, `1 ≤ q ≤ 100`, drawn from a
/// generator seeded with `seed`.
pub fn verify_expansion(lambda: &Partition, mu: &Partition, trials: usize, seed: u64) -> bool {
    let vars = (lambda.len() + mu.len()).max(1);
    let weight = lambda.weight() + mu.weight();
    let terms: Vec<(Partition, BigRational)> = partitions_of(weight, vars, weight)
        .into_iter()
        .filter_map(|nu| {
            let c = lr_coefficient(lambda, mu, &nu);
            (!c.is_zero()).then(|| (nu, BigRational::from_integer(BigInt::from(c))))
        })
        .collect();
    identity_holds(lambda, mu, &terms, vars, trials, seed)
}

fn identity_holds(
    lambda: &Partition,
    mu: &Partition,
    terms: &[(Partition, BigRational)],
    vars: usize,
    trials: usize,
    seed: u64,
) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).all(|_| {
        let x = distinct_rationals(&mut rng, vars);
        let lhs = schur_eval(lambda, &x).expect("distinct points")
            * schur_eval(mu, &x).expect("distinct points");
        let rhs = terms.iter().fold(BigRational::zero(), |acc, (nu, c)| {
            acc + c.clone() * schur_eval(nu, &x).expect("distinct points")
        });
        lhs == rhs
    })
}

/// `count` pairwise distinct rationals `p/q` with `|p| ≤ 100`, `1 ≤ q ≤ 100`.
pub fn distinct_rationals(rng: &mut impl Rng, count: usize) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::with_capacity(count);
    while out.len() < count {
        let p: i64 = rng.random_range(-100..=100);
        let q: i64 = rng.random_range(1..=100);
        let v = BigRational::from_ratio(p, q);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_up_to;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::from_ratio(a, b)
    }

    /// Sum over semistandard tableaux of shape λ with entries in 1..=m of x^T.
    fn schur_by_tableaux(lambda: &Partition, x: &[BigRational]) -> BigRational {
        fn rec(
            cells: &[(usize, usize)],
            idx: usize,
            grid: &mut Vec<Vec<usize>>,
            x: &[BigRational],
            acc: &mut BigRational,
        ) {
            if idx == cells.len() {
                let mut term = BigRational::from_int(1);
                for row in grid.iter() {
                    for &v in row {
                        term *= x[v - 1].clone();
                    }
                }
                *acc = acc.clone() + term;
                return;
            }
            let (r, c) = cells[idx];
            let left = if c > 0 { grid[r][c - 1] } else { 1 };
            let up = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
            for v in left.max(up)..=x.len() {
                grid[r][c] = v;
                rec(cells, idx + 1, grid, x, acc);
            }
            grid[r][c] = 0;
        }
        let shape = lambda.parts();
        let cells: Vec<(usize, usize)> = shape
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
            .collect();
        let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
        let mut acc = BigRational::zero();
        rec(&cells, 0, &mut grid, x, &mut acc);
        acc
    }

    #[test]
    fn trivial_and_first_schur() {
        let x = vec![q(1, 2), q(-3, 1), q(7, 5)];
        assert_eq!(schur_eval(&p(&[]), &x).unwrap(), BigRational::from_int(1));
        let total = x.iter().fold(BigRational::zero(), |a, b| a + b.clone());
        assert_eq!(schur_eval(&p(&[1]), &x).unwrap(), total);
    }

    #[test]
    fn two_one_at_one_two() {
        // s_{21}(x1, x2) = x1^2 x2 + x1 x2^2
        let x = vec![q(1, 1), q(2, 1)];
        let expected = schur_by_tableaux(&p(&[2, 1]), &x);
        assert_eq!(expected, BigRational::from_int(6));
        assert_eq!(schur_eval(&p(&[2, 1]), &x).unwrap(), expected);
    }

    #[test]
    fn alternant_matches_tableau_sum() {
        let x = vec![q(1, 3), q(-2, 1), q(5, 7), q(3, 2)];
        for lam in partitions_up_to(6, 4) {
            assert_eq!(
                schur_eval(&lam, &x).unwrap(),
                schur_by_tableaux(&lam, &x),
                "{lam}"
            );
        }
        assert!(schur_eval(&p(&[1, 1, 1, 1, 1]), &x).unwrap().is_zero());
    }

    #[test]
    fn repeated_points_rejected() {
        let x = vec![q(1, 2), q(2, 4)];
        assert_eq!(
            schur_eval(&p(&[1]), &x),
            Err(SchurError::SingularDenominator)
        );
    }

    #[test]
    fn float_evaluation() {
        let v = schur_eval(&p(&[2, 1]), &[1.0f64, 2.0]).unwrap();
        assert!((v - 6.0).abs() < 1e-9);
    }

    #[test]
    fn expansion_examples() {
        assert!(verify_expansion(&p(&[1]), &p(&[1]), 3, 1));
        assert!(verify_expansion(&p(&[2, 1]), &p(&[2, 1]), 3, 2));
        assert!(verify_expansion(&p(&[]), &p(&[3, 1]), 3, 3));
    }

    #[test]
    fn wrong_coefficient_is_detected() {
        let one = BigRational::from_int(1);
        let correct = vec![(p(&[2]), one.clone()), (p(&[1, 1]), one.clone())];
        assert!(identity_holds(&p(&[1]), &p(&[1]), &correct, 2, 4, 9));
        let wrong = vec![(p(&[2]), one.clone()), (p(&[1, 1]), one.clone() + one)];
        assert!(!identity_holds(&p(&[1]), &p(&[1]), &wrong, 2, 4, 9));
        let missing = vec![(p(&[2]), BigRational::from_int(1))];
        assert!(!identity_holds(&p(&[1]), &p(&[1]), &missing, 2, 4, 9));
    }
}

//! Dense two-phase simplex with Bland's rule.
//!
//! Intended for exact scalars (`BigRational`); every pivot is exact, so the
//! reported optimum and witness satisfy the constraints with zero error.
//! Inequality-form problems with few variables and many constraints are
//! solved through their dual, which keeps the tableau height equal to the
//! number of variables.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("linear program is unbounded or infeasible")]
    UnboundedOrInfeasible,
    #[error("constraint has {found} coefficients, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Optimal basic solution of `min c·x, A x = b, x ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardSolution<T> {
    pub x: Vec<T>,
    pub objective: T,
    /// Simplex multipliers `π` with `A^T π ≤ c`; an optimal dual solution.
    pub multipliers: Vec<T>,
}

struct Tableau<T> {
    // m rows of width cols + 1; the last entry is the right-hand side
    rows: Vec<Vec<T>>,
    // reduced costs, with minus the objective value in the last slot
    obj: Vec<T>,
    basis: Vec<usize>,
    cols: usize,
}

impl<T: Scalar> Tableau<T> {
    fn set_costs(&mut self, cost: &[T]) {
        let mut obj: Vec<T> = cost.to_vec();
        obj.push(T::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, v) in obj.iter_mut().zip(row) {
                *o = o.clone() - cb.clone() * v.clone();
            }
        }
        self.obj = obj;
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<T>| {
            let f = row[col].clone();
            if f.is_zero() {
                return;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = col;
    }

    /// Runs to optimality; `allowed` filters entering columns.
    fn run(&mut self, allowed: impl Fn(usize) -> bool) -> Result<(), LpError> {
        let rhs = self.cols;
        loop {
            // Bland: lowest-index improving column
            let Some(col) = (0..self.cols).find(|&j| allowed(j) && self.obj[j].is_negative())
            else {
                return Ok(());
            };
            let mut best: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = row[rhs].clone() / row[col].clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return Err(LpError::Unbounded);
            };
            self.pivot(r, col);
        }
    }
}

/// Solves `min c·x` subject to `A x = b`, `x ≥ 0`.
pub fn minimize_standard<T: Scalar>(
    a: &[Vec<T>],
    b: &[T],
    c: &[T],
) -> Result<StandardSolution<T>, LpError> {
    let m = a.len();
    let n = c.len();
    if b.len() != m {
        return Err(LpError::DimensionMismatch {
            expected: m,
            found: b.len(),
        });
    }
    if let Some(row) = a.iter().find(|row| row.len() != n) {
        return Err(LpError::DimensionMismatch {
            expected: n,
            found: row.len(),
        });
    }
    let cols = n + m;
    let mut signs = Vec::with_capacity(m);
    let rows = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, bi))| {
            let flip = bi.is_negative();
            signs.push(if flip { -T::one() } else { T::one() });
            let mut out: Vec<T> = row
                .iter()
                .map(|v| if flip { -v.clone() } else { v.clone() })
                .collect();
            out.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
            out.push(if flip { -bi.clone() } else { bi.clone() });
            out
        })
        .collect();
    let mut t = Tableau {
        rows,
        obj: Vec::new(),
        basis: (n..cols).collect(),
        cols,
    };

    let mut phase_one = vec![T::zero(); n];
    phase_one.extend((0..m).map(|_| T::one()));
    t.set_costs(&phase_one);
    t.run(|_| true)?;
    if t.obj[cols].is_negative() {
        return Err(LpError::Infeasible);
    }
    for i in 0..m {
        if t.basis[i] < n {
            continue;
        }
        if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
            t.pivot(i, j);
        }
    }

    let mut phase_two = c.to_vec();
    phase_two.extend((0..m).map(|_| T::zero()));
    t.set_costs(&phase_two);
    t.run(|j| j < n)?;

    let mut x = vec![T::zero(); n];
    for (row, &bcol) in t.rows.iter().zip(&t.basis) {
        if bcol < n {
            x[bcol] = row[cols].clone();
        }
    }
    let objective = x
        .iter()
        .zip(c)
        .fold(T::zero(), |acc, (xi, ci)| acc + xi.clone() * ci.clone());
    let multipliers = (0..m)
        .map(|i| -(signs[i].clone() * t.obj[n + i].clone()))
        .collect();
    Ok(StandardSolution {
        x,
        objective,
        multipliers,
    })
}

/// Optimal value and maximizer of an inequality-form program.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<T> {
    pub value: T,
    pub point: Vec<T>,
}

/// `max c·z` over free variables `z` subject to `a·z ≤ b` and `a·z = b` rows.
#[derive(Debug, Clone)]
pub struct InequalityLp<T> {
    num_vars: usize,
    objective: Vec<T>,
    le: Vec<(Vec<T>, T)>,
    eq: Vec<(Vec<T>, T)>,
}

impl<T: Scalar> InequalityLp<T> {
    pub fn new(num_vars: usize) -> Self {
        InequalityLp {
            num_vars,
            objective: vec![T::zero(); num_vars],
            le: Vec::new(),
            eq: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_constraints(&self) -> usize {
        self.le.len() + self.eq.len()
    }

    pub fn maximize(&mut self, objective: Vec<T>) -> Result<(), LpError> {
        self.check(&objective)?;
        self.objective = objective;
        Ok(())
    }

    pub fn add_le(&mut self, coeffs: Vec<T>, rhs: T) -> Result<(), LpError> {
        self.check(&coeffs)?;
        self.le.push((coeffs, rhs));
        Ok(())
    }

    pub fn add_eq(&mut self, coeffs: Vec<T>, rhs: T) -> Result<(), LpError> {
        self.check(&coeffs)?;
        self.eq.push((coeffs, rhs));
        Ok(())
    }

    fn check(&self, coeffs: &[T]) -> Result<(), LpError> {
        if coeffs.len() != self.num_vars {
            return Err(LpError::DimensionMismatch {
                expected: self.num_vars,
                found: coeffs.len(),
            });
        }
        Ok(())
    }

    /// Solves through the dual `min b·y, Aᵀy = c, y_le ≥ 0, y_eq free`.
    pub fn solve(&self) -> Result<LpSolution<T>, LpError> {
        let k = self.num_vars;
        let mut columns: Vec<&Vec<T>> = Vec::new();
        let mut cost: Vec<T> = Vec::new();
        let mut negated: Vec<bool> = Vec::new();
        for (coeffs, rhs) in &self.le {
            columns.push(coeffs);
            cost.push(rhs.clone());
            negated.push(false);
        }
        for (coeffs, rhs) in &self.eq {
            columns.push(coeffs);
            cost.push(rhs.clone());
            negated.push(false);
            columns.push(coeffs);
            cost.push(-rhs.clone());
            negated.push(true);
        }
        let a: Vec<Vec<T>> = (0..k)
            .map(|row| {
                columns
                    .iter()
                    .zip(&negated)
                    .map(|(col, &neg)| {
                        if neg {
                            -col[row].clone()
                        } else {
                            col[row].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        let dual = match minimize_standard(&a, &self.objective, &cost) {
            Ok(sol) => sol,
            Err(LpError::Infeasible) => return Err(LpError::UnboundedOrInfeasible),
            Err(LpError::Unbounded) => return Err(LpError::Infeasible),
            Err(e) => return Err(e),
        };
        let point = dual.multipliers;
        debug_assert!(!T::EXACT || self.is_feasible(&point));
        Ok(LpSolution {
            value: dual.objective,
            point,
        })
    }

    /// Exact feasibility check of a candidate point.
    pub fn is_feasible(&self, z: &[T]) -> bool {
        let dot = |a: &[T]| {
            a.iter()
                .zip(z)
                .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
        };
        self.le.iter().all(|(a, b)| dot(a) <= *b) && self.eq.iter().all(|(a, b)| dot(a) == *b)
    }

    pub fn objective_at(&self, z: &[T]) -> T {
        self.objective
            .iter()
            .zip(z)
            .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::from_ratio(a, b)
    }

    fn qi(a: i64) -> BigRational {
        BigRational::from_int(a)
    }

    #[test]
    fn beale_cycling_example() {
        // cycles under the textbook largest-coefficient rule
        let a = vec![
            vec![qi(1), qi(0), qi(0), q(1, 4), qi(-8), qi(-1), qi(9)],
            vec![qi(0), qi(1), qi(0), q(1, 2), qi(-12), q(-1, 2), qi(3)],
            vec![qi(0), qi(0), qi(1), qi(0), qi(0), qi(1), qi(0)],
        ];
        let b = vec![qi(0), qi(0), qi(1)];
        let c = vec![qi(0), qi(0), qi(0), q(-3, 4), qi(20), q(-1, 2), qi(6)];
        let sol = minimize_standard(&a, &b, &c).unwrap();
        assert_eq!(sol.objective, q(-5, 4));
        // strong duality
        let dual_value = sol
            .multipliers
            .iter()
            .zip(&b)
            .fold(qi(0), |acc, (p, bi)| acc + p.clone() * bi.clone());
        assert_eq!(dual_value, sol.objective);
    }

    #[test]
    fn standard_infeasible_and_unbounded() {
        // x1 + x2 = -1 with x >= 0
        let a = vec![vec![qi(1), qi(1)]];
        assert_eq!(
            minimize_standard(&a, &[qi(-1)], &[qi(1), qi(1)]),
            Err(LpError::Infeasible)
        );
        // min -x1 with x1 - x2 = 0
        let a = vec![vec![qi(1), qi(-1)]];
        assert_eq!(
            minimize_standard(&a, &[qi(0)], &[qi(-1), qi(0)]),
            Err(LpError::Unbounded)
        );
    }

    #[test]
    fn inequality_form_small() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0  -> (8/5, 6/5), 14/5
        let mut lp = InequalityLp::new(2);
        lp.maximize(vec![qi(1), qi(1)]).unwrap();
        lp.add_le(vec![qi(1), qi(2)], qi(4)).unwrap();
        lp.add_le(vec![qi(3), qi(1)], qi(6)).unwrap();
        lp.add_le(vec![qi(-1), qi(0)], qi(0)).unwrap();
        lp.add_le(vec![qi(0), qi(-1)], qi(0)).unwrap();
        let sol = lp.solve().unwrap();
        assert_eq!(sol.value, q(14, 5));
        assert_eq!(sol.point, vec![q(8, 5), q(6, 5)]);
        assert!(lp.is_feasible(&sol.point));
    }

    #[test]
    fn inequality_form_with_equalities() {
        // max x - y s.t. x + y = 1, |x|, |y| <= 3
        let mut lp = InequalityLp::new(2);
        lp.maximize(vec![qi(1), qi(-1)]).unwrap();
        lp.add_eq(vec![qi(1), qi(1)], qi(1)).unwrap();
        for v in 0..2 {
            let mut e = vec![qi(0), qi(0)];
            e[v] = qi(1);
            lp.add_le(e.clone(), qi(3)).unwrap();
            e[v] = qi(-1);
            lp.add_le(e, qi(3)).unwrap();
        }
        let sol = lp.solve().unwrap();
        assert_eq!(sol.value, qi(5));
        assert_eq!(sol.point, vec![qi(3), qi(-2)]);
    }

    #[test]
    fn inequality_form_infeasible_and_unbounded() {
        let mut lp = InequalityLp::new(1);
        lp.maximize(vec![qi(1)]).unwrap();
        lp.add_le(vec![qi(1)], qi(-1)).unwrap();
        lp.add_le(vec![qi(-1)], qi(-1)).unwrap();
        assert_eq!(lp.solve(), Err(LpError::Infeasible));

        let mut lp = InequalityLp::new(1);
        lp.maximize(vec![qi(1)]).unwrap();
        lp.add_le(vec![qi(-1)], qi(0)).unwrap();
        assert_eq!(lp.solve(), Err(LpError::UnboundedOrInfeasible));

        assert!(matches!(
            lp.add_le(vec![qi(1), qi(2)], qi(0)),
            Err(LpError::DimensionMismatch { .. })
        ));
    }

    /// Best objective over all feasible pairwise constraint intersections.
    fn brute_force_2d(
        obj: &[BigRational],
        cons: &[(Vec<BigRational>, BigRational)],
    ) -> Option<BigRational> {
        let mut best: Option<BigRational> = None;
        for (i, (a, b)) in cons.iter().enumerate() {
            for (c, d) in cons.iter().skip(i + 1) {
                let det = a[0].clone() * c[1].clone() - a[1].clone() * c[0].clone();
                if det == qi(0) {
                    continue;
                }
                let x = (b.clone() * c[1].clone() - a[1].clone() * d.clone()) / det.clone();
                let y = (a[0].clone() * d.clone() - b.clone() * c[0].clone()) / det;
                let feasible = cons
                    .iter()
                    .all(|(e, f)| e[0].clone() * x.clone() + e[1].clone() * y.clone() <= *f);
                if feasible {
                    let v = obj[0].clone() * x.clone() + obj[1].clone() * y.clone();
                    if best.as_ref().is_none_or(|b| v > *b) {
                        best = Some(v);
                    }
                }
            }
        }
        best
    }

    proptest! {
        #[test]
        fn matches_vertex_enumeration(
            obj in prop::collection::vec(-5i64..=5, 2),
            rows in prop::collection::vec((-5i64..=5, -5i64..=5, -5i64..=10), 0..6),
        ) {
            let obj: Vec<BigRational> = obj.into_iter().map(qi).collect();
            let mut cons: Vec<(Vec<BigRational>, BigRational)> = rows
                .into_iter()
                .map(|(a, b, c)| (vec![qi(a), qi(b)], qi(c)))
                .collect();
            // bounding box keeps the program bounded
            cons.push((vec![qi(1), qi(0)], qi(20)));
            cons.push((vec![qi(-1), qi(0)], qi(20)));
            cons.push((vec![qi(0), qi(1)], qi(20)));
            cons.push((vec![qi(0), qi(-1)], qi(20)));
            let mut lp = InequalityLp::new(2);
            lp.maximize(obj.clone()).unwrap();
            for (a, b) in &cons {
                lp.add_le(a.clone(), b.clone()).unwrap();
            }
            let expected = brute_force_2d(&obj, &cons);
            match lp.solve() {
                Ok(sol) => {
                    prop_assert!(lp.is_feasible(&sol.point));
                    prop_assert_eq!(lp.objective_at(&sol.point), sol.value.clone());
                    prop_assert_eq!(Some(sol.value), expected);
                }
                Err(LpError::Infeasible) => prop_assert_eq!(expected, None),
                Err(e) => prop_assert!(false, "unexpected {:?}", e),
            }
        }
    }
}

//! Littlewood-Richardson coefficients by skew-tableau enumeration, and the
//! Schubert structure constants of Grassmannians derived from them.

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::partition::{Partition, SubsetIndex, SubsetTriple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchubertError {
    #[error("subsets {0} and {1} do not share cardinality and ambient size")]
    DimensionMismatch(SubsetIndex, SubsetIndex),
}

/// Counts Littlewood-Richardson tableaux of shape `nu / lambda` and content `mu`.
///
/// Rows weakly increase, columns strictly increase and the row reading word,
/// taken right to left and top to bottom, is a lattice word. Inconsistent
/// shapes (wrong weight, `lambda ⊄ nu`) give zero.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> BigUint {
    if lambda.weight() + mu.weight() != nu.weight()
        || !lambda.is_contained_in(nu)
        || !mu.is_contained_in(nu)
        || nu.len() > lambda.len() + mu.len()
    {
        return BigUint::zero();
    }
    let mut search = TableauSearch::new(lambda, mu, nu);
    search.fill_row(0);
    BigUint::from(search.count)
}

/// Row-by-row backtracking over LR fillings. Row `i` (0-based) may only use
/// values `1..=i+1`, and each row is determined by how many cells carry each value.
struct TableauSearch {
    inner: Vec<usize>,
    outer: Vec<usize>,
    content: Vec<usize>,
    // grid[i][col] holds the value at (i, col); zero for cells of the inner shape
    grid: Vec<Vec<usize>>,
    // counts[k] = occurrences of value k read so far (index 0 unused)
    counts: Vec<usize>,
    count: u64,
}

impl TableauSearch {
    fn new(lambda: &Partition, mu: &Partition, nu: &Partition) -> Self {
        let rows = nu.len();
        let inner = (0..rows).map(|i| lambda.part(i)).collect();
        let outer: Vec<usize> = nu.parts().to_vec();
        let mut content = vec![0];
        content.extend_from_slice(mu.parts());
        let grid = outer.iter().map(|&len| vec![0; len]).collect();
        TableauSearch {
            inner,
            outer,
            counts: vec![0; content.len()],
            content,
            grid,
            count: 0,
        }
    }

    fn fill_row(&mut self, row: usize) {
        if row == self.outer.len() {
            self.count = self.count.checked_add(1).expect("tableau count overflow");
            return;
        }
        let before = self.counts.clone();
        let start = self.inner[row];
        self.place(row, start, 1, &before);
    }

    /// Value strictly above `(row, col)` that the new entry must exceed.
    fn above(&self, row: usize, col: usize) -> usize {
        if row == 0 || col < self.inner[row - 1] {
            0
        } else {
            self.grid[row - 1][col]
        }
    }

    fn place(&mut self, row: usize, pos: usize, value: usize, before: &[usize]) {
        let end = self.outer[row];
        if pos == end {
            self.fill_row(row + 1);
            return;
        }
        let max_value = (row + 1).min(self.content.len() - 1);
        if value > max_value {
            return;
        }
        let mut limit = (end - pos).min(self.content[value] - before[value]);
        if value >= 2 {
            // reading this row right to left, all copies of `value` precede
            // the row's copies of `value - 1`
            limit = limit.min(before[value - 1] - before[value]);
        }
        let mut fit = 0;
        while fit < limit && self.above(row, pos + fit) < value {
            fit += 1;
        }
        for c in (0..=fit).rev() {
            for col in pos..pos + c {
                self.grid[row][col] = value;
            }
            self.counts[value] += c;
            self.place(row, pos + c, value + 1, before);
            self.counts[value] -= c;
        }
    }
}

/// `c_{IJ}^K`: coefficient of `σ_K` in `σ_I · σ_J`.
pub fn schubert_constant(
    i: &SubsetIndex,
    j: &SubsetIndex,
    k: &SubsetIndex,
) -> Result<BigUint, SchubertError> {
    check_shape(i, j)?;
    check_shape(i, k)?;
    Ok(lr_coefficient(
        &Partition::from_subset(i),
        &Partition::from_subset(j),
        &Partition::from_subset(k),
    ))
}

/// `σ_I · σ_J · σ_K = c_{IJ}^{K^∨} [pt]`, zero unless the codimensions add up to
/// the dimension `r(n − r)` of the Grassmannian.
pub fn triple_intersection(
    i: &SubsetIndex,
    j: &SubsetIndex,
    k: &SubsetIndex,
) -> Result<BigUint, SchubertError> {
    check_shape(i, j)?;
    check_shape(i, k)?;
    let r = i.len();
    let n = i.n();
    if i.codimension() + j.codimension() + k.codimension() != r * (n - r) {
        return Ok(BigUint::zero());
    }
    schubert_constant(i, j, &k.dual())
}

pub fn triple_intersection_of(t: &SubsetTriple) -> BigUint {
    triple_intersection(&t.i, &t.j, &t.k).expect("triple shares its shape")
}

fn check_shape(a: &SubsetIndex, b: &SubsetIndex) -> Result<(), SchubertError> {
    if a.len() != b.len() || a.n() != b.n() {
        return Err(SchubertError::DimensionMismatch(a.clone(), b.clone()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{partitions_of, partitions_up_to, subsets};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn s(n: usize, e: &[usize]) -> SubsetIndex {
        SubsetIndex::new(n, e.to_vec()).unwrap()
    }

    fn c(l: &[usize], m: &[usize], n: &[usize]) -> u64 {
        let v = lr_coefficient(&p(l), &p(m), &p(n));
        u64::try_from(v).unwrap()
    }

    #[test]
    fn small_coefficients() {
        assert_eq!(c(&[1], &[1], &[1, 1]), 1);
        assert_eq!(c(&[1], &[1], &[2]), 1);
        assert_eq!(c(&[2, 1], &[2, 1], &[3, 2, 1]), 2);
        assert_eq!(c(&[2, 1], &[], &[2, 1]), 1);
        assert_eq!(c(&[], &[3, 1], &[3, 1]), 1);
        // weight mismatch and non-containment
        assert_eq!(c(&[1], &[1], &[3]), 0);
        assert_eq!(c(&[3], &[1], &[2, 2]), 0);
        // s_{21} s_{21} = s_{42} + s_{411} + s_{33} + 2 s_{321} + s_{3111} + s_{222} + s_{2211}
        assert_eq!(c(&[2, 1], &[2, 1], &[4, 2]), 1);
        assert_eq!(c(&[2, 1], &[2, 1], &[4, 1, 1]), 1);
        assert_eq!(c(&[2, 1], &[2, 1], &[3, 3]), 1);
        assert_eq!(c(&[2, 1], &[2, 1], &[3, 1, 1, 1]), 1);
        assert_eq!(c(&[2, 1], &[2, 1], &[2, 2, 2]), 1);
        assert_eq!(c(&[2, 1], &[2, 1], &[2, 2, 1, 1]), 1);
        assert_eq!(c(&[2, 1], &[2, 1], &[5, 1]), 0);
    }

    #[test]
    fn pieri_rule_matches_horizontal_strips() {
        // c_{λ,(k)}^ν is 1 exactly when ν/λ is a horizontal strip of size k
        for nu in partitions_up_to(7, 4) {
            for lam in partitions_up_to(nu.weight(), 4) {
                if !lam.is_contained_in(&nu) {
                    continue;
                }
                let k = nu.weight() - lam.weight();
                let strip = (0..nu.len()).all(|i| i == 0 || nu.part(i) <= lam.part(i - 1));
                let expected = u64::from(strip);
                let row = Partition::new(vec![k]).unwrap();
                assert_eq!(
                    u64::try_from(lr_coefficient(&lam, &row, &nu)).unwrap(),
                    expected,
                    "{lam} {row} {nu}"
                );
            }
        }
    }

    #[test]
    fn symmetric_in_lambda_mu() {
        for w in 0..=8 {
            for nu in partitions_of(w, w, w) {
                for wl in 0..=w {
                    for lam in partitions_of(wl, w, w) {
                        for mu in partitions_of(w - wl, w, w) {
                            assert_eq!(
                                lr_coefficient(&lam, &mu, &nu),
                                lr_coefficient(&mu, &lam, &nu)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn schubert_examples() {
        let id = s(4, &[3, 4]);
        assert_eq!(
            schubert_constant(&id, &id, &id).unwrap(),
            BigUint::from(1u32)
        );
        // (2,1) and (3,2,1) in Gr(3,6)
        let i = p(&[2, 1]).to_subset(3, 6).unwrap();
        let k = p(&[3, 2, 1]).to_subset(3, 6).unwrap();
        assert_eq!(i, s(6, &[2, 4, 6]));
        assert_eq!(k, s(6, &[1, 3, 5]));
        assert_eq!(schubert_constant(&i, &i, &k).unwrap(), BigUint::from(2u32));
        // grading
        assert!(
            schubert_constant(&s(4, &[1, 3]), &s(4, &[3, 4]), &s(4, &[3, 4]))
                .unwrap()
                .is_zero()
        );
        assert!(matches!(
            schubert_constant(&s(4, &[1, 3]), &s(5, &[1, 3]), &s(4, &[1, 3])),
            Err(SchubertError::DimensionMismatch(..))
        ));
    }

    #[test]
    fn triple_intersection_examples() {
        let id = s(4, &[3, 4]);
        let pt = s(4, &[1, 2]);
        assert_eq!(
            triple_intersection(&id, &id, &pt).unwrap(),
            BigUint::from(1u32)
        );
        // n = 2: exactly one of the three classes is the point
        for a in 1..=2 {
            for b in 1..=2 {
                for c in 1..=2 {
                    let v = triple_intersection(&s(2, &[a]), &s(2, &[b]), &s(2, &[c])).unwrap();
                    let points = [a, b, c].iter().filter(|&&x| x == 1).count();
                    assert_eq!(v, BigUint::from(u32::from(points == 1)));
                }
            }
        }
        assert!(triple_intersection(&id, &id, &id).unwrap().is_zero());
    }

    #[test]
    fn triple_intersection_is_symmetric() {
        for n in 2..=5 {
            for r in 1..n {
                let all = subsets(n, r);
                for i in &all {
                    for j in &all {
                        for k in &all {
                            let v = triple_intersection(i, j, k).unwrap();
                            assert_eq!(v, triple_intersection(j, i, k).unwrap());
                            assert_eq!(v, triple_intersection(k, j, i).unwrap());
                            assert_eq!(v, triple_intersection(i, k, j).unwrap());
                        }
                    }
                }
            }
        }
    }
}

//! Dense Gaussian elimination over a [`Scalar`] field.

use crate::scalar::Scalar;

/// Index of the pivot row for `col` among `rows[from..]`: the first nonzero
/// entry for exact scalars, the largest magnitude otherwise.
fn pivot_row<T: Scalar>(m: &[Vec<T>], col: usize, from: usize) -> Option<usize> {
    let candidates = (from..m.len()).filter(|&r| !m[r][col].is_zero());
    if T::EXACT {
        candidates.into_iter().next()
    } else {
        candidates.max_by(|&a, &b| {
            m[a][col]
                .abs()
                .partial_cmp(&m[b][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    }
}

pub fn determinant<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    let size = m.len();
    let mut det = T::one();
    for col in 0..size {
        let Some(p) = pivot_row(&m, col, col) else {
            return T::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..size {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            let (top, bottom) = m.split_at_mut(r);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = x.clone() - factor.clone() * y.clone();
            }
        }
    }
    det
}

/// Row rank; exact for exact scalars.
pub fn rank<T: Scalar>(mut m: Vec<Vec<T>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = pivot_row(&m, col, rank) else {
            continue;
        };
        m.swap(p, rank);
        let pivot = m[rank][col].clone();
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            let (top, bottom) = m.split_at_mut(r);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[rank][col..]) {
                *x = x.clone() - factor.clone() * y.clone();
            }
        }
        rank += 1;
    }
    rank
}

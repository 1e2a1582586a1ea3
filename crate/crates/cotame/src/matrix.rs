//! Small exact matrices (row-major) used for affine forms and the
//! symmetric-power representations.

use num::{One, Zero};

use crate::rational::Rat;

pub type Mat = Vec<Vec<Rat>>;

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..inner).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Exact inverse by Gauss-Jordan elimination; `None` for singular input.
pub fn invert(a: &Mat) -> Option<Mat> {
    let n = a.len();
    let mut work: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(identity(n)[i].iter().cloned());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot);
        let inv = work[col][col].recip();
        for x in work[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !work[r][col].is_zero() {
                let factor = work[r][col].clone();
                for c in 0..2 * n {
                    let delta = &factor * &work[col][c];
                    work[r][c] -= delta;
                }
            }
        }
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rint};

    #[test]
    fn multiply_and_invert() {
        let a = vec![vec![rint(1), rint(2)], vec![rint(3), rint(4)]];
        let inv = invert(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert_eq!(inv[0][0], rint(-2));
        assert_eq!(inv[0][1], rint(1));
        assert_eq!(inv[1][0], rat(3, 2));
        assert_eq!(inv[1][1], rat(-1, 2));
    }

    #[test]
    fn singular_has_no_inverse() {
        let a = vec![vec![rint(1), rint(2)], vec![rint(2), rint(4)]];
        assert_eq!(invert(&a), None);
    }
}

//! Dense rational matrices, just enough for norms and inverses.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Determinant by fraction-exact Gaussian elimination.
pub fn det(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        let p = a[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            for c in col..n {
                let t = &factor * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    d
}

/// Solves `m x = b`; `None` if `m` is singular.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for c in col..=n {
            a[col][c] = &a[col][c] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=n {
                let t = &factor * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(Rational::zero(), |acc, l| acc + &a[i][l] * &b[l][j]))
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::q;
    use alloc::vec;

    #[test]
    fn det_and_solve() {
        let m = vec![vec![q(2), q(1), q(0)], vec![q(1), q(3), q(1)], vec![q(0), q(1), q(4)]];
        assert_eq!(det(&m), q(18));
        let x = solve(&m, &[q(3), q(5), q(5)]).unwrap();
        assert_eq!(x, vec![q(1), q(1), q(1)]);
        let singular = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(solve(&singular, &[q(1), q(1)]).is_none());
        assert_eq!(det(&singular), q(0));
    }
}

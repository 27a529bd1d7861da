//! Exact Gaussian elimination over ℚ.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Solves `A x = b` exactly. Free variables are set to zero, so the result is
/// the particular solution that vanishes on every non-pivot column.
/// Returns `None` if the system is inconsistent.
pub fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>, ncols: usize) -> Option<Vec<BigRational>> {
    let pivots = reduce(&mut a, &mut b, ncols);
    if b.iter().skip(pivots.len()).any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = b[r].clone();
    }
    Some(x)
}

/// Rank of a matrix.
pub fn rank(mut a: Vec<Vec<BigRational>>, ncols: usize) -> usize {
    let mut b = vec![BigRational::zero(); a.len()];
    reduce(&mut a, &mut b, ncols).len()
}

/// Indices of a maximal linearly independent subfamily, chosen greedily in order.
pub fn independent_subset(vectors: &[Vec<BigRational>]) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let ncols = vectors.iter().map(Vec::len).max().unwrap_or(0);
    for (i, v) in vectors.iter().enumerate() {
        rows.push(v.clone());
        if rank(rows.clone(), ncols) == chosen.len() + 1 {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}

/// Inverse of a square matrix, if it is invertible.
pub fn inverse(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[k] = BigRational::one();
        let mut m = a.to_vec();
        let mut b = e;
        let piv = reduce(&mut m, &mut b, n);
        if piv.len() < n {
            return None;
        }
        cols.push(b);
    }
    // cols[k] is the k-th column of the inverse
    Some((0..n).map(|i| (0..n).map(|k| cols[k][i].clone()).collect()).collect())
}

/// Reduced row echelon form in place; returns the pivot columns.
#[allow(clippy::needless_range_loop)]
fn reduce(a: &mut [Vec<BigRational>], b: &mut [BigRational], ncols: usize) -> Vec<usize> {
    for row in a.iter_mut() {
        row.resize(ncols, BigRational::zero());
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].recip();
        if !inv.is_one() {
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            b[r] *= &inv;
        }
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for k in c..ncols {
                if !a[r][k].is_zero() {
                    let d = &f * &a[r][k];
                    a[i][k] -= d;
                }
            }
            let d = &f * &b[r];
            b[i] -= d;
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn particular_solution_zeroes_free_columns() {
        // x + y = 2
        let x = solve(vec![vec![q(1), q(1)]], vec![q(2)], 2).unwrap();
        assert_eq!(x, vec![q(2), q(0)]);
    }

    #[test]
    fn inconsistent() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve(a, vec![q(1), q(3)], 2).is_none());
    }

    #[test]
    fn inverse_and_independence() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert!(inverse(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
        let v = vec![vec![q(1), q(0)], vec![q(2), q(0)], vec![q(0), q(1)]];
        assert_eq!(independent_subset(&v), vec![0, 2]);
    }

    #[test]
    fn square() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve(a.clone(), vec![q(5), q(10)], 2).unwrap();
        assert_eq!(x, vec![q(1), q(3)]);
        assert_eq!(rank(a, 2), 2);
    }
}

//! Exact linear algebra over the rationals and integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub fn to_rational(v: &[BigInt]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_q(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..ncols {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank_q(rows: &[Vec<Rational>]) -> usize {
    rref(rows).1.len()
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let (a, b) = (m[r][c].clone(), m[i][c].clone());
            for k in c..ncols {
                let v = &a * &m[i][k] - &b * &m[r][k];
                m[i][k] = v;
            }
            let g = crate::rational::make_primitive(std::mem::take(&mut m[i]));
            m[i] = g;
        }
        r += 1;
    }
    r
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (m, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Whether `v` lies in the linear span of `basis`.
pub fn in_span(basis: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let r = rank(basis);
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    rank(&ext) == r
}

/// Determinant of a square integer matrix (Bareiss).
pub fn det(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn abs_det(matrix: &[Vec<BigInt>]) -> BigInt {
    det(matrix).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ivec(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ranks() {
        let m = vec![ivec(&[1, 2, 3]), ivec(&[2, 4, 6]), ivec(&[0, 1, 1])];
        assert_eq!(rank(&m), 2);
        let q: Vec<Vec<Rational>> = m.iter().map(|r| to_rational(r)).collect();
        assert_eq!(rank_q(&q), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let q: Vec<Vec<Rational>> = vec![to_rational(&ivec(&[1, 1, 1, 1])), to_rational(&ivec(&[0, 1, 2, 3]))];
        let ns = nullspace(&q, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &q {
                assert!(dot_q(r, v).is_zero());
            }
        }
    }

    #[test]
    fn determinants() {
        let m = vec![ivec(&[2, 0, 1]), ivec(&[1, 3, 2]), ivec(&[1, 1, 2])];
        assert_eq!(det(&m), BigInt::from(6));
        let swap = vec![ivec(&[0, 1]), ivec(&[1, 0])];
        assert_eq!(det(&swap), BigInt::from(-1));
        let singular = vec![ivec(&[1, 2]), ivec(&[2, 4])];
        assert!(det(&singular).is_zero());
    }
}

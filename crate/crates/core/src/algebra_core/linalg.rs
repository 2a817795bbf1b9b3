//! Dense linear algebra over Gaussian rationals.

use super::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
}

pub fn det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut d = Scalar::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        d = &d * &a[col][col];
        let inv = a[col][col].inv().unwrap();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= &t;
            }
        }
    }
    d
}

pub fn inverse(m: &[Vec<Scalar>]) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m.iter().zip(identity(n)).map(|(r, e)| r.iter().cloned().chain(e).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let inv = a[col][col].inv().unwrap();
        for c in 0..2 * n {
            a[col][c] = &a[col][c] * &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..2 * n {
                let t = &f * &a[col][c];
                a[r][c] -= &t;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Matrix {
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    let mut acc = Scalar::zero();
                    for t in 0..k {
                        if !row[t].is_zero() && !b[t][j].is_zero() {
                            acc += &(&row[t] * &b[t][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// One exact solution of `a x = b`, or `None` when inconsistent.
/// Free variables are set to zero.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Matrix = a.iter().zip(b).map(|(r, v)| r.iter().cloned().chain(std::iter::once(v.clone())).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        let inv = m[r][c].inv().unwrap();
        for k in c..=cols {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for k in c..=cols {
                let t = &f * &m[r][k];
                m[i][k] -= &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Rank of a matrix.
pub fn rank(a: &[Vec<Scalar>]) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Matrix = a.to_vec();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        let inv = m[r][c].inv().unwrap();
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for k in c..cols {
                let t = &f * &m[r][k];
                m[i][k] -= &t;
            }
        }
        r += 1;
    }
    r
}

/// Determinant of a small polynomial matrix by cofactor expansion.
pub fn poly_det(m: &[Vec<super::Polynomial>], ring: &super::RingRef) -> super::Polynomial {
    let n = m.len();
    match n {
        0 => super::Polynomial::one(ring),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = super::Polynomial::zero(ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let t = m[0][j].mul(&poly_det(&minor(m, 0, j), ring));
                acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        }
    }
}

fn minor(m: &[Vec<super::Polynomial>], r: usize, c: usize) -> Vec<Vec<super::Polynomial>> {
    m.iter().enumerate().filter(|(i, _)| *i != r).map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect()).collect()
}

/// Adjugate, so that `m · adj(m) = det(m) · 1`.
pub fn poly_adjugate(m: &[Vec<super::Polynomial>], ring: &super::RingRef) -> Vec<Vec<super::Polynomial>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![super::Polynomial::one(ring)]];
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = poly_det(&minor(m, j, i), ring);
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        d.neg()
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[&[i64]]) -> Matrix {
        v.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect()
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(det(&a), Scalar::int(18));
        let ai = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &ai), identity(3));
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&a, &[Scalar::int(1), Scalar::int(3)]).is_none());
        let x = solve(&a, &[Scalar::int(1), Scalar::int(2)]).unwrap();
        assert_eq!(&x[0] + &x[1], Scalar::int(1));
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn polynomial_adjugate() {
        use crate::algebra_core::{Polynomial, Ring};
        let r = Ring::standard("x", 2, &[]);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let a = vec![vec![x.clone(), y.clone()], vec![Polynomial::one(&r), x.clone()]];
        let d = poly_det(&a, &r);
        assert_eq!(d, x.mul(&x).sub(&y));
        let adj = poly_adjugate(&a, &r);
        for i in 0..2 {
            for j in 0..2 {
                let mut s = Polynomial::zero(&r);
                for k in 0..2 {
                    s = s.add(&a[i][k].mul(&adj[k][j]));
                }
                assert_eq!(s, if i == j { d.clone() } else { Polynomial::zero(&r) });
            }
        }
    }
}

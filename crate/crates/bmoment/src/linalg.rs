//! Small dense exact linear algebra over rationals and integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// Solves the square system `rows · x = rhs`. Returns `None` when singular.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = rows.len();
    debug_assert_eq!(rhs.len(), n);
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            debug_assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for j in col..=n {
            m[col][j] = &m[col][j] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..=n {
                    let delta = &factor * &m[col][j];
                    m[r][j] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Rank of a rational matrix given by rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..m.len() {
            if !m[r][col].is_zero() {
                let factor = &m[r][col] / &m[rank][col];
                for j in col..ncols {
                    let delta = &factor * &m[rank][j];
                    m[r][j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of a square integer matrix (Bareiss fraction-free elimination).
pub fn det_integer(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Scales a nonzero rational vector to the primitive integer vector pointing the same way.
pub fn primitive_direction(v: &[Rational]) -> Option<Vec<BigInt>> {
    use num_integer::Integer;
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let den = crate::rational::common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|r| (r * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.into_iter().map(|x| x / &g).collect())
}

//! Dense integer matrix routines: fraction-free elimination, echelon forms with
//! unimodular transforms, and integer kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Row = Vec<BigInt>;

/// Rank over the rationals (Bareiss elimination, exact).
pub fn rank(rows: &[Row]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Row> = rows.to_vec();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..m.len() {
            for j in (c + 1)..ncols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Determinant of a square matrix (Bareiss).
pub fn det(rows: &[Row]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(rows.iter().all(|r| r.len() == n), "det of a non-square matrix");
    let mut m: Vec<Row> = rows.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = ((k + 1)..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gram matrix `B B^T`.
pub fn gram(rows: &[Row]) -> Vec<Row> {
    rows.iter()
        .map(|a| rows.iter().map(|b| dot(a, b)).collect())
        .collect()
}

/// Squared norm of the exterior product of the rows, `det(B B^T)`.
pub fn gram_det(rows: &[Row]) -> BigInt {
    det(&gram(rows))
}

pub fn transpose(rows: &[Row], ncols: usize) -> Vec<Row> {
    (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect()
}

fn identity(n: usize) -> Vec<Row> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn sub_mul(target: &mut Row, src: &Row, q: &BigInt) {
    for (t, s) in target.iter_mut().zip(src) {
        *t -= q * s;
    }
}

/// Row echelon form `E = U * M` with `U` unimodular, by integer row operations.
/// Returns `(E, U, rank)`; the first `rank` rows of `E` are nonzero with positive pivots.
pub fn echelon_with_transform(rows: &[Row], ncols: usize) -> (Vec<Row>, Vec<Row>, usize) {
    let n = rows.len();
    let mut e: Vec<Row> = rows.to_vec();
    let mut u = identity(n);
    let mut r = 0;
    for c in 0..ncols {
        if r == n {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c among rows r..
            let pivot = (r..n)
                .filter(|&i| !e[i][c].is_zero())
                .min_by(|&a, &b| e[a][c].abs().cmp(&e[b][c].abs()));
            let Some(p) = pivot else { break };
            e.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in (r + 1)..n {
                if e[i][c].is_zero() {
                    continue;
                }
                let q = e[i][c].div_floor(&e[r][c]);
                let (er, ur) = (e[r].clone(), u[r].clone());
                sub_mul(&mut e[i], &er, &q);
                sub_mul(&mut u[i], &ur, &q);
                if !e[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < n && !e[r][c].is_zero() {
            if e[r][c].is_negative() {
                for v in e[r].iter_mut().chain(u[r].iter_mut()) {
                    *v = -&*v;
                }
            }
            r += 1;
        }
    }
    (e, u, r)
}

/// Hermite normal form of the lattice spanned by the rows: nonzero rows only,
/// positive pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Row], ncols: usize) -> Vec<Row> {
    let (mut e, _, r) = echelon_with_transform(rows, ncols);
    e.truncate(r);
    let pivots: Vec<usize> = e
        .iter()
        .map(|row| row.iter().position(|v| !v.is_zero()).unwrap())
        .collect();
    for (k, &c) in pivots.iter().enumerate() {
        for i in 0..k {
            let q = e[i][c].div_floor(&e[k][c]);
            if !q.is_zero() {
                let ek = e[k].clone();
                sub_mul(&mut e[i], &ek, &q);
            }
        }
    }
    e
}

/// A Z-basis of `{x in Z^ncols : rows * x = 0}` (always a saturated lattice).
pub fn integer_kernel(rows: &[Row], ncols: usize) -> Vec<Row> {
    if rows.is_empty() {
        return identity(ncols);
    }
    let t = transpose(rows, ncols);
    let (_, u, r) = echelon_with_transform(&t, rows.len());
    u.into_iter().skip(r).collect()
}

/// gcd of all entries.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Row> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn det_and_rank() {
        assert_eq!(det(&m(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), BigInt::zero());
        assert_eq!(rank(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&m(&[&[0, 0, 1], &[0, 2, 0]])), 2);
    }

    #[test]
    fn gram_det_is_wedge_norm() {
        assert_eq!(gram_det(&m(&[&[1, 2, 3]])), BigInt::from(14));
        // |e1 ^ (1,1,0)|^2 = 1
        assert_eq!(gram_det(&m(&[&[1, 0, 0], &[1, 1, 0]])), BigInt::one());
    }

    #[test]
    fn hnf_is_canonical() {
        let a = hermite_normal_form(&m(&[&[2, 0], &[0, 2], &[1, 1]]), 2);
        assert_eq!(a, m(&[&[1, 1], &[0, 2]]));
        let b = hermite_normal_form(&m(&[&[1, -1], &[1, 1]]), 2);
        assert_eq!(a, b);
    }

    #[test]
    fn kernel_of_single_row() {
        let k = integer_kernel(&m(&[&[1, 2, 3]]), 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dot(v, &m(&[&[1, 2, 3]])[0]).is_zero());
        }
        assert_eq!(gram_det(&k), BigInt::from(14));
    }
}

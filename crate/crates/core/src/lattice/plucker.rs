//! Exterior products: Plücker coordinates and wedge norms.

use num_bigint::BigInt;

use super::matrix::{self, Row};
use super::vector::IntegerVector;
use crate::error::{Error, Result};

/// Largest ambient dimension for which explicit Plücker coordinates are produced.
pub const PLUCKER_MAX_AMBIENT: usize = 12;

/// All maximal minors of a `k x m` matrix, columns taken in lexicographic order.
pub(crate) fn maximal_minors(rows: &[Row], m: usize) -> Vec<BigInt> {
    let k = rows.len();
    let mut out = Vec::new();
    let mut cols: Vec<usize> = (0..k).collect();
    if k > m {
        return out;
    }
    'outer: loop {
        let sub: Vec<Row> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        out.push(matrix::det(&sub));
        // advance to the next k-subset in lexicographic order
        let mut i = k;
        while i > 0 {
            i -= 1;
            if cols[i] < m - k + i {
                cols[i] += 1;
                for j in (i + 1)..k {
                    cols[j] = cols[j - 1] + 1;
                }
                continue 'outer;
            }
        }
        return out;
    }
}

/// Plücker coordinates of `x_1 ∧ ... ∧ x_k`.
pub fn plucker_coordinates(vectors: &[IntegerVector]) -> Result<Vec<BigInt>> {
    let Some(first) = vectors.first() else {
        return Ok(vec![BigInt::from(1)]);
    };
    let m = first.ambient_dim();
    if m > PLUCKER_MAX_AMBIENT {
        return Err(Error::InvalidArgument(format!(
            "Plücker coordinates limited to ambient dimension <= {PLUCKER_MAX_AMBIENT}"
        )));
    }
    if vectors.iter().any(|v| v.ambient_dim() != m) {
        return Err(Error::DimensionMismatch("vectors of different lengths".into()));
    }
    let rows: Vec<Row> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    Ok(maximal_minors(&rows, m))
}

/// `‖x_1 ∧ ... ∧ x_k‖^2` as a Gram determinant.
pub fn wedge_norm_squared(vectors: &[IntegerVector]) -> BigInt {
    let rows: Vec<Row> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    matrix::gram_det(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cauchy_binet_agrees_with_gram() {
        let vs = vec![
            IntegerVector::from_i64(&[1, 2, 3, 4]),
            IntegerVector::from_i64(&[0, -1, 5, 2]),
        ];
        let p = plucker_coordinates(&vs).unwrap();
        assert_eq!(p.len(), 6);
        let s: BigInt = p.iter().map(|c| c * c).sum();
        assert_eq!(s, wedge_norm_squared(&vs));
    }

    #[test]
    fn single_vector_coordinates_are_entries() {
        let v = IntegerVector::from_i64(&[3, -1, 7]);
        assert_eq!(plucker_coordinates(&[v.clone()]).unwrap(), v.coords().to_vec());
        let big = IntegerVector::zeros(13);
        assert!(plucker_coordinates(&[big]).is_err());
    }
}

//! Determinant vector pairing a hyperplane with the windows of a point.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{matrix, IntegerVector, Subspace};
use crate::projections::window;

/// `C(V, x)`: entry `j` is `det(z_1, ..., z_k, x^(j,ell))` where `z_1..z_k` is the canonical
/// basis of `V`, a `k`-dimensional subspace of `R^(k+1)`, and `x` lies in `Z^(k+ell+1)`.
/// It vanishes exactly when every window of `x` lies in `V`.
pub fn construct_c(v: &Subspace, x: &IntegerVector, k: usize, ell: usize) -> Result<IntegerVector> {
    if k == 0 || ell == 0 {
        return Err(Error::InvalidArgument(format!("k={k} and ell={ell} must be positive")));
    }
    if v.ambient_dim() != k + 1 || v.dim() != k {
        return Err(Error::DimensionMismatch(format!(
            "expected a {k}-dimensional subspace of R^{}, got dim {} in R^{}",
            k + 1,
            v.dim(),
            v.ambient_dim()
        )));
    }
    if x.ambient_dim() != k + ell + 1 {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, expected {}",
            x.ambient_dim(),
            k + ell + 1
        )));
    }
    let base: Vec<Vec<BigInt>> = v.basis().iter().map(|z| z.coords().to_vec()).collect();
    let entries = (0..=ell)
        .map(|j| {
            let mut rows = base.clone();
            rows.push(window(x, j, ell)?.into_coords());
            Ok(matrix::det(&rows))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntegerVector::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projections::u_ell_vector;

    fn v(c: &[i64]) -> IntegerVector {
        IntegerVector::from_i64(c)
    }

    #[test]
    fn small_example() {
        let plane = Subspace::from_spanning_set(2, &[v(&[0, 1])]).unwrap();
        assert_eq!(construct_c(&plane, &v(&[1, 2, 3]), 1, 1).unwrap(), v(&[-1, -2]));
    }

    #[test]
    fn vanishes_when_windows_lie_in_the_hyperplane() {
        // windows of (1,2,4,8) are all multiples of (1,2,4)
        let hyper = Subspace::from_spanning_set(3, &[v(&[1, 2, 4]), v(&[0, 0, 1])]).unwrap();
        let x = v(&[1, 2, 4, 8]);
        assert!(construct_c(&hyper, &x, 2, 1).unwrap().is_zero());
        assert!(hyper.contains_subspace(&u_ell_vector(&x, 1).unwrap()));
    }

    #[test]
    fn linear_in_the_point() {
        let hyper = Subspace::from_spanning_set(3, &[v(&[1, -1, 2]), v(&[3, 0, 1])]).unwrap();
        let x = v(&[2, -1, 0, 5, 1]);
        let y = v(&[-3, 4, 1, 1, 0]);
        let (a, b) = (BigInt::from(3), BigInt::from(-2));
        let combo = x.scale(&a).add(&y.scale(&b));
        let lhs = construct_c(&hyper, &combo, 2, 2).unwrap();
        let rhs = construct_c(&hyper, &x, 2, 2)
            .unwrap()
            .scale(&a)
            .add(&construct_c(&hyper, &y, 2, 2).unwrap().scale(&b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_wrong_shapes() {
        let line = Subspace::from_spanning_set(3, &[v(&[1, 0, 0])]).unwrap();
        assert!(matches!(
            construct_c(&line, &v(&[1, 2, 3, 4]), 2, 1),
            Err(Error::DimensionMismatch(_))
        ));
    }
}

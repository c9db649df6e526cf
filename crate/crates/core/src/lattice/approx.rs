//! Approximation quality `L_ξ` of integer points and the exterior-product diagnostics built on it.

use num_bigint::BigInt;
use num_traits::Zero;

use super::plucker::wedge_norm_squared;
use super::vector::IntegerVector;
use crate::arith::{Interval, RealOracle};
use crate::error::{Error, Result};

/// Enclosure of `L_ξ(x) = max_{1<=j<=m} |x_0 ξ^j - x_j|` for `x ∈ Z^{m+1}`.
/// Each term is enclosed to width `2^-bits`.
pub fn l_xi(x: &IntegerVector, xi: &RealOracle, bits: u32) -> Result<Interval> {
    if x.is_zero() {
        return Err(Error::InvalidArgument("L_xi of the zero vector".into()));
    }
    let x0 = &x[0];
    let extra = x0.magnitude().bits() as u32 + 1;
    let mut best = Interval::from_int(0);
    for j in 1..x.ambient_dim() {
        let p = xi.power_enclosure(j as u32, bits + extra)?;
        let term = p.mul_int(x0).sub(&Interval::from_bigint(&x[j])).abs();
        best = best.max(&term);
    }
    Ok(best)
}

/// Diagnostic for the Hadamard-type estimate on linearly independent points:
/// returns `(H(<x_1..x_k>)^2, ‖x_1 ∧ … ∧ x_k‖^2, ratio)` where the ratio is
/// `‖x_1 ∧ … ∧ x_k‖ / Σ_i ‖x_i‖ Π_{j≠i} L_ξ(x_j)`. Only the first inequality
/// `H^2 <= ‖∧‖^2` is exact; the ratio is reported, never asserted.
pub fn hadamard_diagnostic(
    vectors: &[IntegerVector],
    xi: &RealOracle,
    bits: u32,
) -> Result<(BigInt, BigInt, Interval)> {
    let m = vectors.first().map_or(0, |v| v.ambient_dim());
    let span = super::Subspace::from_spanning_set(m, vectors)?;
    let wedge = wedge_norm_squared(vectors);
    if wedge.is_zero() {
        return Err(Error::InvalidArgument("vectors are linearly dependent".into()));
    }
    let prec = bits + 32;
    let ls = vectors
        .iter()
        .map(|v| l_xi(v, xi, bits))
        .collect::<Result<Vec<_>>>()?;
    let mut denom = Interval::from_int(0);
    for (i, v) in vectors.iter().enumerate() {
        let mut term = Interval::from_bigint(&v.norm_squared()).sqrt(prec)?;
        for (j, l) in ls.iter().enumerate() {
            if j != i {
                term = term.mul(l).round(prec);
            }
        }
        denom = denom.add(&term);
    }
    let num = Interval::from_bigint(&wedge).sqrt(prec)?;
    let ratio = num.div(&denom, prec)?;
    Ok((span.height_squared().clone(), wedge, ratio))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Dyadic;
    use num_rational::BigRational;

    fn sqrt2() -> RealOracle {
        "alg:-2,0,1:1,2".parse().unwrap()
    }

    #[test]
    fn l_of_convergent() {
        // |2 sqrt2 - 3| = 0.171572875...
        let l = l_xi(&IntegerVector::from_i64(&[2, 3]), &sqrt2(), 40).unwrap();
        let lo = BigRational::new(171_572_875.into(), 1_000_000_000.into());
        let hi = BigRational::new(171_572_876.into(), 1_000_000_000.into());
        assert!(l.certainly_gt(&Interval::from_rational(&lo, 60)));
        assert!(l.certainly_lt(&Interval::from_rational(&hi, 60)));
        assert!(l.width_at_most(40));
    }

    #[test]
    fn l_of_first_unit_vector_is_top_power() {
        let xi: RealOracle = "alg:-2,0,0,1:1,2".parse().unwrap();
        let l = l_xi(&IntegerVector::from_i64(&[1, 0, 0, 0]), &xi, 40).unwrap();
        // xi^3 = 2
        assert!(l.contains(&Dyadic::from_int(2)));
    }

    #[test]
    fn l_takes_the_max() {
        // x = (1,1,2), xi = sqrt2: max(|sqrt2 - 1|, |2 - 2|) = 0.41421356...
        let l = l_xi(&IntegerVector::from_i64(&[1, 1, 2]), &sqrt2(), 40).unwrap();
        let lo = BigRational::new(41_421_356.into(), 100_000_000.into());
        let hi = BigRational::new(41_421_357.into(), 100_000_000.into());
        assert!(l.certainly_gt(&Interval::from_rational(&lo, 60)));
        assert!(l.certainly_lt(&Interval::from_rational(&hi, 60)));
    }

    #[test]
    fn hadamard_exact_part() {
        let vs = vec![IntegerVector::from_i64(&[2, 3]), IntegerVector::from_i64(&[5, 7])];
        let (h2, w2, ratio) = hadamard_diagnostic(&vs, &sqrt2(), 30).unwrap();
        assert!(h2 <= w2);
        assert!(ratio.certainly_positive());
    }
}

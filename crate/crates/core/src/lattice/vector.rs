use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::content;

/// An exact integer point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerVector(Vec<BigInt>);

impl IntegerVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        IntegerVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        IntegerVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        IntegerVector(vec![BigInt::zero(); dim])
    }

    /// Standard basis vector `e_i` of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = IntegerVector::zeros(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn norm_squared(&self) -> BigInt {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn dot(&self, other: &IntegerVector) -> BigInt {
        super::matrix::dot(&self.0, &other.0)
    }

    pub fn gcd(&self) -> BigInt {
        content(&self.0)
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd().is_one()
    }

    /// Divide out the gcd of the coordinates; the zero vector is returned unchanged.
    pub fn primitive(&self) -> IntegerVector {
        let g = self.gcd();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntegerVector(self.0.iter().map(|c| c.div_floor(&g)).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntegerVector {
        IntegerVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &IntegerVector) -> IntegerVector {
        assert_eq!(self.ambient_dim(), other.ambient_dim());
        IntegerVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> IntegerVector {
        IntegerVector(self.0.iter().map(|c| -c).collect())
    }

    /// Sum of absolute values of the coordinates.
    pub fn l1_norm(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).sum()
    }
}

impl Index<usize> for IntegerVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl From<Vec<BigInt>> for IntegerVector {
    fn from(v: Vec<BigInt>) -> Self {
        IntegerVector(v)
    }
}

impl fmt::Display for IntegerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IntegerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_divides_gcd() {
        let v = IntegerVector::from_i64(&[4, -6, 10]);
        assert_eq!(v.gcd(), BigInt::from(2));
        assert_eq!(v.primitive(), IntegerVector::from_i64(&[2, -3, 5]));
        assert!(v.primitive().is_primitive());
        assert_eq!(v.norm_squared(), BigInt::from(152));
        assert_eq!(IntegerVector::zeros(3).primitive(), IntegerVector::zeros(3));
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::matrix::{self, Row};
use super::vector::IntegerVector;
use crate::error::{Error, Result};

/// A rational subspace `V` of `R^m`, stored as the Hermite normal form of a
/// Z-basis of the saturated lattice `V ∩ Z^m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<IntegerVector>,
    height_squared: BigInt,
}

fn rows_of(vs: &[IntegerVector]) -> Vec<Row> {
    vs.iter().map(|v| v.coords().to_vec()).collect()
}

impl Subspace {
    /// Wrap a saturated basis, canonicalizing it.
    fn from_saturated_rows(ambient: usize, rows: &[Row]) -> Subspace {
        let hnf = matrix::hermite_normal_form(rows, ambient);
        let height_squared = matrix::gram_det(&hnf);
        Subspace {
            ambient,
            basis: hnf.into_iter().map(IntegerVector::new).collect(),
            height_squared,
        }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Vec::new(),
            height_squared: BigInt::one(),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        let rows: Vec<Row> = (0..ambient)
            .map(|i| IntegerVector::unit(ambient, i).into_coords())
            .collect();
        Subspace::from_saturated_rows(ambient, &rows)
    }

    /// Saturation of the integer span: a basis of `<vectors> ∩ Z^m`.
    pub fn from_spanning_set(ambient: usize, vectors: &[IntegerVector]) -> Result<Subspace> {
        if let Some(v) = vectors.iter().find(|v| v.ambient_dim() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "vector {v} is not in Z^{ambient}"
            )));
        }
        let rows: Vec<Row> = vectors
            .iter()
            .filter(|v| !v.is_zero())
            .map(|v| v.coords().to_vec())
            .collect();
        if rows.is_empty() {
            return Ok(Subspace::zero(ambient));
        }
        // V ∩ Z^m = ker(ker(rows)) over Z
        let perp = matrix::integer_kernel(&rows, ambient);
        let sat = if perp.is_empty() {
            return Ok(Subspace::full(ambient));
        } else {
            matrix::integer_kernel(&perp, ambient)
        };
        Ok(Subspace::from_saturated_rows(ambient, &sat))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[IntegerVector] {
        &self.basis
    }

    /// `H(V)^2`, the Gram determinant of the saturated basis (1 for `V = 0`).
    pub fn height_squared(&self) -> &BigInt {
        &self.height_squared
    }

    pub fn orthogonal_complement(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        let k = matrix::integer_kernel(&rows_of(&self.basis), self.ambient);
        if k.is_empty() {
            return Subspace::zero(self.ambient);
        }
        Subspace::from_saturated_rows(self.ambient, &k)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of R^{} and R^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::from_spanning_set(self.ambient, &vs)
    }

    /// `U ∩ V = (U^⊥ + V^⊥)^⊥`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(self
            .orthogonal_complement()
            .sum(&other.orthogonal_complement())?
            .orthogonal_complement())
    }

    pub fn contains(&self, v: &IntegerVector) -> bool {
        if v.is_zero() {
            return true;
        }
        let mut rows = rows_of(&self.basis);
        rows.push(v.coords().to_vec());
        matrix::rank(&rows) == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambient": self.ambient,
            "dim": self.dim(),
            "basis": self.basis.iter().map(vector_json).collect::<Vec<_>>(),
            "height_squared": int_json(&self.height_squared),
        })
    }
}

/// JSON number carrying an arbitrary-precision integer verbatim.
pub fn int_json(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse().expect("integer literal"))
}

pub fn vector_json(v: &IntegerVector) -> Value {
    Value::Array(v.coords().iter().map(int_json).collect())
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(R^{}, dim {}, H^2 = {}, basis {:?})",
            self.ambient,
            self.dim(),
            self.height_squared,
            self.basis
        )
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, v) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "> ⊆ R^{}", self.ambient)
    }
}

/// Parse the plain-text matrix format: one vector per line, whitespace-separated
/// integers; blank lines and `#` comments are ignored.
pub fn parse_matrix(text: &str) -> Result<Vec<IntegerVector>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("line {}: bad integer {t:?}", lineno + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(IntegerVector::new(coords));
    }
    if let Some(first) = out.first() {
        let m = first.ambient_dim();
        if out.iter().any(|v| v.ambient_dim() != m) {
            return Err(Error::Parse("rows have different lengths".into()));
        }
    }
    Ok(out)
}

impl Subspace {
    /// True when the stored basis is a Z-basis of a saturated lattice: the gcd of its
    /// maximal minors is 1.
    pub fn basis_is_saturated(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let rows = rows_of(&self.basis);
        let g = super::plucker::maximal_minors(&rows, self.ambient)
            .into_iter()
            .fold(BigInt::zero(), |g, m| num_integer::Integer::gcd(&g, &m));
        g.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> IntegerVector {
        IntegerVector::from_i64(c)
    }

    fn span(m: usize, vs: &[&[i64]]) -> Subspace {
        Subspace::from_spanning_set(m, &vs.iter().map(|c| v(c)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn saturation_divides_index() {
        let s = span(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(s.basis(), &[v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(s.height_squared(), &BigInt::one());
        let t = span(3, &[&[2, 4, 6]]);
        assert_eq!(t.basis(), &[v(&[1, 2, 3])]);
        assert_eq!(t.height_squared(), &BigInt::from(14));
    }

    #[test]
    fn empty_span_is_zero_subspace() {
        let z = Subspace::from_spanning_set(4, &[]).unwrap();
        assert_eq!(z.dim(), 0);
        assert_eq!(z.height_squared(), &BigInt::one());
        assert_eq!(span(3, &[&[0, 0, 0]]), Subspace::zero(3));
        assert_eq!(Subspace::zero(3).orthogonal_complement(), Subspace::full(3));
    }

    #[test]
    fn complement_of_line() {
        let l = span(3, &[&[1, 2, 3]]);
        let p = l.orthogonal_complement();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.height_squared(), &BigInt::from(14));
        assert_eq!(p.orthogonal_complement(), l);
        let full = Subspace::full(5);
        assert_eq!(full.orthogonal_complement(), Subspace::zero(5));
        assert_eq!(full.height_squared(), &BigInt::one());
    }

    #[test]
    fn sum_and_intersection() {
        let e1 = span(2, &[&[1, 0]]);
        let e2 = span(2, &[&[0, 1]]);
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(2));
        assert_eq!(e1.intersect(&e2).unwrap(), Subspace::zero(2));
        let u = span(2, &[&[1, 1]]);
        let w = span(2, &[&[1, -1]]);
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        assert_eq!(s.height_squared(), &BigInt::one());
        assert_eq!(i.height_squared(), &BigInt::one());
        // Schmidt: 1 * 1 <= 2 * 2
        assert!(s.height_squared() * i.height_squared() <= u.height_squared() * w.height_squared());
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert!(e1.sum(&span(3, &[&[1, 0, 0]])).is_err());
    }

    #[test]
    fn membership() {
        let p = span(3, &[&[1, 1, 0], &[0, 1, 1]]);
        assert!(p.contains(&v(&[1, 2, 1])));
        assert!(!p.contains(&v(&[1, 0, 0])));
        assert!(p.basis_is_saturated());
    }

    #[test]
    fn matrix_text_format() {
        let vs = parse_matrix("1 2 3\n# comment\n\n4 5 6  # trailing\n").unwrap();
        assert_eq!(vs, vec![v(&[1, 2, 3]), v(&[4, 5, 6])]);
        assert!(parse_matrix("1 2\n3").is_err());
        assert!(parse_matrix("1 x").is_err());
    }

    #[test]
    fn json_shape() {
        let s = span(3, &[&[1, 2, 3]]);
        assert_eq!(
            s.to_json().to_string(),
            r#"{"ambient":3,"basis":[[1,2,3]],"dim":1,"height_squared":14}"#
        );
    }
}

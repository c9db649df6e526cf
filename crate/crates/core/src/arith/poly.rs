//! Dense integer polynomials with exact rational evaluation and Sturm root counting.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::Dyadic;
use super::interval::Interval;
use crate::error::Error;

/// Polynomial with integer coefficients, constant term first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Exact evaluation at a dyadic point.
    pub fn eval_dyadic(&self, x: &Dyadic) -> Dyadic {
        let mut acc = Dyadic::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Dyadic::from_bigint(c.clone());
        }
        acc
    }

    /// Interval Horner evaluation (encloses the range on `x`).
    pub fn eval_interval(&self, x: &Interval, prec: u32) -> Interval {
        let mut acc = Interval::from_int(0);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&Interval::from_bigint(c)).round(prec);
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let v = self.eval_rational(x);
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Number of sign changes in the coefficient sequence (Descartes' bound on positive roots).
    pub fn descartes_sign_changes(&self) -> usize {
        let signs: Vec<bool> = self
            .coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Cauchy bound: every real root has absolute value below this integer.
    pub fn root_bound(&self) -> BigInt {
        let lead = self.leading().expect("nonzero polynomial").abs();
        let m = self.coeffs.iter().map(|c| c.abs()).max().unwrap();
        BigInt::one() + (m + &lead - BigInt::one()) / lead
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        let seq = sturm_sequence(self);
        let va = sign_variations(&seq, a);
        let vb = sign_variations(&seq, b);
        va.saturating_sub(vb)
    }
}

impl IntPolynomial {
    /// Greatest common divisor, normalized to a primitive integer polynomial with positive
    /// leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let (mut a, mut b) = (to_rat(self), to_rat(other));
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            return IntPolynomial::new(Vec::new());
        }
        let den = a
            .iter()
            .fold(BigInt::one(), |l, c| num_integer::Integer::lcm(&l, c.denom()));
        let ints: Vec<BigInt> = a.iter().map(|c| (c * &den).to_integer()).collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        IntPolynomial::new(ints.into_iter().map(|c| c / &g * &sign).collect())
    }
}

type RatPoly = Vec<BigRational>;

fn to_rat(p: &IntPolynomial) -> RatPoly {
    p.coeffs
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let q = &r[dr] / &lb;
        for i in 0..=db {
            let t = &q * &b[i];
            r[dr - db + i] -= t;
        }
        trim(&mut r);
    }
    r
}

fn sturm_sequence(p: &IntPolynomial) -> Vec<RatPoly> {
    let mut seq = vec![to_rat(p), to_rat(&p.derivative())];
    trim(&mut seq[1]);
    while let Some(last) = seq.last() {
        if last.is_empty() {
            seq.pop();
            break;
        }
        let prev = &seq[seq.len() - 2];
        let r = rem(prev, last);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn eval_rat(p: &RatPoly, x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn sign_variations(seq: &[RatPoly], x: &BigRational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| eval_rat(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Comma-separated integer coefficients, constant term first.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial[{self}]")
    }
}

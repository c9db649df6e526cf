//! Closed intervals with dyadic endpoints and outward rounding.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};

/// Enclosure `[lo, hi]` of a real value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo:?} > {hi:?}");
        Interval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Interval::point(Dyadic::from_int(v))
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Interval::point(Dyadic::from_bigint(v.clone()))
    }

    /// Outward enclosure of a rational with width at most `2^-bits`; exact for dyadic input.
    pub fn from_rational(r: &BigRational, bits: u32) -> Self {
        if let Some(d) = Dyadic::try_from_rational(r) {
            return Interval::point(d);
        }
        let g = -(bits as i64);
        Interval::new(
            Dyadic::from_rational(r, g, Round::Down),
            Dyadic::from_rational(r, g, Round::Up),
        )
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// True when the width is at most `2^-bits`.
    pub fn width_at_most(&self, bits: u32) -> bool {
        self.width() <= Dyadic::pow2(-(bits as i64))
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        &self.lo.to_rational() <= r && r <= &self.hi.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Certified `self < other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_gt(&self, other: &Interval) -> bool {
        other.certainly_lt(self)
    }

    pub fn certainly_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn certainly_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn midpoint(&self) -> Dyadic {
        (&self.lo + &self.hi).mul_pow2(-1)
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }

    /// Outward rounding of both endpoints to `prec` significant bits.
    pub fn round(&self, prec: u32) -> Interval {
        Interval {
            lo: self.lo.round_prec(prec, Round::Down),
            hi: self.hi.round_prec(prec, Round::Up),
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    /// Exact product.
    pub fn mul(&self, other: &Interval) -> Interval {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().cloned().unwrap();
        let hi = c.iter().max().cloned().unwrap();
        Interval { lo, hi }
    }

    pub fn mul_int(&self, k: &BigInt) -> Interval {
        self.mul(&Interval::from_bigint(k))
    }

    pub fn mul_pow2(&self, e: i64) -> Interval {
        Interval {
            lo: self.lo.mul_pow2(e),
            hi: self.hi.mul_pow2(e),
        }
    }

    pub fn div(&self, other: &Interval, prec: u32) -> Result<Interval> {
        if other.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let cands = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let lo = cands
            .iter()
            .map(|(a, b)| a.div(b, prec, Round::Down))
            .min()
            .unwrap();
        let hi = cands
            .iter()
            .map(|(a, b)| a.div(b, prec, Round::Up))
            .max()
            .unwrap();
        Ok(Interval { lo, hi })
    }

    pub fn recip(&self, prec: u32) -> Result<Interval> {
        Interval::from_int(1).div(self, prec)
    }

    pub fn abs(&self) -> Interval {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            let m = std::cmp::max(-&self.lo, self.hi.clone());
            Interval {
                lo: Dyadic::zero(),
                hi: m,
            }
        }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval {
            lo: std::cmp::max(&self.lo, &other.lo).clone(),
            hi: std::cmp::max(&self.hi, &other.hi).clone(),
        }
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval {
            lo: std::cmp::min(&self.lo, &other.lo).clone(),
            hi: std::cmp::min(&self.hi, &other.hi).clone(),
        }
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: std::cmp::min(&self.lo, &other.lo).clone(),
            hi: std::cmp::max(&self.hi, &other.hi).clone(),
        }
    }

    /// Intersection, if non-empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = std::cmp::max(&self.lo, &other.lo).clone();
        let hi = std::cmp::min(&self.hi, &other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn pow(&self, e: u32, prec: u32) -> Interval {
        let mut acc = Interval::from_int(1);
        for _ in 0..e {
            acc = acc.mul(self).round(prec);
        }
        if e % 2 == 0 && self.contains_zero() {
            acc = Interval {
                lo: Dyadic::zero(),
                hi: acc.hi,
            };
        }
        acc
    }

    /// Enclosure of the square root of every value in `self`, endpoints rounded to `prec` bits.
    pub fn sqrt(&self, prec: u32) -> Result<Interval> {
        if self.lo.signum() < 0 {
            return Err(Error::NegativeInput);
        }
        Ok(Interval {
            lo: self.lo.sqrt(prec, Round::Down),
            hi: self.hi.sqrt(prec, Round::Up),
        })
    }

    /// Enclosure of the natural logarithm, endpoints accurate to about `prec` bits.
    pub fn ln(&self, prec: u32) -> Result<Interval> {
        if self.lo.signum() <= 0 {
            return Err(Error::NonPositiveLog);
        }
        let lo = ln_point(&self.lo, prec);
        let hi = if self.is_point() {
            lo.clone()
        } else {
            ln_point(&self.hi, prec)
        };
        Ok(Interval {
            lo: lo.lo,
            hi: hi.hi,
        })
    }

    /// Integers that certainly bound the value: `(floor(lo), ceil(hi))`.
    pub fn integer_hull(&self) -> (BigInt, BigInt) {
        (self.lo.floor(), self.hi.ceil())
    }

    /// The unique integer nearest to every point of the interval, if the interval
    /// avoids all half-integers.
    pub fn certified_round(&self) -> Option<BigInt> {
        let half = Dyadic::pow2(-1);
        let a = (&self.lo + &half).floor();
        let b = (&self.hi + &half).floor();
        if a != b {
            return None;
        }
        // exclude an endpoint sitting exactly on a half-integer
        let lo_edge = &Dyadic::from_bigint(a.clone()) - &half;
        let hi_edge = &Dyadic::from_bigint(a.clone()) + &half;
        (self.lo > lo_edge && self.hi < hi_edge).then_some(a)
    }

    /// The unique integer `q` with `q <= x < q+1` for all `x` in the interval.
    pub fn certified_floor(&self) -> Option<BigInt> {
        let a = self.lo.floor();
        let b = self.hi.floor();
        (a == b).then_some(a)
    }

    /// Decimal `[lo, hi]` rendering with outward rounding.
    pub fn to_decimal_pair(&self, digits: u32) -> (String, String) {
        (
            self.lo.to_decimal(digits, Round::Down),
            self.hi.to_decimal(digits, Round::Up),
        )
    }

    /// Decimal significant-digit rendering of endpoints, rounded outward.
    pub fn to_sci_pair(&self, sig: u32) -> (String, String) {
        (sci(&self.lo, sig, Round::Down), sci(&self.hi, sig, Round::Up))
    }
}

/// Scientific notation with `sig` significant digits, rounded in direction `dir`.
fn sci(x: &Dyadic, sig: u32, dir: Round) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    // decimal exponent estimate from the binary one
    let e10 = ((x.magnitude_bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let shift = sig as i64 - 1 - e10;
    let r = x.to_rational();
    let ten = BigRational::from_integer(BigInt::from(10));
    let scaled = if shift >= 0 {
        r * num_traits::pow(ten, shift as usize)
    } else {
        r / num_traits::pow(ten, (-shift) as usize)
    };
    let v = match dir {
        Round::Down => scaled.floor().to_integer(),
        Round::Up => scaled.ceil().to_integer(),
    };
    let neg = v.is_negative();
    let digits = v.abs().to_string();
    let exp = digits.len() as i64 - 1 - shift;
    let (h, t) = digits.split_at(1);
    let body = if t.is_empty() {
        format!("{h}e{exp}")
    } else {
        format!("{h}.{t}e{exp}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Enclosure of `2 atanh(z) = 2 sum z^(2i+1)/(2i+1)` for a dyadic `|z| <= 1/3`.
fn two_atanh(z: &Dyadic, prec: u32) -> Interval {
    let p = prec + 16;
    let zi = Interval::point(z.clone());
    let z2 = zi.mul(&zi).round(p);
    let mut term = zi.clone();
    let mut sum = Interval::from_int(0);
    let mut k: i64 = 0;
    let tol = Dyadic::pow2(-(prec as i64) - 4);
    loop {
        let denom = Interval::from_int(2 * k + 1);
        sum = sum.add(&term.div(&denom, p).expect("odd denominator")).round(p);
        term = term.mul(&z2).round(p);
        k += 1;
        // tail <= |term| / (1 - z^2) <= 9/8 |term|
        let bound = term.abs().hi().clone();
        if bound <= tol || bound.is_zero() {
            let tail = &(&bound + &bound.mul_pow2(-3)) + &Dyadic::pow2(-(p as i64));
            sum = Interval::new(sum.lo() - &tail, sum.hi() + &tail);
            break;
        }
    }
    sum.mul_pow2(1)
}

pub(crate) fn ln2_enclosure(prec: u32) -> Interval {
    // ln 2 = 2 atanh(1/3)
    let p = prec + 8;
    let third = Interval::from_int(1).div(&Interval::from_int(3), p + 8).unwrap();
    let lo = two_atanh(third.lo(), p);
    let hi = two_atanh(third.hi(), p);
    Interval::new(lo.lo().clone(), hi.hi().clone())
}

/// Enclosure of `ln(x)` for a positive dyadic point.
fn ln_point(x: &Dyadic, prec: u32) -> Interval {
    let one = Dyadic::one();
    if *x == one {
        return Interval::from_int(0);
    }
    // x = r * 2^t with r in [3/4, 3/2)
    let mut t = x.magnitude_bits() - 1;
    let mut r = x.mul_pow2(-t);
    if r >= Dyadic::new(BigInt::from(3), -1) {
        r = r.mul_pow2(-1);
        t += 1;
    }
    let p = prec + 8 + (64 - (t.unsigned_abs()).leading_zeros());
    let ri = Interval::point(r.clone());
    // z = (r-1)/(r+1), |z| <= 1/5
    let num = ri.sub(&Interval::from_int(1));
    let den = ri.add(&Interval::from_int(1));
    let z = num.div(&den, p + 8).unwrap();
    let a = two_atanh(z.lo(), p);
    let b = two_atanh(z.hi(), p);
    let ln_r = Interval::new(a.lo().clone(), b.hi().clone());
    if t == 0 {
        return ln_r;
    }
    let ln2 = ln2_enclosure(p);
    ln_r.add(&ln2.mul(&Interval::from_int(t))).round(p)
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_sci_pair(12);
        write!(f, "[{a}, {b}]")
    }
}

impl Default for Interval {
    fn default() -> Self {
        Interval::from_int(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln2_digits() {
        let l = ln2_enclosure(80);
        assert!(l.width_at_most(78));
        // ln 2 = 0.693147180559945309417232121458...
        let (lo, hi) = l.to_decimal_pair(20);
        assert!(lo.as_str() <= "0.69314718055994530942" && hi.as_str() >= "0.69314718055994530941");
    }

    #[test]
    fn ln_of_ten_thousand() {
        let x = Interval::from_int(10_000).ln(60).unwrap();
        // ln(10^4) = 9.210340371976182736...
        let lo = BigRational::new(9_210_340_371_976_182i64.into(), 1_000_000_000_000_000i64.into());
        let hi = BigRational::new(9_210_340_371_976_183i64.into(), 1_000_000_000_000_000i64.into());
        assert!(x.certainly_gt(&Interval::from_rational(&lo, 80)));
        assert!(x.certainly_lt(&Interval::from_rational(&hi, 80)));
        assert!(x.width_at_most(50));
    }

    #[test]
    fn ln_monotone_on_interval() {
        let x = Interval::new(Dyadic::from_int(2), Dyadic::from_int(3));
        let l = x.ln(40).unwrap();
        assert!(l.lo().to_f64() <= 2f64.ln() && l.hi().to_f64() >= 3f64.ln());
        assert_eq!(
            Interval::from_int(0).ln(10).unwrap_err(),
            Error::NonPositiveLog
        );
    }

    #[test]
    fn rounding_to_integers() {
        let x = Interval::new(
            Dyadic::new(BigInt::from(11), -2),
            Dyadic::new(BigInt::from(23), -3),
        ); // [2.75, 2.875]
        assert_eq!(x.certified_round(), Some(BigInt::from(3)));
        assert_eq!(x.certified_floor(), Some(BigInt::from(2)));
        let y = Interval::new(Dyadic::new(BigInt::from(5), -1), Dyadic::from_int(3));
        assert_eq!(y.certified_round(), None);
        assert_eq!(y.certified_floor(), None);
    }

    #[test]
    fn abs_and_max() {
        let x = Interval::new(Dyadic::from_int(-3), Dyadic::from_int(2));
        assert_eq!(x.abs(), Interval::new(Dyadic::zero(), Dyadic::from_int(3)));
        let y = Interval::new(Dyadic::from_int(1), Dyadic::from_int(4));
        assert_eq!(x.max(&y), Interval::new(Dyadic::from_int(1), Dyadic::from_int(4)));
    }

    #[test]
    fn scientific_rendering_is_outward() {
        let x = Interval::from_rational(&BigRational::new(1.into(), 3.into()), 60);
        let (lo, hi) = x.to_sci_pair(5);
        assert_eq!(lo, "3.3333e-1");
        assert_eq!(hi, "3.3334e-1");
    }
}

//! Exact dyadic rationals `mantissa * 2^exponent`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Rounding direction for inexact operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// An exact dyadic rational. The mantissa is kept odd (or zero with exponent 0),
/// so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn bit_len(x: &BigInt) -> u64 {
    x.magnitude().bits()
}

/// floor(a / b) or ceil(a / b) for b > 0.
fn div_round(a: &BigInt, b: &BigInt, dir: Round) -> BigInt {
    debug_assert!(b.is_positive());
    match dir {
        Round::Down => a.div_floor(b),
        Round::Up => -((-a).div_floor(b)),
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic::new(v, 0)
    }

    /// 2^e
    pub fn pow2(e: i64) -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: e,
        }
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Position of the most significant bit: `2^(msb-1) <= |self| < 2^msb`.
    pub fn magnitude_bits(&self) -> i64 {
        if self.is_zero() {
            i64::MIN / 4
        } else {
            bit_len(&self.mant) as i64 + self.exp
        }
    }

    pub fn mul_pow2(&self, e: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + e,
        }
    }

    /// Round to the grid `2^grid_exp`.
    pub fn round_to_grid(&self, grid_exp: i64, dir: Round) -> Self {
        if self.exp >= grid_exp {
            return self.clone();
        }
        let shift = (grid_exp - self.exp) as u64;
        let q = div_round(&self.mant, &(BigInt::one() << shift), dir);
        Dyadic::new(q, grid_exp)
    }

    /// Round to at most `prec` significant bits.
    pub fn round_prec(&self, prec: u32, dir: Round) -> Self {
        let bits = bit_len(&self.mant);
        if bits <= prec as u64 {
            return self.clone();
        }
        let grid = self.exp + (bits - prec as u64) as i64;
        self.round_to_grid(grid, dir)
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << (self.exp as u64)
        } else {
            self.mant.div_floor(&(BigInt::one() << ((-self.exp) as u64)))
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << (self.exp as u64))
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << ((-self.exp) as u64))
        }
    }

    /// Dyadic approximation of a rational on the grid `2^grid_exp`.
    pub fn from_rational(r: &BigRational, grid_exp: i64, dir: Round) -> Self {
        let (num, den) = (r.numer(), r.denom());
        if grid_exp <= 0 {
            let scaled = num << ((-grid_exp) as u64);
            Dyadic::new(div_round(&scaled, den, dir), grid_exp)
        } else {
            let den = den << (grid_exp as u64);
            Dyadic::new(div_round(num, &den, dir), grid_exp)
        }
    }

    /// Exact when the rational has a power-of-two denominator.
    pub fn try_from_rational(r: &BigRational) -> Option<Self> {
        let den = r.denom();
        let tz = den.trailing_zeros().unwrap_or(0);
        if (den >> tz) != BigInt::one() {
            return None;
        }
        Some(Dyadic::new(r.numer().clone(), -(tz as i64)))
    }

    /// `self / other` rounded to about `prec` significant bits.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let (num, den) = if other.mant.is_negative() {
            (-&self.mant, -&other.mant)
        } else {
            (self.mant.clone(), other.mant.clone())
        };
        let shift = (prec as i64 + bit_len(&den) as i64 - bit_len(&num) as i64 + 2).max(0);
        let q = div_round(&(num << (shift as u64)), &den, dir);
        Dyadic::new(q, self.exp - other.exp - shift)
    }

    /// Square root rounded to about `prec` significant bits. Requires `self >= 0`.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Self {
        assert!(!self.mant.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // scale so that the exponent is even and the integer root has >= prec bits
        let mut shift = (2 * prec as i64 + 4 - bit_len(&self.mant) as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.mant << (shift as u64);
        let r = m.sqrt();
        let r = if dir == Round::Up && &r * &r != m { r + 1 } else { r };
        Dyadic::new(r, (self.exp - shift) / 2)
    }

    pub fn to_f64(&self) -> f64 {
        let bits = bit_len(&self.mant) as i64;
        let (m, e) = if bits > 60 {
            (&self.mant >> ((bits - 60) as u64), self.exp + bits - 60)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf: f64 = num_traits::ToPrimitive::to_f64(&m).unwrap_or(f64::NAN);
        mf * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    /// Decimal string with `digits` fractional digits, rounded in direction `dir`.
    pub fn to_decimal(&self, digits: u32, dir: Round) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = (self.to_rational() * BigRational::from_integer(scale)).clone();
        let v = match dir {
            Round::Down => scaled.floor().to_integer(),
            Round::Up => scaled.ceil().to_integer(),
        };
        format_fixed(&v, digits)
    }
}

/// Formats the integer `v / 10^digits` as a fixed-point decimal.
pub(crate) fn format_fixed(v: &BigInt, digits: u32) -> String {
    let neg = v.is_negative();
    let s = v.abs().to_string();
    let d = digits as usize;
    let body = if d == 0 {
        s
    } else if s.len() <= d {
        format!("0.{}{}", "0".repeat(d - s.len()), s)
    } else {
        let (a, b) = s.split_at(s.len() - d);
        format!("{a}.{b}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << ((self.exp - e) as u64);
        let b = &other.mant << ((other.exp - e) as u64);
        a.cmp(&b)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << ((self.exp - e) as u64);
        let b = &rhs.mant << ((rhs.exp - e) as u64);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl From<BigInt> for Dyadic {
    fn from(v: BigInt) -> Self {
        Dyadic::from_bigint(v)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp >= 0 {
            write!(f, "{}", self.floor())
        } else {
            write!(f, "{:e}", self.to_f64())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_form() {
        let a = Dyadic::new(BigInt::from(12), 0);
        assert_eq!(a, Dyadic::new(BigInt::from(3), 2));
        assert_eq!(Dyadic::new(BigInt::zero(), 17), Dyadic::zero());
    }

    #[test]
    fn rounding_and_floor() {
        let x = Dyadic::from_rational(&rat(7, 3), -10, Round::Down);
        let y = Dyadic::from_rational(&rat(7, 3), -10, Round::Up);
        assert!(x.to_rational() <= rat(7, 3) && y.to_rational() >= rat(7, 3));
        assert_eq!(&y - &x, Dyadic::pow2(-10));
        assert_eq!(x.floor(), BigInt::from(2));
        assert_eq!(y.ceil(), BigInt::from(3));
        let neg = Dyadic::from_rational(&rat(-5, 2), 0, Round::Down);
        assert_eq!(neg, Dyadic::from_int(-3));
    }

    #[test]
    fn division_brackets_quotient() {
        let a = Dyadic::from_int(1);
        let b = Dyadic::from_int(-3);
        let lo = a.div(&b, 40, Round::Down);
        let hi = a.div(&b, 40, Round::Up);
        assert!(lo.to_rational() <= rat(-1, 3) && rat(-1, 3) <= hi.to_rational());
        assert!((&hi - &lo) <= Dyadic::pow2(-40));
    }

    #[test]
    fn sqrt_brackets_root() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt(50, Round::Down);
        let hi = two.sqrt(50, Round::Up);
        assert!(&lo * &lo <= two && two <= &hi * &hi);
        assert_eq!(Dyadic::from_int(16).sqrt(10, Round::Up), Dyadic::from_int(4));
    }

    #[test]
    fn decimal_output() {
        let x = Dyadic::from_rational(&rat(1, 3), -60, Round::Down);
        assert_eq!(x.to_decimal(4, Round::Down), "0.3333");
        assert_eq!(x.to_decimal(4, Round::Up), "0.3334");
        assert_eq!(Dyadic::from_int(-2).to_decimal(2, Round::Down), "-2.00");
    }
}

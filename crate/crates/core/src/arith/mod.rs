//! Exact and certified arithmetic: dyadic rationals, outward-rounded intervals,
//! real oracles and the comparison protocol used by every other module.

mod dyadic;
mod interval;
mod oracle;
mod poly;

pub use dyadic::{Dyadic, Round};
pub(crate) use dyadic::format_fixed;
pub use interval::Interval;
pub use oracle::{FnProducer, OracleKind, RealOracle, RealProducer, DEFAULT_MAX_BITS};
pub use poly::IntPolynomial;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Outcome of [`certified_compare`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Greater,
    /// Both operands are the same exact rational.
    EqualProven,
    /// Enclosures still overlap at the precision ceiling.
    Unresolved { bits: u32, width: Dyadic },
}

impl Comparison {
    pub fn reverse(self) -> Comparison {
        match self {
            Comparison::Less => Comparison::Greater,
            Comparison::Greater => Comparison::Less,
            other => other,
        }
    }
}

/// Compare two reals by refining enclosures until they separate or `max_bits` is reached.
pub fn certified_compare<A, B>(a: &A, b: &B, max_bits: u32) -> Comparison
where
    A: RealProducer + ?Sized,
    B: RealProducer + ?Sized,
{
    if let (Some(x), Some(y)) = (a.exact(), b.exact()) {
        return match x.cmp(&y) {
            std::cmp::Ordering::Less => Comparison::Less,
            std::cmp::Ordering::Greater => Comparison::Greater,
            std::cmp::Ordering::Equal => Comparison::EqualProven,
        };
    }
    let ceiling = [Some(max_bits), a.precision_cap(), b.precision_cap()]
        .into_iter()
        .flatten()
        .min()
        .unwrap();
    let mut bits = 16.min(ceiling);
    let mut width = Dyadic::pow2(64);
    loop {
        let (ea, eb) = match (a.enclose(bits), b.enclose(bits)) {
            (Ok(ea), Ok(eb)) => (ea, eb),
            _ => return Comparison::Unresolved { bits, width },
        };
        if ea.certainly_lt(&eb) {
            return Comparison::Less;
        }
        if ea.certainly_gt(&eb) {
            return Comparison::Greater;
        }
        width = std::cmp::max(ea.width(), eb.width());
        if bits >= ceiling {
            return Comparison::Unresolved { bits, width };
        }
        bits = (bits * 2).min(ceiling);
    }
}

/// Enclosure of `ln 2` of width at most `2^-k`.
pub fn log2_constant(k: u32) -> Interval {
    let mut p = k + 8;
    loop {
        let e = interval::ln2_enclosure(p);
        if e.width_at_most(k) {
            return e;
        }
        p += 16;
    }
}

/// Enclosure of `sqrt(x)` for every value of `x`; endpoints carry at least `k` significant bits.
pub fn sqrt_interval(x: &Interval, k: u32) -> Result<Interval> {
    x.sqrt(k.max(2))
}

/// Enclosure of a rational to width `2^-bits`.
pub fn rational_enclosure(r: &BigRational, bits: u32) -> Interval {
    Interval::from_rational(r, bits)
}

/// Refine `f(bits)` until the result has width at most `2^-k` or `max_bits` is exceeded.
pub fn refine_until<F>(k: u32, max_bits: u32, mut f: F) -> Result<Interval>
where
    F: FnMut(u32) -> Result<Interval>,
{
    let mut bits = k + 8;
    let mut last = None;
    while bits <= max_bits.max(k + 8) {
        let e = f(bits)?;
        if e.width_at_most(k) {
            return Ok(e);
        }
        last = Some(e);
        bits *= 2;
    }
    Err(Error::PrecisionExhausted {
        bits: k,
        achieved_width: last.map(|e| e.width().to_string()).unwrap_or_default(),
    })
}

/// Parses `[-]digits[.digits][e[-]digits]` exactly.
pub fn parse_decimal_rational(s: &str) -> Result<BigRational> {
    let s = s.trim().trim_matches('"');
    let bad = || Error::Parse(format!("bad decimal {s:?}"));
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(p) => (&s[..p], s[p + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp as i64 - frac.len() as i64;
    let ten = BigInt::from(10u32);
    let mut v = if scale >= 0 {
        BigRational::from_integer(digits * ten.pow(scale as u32))
    } else {
        BigRational::new(digits, ten.pow((-scale) as u32))
    };
    if neg {
        v = -v;
    }
    Ok(v)
}

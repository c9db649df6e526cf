//! Real numbers queryable to arbitrary certified precision.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dyadic::{Dyadic, Round};
use super::interval::Interval;
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Default refinement ceiling for certified operations.
pub const DEFAULT_MAX_BITS: u32 = 4096;

/// Anything that can produce enclosures of a fixed real value at increasing precision.
pub trait RealProducer {
    /// Enclosure of width at most `2^-bits`.
    fn enclose(&self, bits: u32) -> Result<Interval>;

    /// The exact value, when it is a known rational.
    fn exact(&self) -> Option<BigRational> {
        None
    }

    /// Largest `bits` this producer can honour.
    fn precision_cap(&self) -> Option<u32> {
        None
    }
}

impl RealProducer for BigRational {
    fn enclose(&self, bits: u32) -> Result<Interval> {
        Ok(Interval::from_rational(self, bits + 1))
    }

    fn exact(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

/// A fixed enclosure that cannot be refined.
impl RealProducer for Interval {
    fn enclose(&self, bits: u32) -> Result<Interval> {
        if self.width_at_most(bits) {
            Ok(self.clone())
        } else {
            Err(Error::PrecisionExhausted {
                bits,
                achieved_width: self.width().to_string(),
            })
        }
    }

    fn exact(&self) -> Option<BigRational> {
        self.is_point().then(|| self.lo().to_rational())
    }
}

/// Adapter for closures `bits -> enclosure`.
pub struct FnProducer<F>(pub F);

impl<F: Fn(u32) -> Result<Interval>> RealProducer for FnProducer<F> {
    fn enclose(&self, bits: u32) -> Result<Interval> {
        (self.0)(bits)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub enum OracleKind {
    /// The unique root of `poly` inside `(lo, hi)`.
    Algebraic {
        poly: IntPolynomial,
        lo: BigRational,
        hi: BigRational,
    },
    /// A decimal literal, trusted to half a unit in its last digit.
    DecimalLiteral {
        digits: String,
        value: BigRational,
        radius: BigRational,
        cap_bits: u32,
    },
}

#[derive(Default)]
struct Cache {
    /// Current isolating interval of an algebraic root (or the exact root).
    iso: Option<(BigRational, BigRational)>,
    exact_root: Option<BigRational>,
    enclosures: HashMap<u32, Interval>,
}

/// A real number with a refinement protocol. Clones share the enclosure cache.
#[derive(Clone)]
pub struct RealOracle {
    kind: Arc<OracleKind>,
    cache: Arc<Mutex<Cache>>,
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (v, _) = parse_decimal(s)?;
    Ok(v)
}

/// Parses `[-]digits[.digits]`, returning the value and the count of fractional digits.
fn parse_decimal(s: &str) -> Result<(BigRational, u32)> {
    let bad = || Error::Parse(format!("bad decimal {s:?}"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all = format!("{}{}", if int.is_empty() { "0" } else { int }, frac);
    let mut n: BigInt = all.parse().map_err(|_| bad())?;
    if neg {
        n = -n;
    }
    let d = BigInt::from(10u32).pow(frac.len() as u32);
    Ok((BigRational::new(n, d), frac.len() as u32))
}

impl RealOracle {
    fn from_kind(kind: OracleKind) -> Self {
        RealOracle {
            kind: Arc::new(kind),
            cache: Arc::new(Mutex::new(Cache::default())),
        }
    }

    /// Algebraic number given by its minimal polynomial and an isolating interval.
    pub fn algebraic(poly: IntPolynomial, lo: BigRational, hi: BigRational) -> Result<Self> {
        if poly.degree().unwrap_or(0) < 1 {
            return Err(Error::InvalidOracle("polynomial must have degree >= 1".into()));
        }
        if lo >= hi {
            return Err(Error::InvalidOracle(format!("empty interval ({lo}, {hi})")));
        }
        let (sl, sh) = (poly.sign_at(&lo), poly.sign_at(&hi));
        if sl == 0 || sh == 0 || sl == sh {
            return Err(Error::InvalidOracle(format!(
                "no sign change of {poly} on ({lo}, {hi})"
            )));
        }
        let count = poly.count_roots(&lo, &hi);
        if count != 1 {
            return Err(Error::InvalidOracle(format!(
                "{poly} has {count} roots in ({lo}, {hi}), expected exactly one"
            )));
        }
        let oracle = RealOracle::from_kind(OracleKind::Algebraic {
            poly,
            lo: lo.clone(),
            hi: hi.clone(),
        });
        oracle.cache.lock().unwrap().iso = Some((lo, hi));
        Ok(oracle)
    }

    /// Decimal literal; `cap_bits` is clamped to the precision its digits support.
    pub fn decimal(digits: &str, cap_bits: Option<u32>) -> Result<Self> {
        let (value, frac) = parse_decimal(digits.trim())?;
        // largest k with 2^(k+1) <= 10^frac, so [v - r, v + r] has width <= 2^-k
        let pow10 = BigInt::from(10u32).pow(frac);
        let implied = (pow10.bits() as u32).saturating_sub(2);
        let cap_bits = cap_bits.map_or(implied, |c| c.min(implied));
        Ok(RealOracle::from_kind(OracleKind::DecimalLiteral {
            digits: digits.trim().to_string(),
            value,
            radius: BigRational::new(BigInt::one(), pow10 * BigInt::from(2)),
            cap_bits,
        }))
    }

    pub fn kind(&self) -> &OracleKind {
        &self.kind
    }

    /// Degree of the minimal polynomial, for algebraic oracles.
    pub fn algebraic_degree(&self) -> Option<usize> {
        match &*self.kind {
            OracleKind::Algebraic { poly, .. } => poly.degree(),
            OracleKind::DecimalLiteral { .. } => None,
        }
    }

    /// Enclosure of width at most `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> Result<Interval> {
        if let Some(e) = self.cache.lock().unwrap().enclosures.get(&bits) {
            return Ok(e.clone());
        }
        let e = match &*self.kind {
            OracleKind::Algebraic { poly, .. } => self.refine_algebraic(poly, bits),
            OracleKind::DecimalLiteral {
                value,
                radius,
                cap_bits,
                ..
            } => decimal_enclosure(value, radius, *cap_bits, bits)?,
        };
        self.cache
            .lock()
            .unwrap()
            .enclosures
            .insert(bits, e.clone());
        Ok(e)
    }

    fn refine_algebraic(&self, poly: &IntPolynomial, bits: u32) -> Interval {
        let mut cache = self.cache.lock().unwrap();
        if let Some(r) = &cache.exact_root {
            return Interval::from_rational(r, bits + 1);
        }
        let (mut lo, mut hi) = cache.iso.clone().expect("isolating interval");
        let target = BigRational::new(BigInt::one(), BigInt::one() << (bits as u64 + 1));
        let s_lo = poly.sign_at(&lo);
        let two = BigRational::from_integer(BigInt::from(2));
        while &hi - &lo > target {
            let mid = (&lo + &hi) / &two;
            let s = poly.sign_at(&mid);
            if s == 0 {
                cache.exact_root = Some(mid.clone());
                cache.iso = Some((mid.clone(), mid.clone()));
                return Interval::from_rational(&mid, bits + 1);
            }
            if s == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        cache.iso = Some((lo.clone(), hi.clone()));
        let g = -(bits as i64) - 2;
        Interval::new(
            Dyadic::from_rational(&lo, g, Round::Down),
            Dyadic::from_rational(&hi, g, Round::Up),
        )
    }

    /// Enclosure of `xi^j` of width at most `2^-bits`.
    pub fn power_enclosure(&self, j: u32, bits: u32) -> Result<Interval> {
        if j == 0 {
            return Ok(Interval::from_int(1));
        }
        let base = self.enclosure(2)?;
        let mag = base.abs().hi().magnitude_bits().max(1) as u32;
        let mut extra = j * (mag + 1) + 4;
        loop {
            let want = bits + extra;
            if let Some(cap) = self.precision_cap() {
                if want > cap {
                    let e = self.enclosure(cap)?.pow(j, cap + extra + 64);
                    if e.width_at_most(bits) {
                        return Ok(e);
                    }
                    return Err(Error::PrecisionExhausted {
                        bits,
                        achieved_width: e.width().to_string(),
                    });
                }
            }
            let e = self.enclosure(want)?.pow(j, want + 64);
            if e.width_at_most(bits) {
                return Ok(e);
            }
            extra *= 2;
        }
    }

    /// Whether `q(xi) = 0`, decided exactly for algebraic oracles; `None` for decimal literals.
    pub fn is_root_of(&self, q: &IntPolynomial) -> Option<bool> {
        match &*self.kind {
            OracleKind::Algebraic { poly, lo, hi } => {
                if q.is_zero() {
                    return Some(true);
                }
                // xi is the only root of poly in (lo, hi), so q(xi) = 0 iff gcd(poly, q) has a root there
                let g = poly.gcd(q);
                Some(g.degree().unwrap_or(0) > 0 && g.count_roots(lo, hi) > 0)
            }
            OracleKind::DecimalLiteral { .. } => None,
        }
    }

    /// Short literal form, `alg:...` or `dec:...`.
    pub fn literal(&self) -> String {
        self.to_string()
    }
}

fn decimal_enclosure(
    value: &BigRational,
    radius: &BigRational,
    cap: u32,
    bits: u32,
) -> Result<Interval> {
    if bits > cap {
        return Err(Error::PrecisionExhausted {
            bits,
            achieved_width: format!("2^-{cap}"),
        });
    }
    let g = -(cap as i64) - 2;
    Ok(Interval::new(
        Dyadic::from_rational(&(value - radius), g, Round::Down),
        Dyadic::from_rational(&(value + radius), g, Round::Up),
    ))
}

impl RealProducer for RealOracle {
    fn enclose(&self, bits: u32) -> Result<Interval> {
        self.enclosure(bits)
    }

    fn precision_cap(&self) -> Option<u32> {
        match &*self.kind {
            OracleKind::DecimalLiteral { cap_bits, .. } => Some(*cap_bits),
            OracleKind::Algebraic { .. } => None,
        }
    }
}

impl fmt::Display for RealOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.kind {
            OracleKind::Algebraic { poly, lo, hi } => write!(f, "alg:{poly}:{lo},{hi}"),
            OracleKind::DecimalLiteral { digits, .. } => write!(f, "dec:{digits}"),
        }
    }
}

impl fmt::Debug for RealOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealOracle({self})")
    }
}

impl FromStr for RealOracle {
    type Err = Error;

    /// `alg:<c0,c1,...>:<lo>,<hi>` or `dec:<digits>[:<cap bits>]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("alg:") {
            let (poly, range) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected alg:<poly>:<lo>,<hi> in {s:?}")))?;
            let poly: IntPolynomial = poly.parse()?;
            let (lo, hi) = range
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected <lo>,<hi> in {s:?}")))?;
            RealOracle::algebraic(poly, parse_rational(lo)?, parse_rational(hi)?)
        } else if let Some(rest) = s.strip_prefix("dec:") {
            match rest.split_once(':') {
                Some((digits, cap)) => {
                    let cap = cap
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad cap in {s:?}")))?;
                    RealOracle::decimal(digits, Some(cap))
                }
                None => RealOracle::decimal(rest, None),
            }
        } else {
            Err(Error::Parse(format!(
                "oracle literal must start with alg: or dec: (got {s:?})"
            )))
        }
    }
}

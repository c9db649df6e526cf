//! Explicit upper bounds for the uniform exponent and their certified evaluation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::arith::{log2_constant, Dyadic, IntPolynomial, Interval, Round, DEFAULT_MAX_BITS};
use crate::error::{Error, Result};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(v: usize) -> BigInt {
    BigInt::from(v)
}

/// `1 - (m+1)x - m x^2`
pub fn p_poly(m: usize) -> IntPolynomial {
    IntPolynomial::new(vec![BigInt::one(), -int(m + 1), -int(m)])
}

/// `1 - m x - m x^2 - m(m-1) x^3` for `m >= 3`, and `1 - 3x + x^2 - 2x^3 - 2x^4` for `m = 2`.
pub fn q_poly(m: usize) -> IntPolynomial {
    if m == 2 {
        return IntPolynomial::from_i64(&[1, -3, 1, -2, -2]);
    }
    IntPolynomial::new(vec![
        BigInt::one(),
        -int(m),
        -int(m),
        -int(m * m.saturating_sub(1)),
    ])
}

/// `1 - (m+1)x - (m-1)x^2`
pub fn r_poly(m: usize) -> IntPolynomial {
    IntPolynomial::new(vec![BigInt::one(), -int(m + 1), -int(m.saturating_sub(1))])
}

/// `1 - 3x + 4x^3 - x^4`, whose root in `[1/3, 1/2]` bounds the cubic case.
pub fn cubic_case_poly() -> IntPolynomial {
    IntPolynomial::from_i64(&[1, -3, 0, 4, -1])
}

/// Drop factors of `x`, which contribute no positive root.
fn strip_zero_root(p: &IntPolynomial) -> IntPolynomial {
    let skip = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    IntPolynomial::new(p.coeffs()[skip..].to_vec())
}

fn to_dyadic(r: &BigRational) -> Dyadic {
    Dyadic::try_from_rational(r).expect("bisection endpoints are dyadic")
}

/// Bisect `[lo, hi]` (dyadic endpoints, `p(lo) p(hi) < 0`) down to width `2^-k`.
fn bisect(p: &IntPolynomial, mut lo: BigRational, mut hi: BigRational, k: u32) -> Interval {
    let s_lo = p.sign_at(&lo);
    let target = BigRational::new(BigInt::one(), BigInt::one() << k);
    while &hi - &lo > target {
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        match p.sign_at(&mid) {
            0 => return Interval::point(to_dyadic(&mid)),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Interval::new(to_dyadic(&lo), to_dyadic(&hi))
}

/// Enclosure of width at most `2^-k` of the single positive root of `p`.
///
/// Uniqueness is taken from Descartes' rule when it gives exactly one sign change and
/// otherwise from a Sturm count on `(0, B]` with `B` a root bound.
pub fn unique_positive_root(p: &IntPolynomial, k: u32) -> Result<Interval> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    let q = strip_zero_root(p);
    let bound = BigRational::from_integer(q.root_bound());
    let zero = BigRational::zero();
    let changes = q.descartes_sign_changes();
    if changes == 0 {
        return Err(Error::NoPositiveRoot);
    }
    if changes > 1 {
        let count = q.count_roots(&zero, &bound);
        if count == 0 {
            return Err(Error::NoPositiveRoot);
        }
        if count > 1 {
            return Err(Error::AmbiguousRootCount { count });
        }
    }
    // a root of even multiplicity would show no sign change
    if q.sign_at(&zero) * q.sign_at(&bound) >= 0 {
        return Err(Error::AmbiguousRootCount { count: changes });
    }
    Ok(bisect(&q, zero, bound, k))
}

/// Enclosure of the single root of `p` in `[lo, hi]`; the endpoints must have opposite signs
/// and the Sturm count on the interval must be one.
pub fn root_in_interval(p: &IntPolynomial, lo: &BigRational, hi: &BigRational, k: u32) -> Result<Interval> {
    if lo >= hi {
        return Err(Error::InvalidArgument(format!("empty interval [{lo}, {hi}]")));
    }
    if p.sign_at(lo) * p.sign_at(hi) >= 0 {
        return Err(Error::AmbiguousRootCount {
            count: p.count_roots(lo, hi),
        });
    }
    let count = p.count_roots(lo, hi);
    if count != 1 {
        return Err(Error::AmbiguousRootCount { count });
    }
    // rational bisection, then outward rounding onto a dyadic grid
    let (mut a, mut b) = (lo.clone(), hi.clone());
    let s_a = p.sign_at(&a);
    let target = BigRational::new(BigInt::one(), BigInt::one() << (k + 1));
    while &b - &a > target {
        let mid = (&a + &b) / BigRational::from_integer(2.into());
        match p.sign_at(&mid) {
            0 => return Ok(Interval::from_rational(&mid, k)),
            s if s == s_a => a = mid,
            _ => b = mid,
        }
    }
    let grid = -((k + 2) as i64);
    Ok(Interval::new(
        Dyadic::from_rational(&a, grid, Round::Down),
        Dyadic::from_rational(&b, grid, Round::Up),
    ))
}

/// True when `p` changes sign across the enclosure (or vanishes at a point enclosure).
pub fn root_certificate_holds(p: &IntPolynomial, iv: &Interval) -> bool {
    let (a, b) = (iv.lo().to_rational(), iv.hi().to_rational());
    if iv.is_point() {
        return p.sign_at(&a) == 0;
    }
    p.sign_at(&a) * p.sign_at(&b) < 0
}

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("m = {m} must be at least 2")));
    }
    Ok(())
}

/// Positive root of `1 - (m+1)x - m x^2` (the bound for `n = 2m+1`).
pub fn alpha(m: usize, k: u32) -> Result<Interval> {
    check_m(m)?;
    unique_positive_root(&p_poly(m), k)
}

/// Positive root of the even-case polynomial (the bound for `n = 2m`).
pub fn beta(m: usize, k: u32) -> Result<Interval> {
    check_m(m)?;
    unique_positive_root(&q_poly(m), k)
}

/// Root of `1 - 3x + 4x^3 - x^4` in `[1/3, 1/2]`.
pub fn cubic_case_root(k: u32) -> Result<Interval> {
    root_in_interval(&cubic_case_poly(), &rat(1, 3), &rat(1, 2), k)
}

/// `a = (1 - ln 2) / 2`
pub fn sqrt_coefficient(k: u32) -> Interval {
    Interval::from_int(1).sub(&log2_constant(k + 2)).mul_pow2(-1)
}

/// `n/2 + a sqrt(n) + c` at working precision `prec`.
fn linear_plus_root(n: usize, c: &BigRational, prec: u32) -> Interval {
    let a = sqrt_coefficient(prec);
    let root_n = Interval::from_bigint(&int(n)).sqrt(prec).expect("n >= 0");
    Interval::from_rational(&rat(n as i64, 2), prec)
        .add(&a.mul(&root_n).round(prec))
        .add(&Interval::from_rational(c, prec))
}

/// Enclosure of width at most `2^-k` of `1 / (n/2 + a sqrt(n) + 1/3)`.
pub fn large_n_bound(n: usize, k: u32) -> Result<Interval> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n} must be at least 2")));
    }
    crate::arith::refine_until(k, DEFAULT_MAX_BITS, |p| {
        linear_plus_root(n, &rat(1, 3), p).recip(p)
    })
}

/// Enclosure of `n/2 + a sqrt(n) + 4/3`, the lower bound it implies for the exponent of
/// approximation by algebraic integers of degree `n + 1`.
pub fn large_n_tau_lower(n: usize, k: u32) -> Result<Interval> {
    crate::arith::refine_until(k, DEFAULT_MAX_BITS, |p| Ok(linear_plus_root(n, &rat(4, 3), p)))
}

/// Outcome of a certified inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

impl Verdict {
    fn of_lt(a: &Interval, b: &Interval) -> Verdict {
        if a.certainly_lt(b) {
            Verdict::Holds
        } else if a.lo() >= b.hi() {
            Verdict::Fails
        } else {
            Verdict::Undecided
        }
    }

    fn of_le(a: &Interval, b: &Interval) -> Verdict {
        if a.hi() <= b.lo() {
            Verdict::Holds
        } else if a.certainly_gt(b) {
            Verdict::Fails
        } else {
            Verdict::Undecided
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Undecided => "undecided",
        }
    }
}

/// Parameters and checks of the large-`n` argument for one value of `n`.
#[derive(Debug, Clone)]
pub struct LargeNCheck {
    pub n: usize,
    pub ell: usize,
    pub k: usize,
    pub lambda: Interval,
    pub theta: Interval,
    pub theta_pow_k: Interval,
    pub eta: Interval,
    pub inv_lambda: Interval,
    /// `1/2 <= theta^k`
    pub half_le_theta_k: Verdict,
    /// `theta^k < 1`
    pub theta_k_lt_one: Verdict,
    /// `eta > 1/lambda`
    pub eta_gt_inv_lambda: Verdict,
    pub bits: u32,
}

impl LargeNCheck {
    pub fn pass(&self) -> bool {
        [self.half_le_theta_k, self.theta_k_lt_one, self.eta_gt_inv_lambda]
            .iter()
            .all(|v| *v == Verdict::Holds)
    }

    fn decided(&self) -> bool {
        [self.half_le_theta_k, self.theta_k_lt_one, self.eta_gt_inv_lambda]
            .iter()
            .all(|v| *v != Verdict::Undecided)
    }

    pub fn to_json(&self) -> Value {
        let iv = |x: &Interval| {
            let (lo, hi) = x.to_decimal_pair(12);
            json!([lo, hi])
        };
        json!({
            "n": self.n,
            "ell": self.ell,
            "k": self.k,
            "lambda": iv(&self.lambda),
            "theta": iv(&self.theta),
            "theta_pow_k": iv(&self.theta_pow_k),
            "eta": iv(&self.eta),
            "inv_lambda": iv(&self.inv_lambda),
            "half_le_theta_k": self.half_le_theta_k.as_str(),
            "theta_k_lt_one": self.theta_k_lt_one.as_str(),
            "eta_gt_inv_lambda": self.eta_gt_inv_lambda.as_str(),
            "bits": self.bits,
            "pass": self.pass(),
        })
    }
}

/// `floor(n/2 - (ln 2 / 2) sqrt(n) + 1)`, certified.
pub fn large_n_ell(n: usize, max_bits: u32) -> Result<usize> {
    let mut prec = 64;
    loop {
        let root_n = Interval::from_bigint(&int(n)).sqrt(prec)?;
        let x = Interval::from_rational(&rat(n as i64 + 2, 2), prec)
            .sub(&log2_constant(prec).mul(&root_n).round(prec).mul_pow2(-1));
        if let Some(f) = x.certified_floor() {
            return usize::try_from(f).map_err(|_| {
                Error::HypothesisUnmet(format!("negative ell for n = {n}"))
            });
        }
        if prec >= max_bits {
            return Err(Error::FloorUnresolved {
                what: format!("n/2 - (ln 2/2) sqrt(n) + 1 at n = {n}"),
                bits: prec,
            });
        }
        prec = (prec * 2).min(max_bits);
    }
}

fn large_n_check_at(n: usize, ell: usize, prec: u32) -> Result<LargeNCheck> {
    let k = n - 2 * ell;
    let inv_lambda = linear_plus_root(n, &rat(1, 3), prec);
    let lambda = inv_lambda.recip(prec)?;
    let one = Interval::from_int(1);
    let theta = Interval::from_bigint(&int(ell))
        .mul(&lambda)
        .div(&one.sub(&lambda), prec)?;
    let theta_pow_k = theta.pow(k as u32, prec);
    let mut sum = Interval::from_int(0);
    let mut term = one.clone();
    for _ in 0..=k + 1 {
        sum = sum.add(&term);
        term = term.mul(&theta).round(prec);
    }
    let eta = Interval::from_int(ell as i64 - 1).add(&sum);
    let half = Interval::point(Dyadic::pow2(-1));
    Ok(LargeNCheck {
        n,
        ell,
        k,
        half_le_theta_k: Verdict::of_le(&half, &theta_pow_k),
        theta_k_lt_one: Verdict::of_lt(&theta_pow_k, &one),
        eta_gt_inv_lambda: Verdict::of_lt(&inv_lambda, &eta),
        lambda,
        theta,
        theta_pow_k,
        eta,
        inv_lambda,
        bits: prec,
    })
}

/// Check `1/2 <= theta^k < 1` and `eta > 1/lambda` for every `n` in `n_from..=n_to`, refining the
/// working precision up to `max_bits` while any comparison is undecided.
pub fn verify_large_n_conditions(n_from: usize, n_to: usize, max_bits: u32) -> Result<Vec<LargeNCheck>> {
    if n_from < 12 || n_from > n_to {
        return Err(Error::InvalidArgument(format!(
            "need 12 <= from <= to, got {n_from}..{n_to}"
        )));
    }
    (n_from..=n_to)
        .map(|n| {
            let ell = large_n_ell(n, max_bits)?;
            if 2 * ell >= n {
                return Err(Error::HypothesisUnmet(format!("k = n - 2 ell < 1 at n = {n}")));
            }
            if n - 2 * ell > ell {
                return Err(Error::HypothesisUnmet(format!("k > ell at n = {n}")));
            }
            let mut prec = 64.min(max_bits);
            loop {
                let c = large_n_check_at(n, ell, prec)?;
                if c.decided() || prec >= max_bits {
                    return Ok(c);
                }
                prec = (prec * 2).min(max_bits);
            }
        })
        .collect()
}

/// Sign of `root - c` for the unique positive root of `p`, assuming `p(0) > 0` and `p` negative
/// beyond its root, using only an exact evaluation at `c > 0`.
fn root_vs(p: &IntPolynomial, c: &BigRational) -> Ordering {
    match p.sign_at(c) {
        s if s > 0 => Ordering::Greater,
        s if s < 0 => Ordering::Less,
        _ => Ordering::Equal,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketRow {
    pub m: usize,
    pub alpha_above_lower: bool,
    pub alpha_below_upper: bool,
    pub beta_above_lower: bool,
    pub beta_below_upper: bool,
}

impl BracketRow {
    pub fn pass(&self) -> bool {
        self.alpha_above_lower && self.alpha_below_upper && self.beta_above_lower && self.beta_below_upper
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "alpha_lower": self.alpha_above_lower,
            "alpha_upper": self.alpha_below_upper,
            "beta_lower": self.beta_above_lower,
            "beta_upper": self.beta_below_upper,
            "pass": self.pass(),
        })
    }
}

/// `1/(m+2) < alpha_m < 1/(m+2) + 2/(m+2)^3` and `1/(m+2) < beta_m < 1/(m+2) + 7/(m+2)^3`, decided
/// by the exact sign of each polynomial at the rational endpoints.
pub fn bracket_check(m_from: usize, m_to: usize) -> Result<Vec<BracketRow>> {
    check_m(m_from)?;
    let mut rows = Vec::new();
    for m in m_from..=m_to {
        let (p, q) = (p_poly(m), q_poly(m));
        // the sign argument needs a single positive root with p(0) > 0 > p(+inf)
        for poly in [&p, &q] {
            let b = BigRational::from_integer(poly.root_bound());
            if poly.count_roots(&BigRational::zero(), &b) != 1
                || poly.sign_at(&BigRational::zero()) <= 0
                || !poly.leading().unwrap().is_negative()
            {
                return Err(Error::contract(
                    "bound polynomial does not have a single positive root",
                    format!("m={m} poly={poly}"),
                ));
            }
        }
        let c = (m + 2) as i64;
        let lower = rat(1, c);
        let up_a = &lower + rat(2, c * c * c);
        let up_b = &lower + rat(7, c * c * c);
        rows.push(BracketRow {
            m,
            alpha_above_lower: root_vs(&p, &lower) == Ordering::Greater,
            alpha_below_upper: root_vs(&p, &up_a) == Ordering::Less,
            beta_above_lower: root_vs(&q, &lower) == Ordering::Greater,
            beta_below_upper: root_vs(&q, &up_b) == Ordering::Less,
        });
    }
    Ok(rows)
}

/// `floor(x * 10^digits) / 10^digits`, certified; `None` if the enclosure straddles a grid point.
pub fn truncate_decimal(x: &Interval, digits: u32) -> Option<String> {
    let scale = BigInt::from(10u32).pow(digits);
    let q = x.mul_int(&scale).certified_floor()?;
    Some(crate::arith::format_fixed(&q, digits))
}

/// Refine `f` until its value truncates unambiguously to `digits` decimals.
pub fn truncate_certified<F>(digits: u32, max_bits: u32, f: F) -> Result<String>
where
    F: Fn(u32) -> Result<Interval>,
{
    let mut bits = 16 + 4 * digits;
    loop {
        let x = f(bits)?;
        if let Some(s) = truncate_decimal(&x, digits) {
            return Ok(s);
        }
        if bits >= max_bits {
            return Err(Error::PrecisionExhausted {
                bits,
                achieved_width: x.width().to_string(),
            });
        }
        bits = (bits * 2).min(max_bits);
    }
}

/// One row of the comparison table of upper bounds.
#[derive(Debug, Clone)]
pub struct BoundRow {
    pub n: usize,
    /// `1/ceil(n/2)` for odd `n`.
    pub laurent: Option<BigRational>,
    /// Quoted values, not recomputed.
    pub schleischitz: Option<&'static str>,
    pub badziahin: Option<&'static str>,
    /// `"alpha_m"` or `"beta_m"`.
    pub new_label: String,
    pub new_bound: Interval,
    /// `1 + 1/new_bound`
    pub tau_lower: Interval,
    /// `n/2 + a sqrt(n) + 4/3`
    pub tau_lower_general: Interval,
}

impl BoundRow {
    pub fn new_truncated(&self, digits: u32) -> Result<String> {
        let (n, m) = (self.n, self.n / 2);
        truncate_certified(digits, DEFAULT_MAX_BITS, |b| {
            if n % 2 == 0 {
                beta(m, b)
            } else {
                alpha(m, b)
            }
        })
    }

    pub fn laurent_truncated(&self, digits: u32) -> Option<String> {
        self.laurent.as_ref().map(|r| {
            let scale = BigRational::from_integer(BigInt::from(10u32).pow(digits));
            crate::arith::format_fixed(&(r * scale).floor().to_integer(), digits)
        })
    }

    pub fn to_json(&self, digits: u32) -> Result<Value> {
        let (tlo, thi) = self.tau_lower.to_decimal_pair(digits);
        let (glo, ghi) = self.tau_lower_general.to_decimal_pair(digits);
        Ok(json!({
            "n": self.n,
            "laurent": self.laurent_truncated(digits),
            "schleischitz": self.schleischitz,
            "badziahin": self.badziahin,
            "new_label": self.new_label,
            "new": self.new_truncated(digits)?,
            "tau_lower": [tlo, thi],
            "tau_lower_general": [glo, ghi],
        }))
    }

    pub const CSV_HEADER: &'static str =
        "n,laurent,schleischitz,badziahin,new_label,new,tau_lower_lo,tau_lower_general_lo";

    pub fn to_csv(&self, digits: u32) -> Result<String> {
        Ok(format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.laurent_truncated(digits).unwrap_or_default(),
            self.schleischitz.unwrap_or(""),
            self.badziahin.unwrap_or(""),
            self.new_label,
            self.new_truncated(digits)?,
            self.tau_lower.lo().to_decimal(digits, Round::Down),
            self.tau_lower_general.lo().to_decimal(digits, Round::Down),
        ))
    }
}

/// Values quoted for comparison in the even rows.
const QUOTED_EVEN: [(usize, &str, &str); 5] = [
    (4, "0.3706", "0.3660"),
    (6, "0.2681", "0.2637"),
    (8, "0.2107", "0.2071"),
    (10, "0.1737", "0.1708"),
    (12, "0.1478", "0.1454"),
];

/// Rows `n = 4..=13` of the comparison table, with the bounds enclosed to width `2^-k`.
pub fn emit_table1(k: u32) -> Result<Vec<BoundRow>> {
    (4..=13)
        .map(|n| {
            let (label, new_bound) = if n % 2 == 0 {
                (format!("beta_{}", n / 2), beta(n / 2, k)?)
            } else {
                (format!("alpha_{}", (n - 1) / 2), alpha((n - 1) / 2, k)?)
            };
            let quoted = QUOTED_EVEN.iter().find(|q| q.0 == n);
            let prec = k + 8;
            Ok(BoundRow {
                n,
                laurent: (n % 2 == 1).then(|| rat(1, n.div_ceil(2) as i64)),
                schleischitz: quoted.map(|q| q.1),
                badziahin: quoted.map(|q| q.2),
                new_label: label,
                tau_lower: Interval::from_int(1).add(&new_bound.recip(prec)?),
                tau_lower_general: large_n_tau_lower(n, k)?,
                new_bound,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{certified_compare, Comparison};

    fn brackets(x: &Interval, lo: (i64, i64), hi: (i64, i64)) -> bool {
        x.certainly_gt(&Interval::from_rational(&rat(lo.0, lo.1), 80))
            && x.certainly_lt(&Interval::from_rational(&rat(hi.0, hi.1), 80))
    }

    #[test]
    fn quadratic_root_matches_closed_form() {
        // (-3 + sqrt 17) / 4, with sqrt 17 bracketed by squaring
        let r = alpha(2, 60).unwrap();
        assert!(r.width_at_most(60));
        assert!(root_certificate_holds(&p_poly(2), &r));
        let s17_lo = rat(4_123_105_625, 1_000_000_000);
        let s17_hi = rat(4_123_105_626, 1_000_000_000);
        assert!(&s17_lo * &s17_lo < rat(17, 1) && &s17_hi * &s17_hi > rat(17, 1));
        let lo = (s17_lo - rat(3, 1)) / rat(4, 1);
        let hi = (s17_hi - rat(3, 1)) / rat(4, 1);
        assert!(r.certainly_gt(&Interval::from_rational(&lo, 80)));
        assert!(r.certainly_lt(&Interval::from_rational(&hi, 80)));
    }

    #[test]
    fn constant_term_is_one() {
        for m in 2..20 {
            assert_eq!(p_poly(m).sign_at(&BigRational::zero()), 1);
            assert_eq!(q_poly(m).sign_at(&BigRational::zero()), 1);
        }
    }

    #[test]
    fn cubic_case() {
        let r = cubic_case_root(40).unwrap();
        assert!(brackets(&r, (4245, 10_000), (4246, 10_000)));
        assert!(root_certificate_holds(&cubic_case_poly(), &r));
        // four real roots overall, so the unrestricted search must refuse
        assert!(matches!(
            unique_positive_root(&cubic_case_poly(), 20),
            Err(Error::AmbiguousRootCount { .. })
        ));
    }

    #[test]
    fn table_entries() {
        assert!(brackets(&alpha(2, 40).unwrap(), (2807, 10_000), (2808, 10_000)));
        assert!(brackets(&alpha(3, 40).unwrap(), (2152, 10_000), (2153, 10_000)));
        assert!(brackets(&beta(2, 40).unwrap(), (3370, 10_000), (3371, 10_000)));
        assert!(alpha(1, 10).is_err());
    }

    #[test]
    fn root_errors() {
        assert_eq!(
            unique_positive_root(&IntPolynomial::from_i64(&[1, 1]), 10).unwrap_err(),
            Error::NoPositiveRoot
        );
        // x^2 - 3x + 2 has roots 1 and 2
        assert!(matches!(
            unique_positive_root(&IntPolynomial::from_i64(&[2, -3, 1]), 10),
            Err(Error::AmbiguousRootCount { count: 2 })
        ));
        // x(x - 1) keeps its positive root after dropping the factor x
        let r = unique_positive_root(&IntPolynomial::from_i64(&[0, -1, 1]), 10).unwrap();
        assert!(r.contains(&Dyadic::one()));
    }

    #[test]
    fn large_n_values() {
        let b = large_n_bound(12, 40).unwrap();
        assert!(brackets(&b, (14567, 100_000), (14568, 100_000)));
        let b = large_n_bound(100, 40).unwrap();
        assert!(brackets(&b, (1_927_985, 100_000_000), (1_927_986, 100_000_000)));
        for n in 2..200 {
            let b = large_n_bound(n, 30).unwrap();
            assert!(b.certainly_lt(&Interval::from_rational(&rat(2, n as i64), 40)));
        }
    }

    #[test]
    fn large_n_at_twelve() {
        let c = &verify_large_n_conditions(12, 12, 64).unwrap()[0];
        assert_eq!((c.ell, c.k), (5, 2));
        assert!(c.pass());
        assert!(brackets(&c.theta, (85254, 100_000), (85255, 100_000)));
        assert!(brackets(&c.theta_pow_k, (72682, 100_000), (72683, 100_000)));
        assert!(brackets(&c.eta, (719_901, 100_000), (719_902, 100_000)));
        assert!(brackets(&c.inv_lambda, (686_481, 100_000), (686_482, 100_000)));
        assert!(verify_large_n_conditions(11, 20, 64).is_err());
    }

    #[test]
    fn brackets_hold_for_small_m() {
        let rows = bracket_check(2, 30).unwrap();
        assert!(rows.iter().all(BracketRow::pass));
        // cross-check one row against the enclosure itself
        let a = alpha(2, 40).unwrap();
        assert!(a.certainly_gt(&Interval::from_rational(&rat(1, 4), 40)));
        assert!(a.certainly_lt(&Interval::from_rational(&rat(9, 32), 40)));
    }

    #[test]
    fn bounds_decrease_in_m() {
        for m in 2..40 {
            let c = certified_compare(&alpha(m + 1, 80).unwrap(), &alpha(m, 80).unwrap(), 80);
            assert_eq!(c, Comparison::Less, "alpha at m={m}");
            let c = certified_compare(&beta(m + 1, 80).unwrap(), &beta(m, 80).unwrap(), 80);
            assert_eq!(c, Comparison::Less, "beta at m={m}");
        }
    }

    #[test]
    fn small_n_bounds_beat_the_general_one() {
        for n in 4..=11 {
            let specific = if n % 2 == 0 { beta(n / 2, 60) } else { alpha((n - 1) / 2, 60) };
            assert!(large_n_bound(n, 60).unwrap().certainly_gt(&specific.unwrap()), "n={n}");
        }
    }

    #[test]
    fn table_rows() {
        let rows = emit_table1(60).unwrap();
        assert_eq!(rows.len(), 10);
        let new: Vec<String> = rows.iter().map(|r| r.new_truncated(4).unwrap()).collect();
        assert_eq!(
            new,
            ["0.3370", "0.2807", "0.2444", "0.2152", "0.1919", "0.1753", "0.1587", "0.1483", "0.1357", "0.1286"]
        );
        assert_eq!(rows[1].laurent_truncated(4).as_deref(), Some("0.3333"));
        assert_eq!(rows[9].laurent_truncated(4).as_deref(), Some("0.1428"));
        assert_eq!(rows[0].laurent, None);
        assert_eq!(truncate_decimal(&Interval::from_rational(&rat(1, 6), 60), 4).as_deref(), Some("0.1666"));
    }
}

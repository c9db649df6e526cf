//! Candidate generation, certified comparison of `L` values and staircase extraction.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::{Dyadic, IntPolynomial, Interval, RealOracle, DEFAULT_MAX_BITS};
use crate::error::{Error, Result};
use crate::lattice::{int_json, matrix, vector_json, IntegerVector};

/// One minimal point with its exact squared norm and an enclosure of `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalPointRecord {
    /// Position in the sequence, starting at 0.
    pub i: usize,
    pub x: IntegerVector,
    pub x_squared: BigInt,
    pub l: Interval,
    /// `x_{i-1}, x_i, x_{i+1}` are linearly independent.
    pub in_i: bool,
}

/// Significant digits used when printing `L` enclosures.
pub const L_DIGITS: u32 = 24;

impl MinimalPointRecord {
    pub fn to_json(&self) -> Value {
        let (lo, hi) = self.l.to_sci_pair(L_DIGITS);
        json!({
            "i": self.i,
            "x": vector_json(&self.x),
            "X_squared": int_json(&self.x_squared),
            "L_lo": number(&lo),
            "L_hi": number(&hi),
            "in_I": self.in_i,
        })
    }

    pub const CSV_HEADER: &'static str = "i,x,X_squared,L_lo,L_hi,in_I";

    pub fn to_csv(&self) -> String {
        let (lo, hi) = self.l.to_sci_pair(L_DIGITS);
        let coords: Vec<String> = self.x.coords().iter().map(|c| c.to_string()).collect();
        format!(
            "{},{},{},{},{},{}",
            self.i,
            coords.join(" "),
            self.x_squared,
            lo,
            hi,
            self.in_i
        )
    }

    /// Inverse of [`to_json`](Self::to_json). The `L` enclosure is rebuilt from the printed
    /// decimal endpoints, which were rounded outward.
    pub fn from_json(v: &Value) -> Result<MinimalPointRecord> {
        let bad = |what: &str| Error::Parse(format!("record field {what:?} missing or malformed"));
        let i = v["i"].as_u64().ok_or_else(|| bad("i"))? as usize;
        let coords = v["x"]
            .as_array()
            .ok_or_else(|| bad("x"))?
            .iter()
            .map(|c| c.to_string().parse::<BigInt>().map_err(|_| bad("x")))
            .collect::<Result<Vec<_>>>()?;
        let x = IntegerVector::new(coords);
        let x_squared: BigInt = v["X_squared"].to_string().parse().map_err(|_| bad("X_squared"))?;
        if x_squared != x.norm_squared() {
            return Err(Error::Parse(format!("X_squared does not match x = {x}")));
        }
        let lo = crate::arith::parse_decimal_rational(&v["L_lo"].to_string())?;
        let hi = crate::arith::parse_decimal_rational(&v["L_hi"].to_string())?;
        if lo > hi {
            return Err(bad("L_lo"));
        }
        let l = Interval::from_rational(&lo, 256).hull(&Interval::from_rational(&hi, 256));
        let in_i = v["in_I"].as_bool().ok_or_else(|| bad("in_I"))?;
        Ok(MinimalPointRecord { i, x, x_squared, l, in_i })
    }
}

fn number(s: &str) -> Value {
    Value::Number(s.parse().expect("decimal literal"))
}

#[derive(Debug, Clone)]
pub struct EnumerateOptions {
    pub max_bits: u32,
    /// Number of contiguous `x0` ranges processed in parallel.
    pub shards: usize,
    /// Accept `xi` algebraic of degree at most `n`.
    pub allow_degenerate: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            max_bits: DEFAULT_MAX_BITS,
            shards: 1,
            allow_degenerate: false,
        }
    }
}

/// Signed quantity `a xi^j - b`.
#[derive(Debug, Clone)]
struct Term {
    a: BigInt,
    j: u32,
    b: BigInt,
}

impl Term {
    /// `a t^j - b`.
    fn poly(&self) -> IntPolynomial {
        let mut c = vec![BigInt::zero(); self.j as usize + 1];
        c[self.j as usize] += &self.a;
        c[0] -= &self.b;
        IntPolynomial::new(c)
    }

    /// `a t^j - b + sign (c t^k - d)` as a polynomial in `t`.
    fn combine(&self, other: &Term, sign: i64) -> IntPolynomial {
        let deg = self.j.max(other.j) as usize;
        let mut c = vec![BigInt::zero(); deg + 1];
        c[self.j as usize] += &self.a;
        c[0] -= &self.b;
        c[other.j as usize] += &other.a * sign;
        c[0] -= &other.b * sign;
        IntPolynomial::new(c)
    }
}

/// Powers of `xi` and the comparison machinery shared by all enumerators.
struct Approx<'a> {
    xi: &'a RealOracle,
    n: usize,
    max_bits: u32,
    /// Base working precision for `L` values.
    bits: u32,
    /// Precision of the cached powers; covers every `x0 <= X_max` at `bits`.
    table_bits: u32,
    powers: Vec<Interval>,
}

impl<'a> Approx<'a> {
    fn new(xi: &'a RealOracle, n: usize, x_max: u64, max_bits: u32) -> Result<Approx<'a>> {
        let size = 64 - x_max.leading_zeros();
        let mut bits = (64 + 2 * size).min(max_bits);
        loop {
            let table_bits = bits + size + 1;
            match (0..=n as u32)
                .map(|j| xi.power_enclosure(j, table_bits))
                .collect::<Result<Vec<_>>>()
            {
                Ok(powers) => {
                    return Ok(Approx { xi, n, max_bits, bits, table_bits, powers });
                }
                Err(e) if bits <= 16 => return Err(e),
                Err(_) => bits = bits * 3 / 4,
            }
        }
    }

    fn power(&self, j: u32, bits: u32) -> Result<Interval> {
        if bits <= self.table_bits {
            Ok(self.powers[j as usize].clone())
        } else {
            self.xi.power_enclosure(j, bits)
        }
    }

    fn extra(x0: &BigInt) -> u32 {
        x0.magnitude().bits() as u32 + 1
    }

    /// The rounding candidate `(x0, round(x0 xi), ..., round(x0 xi^n))`.
    fn candidate(&self, x0: &BigInt) -> Result<IntegerVector> {
        let mut coords = Vec::with_capacity(self.n + 1);
        coords.push(x0.clone());
        for j in 1..=self.n as u32 {
            let mut bits = self.bits;
            loop {
                let v = self.power(j, bits + Self::extra(x0)).map(|p| p.mul_int(x0));
                if let Some(r) = v.as_ref().ok().and_then(Interval::certified_round) {
                    coords.push(r);
                    break;
                }
                if bits >= self.max_bits || v.is_err() {
                    return Err(Error::RoundingUnresolved {
                        x0: x0.to_string(),
                        j: j as usize,
                        bits,
                    });
                }
                bits = (bits * 2).min(self.max_bits);
            }
        }
        Ok(IntegerVector::new(coords))
    }

    fn term(&self, t: &Term, bits: u32) -> Result<Interval> {
        let p = self.power(t.j, bits + Self::extra(&t.a))?;
        Ok(p.mul_int(&t.a).sub(&Interval::from_bigint(&t.b)).abs())
    }

    fn l_at(&self, x: &IntegerVector, bits: u32) -> Result<Interval> {
        let mut best = Interval::from_int(0);
        for t in terms(x) {
            best = best.max(&self.term(&t, bits)?);
        }
        Ok(best)
    }

    /// `|s| = |t|` decided exactly, when the oracle allows it.
    fn terms_equal(&self, s: &Term, t: &Term) -> Option<bool> {
        let minus = self.xi.is_root_of(&s.combine(t, -1))?;
        let plus = self.xi.is_root_of(&s.combine(t, 1))?;
        Some(minus || plus)
    }

    fn cmp_terms(&self, s: &Term, t: &Term) -> Result<Ordering> {
        let mut bits = self.bits;
        let mut tried_exact = false;
        loop {
            let (a, b) = (self.term(s, bits), self.term(t, bits));
            if let (Ok(a), Ok(b)) = (&a, &b) {
                if a.certainly_lt(b) {
                    return Ok(Ordering::Less);
                }
                if a.certainly_gt(b) {
                    return Ok(Ordering::Greater);
                }
                if !tried_exact {
                    tried_exact = true;
                    if self.terms_equal(s, t) == Some(true) {
                        return Ok(Ordering::Equal);
                    }
                }
            }
            if bits >= self.max_bits || a.is_err() || b.is_err() {
                return Err(Error::TieUnresolved {
                    first: format!("{}*xi^{}-{}", s.a, s.j, s.b),
                    second: format!("{}*xi^{}-{}", t.a, t.j, t.b),
                    bits,
                });
            }
            bits = (bits * 2).min(self.max_bits);
        }
    }

    fn max_term(&self, x: &IntegerVector) -> Result<Term> {
        let mut ts = terms(x).into_iter();
        let mut best = ts.next().expect("n >= 1");
        for t in ts {
            if self.cmp_terms(&t, &best)? == Ordering::Greater {
                best = t;
            }
        }
        Ok(best)
    }

    /// Certified comparison of `L(x)` and `L(y)`; exact ties are recognised for algebraic `xi`.
    fn cmp_l(&self, x: &IntegerVector, y: &IntegerVector) -> Result<Ordering> {
        let (a, b) = (self.l_at(x, self.bits)?, self.l_at(y, self.bits)?);
        if a.certainly_lt(&b) {
            return Ok(Ordering::Less);
        }
        if a.certainly_gt(&b) {
            return Ok(Ordering::Greater);
        }
        self.cmp_terms(&self.max_term(x)?, &self.max_term(y)?)
            .map_err(|_| Error::TieUnresolved {
                first: x.to_string(),
                second: y.to_string(),
                bits: self.max_bits,
            })
    }

    /// `L(x) < c` for a dyadic constant, refined as needed.
    fn l_below(&self, x: &IntegerVector, c: &Dyadic) -> Result<bool> {
        let bound = Interval::point(c.clone());
        let mut bits = self.bits;
        let mut tried_exact = false;
        loop {
            let l = self.l_at(x, bits)?;
            if l.certainly_lt(&bound) {
                return Ok(true);
            }
            if l.lo() >= bound.hi() {
                return Ok(false);
            }
            if !tried_exact {
                tried_exact = true;
                if self.some_term_has_size(x, c) {
                    return Ok(false);
                }
            }
            if bits >= self.max_bits {
                return Err(Error::TieUnresolved {
                    first: x.to_string(),
                    second: c.to_string(),
                    bits,
                });
            }
            bits = (bits * 2).min(self.max_bits);
        }
    }

    /// Whether `|x0 xi^j - x_j| = c` holds exactly for some `j`.
    fn some_term_has_size(&self, x: &IntegerVector, c: &Dyadic) -> bool {
        // c = m 2^e; compare 2^-e (x0 xi^j - x_j) with +-m
        let (m, e) = (c.mantissa(), c.exponent());
        let scale = BigInt::one() << e.unsigned_abs();
        terms(x).iter().any(|t| {
            let (a, b) = if e < 0 {
                (&t.a * &scale, &t.b * &scale)
            } else {
                (t.a.clone(), t.b.clone())
            };
            let m = if e < 0 { m.clone() } else { m * &scale };
            [&b + &m, &b - &m].into_iter().any(|shifted| {
                let exact = Term { a: a.clone(), j: t.j, b: shifted };
                self.xi.is_root_of(&exact.poly()) == Some(true)
            })
        })
    }

    /// Keep the points whose `L` is strictly below that of every earlier point.
    fn staircase(&self, points: Vec<IntegerVector>) -> Result<Vec<IntegerVector>> {
        let mut out: Vec<IntegerVector> = Vec::new();
        for p in points {
            let keep = match out.last() {
                None => true,
                Some(best) => self.cmp_l(&p, best)? == Ordering::Less,
            };
            if keep {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// Attach indices, `I` membership and `L` enclosures refined until consecutive values are
    /// separated. Depends only on the list of points, so every enumerator agrees byte for byte.
    fn finalize(&self, points: Vec<IntegerVector>) -> Result<Vec<MinimalPointRecord>> {
        let mut bits = vec![self.bits; points.len()];
        let mut ls = points
            .iter()
            .map(|p| self.l_at(p, self.bits))
            .collect::<Result<Vec<_>>>()?;
        loop {
            let mut changed = false;
            for i in 1..points.len() {
                if !ls[i].certainly_lt(&ls[i - 1]) && bits[i].max(bits[i - 1]) < self.max_bits {
                    for k in [i - 1, i] {
                        bits[k] = (bits[k] * 2).min(self.max_bits);
                        ls[k] = self.l_at(&points[k], bits[k])?;
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let len = points.len();
        let in_i: Vec<bool> = (0..len)
            .map(|i| {
                i >= 1 && i + 1 < len && {
                    let rows: Vec<Vec<BigInt>> = points[i - 1..=i + 1]
                        .iter()
                        .map(|p| p.coords().to_vec())
                        .collect();
                    matrix::rank(&rows) == 3
                }
            })
            .collect();
        Ok(points
            .into_iter()
            .zip(ls)
            .zip(in_i)
            .enumerate()
            .map(|(i, ((x, l), in_i))| MinimalPointRecord {
                i,
                x_squared: x.norm_squared(),
                x,
                l,
                in_i,
            })
            .collect())
    }
}

fn terms(x: &IntegerVector) -> Vec<Term> {
    (1..x.ambient_dim())
        .map(|j| Term {
            a: x[0].clone(),
            j: j as u32,
            b: x[j].clone(),
        })
        .collect()
}

fn check_inputs(xi: &RealOracle, n: usize, allow_degenerate: bool) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if let Some(degree) = xi.algebraic_degree() {
        if degree <= n && !allow_degenerate {
            return Err(Error::DegenerateXi { degree, n });
        }
    }
    Ok(())
}

/// Double-precision screen: rejects `x0` whose candidate certainly has `L` above a threshold.
struct FloatFilter {
    powers: Vec<f64>,
}

impl FloatFilter {
    /// Only when every `x0 xi^j` stays far inside the exactly representable range.
    fn new(approx: &Approx, x_max: u64) -> Option<FloatFilter> {
        if x_max > 1 << 40 {
            return None;
        }
        let powers: Vec<f64> = approx.powers[1..].iter().map(|p| p.midpoint().to_f64()).collect();
        let fits = powers.iter().all(|p| p.is_finite() && *p * (x_max as f64) < 2f64.powi(45));
        fits.then_some(FloatFilter { powers })
    }

    /// `L(candidate(x0)) > threshold` for sure. Each `x0 xi^j` is within `|y| 2^-48 + 2^-60`
    /// of its double approximation `y`, and the distance to the nearest integer moves by at most
    /// as much.
    fn certainly_above(&self, x0: u64, threshold: f64) -> bool {
        if !threshold.is_finite() {
            return false;
        }
        let x = x0 as f64;
        self.powers.iter().any(|p| {
            let y = x * p;
            let err = y.abs() * 2f64.powi(-48) + 2f64.powi(-60);
            (y - y.round()).abs() - err > threshold
        })
    }
}

/// `(x0, round(x0 xi), ..., round(x0 xi^n))`, each rounding certified.
pub fn candidate(x0: &BigInt, xi: &RealOracle, n: usize, max_bits: u32) -> Result<IntegerVector> {
    if x0 < &BigInt::one() {
        return Err(Error::InvalidArgument(format!("x0 = {x0} must be positive")));
    }
    let x_max = u64::try_from(x0).unwrap_or(u64::MAX);
    Approx::new(xi, n, x_max, max_bits)?.candidate(x0)
}

/// The minimal points with `L < 1/2` and norm at most `x_max`, in increasing norm.
pub fn enumerate_minimal_points(
    xi: &RealOracle,
    n: usize,
    x_max: u64,
    opts: &EnumerateOptions,
) -> Result<Vec<MinimalPointRecord>> {
    check_inputs(xi, n, opts.allow_degenerate)?;
    let approx = Approx::new(xi, n, x_max.max(1), opts.max_bits)?;
    let limit = BigInt::from(x_max) * BigInt::from(x_max);
    let shards = opts.shards.clamp(1, x_max.max(1) as usize);

    // the norm of the candidate grows strictly with x0, so each shard stops at its first overflow
    let filter = FloatFilter::new(&approx, x_max);
    let run = |from: u64, to: u64| -> Result<Vec<IntegerVector>> {
        let mut out: Vec<IntegerVector> = Vec::new();
        let mut best = f64::INFINITY;
        for x0 in from..=to {
            if filter.as_ref().is_some_and(|f| f.certainly_above(x0, best)) {
                continue;
            }
            let c = approx.candidate(&BigInt::from(x0))?;
            if c.norm_squared() > limit {
                break;
            }
            let keep = match out.last() {
                None => true,
                Some(b) => approx.cmp_l(&c, b)? == Ordering::Less,
            };
            if keep {
                best = approx.l_at(&c, approx.bits)?.hi().to_f64() * (1.0 + 1e-9);
                out.push(c);
            }
        }
        Ok(out)
    };
    let bounds: Vec<(u64, u64)> = (0..shards as u64)
        .map(|s| {
            let len = x_max / shards as u64;
            let rem = x_max % shards as u64;
            let start = 1 + s * len + s.min(rem);
            let end = start + len + u64::from(s < rem) - 1;
            (start, end)
        })
        .filter(|(a, b)| a <= b)
        .collect();
    let parts: Vec<Result<Vec<IntegerVector>>> = if bounds.len() <= 1 {
        bounds.iter().map(|&(a, b)| run(a, b)).collect()
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = bounds
                .iter()
                .map(|&(a, b)| scope.spawn(move || run(a, b)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration shard panicked"))
                .collect()
        })
    };
    let mut merged = Vec::new();
    for p in parts {
        merged.extend(p?);
    }
    let stairs = approx.staircase(merged)?;
    approx.finalize(stairs)
}

/// Largest input accepted by [`brute_force_minimal_points`].
pub const BRUTE_FORCE_MAX: u64 = 1000;

/// Independent reference: scan every integer point with `x0 >= 1`, norm at most `x_max` and
/// `L < 1`, keep strict record holders in order of norm, then apply the `L < 1/2` convention.
pub fn brute_force_minimal_points(
    xi: &RealOracle,
    n: usize,
    x_max: u64,
    max_bits: u32,
) -> Result<Vec<MinimalPointRecord>> {
    if x_max > BRUTE_FORCE_MAX {
        return Err(Error::InvalidArgument(format!(
            "brute force is limited to X_max <= {BRUTE_FORCE_MAX}"
        )));
    }
    check_inputs(xi, n, true)?;
    let approx = Approx::new(xi, n, x_max.max(1), max_bits)?;
    let limit = BigInt::from(x_max) * BigInt::from(x_max);
    let one = Dyadic::one();
    let mut by_norm: BTreeMap<BigInt, Vec<IntegerVector>> = BTreeMap::new();
    for x0 in 1..=x_max {
        let x0 = BigInt::from(x0);
        // every x_j with |x0 xi^j - x_j| < 1 lies between floor(lo) and ceil(hi)
        let mut ranges = Vec::with_capacity(n);
        for j in 1..=n as u32 {
            let v = xi.power_enclosure(j, approx.bits + Approx::extra(&x0))?.mul_int(&x0);
            let (a, b) = v.integer_hull();
            ranges.push((a, b));
        }
        let mut stack = vec![vec![x0.clone()]];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == n + 1 {
                let p = IntegerVector::new(prefix);
                if p.norm_squared() <= limit && approx.l_below(&p, &one)? {
                    by_norm.entry(p.norm_squared()).or_default().push(p);
                }
                continue;
            }
            let (a, b) = &ranges[prefix.len() - 1];
            let mut v = a.clone();
            while &v <= b {
                let mut next = prefix.clone();
                next.push(v.clone());
                stack.push(next);
                v += 1;
            }
        }
    }
    let mut records: Vec<IntegerVector> = Vec::new();
    for (_, group) in by_norm {
        let mut best = group[0].clone();
        let mut tied = false;
        for p in &group[1..] {
            match approx.cmp_l(p, &best)? {
                Ordering::Less => {
                    best = p.clone();
                    tied = false;
                }
                Ordering::Equal => tied = true,
                Ordering::Greater => {}
            }
        }
        let is_record = match records.last() {
            None => true,
            Some(r) => approx.cmp_l(&best, r)? == Ordering::Less,
        };
        if is_record {
            if tied {
                return Err(Error::TieUnresolved {
                    first: best.to_string(),
                    second: "another point of the same norm".into(),
                    bits: approx.max_bits,
                });
            }
            records.push(best);
        }
    }
    let half = Dyadic::pow2(-1);
    let mut kept = Vec::new();
    for r in records {
        if approx.l_below(&r, &half)? {
            kept.push(r);
        }
    }
    approx.finalize(kept)
}

/// Recompute `L` for records read back from text, at `bits` of precision.
pub fn refresh_l(records: &mut [MinimalPointRecord], xi: &RealOracle, bits: u32) -> Result<()> {
    for r in records.iter_mut() {
        r.l = crate::lattice::l_xi(&r.x, xi, bits)?;
    }
    Ok(())
}

/// Staircase laws of a record list: strictly increasing norm, certified decreasing `L`,
/// primitive points with positive first coordinate, `L < 1/2`, consistent `I` flags.
pub fn check_staircase(records: &[MinimalPointRecord]) -> Result<()> {
    let half = Interval::point(Dyadic::pow2(-1));
    for (k, r) in records.iter().enumerate() {
        let fail = |what: &str| Err(Error::contract(what.to_string(), format!("record {k}: {r:?}")));
        if r.i != k || r.x_squared != r.x.norm_squared() {
            return fail("record index or norm mismatch");
        }
        if !r.x.is_primitive() || r.x[0] <= BigInt::zero() {
            return fail("record is not primitive with positive first coordinate");
        }
        if !r.l.certainly_lt(&half) {
            return fail("record has L >= 1/2");
        }
        if k > 0 {
            let prev = &records[k - 1];
            if r.x_squared <= prev.x_squared || !r.l.certainly_lt(&prev.l) {
                return fail("staircase is not strict");
            }
        }
        let expect_i = k >= 1 && k + 1 < records.len() && {
            let rows: Vec<Vec<BigInt>> = records[k - 1..=k + 1]
                .iter()
                .map(|p| p.x.coords().to_vec())
                .collect();
            matrix::rank(&rows) == 3
        };
        if r.in_i != expect_i {
            return fail("I membership flag is wrong");
        }
    }
    Ok(())
}

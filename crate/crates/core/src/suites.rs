//! Seeded randomized checks of the structural laws: window-projection profiles, exact
//! height identities, avoiding maps and the hyperplane determinant vector.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{matrix, IntegerVector, Subspace};
use crate::minimal::construct_c;
use crate::projections::{
    analyze_degeneracy, find_avoiding_map, tau, u_ell, u_ell_vector, DimensionProfile,
};

pub const DEFAULT_CASES: usize = 500;
/// Largest `n` drawn; points live in `R^{n+1}`.
pub const MAX_N: usize = 8;
pub const MAX_ENTRY: i64 = 9;
/// Failures kept verbatim in a report.
const KEEP_FAILURES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Profile,
    Corollary,
    Composition,
    Duality,
    Schmidt,
    Heights,
    Avoiding,
    Construct,
    Degeneracy,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Profile,
        Suite::Corollary,
        Suite::Composition,
        Suite::Duality,
        Suite::Schmidt,
        Suite::Heights,
        Suite::Avoiding,
        Suite::Construct,
        Suite::Degeneracy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Profile => "profile",
            Suite::Corollary => "corollary",
            Suite::Composition => "composition",
            Suite::Duality => "duality",
            Suite::Schmidt => "schmidt",
            Suite::Heights => "heights",
            Suite::Avoiding => "avoiding",
            Suite::Construct => "construct",
            Suite::Degeneracy => "degeneracy",
        }
    }

    fn stream(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).unwrap() as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    /// Cases where the generated input fell outside the law's hypotheses.
    pub skipped: usize,
    pub failures: usize,
    pub examples: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "{} suite={} seed={} cases={} skipped={} failures={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.seed,
            self.cases,
            self.skipped,
            self.failures
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "seed": self.seed,
            "cases": self.cases,
            "skipped": self.skipped,
            "failures": self.failures,
            "pass": self.passed(),
            "examples": self.examples,
        })
    }
}

enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(what())
    }
}

struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    fn n(&mut self) -> usize {
        self.rng.gen_range(1..=MAX_N)
    }

    fn entry(&mut self) -> i64 {
        self.rng.gen_range(-MAX_ENTRY..=MAX_ENTRY)
    }

    fn vector(&mut self, len: usize) -> IntegerVector {
        IntegerVector::new((0..len).map(|_| BigInt::from(self.entry())).collect())
    }

    fn vectors(&mut self, count: usize, len: usize) -> Vec<IntegerVector> {
        (0..count).map(|_| self.vector(len)).collect()
    }

    /// Span of `count` random vectors; small entries make dependencies fairly common.
    fn subspace_from(&mut self, count: usize, len: usize) -> Result<Subspace> {
        let vs = self.vectors(count, len);
        Subspace::from_spanning_set(len, &vs)
    }

    fn subspace(&mut self, len: usize) -> Result<Subspace> {
        let count = self.rng.gen_range(0..=len);
        self.subspace_from(count, len)
    }

    /// Points `(1, r, r^2, ...)` and unit vectors mixed with random ones, so that
    /// degenerate window profiles actually occur.
    fn structured_subspace(&mut self, dim: usize, len: usize) -> Result<Subspace> {
        let mut vs = Vec::with_capacity(dim);
        for _ in 0..dim {
            let v = match self.rng.gen_range(0..3) {
                0 => {
                    let r = BigInt::from(self.rng.gen_range(-3i64..=3));
                    let mut p = BigInt::one();
                    let mut c = Vec::with_capacity(len);
                    for _ in 0..len {
                        c.push(p.clone());
                        p *= &r;
                    }
                    IntegerVector::new(c)
                }
                1 => IntegerVector::unit(len, self.rng.gen_range(0..len)),
                _ => self.vector(len),
            };
            vs.push(v);
        }
        Subspace::from_spanning_set(len, &vs)
    }
}

fn rows(vs: &[IntegerVector]) -> Vec<Vec<BigInt>> {
    vs.iter().map(|v| v.coords().to_vec()).collect()
}

fn profile_case(g: &mut Gen) -> Result<Outcome> {
    let n = g.n();
    let a = g.subspace(n + 1)?;
    let p = DimensionProfile::of(&a)?;
    let f = &p.values;
    let endpoints = f.len() == n + 2 && f[0] == a.dim() && f[n + 1] == 0;
    let concave = (1..=n).all(|i| f[i + 1] + f[i - 1] <= 2 * f[i]);
    // a point m where the linear tail starts, with f non-decreasing before it
    let tail = (0..=n + 1).any(|m| {
        (m..=n + 1).all(|l| f[l] == n + 1 - l) && (0..m).all(|l| f[l] <= f[l + 1])
    });
    Ok(check(endpoints && concave && tail, || format!("n={n} A={a:?} f={f:?}")))
}

fn corollary_case(g: &mut Gen) -> Result<Outcome> {
    let n = g.n();
    let a = g.subspace(n + 1)?;
    let f = DimensionProfile::of(&a)?.values;
    let ok = (1..=n).all(|l| {
        f[l].min(f[0] + l - 1) <= f[l - 1] && f[l - 1].min(n - l + 1) <= f[l]
    });
    Ok(check(ok, || format!("n={n} A={a:?} f={f:?}")))
}

fn composition_case(g: &mut Gen) -> Result<Outcome> {
    let n = g.n();
    let a = g.subspace(n + 1)?;
    let images = (0..=n + 1).map(|l| u_ell(&a, l)).collect::<Result<Vec<_>>>()?;
    for l in 0..=n + 1 {
        for k in 0..=l {
            if u_ell(&images[l - k], k)? != images[l] {
                return Ok(Outcome::Fail(format!("n={n} k={k} ell={l} A={a:?}")));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn duality_case(g: &mut Gen) -> Result<Outcome> {
    let len = g.n() + 1;
    let v = g.subspace(len)?;
    let w = v.orthogonal_complement();
    let ok = v.dim() + w.dim() == len
        && v.height_squared() == w.height_squared()
        && v.basis().iter().all(|x| w.basis().iter().all(|y| x.dot(y).is_zero()));
    Ok(check(ok, || format!("V={v:?} complement={w:?}")))
}

fn schmidt_case(g: &mut Gen) -> Result<Outcome> {
    let len = g.n() + 1;
    let u = g.subspace(len)?;
    let v = g.subspace(len)?;
    let s = u.sum(&v)?;
    let i = u.intersect(&v)?;
    let ok = s.dim() + i.dim() == u.dim() + v.dim()
        && s.height_squared() * i.height_squared() <= u.height_squared() * v.height_squared();
    Ok(check(ok, || format!("U={u:?} V={v:?} sum={s:?} meet={i:?}")))
}

fn heights_case(g: &mut Gen) -> Result<Outcome> {
    let len = g.n() + 1;
    let count = g.rng.gen_range(1..=len);
    let vs = g.vectors(count, len);
    let raw = rows(&vs);
    let s = Subspace::from_spanning_set(len, &vs)?;
    let basis_gram = matrix::gram_det(&rows(s.basis()));
    let mut ok = &basis_gram == s.height_squared() && s.dim() == matrix::rank(&raw);
    if s.dim() == count {
        // the index of the span in its saturation squared
        let wedge = matrix::gram_det(&raw);
        ok &= s.height_squared() <= &wedge && (&wedge % s.height_squared()).is_zero();
    }
    ok &= vs.iter().all(|v| s.contains(v));
    ok &= Subspace::zero(len).height_squared().is_one() && Subspace::full(len).height_squared().is_one();
    Ok(check(ok, || format!("vectors={raw:?} span={s:?}")))
}

fn avoiding_case(g: &mut Gen) -> Result<Outcome> {
    let n = g.n();
    let ell = g.rng.gen_range(0..=n);
    let dim = g.rng.gen_range(1..=n - ell + 1);
    let a = g.structured_subspace(dim, n + 1)?;
    let w = n + 1 - ell;
    let count = g.rng.gen_range(0..w);
    let v = g.subspace_from(count, w)?;
    if a.is_zero() || v.contains_subspace(&u_ell(&a, ell)?) {
        return Ok(Outcome::Skip);
    }
    let coeffs = find_avoiding_map(&a, ell, &v)?;
    let images = a
        .basis()
        .iter()
        .map(|b| tau(coeffs.coords(), b))
        .collect::<Result<Vec<_>>>()?;
    let bound = num_traits::pow(BigInt::from(n + 1), ell);
    let ok = coeffs.l1_norm() <= bound
        && matrix::rank(&rows(&images)) == a.dim()
        && images.iter().any(|x| !v.contains(x));
    Ok(check(ok, || format!("n={n} ell={ell} A={a:?} V={v:?} a={coeffs}")))
}

fn construct_case(g: &mut Gen) -> Result<Outcome> {
    let k = g.rng.gen_range(1..MAX_N);
    let ell = g.rng.gen_range(1..=MAX_N - k);
    let len = k + ell + 1;
    let (v, x) = if g.rng.gen_bool(0.5) {
        let v = g.subspace_from(k, k + 1)?;
        if v.dim() != k {
            return Ok(Outcome::Skip);
        }
        (v, g.vector(len))
    } else {
        // windows orthogonal to (c_0, ..., c_{k-1}, 1): x_{m+k} = -sum c_i x_{m+i}
        let c: Vec<BigInt> = (0..k).map(|_| BigInt::from(g.rng.gen_range(-2i64..=2))).collect();
        let mut normal = c.clone();
        normal.push(BigInt::one());
        let v = Subspace::from_spanning_set(k + 1, &[IntegerVector::new(normal)])?.orthogonal_complement();
        let mut xs: Vec<BigInt> = (0..k).map(|_| BigInt::from(g.entry())).collect();
        for m in 0..=ell {
            let next: BigInt = -(0..k).map(|i| &c[i] * &xs[m + i]).sum::<BigInt>();
            xs.push(next);
        }
        (v, IntegerVector::new(xs))
    };
    let cvec = construct_c(&v, &x, k, ell)?;
    // windows inside V iff adding them to a basis of V keeps the rank at k
    let mut stacked = rows(v.basis());
    for j in 0..=ell {
        stacked.push(x.coords()[j..j + k + 1].to_vec());
    }
    let inside = matrix::rank(&stacked) == k;
    let ok = cvec.is_zero() == inside && inside == v.contains_subspace(&u_ell_vector(&x, ell)?);
    Ok(check(ok, || format!("k={k} ell={ell} V={v:?} x={x} C={cvec}")))
}

fn degeneracy_case(g: &mut Gen) -> Result<Outcome> {
    let n = g.rng.gen_range(2..=MAX_N);
    let ell = g.rng.gen_range(1..=n / 2);
    let j = g.rng.gen_range(0..=n - 2 * ell);
    let a = g.structured_subspace(j + 1, n + 1)?;
    if a.dim() != j + 1 {
        return Ok(Outcome::Skip);
    }
    let mut probes = g.vectors(3, n + 1);
    probes.extend(a.basis().iter().cloned());
    if let Some(b) = a.basis().first() {
        probes.push(b.scale(&BigInt::from(2)).add(&g.vector(n + 1)));
    }
    match analyze_degeneracy(&a, j, ell, &probes) {
        Ok(None) => Ok(Outcome::Pass),
        Ok(Some(r)) => {
            // every point of A has its windows in V
            let ok = r.probe_membership.iter().all(|(p, inside)| !a.contains(p) || *inside);
            Ok(check(ok, || format!("n={n} j={j} ell={ell} A={a:?}")))
        }
        Err(e) if e.is_contract_violation() => Ok(Outcome::Fail(e.to_string())),
        Err(e) => Err(e),
    }
}

/// Run `cases` random instances of one suite. Inputs depend only on `(suite, seed)`.
pub fn run_suite(suite: Suite, seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    g.rng.set_stream(suite.stream());
    let case: fn(&mut Gen) -> Result<Outcome> = match suite {
        Suite::Profile => profile_case,
        Suite::Corollary => corollary_case,
        Suite::Composition => composition_case,
        Suite::Duality => duality_case,
        Suite::Schmidt => schmidt_case,
        Suite::Heights => heights_case,
        Suite::Avoiding => avoiding_case,
        Suite::Construct => construct_case,
        Suite::Degeneracy => degeneracy_case,
    };
    let mut report = SuiteReport {
        suite,
        seed,
        cases,
        skipped: 0,
        failures: 0,
        examples: Vec::new(),
    };
    for _ in 0..cases {
        let outcome = match case(&mut g) {
            Ok(o) => o,
            Err(e) if e.is_contract_violation() => Outcome::Fail(e.to_string()),
            Err(e) => return Err(e),
        };
        match outcome {
            Outcome::Pass => {}
            Outcome::Skip => report.skipped += 1,
            Outcome::Fail(msg) => {
                report.failures += 1;
                if report.examples.len() < KEEP_FAILURES {
                    report.examples.push(msg);
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite(Suite::Heights, 7, 40).unwrap();
        let b = run_suite(Suite::Heights, 7, 40).unwrap();
        assert_eq!(a.summary(), b.summary());
        assert!(a.passed());
    }
}

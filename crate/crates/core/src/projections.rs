//! Coordinate windows of points of R^{n+1} and the subspaces they span.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::arith::Interval;
use crate::error::{Error, Result};
use crate::lattice::{IntegerVector, Subspace};

/// The window `(x_k, ..., x_{k+n-ell})` of a point `x` of `R^{n+1}`.
pub fn window(x: &IntegerVector, k: usize, ell: usize) -> Result<IntegerVector> {
    let len = x.ambient_dim();
    if len == 0 || k > ell || ell >= len {
        return Err(Error::IndexOutOfRange(format!(
            "window (k={k}, ell={ell}) of a point of R^{len}"
        )));
    }
    let n = len - 1;
    Ok(IntegerVector::new(x.coords()[k..=k + n - ell].to_vec()))
}

/// Saturated span of the `ell + 1` windows of a single point.
pub fn u_ell_vector(x: &IntegerVector, ell: usize) -> Result<Subspace> {
    let len = x.ambient_dim();
    if ell > len {
        return Err(Error::IndexOutOfRange(format!("ell={ell} for R^{len}")));
    }
    if ell == len {
        return Ok(Subspace::zero(0));
    }
    let ws = (0..=ell)
        .map(|k| window(x, k, ell))
        .collect::<Result<Vec<_>>>()?;
    Subspace::from_spanning_set(len - ell, &ws)
}

/// The subspace of `R^{n+1-ell}` spanned by all windows of all points of `A`.
/// For `ell = n + 1` this is the zero subspace of `R^0`.
pub fn u_ell(a: &Subspace, ell: usize) -> Result<Subspace> {
    let len = a.ambient_dim();
    if ell > len {
        return Err(Error::IndexOutOfRange(format!("ell={ell} for R^{len}")));
    }
    if ell == len {
        return Ok(Subspace::zero(0));
    }
    let mut ws = Vec::with_capacity(a.dim() * (ell + 1));
    for b in a.basis() {
        for k in 0..=ell {
            ws.push(window(b, k, ell)?);
        }
    }
    Subspace::from_spanning_set(len - ell, &ws)
}

/// `f(ell) = dim U^ell(A)` for `ell = 0..=n+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionProfile {
    pub n: usize,
    pub values: Vec<usize>,
}

impl DimensionProfile {
    pub fn of(a: &Subspace) -> Result<DimensionProfile> {
        let len = a.ambient_dim();
        if len == 0 {
            return Err(Error::InvalidArgument("profile of a subspace of R^0".into()));
        }
        let values = (0..=len)
            .map(|ell| u_ell(a, ell).map(|u| u.dim()))
            .collect::<Result<Vec<_>>>()?;
        Ok(DimensionProfile { n: len - 1, values })
    }

    pub fn is_concave(&self) -> bool {
        let f = |i: usize| self.values[i] as i64;
        (1..=self.n).all(|i| f(i + 1) - f(i) <= f(i) - f(i - 1))
    }

    /// Smallest `m` with `f` non-decreasing on `[0, m]` and `f(ell) = n - ell + 1` on `[m, n+1]`.
    pub fn tail_start(&self) -> Option<usize> {
        let n = self.n;
        let m = (0..=n + 1).find(|&m| (m..=n + 1).all(|l| self.values[l] == n + 1 - l))?;
        (1..=m)
            .all(|l| self.values[l - 1] <= self.values[l])
            .then_some(m)
    }

    /// Both pairwise inequalities between neighbouring values, for `ell = 1..=n`.
    pub fn first_corollary_violation(&self) -> Option<usize> {
        let (n, f) = (self.n, &self.values);
        (1..=n).find(|&l| {
            let i = f[l].min(f[0] + l - 1) <= f[l - 1];
            let ii = f[l - 1].min(n - l + 1) <= f[l];
            !(i && ii)
        })
    }

    /// Check every structural law, returning a contract violation for the first that fails.
    pub fn verify(&self) -> Result<()> {
        let payload = || format!("n={} profile={:?}", self.n, self.values);
        if self.values.len() != self.n + 2 || self.values[self.n + 1] != 0 {
            return Err(Error::contract("profile has the wrong shape", payload()));
        }
        if !self.is_concave() {
            return Err(Error::contract("dimension profile is not concave", payload()));
        }
        if self.tail_start().is_none() {
            return Err(Error::contract("dimension profile has no linear tail", payload()));
        }
        if let Some(l) = self.first_corollary_violation() {
            return Err(Error::contract(
                format!("neighbour inequalities fail at ell={l}"),
                payload(),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "values": self.values,
            "concave": self.is_concave(),
            "tail_start": self.tail_start(),
        })
    }
}

/// What is known about `A` when `d = dim U^ell(A) <= j + ell`.
#[derive(Debug, Clone)]
pub struct DegeneracyReport {
    pub d: usize,
    /// Inclusive range `[d - j - 1, n - d]`.
    pub t_range: (usize, usize),
    /// `U^{n-d}(A)`.
    pub v: Subspace,
    /// `H(U^t(A))^2 / H(V)^{2(n-d-t+1)}` for each `t` in range; no bound is asserted.
    pub height_ratios: Vec<(usize, BigRational)>,
    /// Probes and whether their windows lie in `V`.
    pub probe_membership: Vec<(IntegerVector, bool)>,
}

impl DegeneracyReport {
    pub fn height_ratio_enclosures(&self, bits: u32) -> Vec<Interval> {
        self.height_ratios
            .iter()
            .map(|(_, r)| Interval::from_rational(r, bits))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "t_range": [self.t_range.0, self.t_range.1],
            "V": self.v.to_json(),
            "height_ratios": self.height_ratios.iter().map(|(t, r)| json!({
                "t": t,
                "ratio": r.to_string(),
                "approx": Interval::from_rational(r, 64).to_f64(),
            })).collect::<Vec<_>>(),
            "probes": self.probe_membership.iter().map(|(x, inside)| json!({
                "x": x.to_string(),
                "windows_in_V": inside,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Returns `None` when `dim U^ell(A) > j + ell`. Otherwise verifies the consequences of
/// degeneracy (dimension range, constancy of `dim U^t(A)`, and the membership equivalence on
/// `probes`) and reports the height ratios.
pub fn analyze_degeneracy(
    a: &Subspace,
    j: usize,
    ell: usize,
    probes: &[IntegerVector],
) -> Result<Option<DegeneracyReport>> {
    let len = a.ambient_dim();
    if len == 0 {
        return Err(Error::InvalidArgument("subspace of R^0".into()));
    }
    let n = len - 1;
    if a.dim() != j + 1 || j + 2 * ell > n {
        return Err(Error::HypothesisUnmet(format!(
            "need dim A = j+1 and j+2*ell <= n (dim A={}, j={j}, ell={ell}, n={n})",
            a.dim()
        )));
    }
    if let Some(p) = probes.iter().find(|p| p.ambient_dim() != len) {
        return Err(Error::DimensionMismatch(format!("probe {p} is not in Z^{len}")));
    }
    let d = u_ell(a, ell)?.dim();
    if d > j + ell {
        return Ok(None);
    }
    let payload = || format!("A={a:?} j={j} ell={ell} n={n} d={d}");
    // 0 <= d-j-1 < ell <= n-d
    if d < j + 1 || d - j - 1 >= ell || ell + d > n {
        return Err(Error::contract("degenerate dimension out of range", payload()));
    }
    let (t0, t1) = (d - j - 1, n - d);
    let v = u_ell(a, n - d)?;
    let h_v = BigRational::from_integer(v.height_squared().clone());
    let mut ratios = Vec::new();
    let mut images = Vec::new();
    for t in t0..=t1 {
        let ut = u_ell(a, t)?;
        if ut.dim() != d {
            return Err(Error::contract(
                format!("dim U^{t}(A) = {} differs from d", ut.dim()),
                payload(),
            ));
        }
        let denom = num_traits::pow(h_v.clone(), n - d - t + 1);
        ratios.push((t, BigRational::from_integer(ut.height_squared().clone()) / denom));
        images.push(ut);
    }
    let mut membership = Vec::new();
    for x in probes {
        let reference = v.contains_subspace(&u_ell_vector(x, n - d)?);
        for (t, ut) in (t0..=t1).zip(&images) {
            if ut.contains_subspace(&u_ell_vector(x, t)?) != reference {
                return Err(Error::contract(
                    format!("membership of U^{t}(x) disagrees with U^{}(x) in V", n - d),
                    format!("{} x={x}", payload()),
                ));
            }
        }
        membership.push((x.clone(), reference));
    }
    Ok(Some(DegeneracyReport {
        d,
        t_range: (t0, t1),
        v,
        height_ratios: ratios,
        probe_membership: membership,
    }))
}

/// `sum_k a_k x^(k,ell)`.
pub fn tau(a: &[BigInt], x: &IntegerVector) -> Result<IntegerVector> {
    let ell = a.len().checked_sub(1).ok_or_else(|| {
        Error::InvalidArgument("empty coefficient vector".into())
    })?;
    let mut acc = IntegerVector::zeros(x.ambient_dim().saturating_sub(ell));
    for (k, c) in a.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&window(x, k, ell)?.scale(c));
        }
    }
    Ok(acc)
}

/// Visit every vector of `Z^len` with l1 norm exactly `s`, in descending lexicographic order,
/// until `f` returns true.
fn visit_sphere(len: usize, s: i64, prefix: &mut Vec<i64>, f: &mut dyn FnMut(&[i64]) -> bool) -> bool {
    if len == 1 {
        let mut last = vec![s];
        if s != 0 {
            last.push(-s);
        }
        for v in last {
            prefix.push(v);
            let hit = f(prefix);
            prefix.pop();
            if hit {
                return true;
            }
        }
        return false;
    }
    for v in (-s..=s).rev() {
        prefix.push(v);
        let hit = visit_sphere(len - 1, s - v.abs(), prefix, f);
        prefix.pop();
        if hit {
            return true;
        }
    }
    false
}

/// Smallest coefficient vector `a` (by l1 norm, then descending lexicographic order) for which
/// `tau_a` is injective on `A` and `tau_a(A)` is not contained in `V`.
pub fn find_avoiding_map(a: &Subspace, ell: usize, v: &Subspace) -> Result<IntegerVector> {
    let len = a.ambient_dim();
    if len == 0 || ell >= len {
        return Err(Error::IndexOutOfRange(format!("ell={ell} for R^{len}")));
    }
    let n = len - 1;
    if v.ambient_dim() != len - ell {
        return Err(Error::DimensionMismatch(format!(
            "V lies in R^{} but windows lie in R^{}",
            v.ambient_dim(),
            len - ell
        )));
    }
    if a.dim() > n - ell + 1 {
        return Err(Error::HypothesisUnmet(format!(
            "dim A = {} exceeds n-ell+1 = {}",
            a.dim(),
            n - ell + 1
        )));
    }
    if v.contains_subspace(&u_ell(a, ell)?) {
        return Err(Error::HypothesisUnmet(format!("U^{ell}(A) is contained in V")));
    }
    let bound = (n as u128 + 1).checked_pow(ell as u32).unwrap_or(u128::MAX);
    let bound = i64::try_from(bound).unwrap_or(i64::MAX);
    let mut found = None;
    let mut failure = None;
    for s in 1..=bound {
        let mut prefix = Vec::with_capacity(ell + 1);
        visit_sphere(ell + 1, s, &mut prefix, &mut |coeffs| {
            let c: Vec<BigInt> = coeffs.iter().map(|&x| BigInt::from(x)).collect();
            let images = match a.basis().iter().map(|b| tau(&c, b)).collect::<Result<Vec<_>>>() {
                Ok(i) => i,
                Err(e) => {
                    failure = Some(e);
                    return true;
                }
            };
            let rows: Vec<Vec<BigInt>> = images.iter().map(|i| i.coords().to_vec()).collect();
            let injective = crate::lattice::matrix::rank(&rows) == a.dim();
            if injective && images.iter().any(|i| !v.contains(i)) {
                found = Some(IntegerVector::new(c));
                return true;
            }
            false
        });
        if let Some(e) = failure {
            return Err(e);
        }
        if let Some(w) = found {
            return Ok(w);
        }
    }
    Err(Error::contract(
        "no avoiding map within the coefficient bound",
        format!("A={a:?} ell={ell} V={v:?}"),
    ))
}

/// True when `a` meets every requirement on an avoiding map: coefficient bound, injectivity on
/// `A` and an image not contained in `V`.
pub fn is_avoiding_witness(a: &Subspace, ell: usize, v: &Subspace, coeffs: &IntegerVector) -> Result<bool> {
    let n = a.ambient_dim() - 1;
    let bound = num_traits::pow(BigInt::from(n + 1), ell);
    if coeffs.ambient_dim() != ell + 1 || coeffs.l1_norm() > bound || coeffs.l1_norm().is_zero() {
        return Ok(false);
    }
    let images = a
        .basis()
        .iter()
        .map(|b| tau(coeffs.coords(), b))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<Vec<BigInt>> = images.iter().map(|i| i.coords().to_vec()).collect();
    Ok(crate::lattice::matrix::rank(&rows) == a.dim() && images.iter().any(|i| !v.contains(i)))
}

//! Combinatorics of a finite minimal-point sequence: the index set `I`, the spans `A_j(i)`,
//! the indices `sigma_j(i)` and norms `Y_j(i)`, and property checks on the computed range.

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::enumerate::MinimalPointRecord;
use crate::arith::Interval;
use crate::error::{Error, Result};
use crate::lattice::{int_json, matrix, wedge_norm_squared, IntegerVector, Subspace};
use crate::projections::u_ell;

#[derive(Debug, Clone)]
pub struct StructureIndex {
    /// `n + 1`, the ambient dimension of the points.
    pub ambient: usize,
    pub len: usize,
    /// Indices `i` with `x_{i-1}, x_i, x_{i+1}` independent.
    pub i_set: Vec<usize>,
    /// `sigma[j][i]` for `0 <= j < n`: the largest `q` with `dim <x_i..x_q> = j + 1`, when the
    /// computed range shows where the dimension rises.
    pub sigma: Vec<Vec<Option<usize>>>,
    squared_norms: Vec<BigInt>,
    points: Vec<IntegerVector>,
    /// `(i, i', ratio)` for consecutive `i < i'` in `I`: `X_{i'} L_{i'-1} / (X_{i+1} L_i)`.
    pub consecutive_ratios: Vec<(usize, usize, Interval)>,
    /// `(i, ratio)` with `ratio = ‖x_i ∧ x_{i+1}‖ / (X_{i+1} L_i)`.
    pub plane_ratios: Vec<(usize, Interval)>,
}

fn rank_of(points: &[IntegerVector]) -> usize {
    let rows: Vec<Vec<BigInt>> = points.iter().map(|p| p.coords().to_vec()).collect();
    matrix::rank(&rows)
}

const RATIO_BITS: u32 = 64;

fn norm(x_squared: &BigInt) -> Result<Interval> {
    Interval::from_bigint(x_squared).sqrt(RATIO_BITS)
}

/// Index structure of at least three consecutive records. Also checks exactly that
/// consecutive points span a plane whose height equals `‖x_i ∧ x_{i+1}‖`.
pub fn build_structure(records: &[MinimalPointRecord]) -> Result<StructureIndex> {
    if records.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "structure needs at least 3 records, got {}",
            records.len()
        )));
    }
    let ambient = records[0].x.ambient_dim();
    if records.iter().any(|r| r.x.ambient_dim() != ambient) {
        return Err(Error::DimensionMismatch("records of different lengths".into()));
    }
    let n = ambient - 1;
    let len = records.len();
    let points: Vec<IntegerVector> = records.iter().map(|r| r.x.clone()).collect();

    let i_set: Vec<usize> = (1..len - 1)
        .filter(|&i| rank_of(&points[i - 1..=i + 1]) == 3)
        .collect();

    let mut sigma = vec![vec![None; len]; n];
    for i in 0..len {
        let mut dim = 1;
        for q in (i + 1)..len {
            let d = rank_of(&points[i..=q]);
            if d > dim {
                // the span first reaches dimension d at q, so sigma_{dim-1}(i) = q - 1
                for j in (dim - 1)..(d - 1) {
                    sigma[j][i] = Some(q - 1);
                }
                dim = d;
            }
            if dim == ambient {
                break;
            }
        }
    }

    let mut plane_ratios = Vec::new();
    for i in 0..len - 1 {
        let pair = [points[i].clone(), points[i + 1].clone()];
        let plane = Subspace::from_spanning_set(ambient, &pair)?;
        let wedge = wedge_norm_squared(&pair);
        if plane.dim() != 2 || plane.height_squared() != &wedge {
            return Err(Error::contract(
                "consecutive minimal points do not form a basis of their plane's lattice",
                format!(
                    "x_{i}={} x_{}={} H^2={} wedge^2={wedge}",
                    points[i],
                    i + 1,
                    points[i + 1],
                    plane.height_squared()
                ),
            ));
        }
        let denom = norm(&records[i + 1].x_squared)?.mul(&records[i].l);
        let ratio = Interval::from_bigint(&wedge)
            .sqrt(RATIO_BITS)?
            .div(&denom, RATIO_BITS)?;
        plane_ratios.push((i, ratio));
    }

    let mut consecutive_ratios = Vec::new();
    for w in i_set.windows(2) {
        let (i, k) = (w[0], w[1]);
        let num = norm(&records[k].x_squared)?.mul(&records[k - 1].l);
        let den = norm(&records[i + 1].x_squared)?.mul(&records[i].l);
        consecutive_ratios.push((i, k, num.div(&den, RATIO_BITS)?));
    }

    Ok(StructureIndex {
        ambient,
        len,
        i_set,
        sigma,
        squared_norms: records.iter().map(|r| r.x_squared.clone()).collect(),
        points,
        consecutive_ratios,
        plane_ratios,
    })
}

impl StructureIndex {
    pub fn n(&self) -> usize {
        self.ambient - 1
    }

    /// `sigma_j(i)` for `0 <= j < n`; `None` when the computed range does not decide it.
    pub fn sigma(&self, j: usize, i: usize) -> Option<usize> {
        self.sigma.get(j)?.get(i).copied().flatten()
    }

    /// Squared norm `Y_j(i)^2` for `-1 <= j < n`: `X_i^2` for `j = -1`, `X_{sigma_j(i)+1}^2` otherwise.
    pub fn y_squared(&self, j: i64, i: usize) -> Option<&BigInt> {
        if j == -1 {
            return self.squared_norms.get(i);
        }
        let q = self.sigma(usize::try_from(j).ok()?, i)?;
        self.squared_norms.get(q + 1)
    }

    /// `A_j(i) = <x_i, ..., x_{sigma_j(i)}>` for `0 <= j < n`, and `R^{n+1}` for `j = n`.
    pub fn a_subspace(&self, j: usize, i: usize) -> Option<Subspace> {
        if j == self.n() {
            return Some(Subspace::full(self.ambient));
        }
        let q = self.sigma(j, i)?;
        Subspace::from_spanning_set(self.ambient, &self.points[i..=q]).ok()
    }

    pub fn to_json(&self) -> Value {
        let sigma: Vec<Value> = self
            .sigma
            .iter()
            .map(|row| json!(row))
            .collect();
        let y: Vec<Value> = (0..self.n())
            .map(|j| {
                Value::Array(
                    (0..self.len)
                        .map(|i| self.y_squared(j as i64, i).map_or(Value::Null, int_json))
                        .collect(),
                )
            })
            .collect();
        json!({
            "n": self.n(),
            "records": self.len,
            "I": self.i_set,
            "sigma": sigma,
            "Y_squared": y,
            "consecutive_I_ratios": self.consecutive_ratios.iter().map(|(i, k, r)| json!({
                "i": i, "next": k, "ratio": r.to_f64(),
            })).collect::<Vec<_>>(),
            "plane_ratios": self.plane_ratios.iter().map(|(i, r)| json!({
                "i": i, "ratio": r.to_f64(),
            })).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PCheck {
    pub i: usize,
    /// Smallest `m <= j` with `dim U^ell(A_m(i)) < m + ell + 1`.
    pub failing_m: Option<usize>,
}

/// Outcome of checking `dim U^ell(A_m(i)) >= m + ell + 1` for all `m <= j` on the indices
/// `i >= i0` where every `A_m(i)` is known. This says nothing beyond the computed range.
#[derive(Debug, Clone)]
pub struct PReport {
    pub j: usize,
    pub ell: usize,
    pub i0: usize,
    pub checks: Vec<PCheck>,
}

impl PReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.failing_m.is_none())
    }

    pub fn first_violation(&self) -> Option<&PCheck> {
        self.checks.iter().find(|c| c.failing_m.is_some())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "j": self.j,
            "ell": self.ell,
            "i0": self.i0,
            "scope": "on computed range",
            "checked": self.checks.len(),
            "pass": self.passes(),
            "first_violation": self.first_violation().map(|c| json!({"i": c.i, "m": c.failing_m})),
        })
    }
}

pub fn check_p(structure: &StructureIndex, j: usize, ell: usize, i0: usize) -> Result<PReport> {
    let n = structure.n();
    if j > n || ell > n + 1 {
        return Err(Error::IndexOutOfRange(format!("j={j}, ell={ell} with n={n}")));
    }
    let mut checks = Vec::new();
    for i in i0..structure.len {
        let spans: Option<Vec<Subspace>> = (0..=j).map(|m| structure.a_subspace(m, i)).collect();
        let Some(spans) = spans else { continue };
        let mut failing_m = None;
        for (m, a) in spans.iter().enumerate() {
            if u_ell(a, ell)?.dim() < m + ell + 1 {
                failing_m = Some(m);
                break;
            }
        }
        checks.push(PCheck { i, failing_m });
    }
    let report = PReport { j, ell, i0, checks };
    if report.passes() && !report.checks.is_empty() && j + 2 * ell > n {
        return Err(Error::contract(
            "property holds with j + 2 ell > n",
            format!("n={n} j={j} ell={ell} i0={i0} checked={}", report.checks.len()),
        ));
    }
    Ok(report)
}

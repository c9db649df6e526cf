//! Running exponent values along a minimal-point sequence.

use serde_json::{json, Value};

use super::enumerate::MinimalPointRecord;
use crate::arith::Interval;
use crate::error::{Error, Result};

const LOG_BITS: u32 = 96;

/// Per-record exponent enclosures and trailing-window summaries.
///
/// `lambda_hat_running[i]` encloses `-ln L_i / ln X_{i+1}` and `lambda_running[i]`
/// encloses `-ln L_i / ln X_i`. The min/max values are taken over the last `window`
/// running terms. The secant values are the slope of `-ln L` against `ln X` between the
/// first and last record of the window, which cancels the constant factor hidden in
/// `L_i ~ c X_{i+1}^(-lambda)` that biases the raw quotients at small heights.
#[derive(Debug, Clone)]
pub struct ExponentEstimate {
    pub window: usize,
    pub lambda_hat_running: Vec<Interval>,
    pub lambda_running: Vec<Interval>,
    pub lambda_hat_min: Interval,
    pub lambda_hat_max: Interval,
    pub lambda_min: Interval,
    pub lambda_max: Interval,
    pub lambda_hat_secant: Option<Interval>,
    pub lambda_secant: Option<Interval>,
}

/// `-ln num / ln den`, both logs given.
fn quotient(neg_ln_l: &Interval, ln_x: &Interval) -> Result<Interval> {
    if !ln_x.certainly_positive() {
        return Err(Error::NonPositiveLog);
    }
    neg_ln_l.div(ln_x, LOG_BITS)
}

fn secant(l_a: &Interval, l_b: &Interval, x_a: &Interval, x_b: &Interval) -> Result<Option<Interval>> {
    let run = x_b.sub(x_a);
    if !run.certainly_positive() {
        return Ok(None);
    }
    Ok(Some(l_b.sub(l_a).div(&run, LOG_BITS)?))
}

fn extremes(values: &[Interval]) -> (Interval, Interval) {
    let mut lo = values[0].clone();
    let mut hi = values[0].clone();
    for v in &values[1..] {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

/// Exponent values for at least two records. `window` is clamped to the available length.
pub fn estimate_exponents(records: &[MinimalPointRecord], window: usize) -> Result<ExponentEstimate> {
    if records.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "exponent estimates need at least 2 records, got {}",
            records.len()
        )));
    }
    if window < 2 {
        return Err(Error::InvalidArgument("window must be at least 2".into()));
    }
    // ln X = ln(X^2) / 2
    let ln_x: Vec<Interval> = records
        .iter()
        .map(|r| Ok(Interval::from_bigint(&r.x_squared).ln(LOG_BITS)?.mul_pow2(-1)))
        .collect::<Result<_>>()?;
    let neg_ln_l: Vec<Interval> = records
        .iter()
        .map(|r| Ok(r.l.ln(LOG_BITS)?.neg()))
        .collect::<Result<_>>()?;

    let n = records.len();
    let lambda_running = (0..n)
        .map(|i| quotient(&neg_ln_l[i], &ln_x[i]))
        .collect::<Result<Vec<_>>>()?;
    let lambda_hat_running = (0..n - 1)
        .map(|i| quotient(&neg_ln_l[i], &ln_x[i + 1]))
        .collect::<Result<Vec<_>>>()?;

    let w_hat = window.min(lambda_hat_running.len());
    let w = window.min(n);
    let (lambda_hat_min, lambda_hat_max) = extremes(&lambda_hat_running[n - 1 - w_hat..]);
    let (lambda_min, lambda_max) = extremes(&lambda_running[n - w..]);

    let lambda_hat_secant = if w_hat >= 2 {
        let (a, b) = (n - 1 - w_hat, n - 2);
        secant(&neg_ln_l[a], &neg_ln_l[b], &ln_x[a + 1], &ln_x[b + 1])?
    } else {
        None
    };
    let (a, b) = (n - w, n - 1);
    let lambda_secant = secant(&neg_ln_l[a], &neg_ln_l[b], &ln_x[a], &ln_x[b])?;

    Ok(ExponentEstimate {
        window,
        lambda_hat_running,
        lambda_running,
        lambda_hat_min,
        lambda_hat_max,
        lambda_min,
        lambda_max,
        lambda_hat_secant,
        lambda_secant,
    })
}

fn pair(x: &Interval) -> Value {
    let (lo, hi) = x.to_decimal_pair(12);
    json!([lo, hi])
}

impl ExponentEstimate {
    pub fn to_json(&self) -> Value {
        json!({
            "window": self.window,
            "lambda_hat_running": self.lambda_hat_running.iter().map(pair).collect::<Vec<_>>(),
            "lambda_running": self.lambda_running.iter().map(pair).collect::<Vec<_>>(),
            "lambda_hat_min": pair(&self.lambda_hat_min),
            "lambda_hat_max": pair(&self.lambda_hat_max),
            "lambda_min": pair(&self.lambda_min),
            "lambda_max": pair(&self.lambda_max),
            "lambda_hat_estimate": self.lambda_hat_secant.as_ref().map(pair),
            "lambda_estimate": self.lambda_secant.as_ref().map(pair),
        })
    }
}

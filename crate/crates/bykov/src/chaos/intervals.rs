//! Vertical intervals whose first-hit images wrap once across the lobe of `g`.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::model::ModelConfig;

/// `{x0} × [lo, hi]` on `In(v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeightInterval {
    pub x0: f64,
    pub lo: f64,
    pub hi: f64,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSequence {
    /// Turn offset: η maps `hi_n` to angle `Pw1 + 2(m+n)π`.
    pub m: i64,
    pub intervals: Vec<HeightInterval>,
}

/// Smallest turn offset `m` for which both endpoint images of `I_0` lie
/// strictly below `ceiling`.
fn turn_offset(x0: f64, ceiling: f64, config: &ModelConfig) -> i64 {
    let s = &config.saddles;
    let bound = (x0 - config.unfolding.pw1 - s.k() / s.delta() * ceiling.ln()) / TAU;
    bound.floor() as i64 + 1
}

/// Intervals `I_n`, `n = 0..count`, on the vertical line through `x0`.
///
/// The endpoints are mapped by η to the connection angles `Pw2 + 2(m+n)π`
/// (`lo`) and `Pw1 + 2(m+n)π` (`hi`), at heights below `λ = max g`.
pub fn interval_sequence(x0: f64, count: usize, config: &ModelConfig) -> Result<IntervalSequence> {
    let lambda = config.lambda();
    if !(lambda > 0.0) {
        return Err(Error::DegenerateUnfolding(lambda));
    }
    let k = config.saddles.k();
    let u = &config.unfolding;
    let m = turn_offset(x0, lambda, config);
    let e1 = (x0 - u.pw1 - TAU * m as f64) / k;
    let e2 = (x0 - u.pw2() - TAU * m as f64) / k;
    let (emin, emax) = (e1.min(e2), e1.max(e2));
    let intervals = (0..count)
        .map(|n| {
            let shift = -TAU * n as f64 / k;
            HeightInterval { x0, lo: (shift + emin).exp(), hi: (shift + emax).exp(), index: n }
        })
        .collect();
    Ok(IntervalSequence { m, intervals })
}

/// True when no two intervals share a height.
pub fn pairwise_disjoint(intervals: &[HeightInterval]) -> bool {
    for (i, a) in intervals.iter().enumerate() {
        for b in &intervals[i + 1..] {
            if a.lo <= b.hi && b.lo <= a.hi {
                return false;
            }
        }
    }
    true
}

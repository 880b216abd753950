//! Points of the unstable-manifold arc whose first return lands on the
//! stable manifold `y = 0`: subsidiary heteroclinic connections.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::manifold::{Branch, UnstableArc};
use crate::model::ModelConfig;
use crate::numeric::{bisect, golden_min, linspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectionKind {
    Transverse,
    Tangential,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseConnection {
    /// Angle on `In(v)` of the point `(s, h(s))`.
    pub s: f64,
    pub height: f64,
    pub branch: Branch,
    /// Unwrapped first-hit angle on `Out(w)`.
    pub hit_angle: f64,
    /// Full turns made before reaching `Out(w)`.
    pub winding: i64,
    pub kind: ConnectionKind,
    /// Returned height, zero up to the root tolerance.
    pub residual: f64,
}

/// Angular sampling step along a branch.
const STEP: f64 = 0.02;

/// Connections whose winding does not exceed `max_winding`, ordered by
/// branch and then by distance from the tip.
///
/// Zeros are found by a sign-change scan of the returned height along each
/// branch, parametrized by the first-hit angle, and bisected. A minimum of
/// the returned height that touches zero without a sign change, or a zero
/// where the height has vanishing slope, is reported as tangential.
pub fn find_multipulse(config: &ModelConfig, max_winding: u32) -> Result<Vec<PulseConnection>> {
    let lambda = config.lambda();
    if !(lambda > 0.0) {
        return Err(Error::DegenerateUnfolding(lambda));
    }
    let arc = UnstableArc::new(config);
    let k = config.saddles.k();
    let tol = config.numeric.tol_root;
    let h_min = (-TAU * (max_winding as f64 + 1.0) / k).exp().max(config.y_floor);
    let tip = arc.tip();
    let theta_tip = arc.theta(tip);
    let winding_of = |s: f64| ((arc.theta(s) - s) / TAU).floor() as i64;
    let mut out = Vec::new();

    for branch in [Branch::Left, Branch::Right] {
        let Some(s_end) = arc.at_height(branch, h_min) else { continue };
        let span = arc.theta(s_end) - theta_tip;
        if !(span > 0.0) {
            continue;
        }
        let n = (span / STEP).ceil() as usize + 1;
        let s_of = |psi: f64| if psi <= 0.0 { Some(tip) } else { arc.at_offset(branch, psi) };
        let psis = linspace(0.0, span, n);
        let ss: Vec<f64> = psis.iter().map(|&p| s_of(p).unwrap_or(s_end)).collect();
        let f: Vec<f64> = ss.iter().map(|&s| arc.value(s)).collect();
        let mut found: Vec<(f64, ConnectionKind)> = Vec::new();
        let slope_floor = 1e-6 * lambda;
        let classify = |s: f64| {
            if arc.slope(s).abs() <= slope_floor {
                ConnectionKind::Tangential
            } else {
                ConnectionKind::Transverse
            }
        };
        for i in 0..n - 1 {
            if (f[i] >= 0.0) != (f[i + 1] >= 0.0) {
                let s = bisect(|s| arc.value(s), ss[i], ss[i + 1], 1e-16, 200).expect("sign change");
                found.push((s, classify(s)));
            }
        }
        // Touching minima between samples; the tip sits at index 0.
        for i in 0..n - 1 {
            let nonneg = f[i] >= 0.0 && f[i + 1] >= 0.0 && (i == 0 || f[i - 1] >= 0.0);
            let is_min = f[i] <= f[i + 1] && (i == 0 || f[i] <= f[i - 1]);
            if !(nonneg && is_min) {
                continue;
            }
            let (a, b) = (ss[i.saturating_sub(1)], ss[i + 1]);
            let (s, v) = golden_min(|s| arc.value(s), a.min(b), a.max(b), 1e-15);
            if v <= 10.0 * tol && !found.iter().any(|(t, _)| (t - s).abs() < 1e-6) {
                found.push((s, ConnectionKind::Tangential));
            }
        }
        // Two zeros straddling a touching minimum collapse to one tangential point.
        found.sort_by(|a, b| (a.0 - tip).abs().total_cmp(&(b.0 - tip).abs()));
        let mut merged: Vec<(f64, ConnectionKind)> = Vec::new();
        for (s, kind) in found {
            if let Some(last) = merged.last_mut() {
                if (last.0 - s).abs() < 1e-6 && (kind == ConnectionKind::Tangential || last.1 == ConnectionKind::Tangential) {
                    last.1 = ConnectionKind::Tangential;
                    continue;
                }
            }
            merged.push((s, kind));
        }
        for (s, kind) in merged {
            out.push(PulseConnection {
                s,
                height: arc.h(s),
                branch,
                hit_angle: arc.theta(s),
                winding: winding_of(s),
                kind,
                residual: arc.value(s),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::zeta;
    use std::collections::BTreeMap;

    #[test]
    fn every_band_holds_connections() {
        let c = ModelConfig::default();
        let found = find_multipulse(&c, 6).unwrap();
        let mut per_band: BTreeMap<i64, usize> = BTreeMap::new();
        for p in &found {
            *per_band.entry(p.winding).or_default() += 1;
            assert!(p.winding <= 6);
            // Zero to within one ulp of the arc parameter.
            let arc = UnstableArc::new(&c);
            let limit = 4.0 * f64::EPSILON * p.s * arc.slope(p.s).abs() + 1e-16;
            assert!(p.residual.abs() <= limit, "{p:?}");
            let q = zeta(&crate::model::SectionPoint::in_v(p.s, p.height), &c).next.unwrap();
            assert!(q.b.abs() <= limit);
            assert_eq!(p.kind, ConnectionKind::Transverse);
        }
        // The band holding the tip is entered part-way; all later bands are complete.
        let lowest = *per_band.keys().next().unwrap();
        for (w, n) in &per_band {
            if *w > lowest {
                assert!(*n >= 2, "band {w} has {n}");
            }
        }
        assert!(per_band.len() >= 4);
    }

    #[test]
    fn zero_unfolding_rejected() {
        let c = ModelConfig::default().with_lambda(0.0);
        assert!(matches!(find_multipulse(&c, 3), Err(Error::DegenerateUnfolding(_))));
    }
}

//! The upper arc of the unstable-manifold curve `y = h(s)` on `In(v)` and
//! its first return.
//!
//! On `s ∈ (Pv2, Pv2 + π)` the curve lies above `y = 0`. Its first-hit angle
//! `θ(s) = s - K ln h(s)` tends to `+∞` at both ends and has a single
//! minimum, the tip, which splits the arc into a left and a right branch on
//! which `θ` is monotone. The returned height is
//! `F(s) = h(s)^δ - g(θ(s))`.

use std::f64::consts::PI;

use crate::model::{ModelConfig, SectionPoint};
use crate::numeric::bisect;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Branch {
    Left,
    Right,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::Left => "left",
            Branch::Right => "right",
        }
    }
}

/// Distance kept from the zeros of `h` at the ends of the arc.
const END_GAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
pub struct UnstableArc<'a> {
    pub config: &'a ModelConfig,
}

impl<'a> UnstableArc<'a> {
    pub fn new(config: &'a ModelConfig) -> Self {
        Self { config }
    }

    pub fn domain(&self) -> (f64, f64) {
        let pv2 = self.config.unfolding.pv2();
        (pv2, pv2 + PI)
    }

    pub fn h(&self, s: f64) -> f64 {
        self.config.unfolding.h(s)
    }

    pub fn point(&self, s: f64) -> SectionPoint {
        SectionPoint::in_v(s, self.h(s))
    }

    fn gain_shift(&self) -> f64 {
        self.config.psi_vw_gain.ln() / self.config.saddles.e_w
    }

    fn gain_scale(&self) -> f64 {
        self.config.psi_vw_gain.powf(self.config.saddles.delta_w())
    }

    /// Angle on `Out(w)` of the first hit of `(s, h(s))`.
    pub fn theta(&self, s: f64) -> f64 {
        s - self.config.saddles.k() * self.h(s).ln() - self.gain_shift()
    }

    pub fn theta_prime(&self, s: f64) -> f64 {
        let u = &self.config.unfolding;
        1.0 - self.config.saddles.k() * u.h_prime(s) / u.h(s)
    }

    /// Height of `ζ(s, h(s))`.
    pub fn value(&self, s: f64) -> f64 {
        let d = self.config.saddles.delta();
        self.gain_scale() * self.h(s).powf(d) - self.config.unfolding.g(self.theta(s))
    }

    pub fn slope(&self, s: f64) -> f64 {
        let u = &self.config.unfolding;
        let d = self.config.saddles.delta();
        let h = u.h(s);
        self.gain_scale() * d * h.powf(d - 1.0) * u.h_prime(s) - u.g_prime(self.theta(s)) * self.theta_prime(s)
    }

    /// Parameter of the minimum of `θ`.
    pub fn tip(&self) -> f64 {
        let (a, b) = self.domain();
        let scale = self.config.numeric.tol_root.min(1e-14);
        bisect(|s| self.theta_prime(s), a + 1e-9, b - 1e-9, scale, 200).expect("θ' changes sign on the arc")
    }

    /// Parameter on `branch` whose angle exceeds the tip angle by `offset`.
    pub fn at_offset(&self, branch: Branch, offset: f64) -> Option<f64> {
        let tip = self.tip();
        let target = self.theta(tip) + offset;
        let (a, b) = self.domain();
        let (lo, hi) = match branch {
            Branch::Left => (a + END_GAP, tip),
            Branch::Right => (tip, b - END_GAP),
        };
        bisect(|s| self.theta(s) - target, lo, hi, 1e-15, 200)
    }

    /// Parameter on `branch`, between the tip and the end of the arc, where
    /// `h` equals `level`.
    pub fn at_height(&self, branch: Branch, level: f64) -> Option<f64> {
        let tip = self.tip();
        let (a, b) = self.domain();
        let x_star = self.config.unfolding.x_star();
        let (lo, hi) = match branch {
            Branch::Left => (a + END_GAP, tip.min(x_star)),
            Branch::Right => (tip.max(x_star), b - END_GAP),
        };
        bisect(|s| self.h(s) - level, lo, hi, 1e-15, 200)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::zeta;

    #[test]
    fn value_matches_return_map() {
        let c = ModelConfig::default();
        let arc = UnstableArc::new(&c);
        for s in [4.6, 5.2, 6.0, 7.0] {
            let q = zeta(&arc.point(s), &c).next.unwrap();
            assert!((q.b - arc.value(s)).abs() < 1e-17);
        }
    }

    #[test]
    fn slope_matches_differences() {
        let c = ModelConfig::default();
        let arc = UnstableArc::new(&c);
        for s in [4.4, 4.7, 5.5, 6.9] {
            let fd = (arc.value(s + 1e-7) - arc.value(s - 1e-7)) / 2e-7;
            assert!((fd - arc.slope(s)).abs() <= 1e-6 * arc.slope(s).abs().max(1e-6));
        }
    }

    #[test]
    fn tip_offset_from_maximum() {
        let c = ModelConfig::default();
        let arc = UnstableArc::new(&c);
        let u = arc.tip() - c.unfolding.x_star();
        assert!((u.tan() + 1.0 / 3.0).abs() < 1e-12);
        let s = arc.at_offset(Branch::Left, 1.0).unwrap();
        assert!((arc.theta(s) - arc.theta(arc.tip()) - 1.0).abs() < 1e-12);
        let s = arc.at_height(Branch::Right, 1e-4).unwrap();
        assert!((arc.h(s) - 1e-4).abs() < 1e-16);
    }
}

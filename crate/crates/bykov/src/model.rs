//! Model parameters, section charts and the unfolding curves `g` and `h`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

/// Eigenvalue data of the two saddle-foci.
///
/// `v` has a one-dimensional unstable manifold (contraction `c_v`, expansion
/// `e_v`), `w` a one-dimensional stable manifold (contraction `c_w`,
/// expansion `e_w`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleParameters {
    pub c_v: f64,
    pub e_v: f64,
    pub c_w: f64,
    pub e_w: f64,
}

impl SaddleParameters {
    pub fn new(c_v: f64, e_v: f64, c_w: f64, e_w: f64) -> Self {
        Self { c_v, e_v, c_w, e_w }
    }

    pub fn delta_v(&self) -> f64 {
        self.c_v / self.e_v
    }

    pub fn delta_w(&self) -> f64 {
        self.c_w / self.e_w
    }

    /// Height exponent of the first-hit map.
    pub fn delta(&self) -> f64 {
        self.delta_v() * self.delta_w()
    }

    /// Angular rate of the first-hit map: angle advances by `-k ln y`.
    pub fn k(&self) -> f64 {
        (self.c_v + self.e_w) / (self.e_v * self.e_w)
    }
}

impl Default for SaddleParameters {
    fn default() -> Self {
        Self::new(2.0, 1.0, 2.0, 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectionId {
    InV,
    OutV,
    InW,
    OutW,
}

impl SectionId {
    /// Cylinder-wall charts carry a signed height; disc charts a radius.
    pub fn is_cylinder(self) -> bool {
        matches!(self, SectionId::InV | SectionId::OutW)
    }

    pub fn label(self) -> &'static str {
        match self {
            SectionId::InV => "InV",
            SectionId::OutV => "OutV",
            SectionId::InW => "InW",
            SectionId::OutW => "OutW",
        }
    }
}

/// Which of the two symmetry-related connections a point travels along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sheet {
    Upper,
    Lower,
}

impl Sheet {
    pub fn sign(self) -> f64 {
        match self {
            Sheet::Upper => 1.0,
            Sheet::Lower => -1.0,
        }
    }

    /// Sheet of a signed height; zero keeps `fallback`.
    pub fn of(y: f64, fallback: Sheet) -> Sheet {
        if y > 0.0 {
            Sheet::Upper
        } else if y < 0.0 {
            Sheet::Lower
        } else {
            fallback
        }
    }

    pub fn flip(self) -> Sheet {
        match self {
            Sheet::Upper => Sheet::Lower,
            Sheet::Lower => Sheet::Upper,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sheet::Upper => '+',
            Sheet::Lower => '-',
        }
    }
}

/// A point on one of the four cross-sections.
///
/// `a` is the unwrapped angle (lift to the real line). `b` is the signed
/// height on cylinder charts and the radius on disc charts; on disc charts
/// the sheet tells top from bottom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionPoint {
    pub section: SectionId,
    pub a: f64,
    pub b: f64,
    pub sheet: Sheet,
}

impl SectionPoint {
    /// Point on a cylinder chart; the sheet follows the sign of `y`
    /// (positive for `y == 0`).
    pub fn cylinder(section: SectionId, x: f64, y: f64) -> Self {
        Self { section, a: x, b: y, sheet: Sheet::of(y, Sheet::Upper) }
    }

    pub fn in_v(x: f64, y: f64) -> Self {
        Self::cylinder(SectionId::InV, x, y)
    }

    pub fn out_w(x: f64, y: f64) -> Self {
        Self::cylinder(SectionId::OutW, x, y)
    }

    pub fn disc(section: SectionId, r: f64, phi: f64, sheet: Sheet) -> Self {
        Self { section, a: phi, b: r, sheet }
    }

    pub fn wrapped_angle(&self) -> f64 {
        self.a.rem_euclid(TAU)
    }

    /// Number of full turns contained in the lift.
    pub fn winding(&self) -> i64 {
        (self.a / TAU).floor() as i64
    }

    /// Same point with the lift reduced to `[0, 2π)`.
    pub fn wrapped(&self) -> Self {
        Self { a: self.wrapped_angle(), ..*self }
    }

    /// Sum of the unwrapped-angle and height differences.
    pub fn chart_distance(&self, other: &SectionPoint) -> f64 {
        (self.a - other.a).abs() + (self.b - other.b).abs()
    }
}

/// Symmetry-breaking amplitude and the connection angles.
///
/// The stable-manifold curve on `Out(w)` is modelled as
/// `g(x) = λ sin(x - Pw1)`, which fixes `Pw2 = Pw1 + π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnfoldingModel {
    pub lambda: f64,
    pub pw1: f64,
    pub delta_offset: f64,
}

impl UnfoldingModel {
    pub fn new(lambda: f64, pw1: f64, delta_offset: f64) -> Self {
        Self { lambda, pw1, delta_offset }
    }

    pub fn with_lambda(&self, lambda: f64) -> Self {
        Self { lambda, ..*self }
    }

    pub fn pw2(&self) -> f64 {
        self.pw1 + PI
    }

    pub fn pv1(&self) -> f64 {
        self.pw1 + self.delta_offset
    }

    pub fn pv2(&self) -> f64 {
        self.pw2() + self.delta_offset
    }

    /// Angle of the maximum of `g`.
    pub fn x_m(&self) -> f64 {
        self.pw1 + FRAC_PI_2
    }

    /// Angle of the maximum of `h`.
    pub fn x_star(&self) -> f64 {
        self.pv1() + 1.5 * PI
    }

    pub fn g(&self, x: f64) -> f64 {
        self.lambda * (x - self.pw1).sin()
    }

    pub fn g_prime(&self, x: f64) -> f64 {
        self.lambda * (x - self.pw1).cos()
    }

    pub fn h(&self, x: f64) -> f64 {
        -self.g(x - self.delta_offset)
    }

    pub fn h_prime(&self, x: f64) -> f64 {
        -self.g_prime(x - self.delta_offset)
    }

    /// Circular test for the open lobe `Pw1 < x < Pw2` where `g > 0`.
    pub fn in_positive_lobe(&self, x: f64) -> bool {
        let u = (x - self.pw1).rem_euclid(TAU);
        u > 0.0 && u < PI
    }
}

impl Default for UnfoldingModel {
    fn default() -> Self {
        Self::new(0.01, 0.0, PI / 3.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericSettings {
    pub tol_root: f64,
    pub tol_newton: f64,
    pub max_iter: usize,
}

impl Default for NumericSettings {
    fn default() -> Self {
        Self { tol_root: 1e-12, tol_newton: 1e-12, max_iter: 100 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConfig {
    pub saddles: SaddleParameters,
    pub unfolding: UnfoldingModel,
    pub numeric: NumericSettings,
    pub y_floor: f64,
    pub y_max: f64,
    pub seed: u64,
    /// Uniform radial gain of the transition `Out(v) -> In(w)`.
    pub psi_vw_gain: f64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            saddles: SaddleParameters::default(),
            unfolding: UnfoldingModel::default(),
            numeric: NumericSettings::default(),
            y_floor: 1e-14,
            y_max: 1.0,
            seed: 0,
            psi_vw_gain: 1.0,
        }
    }
}

impl ModelConfig {
    pub fn with_lambda(&self, lambda: f64) -> Self {
        Self { unfolding: self.unfolding.with_lambda(lambda), ..*self }
    }

    pub fn lambda(&self) -> f64 {
        self.unfolding.lambda
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub delta_v: f64,
    pub delta_w: f64,
    pub delta: f64,
    pub k: f64,
    pub stability_criterion: bool,
    pub disjoint_intervals_regime: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
        }
        writeln!(f, "delta_v = {:.16e}", self.delta_v)?;
        writeln!(f, "delta_w = {:.16e}", self.delta_w)?;
        writeln!(f, "delta = {:.16e}", self.delta)?;
        writeln!(f, "K = {:.16e}", self.k)?;
        writeln!(f, "stability_criterion = {}", self.stability_criterion)?;
        writeln!(f, "disjoint_intervals_regime = {}", self.disjoint_intervals_regime)?;
        write!(f, "valid = {}", self.is_valid())
    }
}

/// Checks every standing hypothesis and reports all of them; nothing is
/// corrected.
pub fn validate(config: &ModelConfig) -> ValidationReport {
    let s = &config.saddles;
    let u = &config.unfolding;
    let n = &config.numeric;
    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        checks.push(Check { name: name.to_string(), passed, detail });
    };

    check("E_v > 0", s.e_v > 0.0, format!("E_v = {}", s.e_v));
    check("C_v > E_v", s.c_v > s.e_v, format!("C_v = {}, E_v = {}", s.c_v, s.e_v));
    check("E_w > 0", s.e_w > 0.0, format!("E_w = {}", s.e_w));
    check("C_w > E_w", s.c_w > s.e_w, format!("C_w = {}, E_w = {}", s.c_w, s.e_w));
    check("lambda >= 0", u.lambda >= 0.0, format!("lambda = {}", u.lambda));
    check(
        "0 <= Pw1 < Pw2 < 2pi",
        u.pw1 >= 0.0 && u.pw2() < TAU,
        format!("Pw1 = {}, Pw2 = {}", u.pw1, u.pw2()),
    );
    check("delta_offset finite", u.delta_offset.is_finite(), format!("delta_offset = {}", u.delta_offset));
    check("tol_root > 0", n.tol_root > 0.0, format!("tol_root = {}", n.tol_root));
    check("tol_newton > 0", n.tol_newton > 0.0, format!("tol_newton = {}", n.tol_newton));
    check("max_iter >= 1", n.max_iter >= 1, format!("max_iter = {}", n.max_iter));
    check(
        "0 < y_floor < y_max <= 1",
        config.y_floor > 0.0 && config.y_floor < config.y_max && config.y_max <= 1.0,
        format!("y_floor = {}, y_max = {}", config.y_floor, config.y_max),
    );
    check("psi_vw_gain > 0", config.psi_vw_gain > 0.0, format!("psi_vw_gain = {}", config.psi_vw_gain));

    ValidationReport {
        checks,
        delta_v: s.delta_v(),
        delta_w: s.delta_w(),
        delta: s.delta(),
        k: s.k(),
        stability_criterion: s.c_v * s.c_w > s.e_v * s.e_w,
        disjoint_intervals_regime: s.k() > 1.0,
    }
}

/// Height of the stable-manifold curve of `v` on `Out(w)`.
pub fn g_curve(model: &UnfoldingModel, x: f64) -> f64 {
    model.g(x)
}

/// Height of the unstable-manifold curve of `w` on `In(v)`.
pub fn h_curve(model: &UnfoldingModel, x: f64) -> f64 {
    model.h(x)
}

//! Sampled curves on a section and their shape classification.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{SectionId, SectionPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Segment,
    Spiral,
    Helix,
    Unclassified,
}

/// A parametrized curve that can be evaluated anywhere on its domain, so
/// consumers can densify near features.
pub trait Curve {
    fn section(&self) -> SectionId;
    fn domain(&self) -> (f64, f64);
    fn point(&self, s: f64) -> Result<SectionPoint>;
}

/// Closure-backed [`Curve`].
pub struct FnCurve<F> {
    section: SectionId,
    domain: (f64, f64),
    f: F,
}

impl<F: Fn(f64) -> Result<SectionPoint>> FnCurve<F> {
    pub fn new(section: SectionId, domain: (f64, f64), f: F) -> Self {
        Self { section, domain, f }
    }
}

impl<F: Fn(f64) -> Result<SectionPoint>> Curve for FnCurve<F> {
    fn section(&self) -> SectionId {
        self.section
    }

    fn domain(&self) -> (f64, f64) {
        self.domain
    }

    fn point(&self, s: f64) -> Result<SectionPoint> {
        (self.f)(s)
    }
}

/// Ordered samples of a curve on a single section.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSample {
    pub points: Vec<SectionPoint>,
    pub kind: CurveKind,
}

impl CurveSample {
    pub fn new(points: Vec<SectionPoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewSamples { needed: 2, got: points.len() });
        }
        let section = points[0].section;
        if points.iter().any(|p| p.section != section) {
            return Err(Error::InvalidInput("curve samples span several sections".into()));
        }
        Ok(Self { points, kind: CurveKind::Unclassified })
    }

    /// Samples `curve` at `n` equally spaced parameters, endpoints included.
    pub fn from_curve(curve: &dyn Curve, n: usize) -> Result<Self> {
        let (s0, s1) = curve.domain();
        let pts = (0..n)
            .map(|i| curve.point(s0 + (s1 - s0) * i as f64 / (n.max(2) - 1) as f64))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pts)
    }

    pub fn section(&self) -> SectionId {
        self.points[0].section
    }

    /// Runs [`classify_curve`] and stores the tag.
    pub fn classified(mut self) -> Result<Self> {
        self.kind = classify_curve(&self)?;
        Ok(self)
    }

    /// CSV with columns `section,a_unwrapped,b,sheet`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("section,a_unwrapped,b,sheet\n");
        for p in &self.points {
            let _ = writeln!(s, "{},{:.16e},{:.16e},{}", p.section.label(), p.a, p.b, p.sheet.as_char());
        }
        s
    }
}

fn monotone(d: &[f64], strict: bool) -> bool {
    let up = d.iter().all(|&v| if strict { v > 0.0 } else { v >= 0.0 });
    let down = d.iter().all(|&v| if strict { v < 0.0 } else { v <= 0.0 });
    up || down
}

/// Finite-sample shape test.
///
/// * segment: both coordinates strictly monotone and the angle spans less
///   than one turn;
/// * spiral (disc charts) / helix (cylinder charts): strictly monotone
///   angle spanning at least two turns, monotone `b`, and `b` flattening out
///   toward the end where it is smallest (accumulation on the centre or on
///   the circle `y = 0`).
pub fn classify_curve(c: &CurveSample) -> Result<CurveKind> {
    let n = c.points.len();
    if n < 8 {
        return Err(Error::TooFewSamples { needed: 8, got: n });
    }
    let da: Vec<f64> = c.points.windows(2).map(|w| w[1].a - w[0].a).collect();
    let db: Vec<f64> = c.points.windows(2).map(|w| w[1].b - w[0].b).collect();
    let span = (c.points[n - 1].a - c.points[0].a).abs();

    if monotone(&da, true) && monotone(&db, true) && span < TAU {
        return Ok(CurveKind::Segment);
    }
    if !(monotone(&da, true) && monotone(&db, false) && span >= 2.0 * TAU) {
        return Ok(CurveKind::Unclassified);
    }
    let total_b = (c.points[n - 1].b - c.points[0].b).abs();
    let mean_slope = total_b / span;
    let slope_first = (db[0] / da[0]).abs();
    let slope_last = (db[n - 2] / da[n - 2]).abs();
    let (end_slope, end_b, other_b) = if slope_first < slope_last {
        (slope_first, c.points[0].b.abs(), c.points[n - 1].b.abs())
    } else {
        (slope_last, c.points[n - 1].b.abs(), c.points[0].b.abs())
    };
    if !(end_slope < 0.1 * mean_slope && end_b < other_b) {
        return Ok(CurveKind::Unclassified);
    }
    Ok(if c.section().is_cylinder() { CurveKind::Helix } else { CurveKind::Spiral })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::phi_v;
    use crate::model::SaddleParameters;

    fn line(s: f64) -> SectionPoint {
        SectionPoint::in_v(0.1 + 0.2 * s, 0.9 - 0.9 * s)
    }

    #[test]
    fn straight_line_is_segment() {
        let pts: Vec<_> = (0..64).map(|i| line(0.99 * i as f64 / 63.0)).collect();
        assert_eq!(classify_curve(&CurveSample::new(pts).unwrap()).unwrap(), CurveKind::Segment);
    }

    #[test]
    fn line_image_is_spiral() {
        // Parameters approach s = 1 geometrically, where the line meets y = 0.
        let sp = SaddleParameters::default();
        let pts: Vec<_> = (0..64)
            .map(|i| {
                let s = 1.0 - 10f64.powf(-6.0 * i as f64 / 63.0) * 0.999;
                phi_v(&line(s), &sp, 1e-14).unwrap()
            })
            .collect();
        assert_eq!(classify_curve(&CurveSample::new(pts).unwrap()).unwrap(), CurveKind::Spiral);
    }

    #[test]
    fn too_few_samples() {
        let pts: Vec<_> = (0..5).map(|i| line(i as f64 / 10.0)).collect();
        let e = classify_curve(&CurveSample::new(pts).unwrap()).unwrap_err();
        assert_eq!(e, Error::TooFewSamples { needed: 8, got: 5 });
    }

    #[test]
    fn mixed_sections_rejected() {
        let pts = vec![SectionPoint::in_v(0.0, 0.1), SectionPoint::out_w(0.0, 0.1)];
        assert!(CurveSample::new(pts).is_err());
    }

    #[test]
    fn zigzag_is_unclassified() {
        let pts: Vec<_> = (0..16).map(|i| SectionPoint::in_v(i as f64 * 0.1, if i % 2 == 0 { 0.1 } else { 0.2 })).collect();
        assert_eq!(classify_curve(&CurveSample::new(pts).unwrap()).unwrap(), CurveKind::Unclassified);
    }

    #[test]
    fn csv_layout() {
        let c = CurveSample::new(vec![SectionPoint::in_v(0.0, 0.5), SectionPoint::in_v(1.0, -0.5)]).unwrap();
        let csv = c.to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "section,a_unwrapped,b,sheet");
        assert_eq!(lines[2], "InV,1.0000000000000000e0,-5.0000000000000000e-1,-");
    }
}

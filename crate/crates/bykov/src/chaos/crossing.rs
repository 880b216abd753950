//! Counting crossings of a curve on `Out(w)` with the graph of `g`.

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::model::{SectionId, SectionPoint, UnfoldingModel};
use crate::numeric::{bisect, golden_min, linspace};

#[derive(Debug, Clone, PartialEq)]
pub struct CrossingReport {
    /// Curve parameters of the isolated sign changes, in increasing order.
    pub crossings: Vec<f64>,
    /// Parameters of sign-change-free extrema where `|y - g|` drops below
    /// the root tolerance.
    pub tangency_suspects: Vec<f64>,
}

impl CrossingReport {
    pub fn count(&self) -> usize {
        self.crossings.len()
    }

    pub fn tangency_suspected(&self) -> bool {
        !self.tangency_suspects.is_empty()
    }
}

/// Signed vertical distance to the stable-manifold curve of the point's sheet.
pub fn gap_to_g(p: &SectionPoint, model: &UnfoldingModel) -> f64 {
    p.b - p.sheet.sign() * model.g(p.a)
}

const SUBDIVISION: usize = 16;
const MAX_DEPTH: usize = 40;

fn positive(d: f64) -> bool {
    d >= 0.0
}

/// Recursively splits `[a, b]` (which holds an odd number of sign changes)
/// until each piece holds a single one, then bisects it.
fn isolate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: usize, out: &mut Vec<f64>) -> Result<()> {
    if depth > MAX_DEPTH || (b - a).abs() <= f64::EPSILON * a.abs().max(b.abs()).max(1.0) {
        return Err(Error::InsufficientResolution(format!(
            "sign changes near parameter {a:.16e} could not be separated"
        )));
    }
    let s = linspace(a, b, SUBDIVISION + 1);
    let d: Vec<f64> = s.iter().map(|&t| f(t)).collect();
    let changes: Vec<usize> = (0..SUBDIVISION).filter(|&i| positive(d[i]) != positive(d[i + 1])).collect();
    if changes.len() == 1 && depth > 0 {
        let i = changes[0];
        let r = bisect(|t| if positive(f(t)) { 1.0 } else { -1.0 }, s[i], s[i + 1], tol, 200)
            .expect("bracket holds a sign change");
        out.push(r);
        return Ok(());
    }
    for i in changes {
        isolate(f, s[i], s[i + 1], tol, depth + 1, out)?;
    }
    Ok(())
}

/// Counts transverse crossings of `curve` (on `Out(w)`) with `y = g(x)`.
///
/// Sign changes of `y - g(x)` found on `samples` equally spaced parameters
/// are refined until isolated. Local minima of `|y - g|` without a sign
/// change are polished by golden section; a hidden pair of crossings found
/// there is added, and a minimum below `tol_root` is reported as a suspected
/// tangency.
pub fn crossing_count(curve: &dyn Curve, model: &UnfoldingModel, samples: usize, tol_root: f64) -> Result<CrossingReport> {
    if curve.section() != SectionId::OutW {
        return Err(Error::WrongSection { expected: SectionId::OutW, got: curve.section() });
    }
    if samples < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: samples });
    }
    let f = |t: f64| curve.point(t).map(|p| gap_to_g(&p, model)).unwrap_or(f64::NAN);
    let (s0, s1) = curve.domain();
    let s = linspace(s0, s1, samples);
    let d: Vec<f64> = s.iter().map(|&t| f(t)).collect();
    if d.iter().any(|v| v.is_nan()) {
        return Err(Error::InvalidInput("curve could not be evaluated on its whole domain".into()));
    }
    let mut crossings = Vec::new();
    for i in 0..samples - 1 {
        if positive(d[i]) != positive(d[i + 1]) {
            isolate(&f, s[i], s[i + 1], tol_root, 1, &mut crossings)?;
        }
    }
    let mut tangency_suspects = Vec::new();
    for i in 1..samples - 1 {
        let local_min = d[i].abs() <= d[i - 1].abs() && d[i].abs() <= d[i + 1].abs();
        let same_sign = positive(d[i - 1]) == positive(d[i]) && positive(d[i]) == positive(d[i + 1]);
        if !(local_min && same_sign) {
            continue;
        }
        let sign = if positive(d[i]) { 1.0 } else { -1.0 };
        let (t, v) = golden_min(|t| sign * f(t), s[i - 1], s[i + 1], 1e-15 * (s1 - s0).abs());
        if v < 0.0 {
            crossings.push(bisect(&f, s[i - 1], t, tol_root, 200).expect("sign change"));
            crossings.push(bisect(&f, t, s[i + 1], tol_root, 200).expect("sign change"));
        } else if v < tol_root {
            tangency_suspects.push(t);
        }
    }
    crossings.sort_by(f64::total_cmp);
    Ok(CrossingReport { crossings, tangency_suspects })
}

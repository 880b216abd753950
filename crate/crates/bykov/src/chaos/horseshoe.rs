//! Horseshoe rectangles near `Pv1`, certified transition matrices and the
//! cone-field expansion test.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::Vector2;

use crate::chaos::intervals::interval_sequence;
use crate::dynamics::{d_zeta, zeta, zeta_inverse, ReturnStatus};
use crate::error::{Error, Result};
use crate::local::Mat2;
use crate::model::{ModelConfig, SectionPoint, Sheet};
use crate::numeric::{bisect, linspace, wrap_pi};

/// Samples along a vertical line when tracking its image.
const LINE_SAMPLES: usize = 4096;
/// Samples along a horizontal edge.
const EDGE_SAMPLES: usize = 1024;
/// Resampling of a window passage when checking monotonicity.
const PASSAGE_SAMPLES: usize = 512;

/// `[x_lo, x_hi] × [y_lo, y_hi]` on the upper sheet of `In(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rectangle {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
    pub label: String,
}

impl Rectangle {
    pub fn new(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64, label: impl Into<String>) -> Result<Self> {
        if !(x_lo < x_hi && 0.0 < y_lo && y_lo < y_hi) {
            return Err(Error::InvalidInput(format!("degenerate rectangle [{x_lo}, {x_hi}] x [{y_lo}, {y_hi}]")));
        }
        Ok(Self { x_lo, x_hi, y_lo, y_hi, label: label.into() })
    }

    pub fn center_x(&self) -> f64 {
        0.5 * (self.x_lo + self.x_hi)
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.x_hi - self.x_lo)
    }

    pub fn height(&self) -> f64 {
        self.y_hi - self.y_lo
    }

    pub fn area(&self) -> f64 {
        (self.x_hi - self.x_lo) * self.height()
    }

    /// Angular offset from the centre, reduced to `(-π, π]`.
    pub fn offset(&self, x: f64) -> f64 {
        wrap_pi(x - self.center_x())
    }

    /// Membership with the angle taken modulo `2π`, boundary included and
    /// grown by `margin` on every side.
    pub fn contains_with_margin(&self, p: &SectionPoint, margin: f64) -> bool {
        p.sheet == Sheet::Upper
            && self.offset(p.a).abs() <= self.half_width() + margin
            && p.b >= self.y_lo - margin
            && p.b <= self.y_hi + margin
    }

    pub fn contains(&self, p: &SectionPoint) -> bool {
        self.contains_with_margin(p, 0.0)
    }

    pub fn overlaps(&self, other: &Rectangle) -> bool {
        let dx = wrap_pi(self.center_x() - other.center_x()).abs();
        dx <= self.half_width() + other.half_width() && self.y_lo <= other.y_hi && other.y_lo <= self.y_hi
    }
}

impl fmt::Display for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x=[{:.16e}, {:.16e}] y=[{:.16e}, {:.16e}]", self.label, self.x_lo, self.x_hi, self.y_lo, self.y_hi)
    }
}

/// Square 0/1 matrix over rectangle labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    n: usize,
    entries: Vec<u8>,
}

impl TransitionMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![0; n * n] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.entries[i * self.n + j] = v;
    }

    pub fn is_full_shift(&self) -> bool {
        self.entries.iter().all(|&e| e == 1)
    }
}

impl fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingStatus {
    /// `ζ(R_i)` crosses `R_j` in a full-width vertical strip.
    Full,
    /// `ζ(R_i)` and `R_j` are separated.
    Disjoint,
    /// Anything else.
    Partial,
}

/// How the image of a vertical line meets the target rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LinePassage {
    /// Single monotone passage through the window from above the top to
    /// below the bottom; `t_top`, `t_bottom` are the log-heights on the
    /// source line where the image crosses the target's top and bottom.
    Crosses { t_top: f64, t_bottom: f64 },
    Misses,
    Touches,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairCertificate {
    pub from: usize,
    pub to: usize,
    pub status: CrossingStatus,
    pub left: LinePassage,
    pub right: LinePassage,
    pub top_hits: bool,
    pub bottom_hits: bool,
}

impl fmt::Display for LinePassage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinePassage::Crosses { t_top, t_bottom } => write!(f, "crosses[{t_top:.16e}, {t_bottom:.16e}]"),
            LinePassage::Misses => f.write_str("misses"),
            LinePassage::Touches => f.write_str("touches"),
        }
    }
}

impl fmt::Display for PairCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            CrossingStatus::Full => "full",
            CrossingStatus::Disjoint => "disjoint",
            CrossingStatus::Partial => "partial",
        };
        write!(
            f,
            "certificate {}->{} status={status} left={} right={} top_hits={} bottom_hits={}",
            self.from, self.to, self.left, self.right, self.top_hits, self.bottom_hits
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Horseshoe {
    pub rects: Vec<Rectangle>,
    pub matrix: TransitionMatrix,
    pub certificates: Vec<PairCertificate>,
    /// Index in the interval sequence of the rectangle labelled 0.
    pub first_index: usize,
}

fn image(x: f64, y: f64, config: &ModelConfig) -> Option<SectionPoint> {
    let out = zeta(&SectionPoint::in_v(x, y), config);
    match out.status {
        ReturnStatus::Returned => out.next,
        _ => None,
    }
}

/// Tracks the image of the vertical line `{x} × [src.y_lo, src.y_hi]`
/// through the angular window of `dst`.
pub fn track_vertical_line(x: f64, src: &Rectangle, dst: &Rectangle, config: &ModelConfig) -> Result<LinePassage> {
    let tol = config.numeric.tol_root;
    let (t0, t1) = (src.y_lo.ln(), src.y_hi.ln());
    let hw = dst.half_width();
    let offset = |t: f64| image(x, t.exp(), config).map(|q| dst.offset(q.a)).unwrap_or(f64::NAN);
    let height = |t: f64| image(x, t.exp(), config).map(|q| q.b).unwrap_or(f64::NAN);
    let ts = linspace(t0, t1, LINE_SAMPLES);
    let inside: Vec<bool> = ts.iter().map(|&t| offset(t).abs() <= hw).collect();

    let mut passages = Vec::new();
    let mut i = 0;
    while i < ts.len() {
        if !inside[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < ts.len() && inside[i + 1] {
            i += 1;
        }
        let end = i;
        i += 1;
        let edge = |a: f64, b: f64| bisect(|t| offset(t).abs() - hw, a, b, 1e-15, 200).unwrap_or(b);
        let ta = if start > 0 { edge(ts[start - 1], ts[start]) } else { ts[start] };
        let tb = if end + 1 < ts.len() { edge(ts[end + 1], ts[end]) } else { ts[end] };
        passages.push((ta, tb));
    }

    let band_touch = |ta: f64, tb: f64| {
        let hs: Vec<f64> = linspace(ta, tb, PASSAGE_SAMPLES).into_iter().map(height).collect();
        let touches = hs.iter().any(|&h| h >= dst.y_lo - tol && h <= dst.y_hi + tol)
            || hs.windows(2).any(|w| (w[0] > dst.y_hi) != (w[1] > dst.y_hi) || (w[0] < dst.y_lo) != (w[1] < dst.y_lo));
        (touches, hs)
    };

    let mut result = LinePassage::Misses;
    for (ta, tb) in passages {
        let (touches, hs) = band_touch(ta, tb);
        if !touches {
            continue;
        }
        if result != LinePassage::Misses {
            return Ok(LinePassage::Touches);
        }
        let (ha, hb) = (hs[0], hs[hs.len() - 1]);
        for h in [ha, hb] {
            if (h - dst.y_hi).abs() < tol || (h - dst.y_lo).abs() < tol {
                return Err(Error::CrossingUncertain(format!(
                    "image of x = {x:.16e} from {} passes within {tol:e} of a corner of {}",
                    src.label, dst.label
                )));
            }
        }
        let decreasing = hs.windows(2).all(|w| w[1] < w[0]);
        let increasing = hs.windows(2).all(|w| w[1] > w[0]);
        let crosses = (ha > dst.y_hi && hb < dst.y_lo && decreasing) || (ha < dst.y_lo && hb > dst.y_hi && increasing);
        if !crosses {
            result = LinePassage::Touches;
            continue;
        }
        let at = |level: f64| bisect(|t| height(t) - level, ta, tb, 1e-15, 200).expect("monotone passage");
        result = LinePassage::Crosses { t_top: at(dst.y_hi), t_bottom: at(dst.y_lo) };
    }
    Ok(result)
}

fn horizontal_edge_hits(y: f64, src: &Rectangle, dst: &Rectangle, config: &ModelConfig) -> bool {
    linspace(src.x_lo, src.x_hi, EDGE_SAMPLES)
        .into_iter()
        .filter_map(|x| image(x, y, config))
        .any(|q| dst.contains_with_margin(&q, config.numeric.tol_root))
}

/// Edge-tracking certificate for the pair `(i, j)`.
pub fn certify_pair(rects: &[Rectangle], i: usize, j: usize, config: &ModelConfig) -> Result<PairCertificate> {
    let (src, dst) = (&rects[i], &rects[j]);
    let left = track_vertical_line(src.x_lo, src, dst, config)?;
    let right = track_vertical_line(src.x_hi, src, dst, config)?;
    let top_hits = horizontal_edge_hits(src.y_hi, src, dst, config);
    let bottom_hits = horizontal_edge_hits(src.y_lo, src, dst, config);
    let crossing = |p: &LinePassage| matches!(p, LinePassage::Crosses { .. });
    let status = if crossing(&left) && crossing(&right) && !top_hits && !bottom_hits {
        CrossingStatus::Full
    } else if left == LinePassage::Misses && right == LinePassage::Misses && !top_hits && !bottom_hits {
        // The boundary image misses dst, so dst is either inside ζ(src) or outside it.
        let centre = SectionPoint::in_v(dst.center_x(), 0.5 * (dst.y_lo + dst.y_hi));
        match zeta_inverse(&centre, Sheet::Upper, config) {
            Some(p) if src.contains(&p) => CrossingStatus::Partial,
            _ => CrossingStatus::Disjoint,
        }
    } else {
        CrossingStatus::Partial
    };
    Ok(PairCertificate { from: i, to: j, status, left, right, top_hits, bottom_hits })
}

/// Transition matrix of `rects` with one certificate per ordered pair.
pub fn certify_transitions(rects: &[Rectangle], config: &ModelConfig) -> Result<(TransitionMatrix, Vec<PairCertificate>)> {
    let n = rects.len();
    let mut m = TransitionMatrix::zeros(n);
    let mut certs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let c = certify_pair(rects, i, j, config)?;
            if c.status == CrossingStatus::Full {
                m.set(i, j, 1);
            }
            certs.push(c);
        }
    }
    Ok((m, certs))
}

/// Rectangles `[Pv1 - τ, Pv1 + τ] × I_n` for `n` in `n_range`.
///
/// The heights come from the interval sequence on the line `x0 = Pv1 + 3τ`;
/// numbering starts at the first interval whose top lies below `λ sin τ`,
/// so the shear of the return map lifts the image of the left edge above
/// every rectangle while the top and bottom edges land outside the window.
pub fn horseshoe_rectangles(n_range: &[usize], tau: f64, config: &ModelConfig) -> Result<(Vec<Rectangle>, usize)> {
    let lambda = config.lambda();
    if !(lambda > 0.0) {
        return Err(Error::DegenerateUnfolding(lambda));
    }
    if config.saddles.k() <= 1.0 {
        return Err(Error::InvalidInput(format!("horseshoe needs K > 1, got {}", config.saddles.k())));
    }
    if !(tau > 0.0 && tau < PI / 5.0) {
        return Err(Error::InvalidInput(format!(
            "half-width tau = {tau} must lie in (0, pi/5): wider rectangles overlap the images of their own edges"
        )));
    }
    if n_range.is_empty() {
        return Err(Error::InvalidInput("empty index set".into()));
    }
    let pv1 = config.unfolding.pv1();
    let x0 = pv1 + 3.0 * tau;
    let k = config.saddles.k();
    let top0 = interval_sequence(x0, 1, config)?.intervals[0].hi;
    let ceiling = lambda * tau.sin();
    let first = ((top0 / ceiling).ln() * k / (2.0 * PI)).ceil().max(0.0) as usize;
    let max_n = *n_range.iter().max().expect("non-empty");
    let seq = interval_sequence(x0, first + max_n + 1, config)?;
    let rects = n_range
        .iter()
        .map(|&n| {
            let iv = seq.intervals[first + n];
            Rectangle::new(pv1 - tau, pv1 + tau, iv.lo, iv.hi, format!("R{n}"))
        })
        .collect::<Result<Vec<_>>>()?;
    for (i, a) in rects.iter().enumerate() {
        for b in &rects[i + 1..] {
            if a.overlaps(b) {
                return Err(Error::InvalidInput(format!("rectangles {} and {} overlap", a.label, b.label)));
            }
        }
    }
    Ok((rects, first))
}

pub fn build_horseshoe(n_range: &[usize], tau: f64, config: &ModelConfig) -> Result<Horseshoe> {
    let (rects, first_index) = horseshoe_rectangles(n_range, tau, config)?;
    let (matrix, certificates) = certify_transitions(&rects, config)?;
    Ok(Horseshoe { rects, matrix, certificates, first_index })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairCone {
    pub from: usize,
    pub to: usize,
    pub points: usize,
    pub full_strip: bool,
    pub min_expansion: f64,
    pub max_cone_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConeReport {
    pub cone_slope: f64,
    pub grid: usize,
    pub pairs: Vec<PairCone>,
    pub min_expansion: f64,
    pub max_cone_ratio: f64,
    pub points_checked: usize,
    pub pass: bool,
}

impl fmt::Display for ConeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.pairs {
            writeln!(
                f,
                "pair {}->{} points={} full_strip={} min_expansion={:.16e} max_cone_ratio={:.16e}",
                p.from, p.to, p.points, p.full_strip, p.min_expansion, p.max_cone_ratio
            )?;
        }
        write!(
            f,
            "cone_slope={:.16e} grid={} points={} min_expansion={:.16e} max_cone_ratio={:.16e} pass={}",
            self.cone_slope, self.grid, self.points_checked, self.min_expansion, self.max_cone_ratio, self.pass
        )
    }
}

/// Smallest `|A w| / |w|` over the cone `|w_x| ≤ c |w_y|`.
pub fn cone_min_growth(a: &Mat2, c: f64) -> f64 {
    let (e1, e2) = (a.column(0).into_owned(), a.column(1).into_owned());
    let (p, q, r) = (e1.norm_squared(), e1.dot(&e2), e2.norm_squared());
    let growth = |s: f64| ((p * s * s + 2.0 * q * s + r) / (1.0 + s * s)).sqrt();
    let mut best = growth(c).min(growth(-c));
    // Interior critical points solve q s² - (p - r) s - q = 0.
    if q != 0.0 {
        let b = -(p - r);
        let disc = (b * b + 4.0 * q * q).sqrt();
        for s in [(-b + disc) / (2.0 * q), (-b - disc) / (2.0 * q)] {
            if s.abs() <= c {
                best = best.min(growth(s));
            }
        }
    } else if p < r {
        best = best.min(growth(0.0));
    }
    best
}

/// Largest `|u| / (c |v|)` over the images `(u, v)` of the cone's edges,
/// or infinity when the images leave the half-cone of one sign.
pub fn cone_image_ratio(a: &Mat2, c: f64) -> f64 {
    let w1 = a * Vector2::new(c, 1.0);
    let w2 = a * Vector2::new(-c, 1.0);
    if w1.y * w2.y <= 0.0 {
        return f64::INFINITY;
    }
    (w1.x.abs() / (c * w1.y.abs())).max(w2.x.abs() / (c * w2.y.abs()))
}

/// Checks on a `grid × grid` net of the preimage strips that `Dζ` maps the
/// vertical cone of slope `cone_slope` strictly into itself and expands
/// it. Coordinates are normalized so that every rectangle is a unit square.
///
/// The report passes only when every rectangle pair that meets yields a
/// full-width strip, every cone image is strict and the minimal growth
/// exceeds one.
pub fn cone_hyperbolicity(rects: &[Rectangle], cone_slope: f64, grid: usize, config: &ModelConfig) -> Result<ConeReport> {
    if !(cone_slope > 0.0 && cone_slope.is_finite()) {
        return Err(Error::InvalidInput(format!("cone slope {cone_slope} gives an empty cone")));
    }
    if grid < 2 {
        return Err(Error::InvalidInput(format!("grid {grid} must be at least 2")));
    }
    let mut pairs = Vec::new();
    for (i, src) in rects.iter().enumerate() {
        for (j, dst) in rects.iter().enumerate() {
            let n_src = Mat2::new(1.0 / (2.0 * src.half_width()), 0.0, 0.0, 1.0 / src.height());
            let n_dst = Mat2::new(1.0 / (2.0 * dst.half_width()), 0.0, 0.0, 1.0 / dst.height());
            let n_src_inv = n_src.try_inverse().expect("diagonal");
            let mut pc = PairCone {
                from: i,
                to: j,
                points: 0,
                full_strip: true,
                min_expansion: f64::INFINITY,
                max_cone_ratio: 0.0,
            };
            let mut hit_columns = 0;
            for x in linspace(src.x_lo, src.x_hi, grid) {
                match track_vertical_line(x, src, dst, config)? {
                    LinePassage::Misses => continue,
                    LinePassage::Touches => {
                        hit_columns += 1;
                        pc.full_strip = false;
                    }
                    LinePassage::Crosses { t_top, t_bottom } => {
                        hit_columns += 1;
                        for t in linspace(t_top, t_bottom, grid) {
                            let p = SectionPoint::in_v(x, t.exp());
                            let a = n_dst * d_zeta(&p, config)? * n_src_inv;
                            pc.min_expansion = pc.min_expansion.min(cone_min_growth(&a, cone_slope));
                            pc.max_cone_ratio = pc.max_cone_ratio.max(cone_image_ratio(&a, cone_slope));
                            pc.points += 1;
                        }
                    }
                }
            }
            if hit_columns > 0 && hit_columns < grid {
                pc.full_strip = false;
            }
            if hit_columns > 0 {
                pairs.push(pc);
            }
        }
    }
    let points_checked = pairs.iter().map(|p| p.points).sum();
    let min_expansion = pairs.iter().map(|p| p.min_expansion).fold(f64::INFINITY, f64::min);
    let max_cone_ratio = pairs.iter().map(|p| p.max_cone_ratio).fold(0.0, f64::max);
    let pass = points_checked > 0
        && pairs.iter().all(|p| p.full_strip)
        && max_cone_ratio < 1.0
        && min_expansion > 1.0;
    Ok(ConeReport { cone_slope, grid, pairs, min_expansion, max_cone_ratio, points_checked, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_rectangle_full_shift() {
        let c = ModelConfig::default();
        let h = build_horseshoe(&[0, 1], 0.05, &c).unwrap();
        assert!(h.matrix.is_full_shift(), "{}", h.matrix);
        assert_eq!(h.matrix.to_string(), "1 1\n1 1\n");
        assert!((h.rects[0].y_lo - 1.2028e-4).abs() < 1e-8);
        assert!((h.rects[0].y_hi - 3.4275e-4).abs() < 1e-8);
    }

    #[test]
    fn single_rectangle_maps_across_itself() {
        let c = ModelConfig::default();
        let h = build_horseshoe(&[0], 0.05, &c).unwrap();
        assert_eq!(h.matrix.to_string(), "1\n");
    }

    #[test]
    fn wide_rectangles_rejected() {
        let c = ModelConfig::default();
        assert!(matches!(build_horseshoe(&[0, 1], 1.0, &c), Err(Error::InvalidInput(_))));
        assert!(matches!(build_horseshoe(&[0], 0.05, &c.with_lambda(0.0)), Err(Error::DegenerateUnfolding(_))));
    }

    #[test]
    fn distant_rectangle_is_disjoint() {
        let c = ModelConfig::default();
        let (mut rects, _) = horseshoe_rectangles(&[0], 0.05, &c).unwrap();
        rects.push(Rectangle::new(4.0, 4.1, 0.3, 0.4, "far").unwrap());
        let (m, certs) = certify_transitions(&rects, &c).unwrap();
        assert_eq!(m.get(0, 1), 0);
        assert_eq!(certs[1].status, CrossingStatus::Disjoint);
    }

    #[test]
    fn cone_certified_on_reference_rectangles() {
        let c = ModelConfig::default();
        let h = build_horseshoe(&[0, 1], 0.05, &c).unwrap();
        let r = cone_hyperbolicity(&h.rects, 1.0, 20, &c).unwrap();
        assert!(r.pass, "{r}");
        assert!(r.min_expansion > 1.0);
        assert_eq!(r.pairs.len(), 4);
    }

    #[test]
    fn cone_fails_when_unfolding_too_weak() {
        let c = ModelConfig::default();
        let h = build_horseshoe(&[0], 0.05, &c).unwrap();
        let r = cone_hyperbolicity(&h.rects, 1.0, 20, &c.with_lambda(0.004)).unwrap();
        assert!(!r.pass, "{r}");
    }

    #[test]
    fn empty_cone_rejected() {
        let c = ModelConfig::default();
        let h = build_horseshoe(&[0], 0.05, &c).unwrap();
        assert!(cone_hyperbolicity(&h.rects, 0.0, 10, &c).is_err());
    }

    #[test]
    fn cone_growth_matches_brute_force() {
        let a = Mat2::new(0.3, -2.0, 5.0, 40.0);
        let c = 0.7;
        let brute = linspace(-c, c, 200_001)
            .into_iter()
            .map(|s| (a * Vector2::new(s, 1.0)).norm() / (1.0 + s * s).sqrt())
            .fold(f64::INFINITY, f64::min);
        assert!((cone_min_growth(&a, c) - brute).abs() < 1e-6 * brute);
    }
}

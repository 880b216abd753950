//! Heteroclinic tangencies between the returned unstable manifold and
//! `y = 0`, the sinks born near them, and the loss of cone hyperbolicity
//! of a horseshoe rectangle as `λ` decreases.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use rayon::prelude::*;

use crate::chaos::horseshoe::{cone_hyperbolicity, Rectangle};
use crate::dynamics::{d_zeta, d_zeta_factors, zeta, ReturnStatus};
use crate::error::{Error, Result};
use crate::local::Mat2;
use crate::manifold::{Branch, UnstableArc};
use crate::model::{ModelConfig, SectionPoint};
use crate::numeric::{bisect, golden_min, linspace, wrap_pi};

/// Image `η(x_*, λ)` of the top of the `h`-curve, with unwrapped angle.
pub fn fold_point(lambda: f64, config: &ModelConfig) -> Result<SectionPoint> {
    if !(lambda > 0.0) {
        return Err(Error::DegenerateUnfolding(lambda));
    }
    let s = &config.saddles;
    let gain = config.psi_vw_gain;
    let angle = config.unfolding.x_star() - s.k() * lambda.ln() - gain.ln() / s.e_w;
    Ok(SectionPoint::out_w(angle, gain.powf(s.delta_w()) * lambda.powf(s.delta())))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample {
    pub s: f64,
    /// First-hit angle of `(s, h(s))`.
    pub theta: f64,
    /// Height after the return.
    pub value: f64,
}

/// Refinement passes that bisect the intervals around each sampled extremum.
const PROFILE_REFINEMENTS: usize = 8;

/// Returned height of `(s, h(s))` for `s` in `window`, sampled on
/// `resolution` points and refined near the sampled extrema.
pub fn curve_return_profile(lambda: f64, window: (f64, f64), resolution: usize, config: &ModelConfig) -> Result<Vec<ProfileSample>> {
    if !(lambda > 0.0) {
        return Err(Error::DegenerateUnfolding(lambda));
    }
    if resolution < 3 {
        return Err(Error::InsufficientResolution(format!("profile needs at least 3 samples, got {resolution}")));
    }
    let c = config.with_lambda(lambda);
    let arc = UnstableArc::new(&c);
    let (a, b) = (window.0.min(window.1), window.0.max(window.1));
    let (d0, d1) = arc.domain();
    if !(a > d0 && b < d1) || arc.h(a) < c.y_floor || arc.h(b) < c.y_floor {
        return Err(Error::InsufficientResolution(format!(
            "window [{a}, {b}] reaches heights below y_floor = {}",
            c.y_floor
        )));
    }
    let sample = |s: f64| ProfileSample { s, theta: arc.theta(s), value: arc.value(s) };
    let mut pts: Vec<ProfileSample> = linspace(a, b, resolution).into_iter().map(sample).collect();
    for _ in 0..PROFILE_REFINEMENTS {
        let mut extra = Vec::new();
        for i in 1..pts.len() - 1 {
            let (l, m, r) = (pts[i - 1].value, pts[i].value, pts[i + 1].value);
            if (m <= l && m <= r) || (m >= l && m >= r) {
                extra.push(sample(0.5 * (pts[i - 1].s + pts[i].s)));
                extra.push(sample(0.5 * (pts[i].s + pts[i + 1].s)));
            }
        }
        if extra.is_empty() {
            break;
        }
        pts.extend(extra);
        pts.sort_by(|p, q| p.s.total_cmp(&q.s));
        pts.dedup_by(|p, q| p.s == q.s);
    }
    Ok(pts)
}

/// Angular half-window, measured from the tip of the arc, over which the
/// fold minimum is taken.
const FOLD_WINDOW: f64 = FRAC_PI_2;
const PROFILE_RESOLUTION: usize = 257;

/// Parameter range of the fold window at `c`.
fn fold_window(arc: &UnstableArc<'_>) -> Result<(f64, f64)> {
    let l = arc.at_offset(Branch::Left, FOLD_WINDOW);
    let r = arc.at_offset(Branch::Right, FOLD_WINDOW);
    match (l, r) {
        (Some(l), Some(r)) => Ok((l, r)),
        _ => Err(Error::InsufficientResolution("fold window leaves the arc".into())),
    }
}

/// Minimum of the returned height over the fold window: `(s, F(s))`.
fn fold_minimum(lambda: f64, config: &ModelConfig) -> Result<(f64, f64)> {
    let c = config.with_lambda(lambda);
    let arc = UnstableArc::new(&c);
    let window = fold_window(&arc)?;
    let prof = curve_return_profile(lambda, window, PROFILE_RESOLUTION, config)?;
    let i = (0..prof.len()).min_by(|&i, &j| prof[i].value.total_cmp(&prof[j].value)).expect("non-empty");
    if i == 0 || i == prof.len() - 1 {
        return Ok((prof[i].s, prof[i].value));
    }
    let (lo, hi) = (prof[i - 1].s, prof[i + 1].s);
    // An interior minimum is a zero of the analytic slope.
    let s = bisect(|s| arc.slope(s), lo, hi, 0.0, 200).unwrap_or_else(|| golden_min(|s| arc.value(s), lo, hi, 0.0).0);
    Ok((s, arc.value(s)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangencyRecord {
    pub lambda: f64,
    /// `[λ₂, λ₁]`: the fold minimum is positive at `λ₂` and negative at `λ₁`.
    pub bracket: (f64, f64),
    /// Alignment turn: the fold angle at `λ₁` is `x_m + 2πk`.
    pub turn: i64,
    /// `ζ` of the touching point, on `In(v)`.
    pub touch: SectionPoint,
    /// Parameter of the touching point on the `h`-curve.
    pub fold_s: f64,
    pub value_residual: f64,
    pub slope_residual: f64,
}

impl fmt::Display for TangencyRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lambda={:.16e} bracket=[{:.16e}, {:.16e}] turn={} touch_x={:.16e} touch_y={:.16e} fold_s={:.16e} value_residual={:.16e} slope_residual={:.16e}",
            self.lambda,
            self.bracket.0,
            self.bracket.1,
            self.turn,
            self.touch.a,
            self.touch.b,
            self.fold_s,
            self.value_residual,
            self.slope_residual
        )
    }
}

/// `λ` at which the fold angle equals `target + 2πk`.
fn aligned_lambda(target: f64, k: i64, config: &ModelConfig) -> f64 {
    let s = &config.saddles;
    let shift = config.psi_vw_gain.ln() / s.e_w;
    ((config.unfolding.x_star() - shift - target - TAU * k as f64) / s.k()).exp()
}

/// Tangencies with `λ` in `[lambda_lo, lambda_hi]`, in decreasing order.
///
/// For each turn `k`, `λ₁` aligns the fold with the maximum `x_m` of `g`
/// and `λ₂ < λ₁` aligns it with the minimum of `g`; the fold minimum of the
/// returned height changes sign between them and is bisected in `ln λ`.
pub fn find_tangencies(lambda_hi: f64, lambda_lo: f64, config: &ModelConfig) -> Result<Vec<TangencyRecord>> {
    if !(lambda_lo > 0.0) || !(lambda_hi >= lambda_lo) {
        return Err(Error::InvalidInput(format!("need 0 < lambda_lo <= lambda_hi, got [{lambda_lo}, {lambda_hi}]")));
    }
    if lambda_hi == lambda_lo {
        return Ok(Vec::new());
    }
    let u = &config.unfolding;
    let x_m = u.x_m();
    let x_min = u.pw1 + 1.5 * PI;
    let k = config.saddles.k();
    let shift = config.psi_vw_gain.ln() / config.saddles.e_w;
    // Smallest turn whose λ₂ does not exceed λ_hi.
    let k_first = ((u.x_star() - shift - x_min - k * lambda_hi.ln()) / TAU).ceil() as i64;
    let mut out = Vec::new();
    let mut turn = k_first;
    loop {
        let l1 = aligned_lambda(x_m, turn, config);
        let l2 = aligned_lambda(x_min, turn, config);
        if l1 < lambda_lo {
            break;
        }
        let (a, b) = (l2.max(lambda_lo), l1.min(lambda_hi));
        turn += 1;
        if a >= b {
            continue;
        }
        let m = |lam: f64| fold_minimum(lam, config).map(|(_, v)| v).unwrap_or(f64::NAN);
        let (ma, mb) = (m(a), m(b));
        if !(ma > 0.0 && mb < 0.0) {
            continue;
        }
        let t = bisect(|t| m(t.exp()), a.ln(), b.ln(), 0.0, 200).expect("bracketed");
        let lambda = t.exp();
        let (s, value) = fold_minimum(lambda, config)?;
        let c = config.with_lambda(lambda);
        let arc = UnstableArc::new(&c);
        let touch = zeta(&arc.point(s), &c).next.unwrap_or(SectionPoint::in_v(arc.theta(s) + u.delta_offset, value));
        out.push(TangencyRecord {
            lambda,
            bracket: (l2, l1),
            turn: turn - 1,
            touch,
            fold_s: s,
            value_residual: value,
            slope_residual: arc.slope(s),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Sink,
    Saddle,
    Source,
    NonHyperbolic,
}

impl Stability {
    pub fn label(self) -> &'static str {
        match self {
            Stability::Sink => "sink",
            Stability::Saddle => "saddle",
            Stability::Source => "source",
            Stability::NonHyperbolic => "nonhyperbolic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicOrbit {
    pub lambda: f64,
    /// Orbit points on `In(v)`, angles wrapped to `[0, 2π)`.
    pub points: Vec<SectionPoint>,
    pub period: usize,
    /// Moduli of the eigenvalues of `Dζ^p`, largest first.
    pub multipliers: [f64; 2],
    /// `det Dζ^p` assembled from the determinants of the factors.
    pub determinant: f64,
    pub stability: Stability,
    /// The orbit attracted a perturbed start over 50 periods.
    pub verified: bool,
}

impl PeriodicOrbit {
    pub fn point(&self) -> SectionPoint {
        self.points[0]
    }
}

impl fmt::Display for PeriodicOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.point();
        write!(
            f,
            "lambda={:.16e} x={:.16e} y={:.16e} sheet={} period={} mu1={:.16e} mu2={:.16e} stability={} verified={}",
            self.lambda,
            p.a,
            p.b,
            p.sheet.as_char(),
            self.period,
            self.multipliers[0],
            self.multipliers[1],
            self.stability.label(),
            self.verified
        )
    }
}

/// Search settings for [`find_periodic_sinks_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinkSearch {
    /// Relative half-width of the scanned `λ` neighbourhood.
    pub lambda_span: f64,
    pub lambda_steps: usize,
    /// Seeds per axis.
    pub grid: usize,
    pub transient: usize,
    /// Stop after the first `λ` that yields a verified sink.
    pub stop_at_first: bool,
}

impl Default for SinkSearch {
    fn default() -> Self {
        Self { lambda_span: 0.1, lambda_steps: 801, grid: 30, transient: 400, stop_at_first: true }
    }
}

/// `ζ^p` applied once, keeping angles unwrapped. `None` if any step fails.
fn zeta_power(p: &SectionPoint, period: usize, c: &ModelConfig) -> Option<SectionPoint> {
    let mut cur = *p;
    for _ in 0..period {
        let out = zeta(&cur, c);
        match (out.status, out.next) {
            (ReturnStatus::Returned, Some(n)) => cur = n,
            _ => return None,
        }
    }
    Some(cur)
}

fn torus_distance(p: &SectionPoint, q: &SectionPoint) -> f64 {
    wrap_pi(p.a - q.a).abs().max((p.b - q.b).abs())
}

/// Newton iteration for a fixed point of `ζ^p` modulo `2π` in angle.
pub(crate) fn newton_periodic(seed: &SectionPoint, period: usize, c: &ModelConfig) -> Option<SectionPoint> {
    let mut z = *seed;
    for _ in 0..c.numeric.max_iter {
        let mut jac = Mat2::identity();
        let mut cur = z;
        for _ in 0..period {
            jac = d_zeta(&cur, c).ok()? * jac;
            cur = zeta_power(&cur, 1, c)?;
        }
        let r = nalgebra::Vector2::new(wrap_pi(cur.a - z.a), cur.b - z.b);
        let step = (jac - Mat2::identity()).try_inverse()? * r;
        z.a -= step.x;
        z.b -= step.y;
        z.sheet = crate::model::Sheet::of(z.b, z.sheet);
        if step.x.abs() <= c.numeric.tol_newton && step.y.abs() <= c.numeric.tol_newton * z.b.abs().max(1e-300) {
            let back = zeta_power(&z, period, c)?;
            if torus_distance(&back, &z) <= 10.0 * c.numeric.tol_newton {
                return Some(SectionPoint { a: z.a.rem_euclid(TAU), ..z });
            }
        }
    }
    None
}

/// Eigenvalue moduli of `Dζ^p` along `orbit`, largest first, and the
/// determinant. The smaller real eigenvalue is taken as `det / μ₁`, which
/// keeps it accurate when `det` is tiny.
fn multipliers(orbit: &[SectionPoint], c: &ModelConfig) -> Option<([f64; 2], f64)> {
    let mut m = Mat2::identity();
    let mut det = 1.0;
    for p in orbit {
        let (de, dp) = d_zeta_factors(p, c).ok()?;
        det *= de.determinant() * dp.determinant();
        m = dp * de * m;
    }
    let tr = m.trace();
    let disc = tr * tr - 4.0 * det;
    if disc < 0.0 {
        let r = det.abs().sqrt();
        return Some(([r, r], det));
    }
    let big = 0.5 * (tr + tr.signum() * disc.sqrt());
    if big == 0.0 {
        return Some(([0.0, 0.0], det));
    }
    let small = det / big;
    let (a, b) = (big.abs(), small.abs());
    Some(([a.max(b), a.min(b)], det))
}

fn classify(mu: [f64; 2]) -> Stability {
    let near = |m: f64| (m - 1.0).abs() < 1e-9;
    if near(mu[0]) || near(mu[1]) {
        Stability::NonHyperbolic
    } else if mu[0] < 1.0 {
        Stability::Sink
    } else if mu[1] > 1.0 {
        Stability::Source
    } else {
        Stability::Saddle
    }
}

/// Iterates `ζ^p` for 50 periods from a start perturbed by `1e-6` and
/// checks that the distance to the orbit shrinks.
fn attracts(p: &SectionPoint, period: usize, c: &ModelConfig) -> bool {
    let start = SectionPoint::in_v(p.a + 1e-6, p.b + 1e-6 * p.b.signum());
    let d0 = torus_distance(&start, p);
    let mut cur = start;
    for _ in 0..50 {
        match zeta_power(&cur, period, c) {
            Some(n) => cur = n,
            None => return false,
        }
    }
    torus_distance(&cur, p) < d0
}

/// Identical up to a cyclic shift, within `tol`.
fn same_orbit(a: &PeriodicOrbit, b: &PeriodicOrbit, tol: f64) -> bool {
    a.lambda == b.lambda
        && a.period == b.period
        && (0..a.period).any(|shift| {
            (0..a.period).all(|i| torus_distance(&a.points[i], &b.points[(i + shift) % b.period]) <= tol)
        })
}

/// Periodic orbits reached by forward iteration from one seed at `c`.
fn orbit_from_seed(seed: SectionPoint, period_max: usize, transient: usize, c: &ModelConfig) -> Option<PeriodicOrbit> {
    let mut z = seed;
    for _ in 0..transient {
        z = zeta_power(&z, 1, c)?;
        z.a = z.a.rem_euclid(TAU);
    }
    let mut cur = z;
    let mut period = None;
    for p in 1..=period_max {
        cur = zeta_power(&cur, 1, c)?;
        if torus_distance(&cur, &z) < 1e-7 * (1.0 + z.b.abs()) {
            period = Some(p);
            break;
        }
    }
    let period = period?;
    let fixed = newton_periodic(&z, period, c)?;
    let mut points = vec![fixed];
    for _ in 1..period {
        let mut n = zeta_power(points.last().expect("non-empty"), 1, c)?;
        n.a = n.a.rem_euclid(TAU);
        points.push(n);
    }
    let (mu, det) = multipliers(&points, c)?;
    Some(PeriodicOrbit {
        lambda: c.lambda(),
        points,
        period,
        multipliers: mu,
        determinant: det,
        stability: classify(mu),
        verified: attracts(&fixed, period, c),
    })
}

/// Attracting periodic orbits with period at most `period_max` at
/// parameters `λ_*(1 + r)`, `|r| ≤ 0.1`, found by forward iteration from a
/// seed grid followed by Newton refinement.
pub fn find_periodic_sinks(record: &TangencyRecord, period_max: usize, config: &ModelConfig) -> Vec<PeriodicOrbit> {
    find_periodic_sinks_with(record, period_max, &SinkSearch::default(), config)
}

pub fn find_periodic_sinks_with(record: &TangencyRecord, period_max: usize, search: &SinkSearch, config: &ModelConfig) -> Vec<PeriodicOrbit> {
    if period_max == 0 || search.grid == 0 || search.lambda_steps == 0 {
        return Vec::new();
    }
    let mut rs = linspace(-search.lambda_span, search.lambda_span, search.lambda_steps);
    // Nearest parameters first, so an early stop keeps the closest sinks.
    rs.sort_by(|a, b| a.abs().total_cmp(&b.abs()).then(a.total_cmp(b)));
    let tol = 10.0 * config.numeric.tol_newton;
    let mut found: Vec<PeriodicOrbit> = Vec::new();
    for r in rs {
        let c = config.with_lambda(record.lambda * (1.0 + r));
        let y_lo: f64 = 1e-5_f64.max(c.y_floor);
        let y_hi: f64 = (2.0 * c.lambda()).min(c.y_max);
        let seeds: Vec<SectionPoint> = linspace(0.0, TAU, search.grid + 1)
            .into_iter()
            .take(search.grid)
            .flat_map(|x| linspace(y_lo.ln(), y_hi.ln(), search.grid).into_iter().map(move |t| SectionPoint::in_v(x, t.exp())))
            .collect();
        let orbits: Vec<PeriodicOrbit> = seeds
            .par_iter()
            .filter_map(|&s| orbit_from_seed(s, period_max, search.transient, &c))
            .collect();
        let before = found.len();
        for o in orbits {
            if o.stability == Stability::Sink && !found.iter().any(|f| same_orbit(f, &o, tol)) {
                found.push(o);
            }
        }
        if search.stop_at_first && found[before..].iter().any(|o| o.verified) {
            break;
        }
    }
    found.sort_by(|a, b| a.lambda.total_cmp(&b.lambda).then(a.point().a.total_cmp(&b.point().a)));
    found
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicityThreshold {
    pub lambda_c: f64,
    /// Nearest certified pass, above the threshold.
    pub pass_at: f64,
    /// Nearest certified failure, below the threshold.
    pub fail_at: f64,
}

/// Locates, by bisection in `ln λ`, where `cone_hyperbolicity` of `rect`
/// stops passing. `None` when the whole range passes.
pub fn horseshoe_tangency_scan(
    rect: &Rectangle,
    lambda_hi: f64,
    lambda_lo: f64,
    cone_slope: f64,
    grid: usize,
    config: &ModelConfig,
) -> Result<Option<HyperbolicityThreshold>> {
    if !(lambda_lo > 0.0 && lambda_lo < lambda_hi) {
        return Err(Error::InvalidInput(format!("need 0 < lambda_lo < lambda_hi, got [{lambda_lo}, {lambda_hi}]")));
    }
    let rects = std::slice::from_ref(rect);
    // An uncertain crossing is not a certificate.
    let pass = |lam: f64| match cone_hyperbolicity(rects, cone_slope, grid, &config.with_lambda(lam)) {
        Ok(r) => Ok(r.pass),
        Err(Error::CrossingUncertain(_) | Error::InsufficientResolution(_)) => Ok(false),
        Err(e) => Err(e),
    };
    if !pass(lambda_hi)? {
        return Err(Error::InvalidInput(format!("{} is not cone-hyperbolic at lambda = {lambda_hi}", rect.label)));
    }
    if pass(lambda_lo)? {
        return Ok(None);
    }
    let (mut hi, mut lo) = (lambda_hi.ln(), lambda_lo.ln());
    while hi - lo > 1e-9 {
        let mid = 0.5 * (hi + lo);
        if pass(mid.exp())? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(HyperbolicityThreshold { lambda_c: (0.5 * (hi + lo)).exp(), pass_at: hi.exp(), fail_at: lo.exp() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaos::horseshoe::horseshoe_rectangles;

    #[test]
    fn fold_point_laws() {
        let c = ModelConfig::default();
        let f = fold_point(0.01, &c).unwrap();
        assert!((f.a - 19.5751).abs() < 1e-4);
        assert!((f.b - 1e-8).abs() < 1e-22);
        let g = fold_point(0.01 * (-TAU / 3.0).exp(), &c).unwrap();
        assert!((g.a - f.a - TAU).abs() < 1e-12);
        assert!(fold_point(0.0, &c).is_err());
    }

    #[test]
    fn fold_is_highest_point_of_image() {
        let c = ModelConfig::default();
        let arc = UnstableArc::new(&c);
        let (a, b) = arc.domain();
        let best = linspace(a + 1e-6, b - 1e-6, 100_001)
            .into_iter()
            .map(|s| arc.h(s).powi(4))
            .fold(0.0, f64::max);
        let f = fold_point(0.01, &c).unwrap();
        assert!(f.b >= best && f.b - best < 1e-16);
    }

    #[test]
    fn profile_signs_in_the_two_regimes() {
        let c = ModelConfig::default();
        let x_m = c.unfolding.x_m();
        let l1 = aligned_lambda(x_m, 3, &c);
        let l2 = aligned_lambda(x_m + PI, 3, &c);
        let window = |lam: f64| {
            let cc = c.with_lambda(lam);
            fold_window(&UnstableArc::new(&cc)).unwrap()
        };
        let p1 = curve_return_profile(l1, window(l1), 101, &c).unwrap();
        assert!(p1.iter().any(|p| p.value < 0.0));
        let p2 = curve_return_profile(l2, window(l2), 101, &c).unwrap();
        assert!(p2.iter().all(|p| p.value > 0.0));
        assert!(curve_return_profile(l1, window(l1), 2, &c).is_err());
    }

    #[test]
    fn tangency_ladder() {
        let c = ModelConfig::default();
        let recs = find_tangencies(1e-1, 1e-5, &c).unwrap();
        assert!(recs.len() >= 3, "{recs:?}");
        assert!((recs[0].lambda - 0.0343657).abs() < 1e-6);
        let q = (-TAU / 3.0).exp();
        for w in recs.windows(2) {
            assert!(((w[1].lambda / w[0].lambda) - q).abs() / q < 0.05);
        }
        for r in &recs {
            assert!(r.bracket.0 < r.lambda && r.lambda < r.bracket.1);
            assert!(r.value_residual.abs() <= 1e-12 && r.slope_residual.abs() <= 1e-12, "{r}");
            assert!(r.touch.b.abs() <= 1e-12);
        }
        assert!(find_tangencies(1e-3, 1e-3, &c).unwrap().is_empty());
    }

    #[test]
    fn multipliers_match_determinant_chain() {
        let c = ModelConfig::default();
        let orbit = [SectionPoint::in_v(1.0, 0.003), SectionPoint::in_v(4.0, -0.02)];
        let (mu, det) = multipliers(&orbit, &c).unwrap();
        let chain: f64 = orbit.iter().map(|p| 4.0 * p.b.abs().powi(3)).product();
        assert!((det.abs() - chain).abs() <= 1e-12 * chain);
        assert!((mu[0] * mu[1] - chain).abs() <= 1e-8 * chain);
    }

    #[test]
    fn no_periods_no_orbits() {
        let c = ModelConfig::default();
        let r = find_tangencies(1e-1, 1e-2, &c).unwrap()[0];
        assert!(find_periodic_sinks(&r, 0, &c).is_empty());
    }

    #[test]
    fn cone_threshold_for_first_rectangle() {
        let c = ModelConfig::default();
        let (rects, _) = horseshoe_rectangles(&[0], 0.05, &c).unwrap();
        let t = horseshoe_tangency_scan(&rects[0], 0.02, 0.002, 1.0, 12, &c).unwrap().unwrap();
        assert!(t.fail_at < t.lambda_c && t.lambda_c < t.pass_at);
        assert!((t.lambda_c - rects[0].y_hi / 0.05f64.sin()).abs() < 0.05 * t.lambda_c, "{t:?}");
        assert!(horseshoe_tangency_scan(&rects[0], 0.02, 0.015, 1.0, 12, &c).unwrap().is_none());
    }
}

//! Monte-Carlo escape from a union of horseshoe rectangles.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chaos::horseshoe::Rectangle;
use crate::dynamics::{zeta, ReturnStatus};
use crate::error::{Error, Result};
use crate::model::{ModelConfig, SectionPoint};

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959963984540054;

/// Pooled geometric decay rate of the survivor counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub rate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    /// Number of one-step transitions pooled into the fit.
    pub trials: usize,
}

impl DecayFit {
    pub fn excludes_one(&self) -> bool {
        self.ci_hi < 1.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalCurve {
    /// `counts[j]` points are still alive after `j` returns; `counts[0]` is
    /// the sample size.
    pub counts: Vec<usize>,
    pub decay: Option<DecayFit>,
}

impl SurvivalCurve {
    pub fn samples(&self) -> usize {
        self.counts[0]
    }

    pub fn horizon(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn fractions(&self) -> Vec<f64> {
        let n = self.samples().max(1) as f64;
        self.counts.iter().map(|&c| if self.samples() == 0 { 1.0 } else { c as f64 / n }).collect()
    }

    pub fn is_non_increasing(&self) -> bool {
        self.counts.windows(2).all(|w| w[1] <= w[0])
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.counts.windows(2).all(|w| w[1] < w[0])
    }

    /// CSV with columns `returns,survivors,fraction`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("returns,survivors,fraction\n");
        for (j, (c, f)) in self.counts.iter().zip(self.fractions()).enumerate() {
            let _ = writeln!(s, "{j},{c},{f:.16e}");
        }
        s
    }
}

/// Maximum-likelihood rate `Σ n_j / Σ n_{j-1}` with a Wilson score interval.
pub fn fit_decay(counts: &[usize]) -> Option<DecayFit> {
    let (mut succ, mut trials) = (0usize, 0usize);
    for w in counts.windows(2) {
        if w[0] == 0 {
            break;
        }
        succ += w[1];
        trials += w[0];
    }
    if trials == 0 {
        return None;
    }
    let n = trials as f64;
    let p = succ as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    Some(DecayFit { rate: p, ci_lo: (centre - half).max(0.0), ci_hi: (centre + half).min(1.0), trials })
}

/// Number of returns `p` survives, up to `horizon`.
fn lifetime(p: &SectionPoint, rects: &[Rectangle], horizon: usize, config: &ModelConfig) -> usize {
    let mut cur = *p;
    for j in 0..horizon {
        let out = zeta(&cur, config);
        match (out.status, out.next) {
            (ReturnStatus::Returned, Some(n)) if rects.iter().any(|r| r.contains(&n)) => cur = n,
            _ => return j,
        }
    }
    horizon
}

/// Survival counts of the given starting points.
pub fn survival_from_points(points: &[SectionPoint], rects: &[Rectangle], horizon: usize, config: &ModelConfig) -> SurvivalCurve {
    let lifetimes: Vec<usize> = points.par_iter().map(|p| lifetime(p, rects, horizon, config)).collect();
    let counts: Vec<usize> = (0..=horizon).map(|j| lifetimes.iter().filter(|&&l| l >= j).count()).collect();
    let decay = fit_decay(&counts);
    SurvivalCurve { counts, decay }
}

/// Draws `samples` points uniformly in the union of `rects` (the rectangles
/// are assumed disjoint) from a generator seeded with `config.seed`.
pub fn sample_union(rects: &[Rectangle], samples: usize, seed: u64) -> Vec<SectionPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total: f64 = rects.iter().map(Rectangle::area).sum();
    (0..samples)
        .map(|_| {
            let mut pick = rng.gen::<f64>() * total;
            let mut r = &rects[rects.len() - 1];
            for cand in rects {
                if pick < cand.area() {
                    r = cand;
                    break;
                }
                pick -= cand.area();
            }
            let x = r.x_lo + rng.gen::<f64>() * (r.x_hi - r.x_lo);
            let y = r.y_lo + rng.gen::<f64>() * r.height();
            SectionPoint::in_v(x, y)
        })
        .collect()
}

/// Fraction of uniformly drawn points of the rectangle union still inside
/// the union after each of `horizon` returns.
///
/// A point dies when it escapes, lands on the stable manifold, or returns
/// outside every rectangle.
pub fn escape_experiment(rects: &[Rectangle], samples: usize, horizon: usize, config: &ModelConfig) -> Result<SurvivalCurve> {
    if rects.is_empty() {
        return Err(Error::InvalidInput("escape experiment needs at least one rectangle".into()));
    }
    if samples == 0 {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let points = sample_union(rects, samples, config.seed);
    Ok(survival_from_points(&points, rects, horizon, config))
}

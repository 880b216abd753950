//! Finding initial conditions that follow a prescribed symbolic path.

use std::fmt::Write as _;

use crate::dynamics::{iterate, Orbit, Symbol};
use crate::error::{Error, Result};
use crate::model::{ModelConfig, SectionPoint};
use crate::numeric::linspace;

/// Height range searched on the starting line.
const Y_RANGE: (f64, f64) = (1e-6, 0.9);
/// Samples per refinement level.
const SAMPLES: usize = 2048;
/// Candidate sub-intervals explored per level before backtracking.
const BRANCHING: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub word: Vec<Symbol>,
    pub point: SectionPoint,
    pub orbit: Orbit,
}

impl Realization {
    pub fn realized(&self) -> Vec<Symbol> {
        self.orbit.symbols()
    }

    pub fn matched(&self) -> usize {
        self.word.iter().zip(self.realized()).take_while(|(a, b)| **a == *b).count()
    }

    /// One line per step and a closing `MATCH k/n` or `MISMATCH k/n` line.
    pub fn transcript(&self) -> String {
        let realized = self.realized();
        let mut s = String::new();
        let _ = writeln!(s, "start x={:.16e} y={:.16e}", self.point.a, self.point.b);
        for (i, want) in self.word.iter().enumerate() {
            let got = realized.get(i).map(|g| g.to_string()).unwrap_or_else(|| "--".into());
            let ok = realized.get(i) == Some(want);
            let _ = writeln!(s, "step {} requested {} realized {} {}", i + 1, want, got, if ok { "ok" } else { "differs" });
        }
        let n = self.word.len();
        let tag = if self.matched() == n { "MATCH" } else { "MISMATCH" };
        let _ = writeln!(s, "{tag} {}/{n}", self.matched());
        s
    }
}

/// Number of leading symbols of the orbit of `(x0, y)` that agree with `word`.
fn prefix_len(x0: f64, y: f64, word: &[Symbol], config: &ModelConfig) -> usize {
    let Ok(orbit) = iterate(&SectionPoint::in_v(x0, y), config, word.len()) else { return 0 };
    orbit.symbols().iter().zip(word).take_while(|(a, b)| a == b).count()
}

/// Depth-first search over nested log-height intervals.
///
/// At level `k` the interval `[t_a, t_b]` is sampled and split into runs of
/// consecutive samples whose orbits realize the first `k + 1` symbols; the
/// widest runs (grown by one sample on each side) are searched at the next
/// level.
fn search(
    x0: f64,
    sign: f64,
    t_a: f64,
    t_b: f64,
    level: usize,
    word: &[Symbol],
    config: &ModelConfig,
    best: &mut usize,
) -> Option<f64> {
    let ts = linspace(t_a, t_b, SAMPLES);
    let need = level + 1;
    let lens: Vec<usize> = ts.iter().map(|&t| prefix_len(x0, sign * t.exp(), word, config)).collect();
    *best = (*best).max(lens.iter().copied().max().unwrap_or(0));
    if let Some(i) = lens.iter().position(|&l| l == word.len()) {
        return Some(ts[i]);
    }
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < ts.len() {
        if lens[i] < need {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < ts.len() && lens[i + 1] >= need {
            i += 1;
        }
        runs.push((start, i));
        i += 1;
    }
    runs.sort_by_key(|&(a, b)| std::cmp::Reverse(b - a));
    for &(a, b) in runs.iter().take(BRANCHING) {
        let lo = ts[a.saturating_sub(1)];
        let hi = ts[(b + 1).min(ts.len() - 1)];
        if hi - lo <= f64::EPSILON * lo.abs().max(1.0) {
            continue;
        }
        if let Some(t) = search(x0, sign, lo, hi, level + 1, word, config, best) {
            return Some(t);
        }
    }
    None
}

/// Returns a point on the vertical line through `Pv1` whose orbit realizes
/// `word` exactly.
pub fn realize_itinerary(word: &[Symbol], config: &ModelConfig) -> Result<Realization> {
    if word.is_empty() {
        return Err(Error::InvalidInput("itinerary word must not be empty".into()));
    }
    if config.saddles.k() <= 1.0 {
        return Err(Error::InvalidInput(format!("itinerary realization needs K > 1, got {}", config.saddles.k())));
    }
    let x0 = config.unfolding.pv1();
    let sign = word[0].sheet.sign();
    let lo = Y_RANGE.0.max(config.y_floor);
    let hi = Y_RANGE.1.min(config.y_max);
    let mut best = 0;
    let t = search(x0, sign, lo.ln(), hi.ln(), 0, word, config, &mut best)
        .ok_or(Error::RealizationFailed { longest_prefix: best, requested: word.len() })?;
    let point = SectionPoint::in_v(x0, sign * t.exp());
    let orbit = iterate(&point, config, word.len())?;
    Ok(Realization { word: word.to_vec(), point, orbit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::parse_word;

    #[test]
    fn constant_word() {
        let c = ModelConfig::default();
        let w = parse_word("1+,1+,1+,1+,1+,1+,1+,1+").unwrap();
        let r = realize_itinerary(&w, &c).unwrap();
        assert_eq!(r.realized(), w);
        assert!(r.transcript().ends_with("MATCH 8/8\n"));
    }

    #[test]
    fn alternating_word() {
        let c = ModelConfig::default();
        let w = parse_word("1+,2+,1+,2+,1+,2+,1+,2+").unwrap();
        let r = realize_itinerary(&w, &c).unwrap();
        assert_eq!(r.realized(), w);
    }

    #[test]
    fn lower_sheet_start() {
        let c = ModelConfig::default();
        let w = parse_word("2-,1-,1+").unwrap();
        let r = realize_itinerary(&w, &c).unwrap();
        assert_eq!(r.realized(), w);
        assert!(r.point.b < 0.0);
    }

    #[test]
    fn empty_word_rejected() {
        assert!(matches!(realize_itinerary(&[], &ModelConfig::default()), Err(Error::InvalidInput(_))));
    }
}

//! First-hit map `η: In(v) -> Out(w)`, first-return map `ζ = Ψ_wv ∘ η`,
//! their Jacobians and orbit iteration.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::global::{d_psi_wv, psi_wv};
use crate::local::{check_floor, expect_section, Mat2};
use crate::model::{ModelConfig, SaddleParameters, SectionId, SectionPoint, Sheet, UnfoldingModel};

/// Which connection neighbourhood a return passed through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connection {
    One,
    Two,
}

/// Connection and sheet of one return; printed as `1+`, `2-`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub connection: Connection,
    pub sheet: Sheet,
}

impl Symbol {
    pub const fn new(connection: Connection, sheet: Sheet) -> Self {
        Self { connection, sheet }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.connection {
            Connection::One => '1',
            Connection::Two => '2',
        };
        write!(f, "{c}{}", self.sheet.as_char())
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let connection = match chars.next() {
            Some('1') => Connection::One,
            Some('2') => Connection::Two,
            _ => return Err(Error::InvalidInput(format!("bad symbol '{s}'"))),
        };
        let sheet = match chars.next() {
            Some('+') => Sheet::Upper,
            Some('-') => Sheet::Lower,
            _ => return Err(Error::InvalidInput(format!("bad symbol '{s}'"))),
        };
        if chars.next().is_some() {
            return Err(Error::InvalidInput(format!("bad symbol '{s}'")));
        }
        Ok(Symbol { connection, sheet })
    }
}

/// Parses a comma-separated word such as `1+,2+,1-`.
pub fn parse_word(s: &str) -> Result<Vec<Symbol>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

pub fn format_word(word: &[Symbol]) -> String {
    word.iter().map(Symbol::to_string).collect::<Vec<_>>().join(",")
}

/// Connection label of an `Out(w)` angle: 1 when the angle is circularly
/// at least as close to `Pw1` as to `Pw2`.
pub fn connection_of(model: &UnfoldingModel, angle: f64) -> Connection {
    let u = (angle - model.pw1).rem_euclid(TAU);
    if u <= FRAC_PI_2 || u >= 3.0 * FRAC_PI_2 {
        Connection::One
    } else {
        Connection::Two
    }
}

/// First-hit map for a radial gain of the `Out(v) -> In(w)` transition.
pub fn eta_with_gain(p: &SectionPoint, saddles: &SaddleParameters, gain: f64, y_floor: f64) -> Result<SectionPoint> {
    expect_section(p, SectionId::InV)?;
    check_floor(p.b, y_floor)?;
    let y = p.b.abs();
    let x = p.a - saddles.k() * y.ln() - gain.ln() / saddles.e_w;
    let h = gain.powf(saddles.delta_w()) * y.powf(saddles.delta());
    Ok(SectionPoint { section: SectionId::OutW, a: x, b: p.sheet.sign() * h, sheet: p.sheet })
}

/// `η(x, y) = (x - K ln|y|, sign(y) |y|^δ)`.
pub fn eta(p: &SectionPoint, saddles: &SaddleParameters, y_floor: f64) -> Result<SectionPoint> {
    eta_with_gain(p, saddles, 1.0, y_floor)
}

pub fn d_eta_with_gain(p: &SectionPoint, saddles: &SaddleParameters, gain: f64, y_floor: f64) -> Result<Mat2> {
    expect_section(p, SectionId::InV)?;
    check_floor(p.b, y_floor)?;
    let y = p.b;
    let d = saddles.delta();
    Ok(Mat2::new(1.0, -saddles.k() / y, 0.0, gain.powf(saddles.delta_w()) * d * y.abs().powf(d - 1.0)))
}

pub fn d_eta(p: &SectionPoint, saddles: &SaddleParameters, y_floor: f64) -> Result<Mat2> {
    d_eta_with_gain(p, saddles, 1.0, y_floor)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReturnStatus {
    Returned,
    Escaped,
    OnStableManifold,
}

impl ReturnStatus {
    pub fn label(self) -> &'static str {
        match self {
            ReturnStatus::Returned => "returned",
            ReturnStatus::Escaped => "escaped",
            ReturnStatus::OnStableManifold => "on_stable_manifold",
        }
    }
}

/// One application of `ζ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReturnOutcome {
    pub status: ReturnStatus,
    /// Point on `In(v)` when returned.
    pub next: Option<SectionPoint>,
    /// Intermediate point `η(p)` on `Out(w)`, when defined.
    pub hit: Option<SectionPoint>,
    pub symbol: Option<Symbol>,
    /// Full turns made between `In(v)` and `Out(w)`.
    pub winding: i64,
}

/// First-return map.
pub fn zeta(p: &SectionPoint, config: &ModelConfig) -> ReturnOutcome {
    let hit = match eta_with_gain(p, &config.saddles, config.psi_vw_gain, config.y_floor) {
        Ok(h) => h,
        Err(_) => {
            return ReturnOutcome {
                status: ReturnStatus::OnStableManifold,
                next: None,
                hit: None,
                symbol: None,
                winding: 0,
            }
        }
    };
    let winding = ((hit.a - p.a) / TAU).floor().max(0.0) as i64;
    let next = psi_wv(&hit, &config.unfolding).expect("hit lies on Out(w)");
    if next.b.abs() > config.y_max {
        return ReturnOutcome { status: ReturnStatus::Escaped, next: None, hit: Some(hit), symbol: None, winding };
    }
    let symbol = Symbol::new(connection_of(&config.unfolding, hit.a), p.sheet);
    ReturnOutcome { status: ReturnStatus::Returned, next: Some(next), hit: Some(hit), symbol: Some(symbol), winding }
}

/// Factors `(Dη, DΨ_wv)` of `Dζ` at `p`.
pub fn d_zeta_factors(p: &SectionPoint, config: &ModelConfig) -> Result<(Mat2, Mat2)> {
    let de = d_eta_with_gain(p, &config.saddles, config.psi_vw_gain, config.y_floor)?;
    let hit = eta_with_gain(p, &config.saddles, config.psi_vw_gain, config.y_floor)?;
    Ok((de, d_psi_wv(&hit, &config.unfolding)))
}

pub fn d_zeta(p: &SectionPoint, config: &ModelConfig) -> Result<Mat2> {
    let (de, dp) = d_zeta_factors(p, config)?;
    Ok(dp * de)
}

/// Preimage under `ζ` of a point of `In(v)`, assuming the preimage lies on
/// `sheet`. `None` when no such preimage exists.
pub fn zeta_inverse(q: &SectionPoint, sheet: Sheet, config: &ModelConfig) -> Option<SectionPoint> {
    let s = &config.saddles;
    let u = &config.unfolding;
    let x_hit = q.a - u.delta_offset;
    let y_hit = q.b + sheet.sign() * u.g(x_hit);
    if sheet.sign() * y_hit <= 0.0 {
        return None;
    }
    let scale = config.psi_vw_gain.powf(s.delta_w());
    let y = (y_hit.abs() / scale).powf(1.0 / s.delta());
    let x = x_hit + s.k() * y.ln() + config.psi_vw_gain.ln() / s.e_w;
    Some(SectionPoint { section: SectionId::InV, a: x, b: sheet.sign() * y, sheet })
}

/// Orbit record, halted at the first step that did not return.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub start: SectionPoint,
    pub steps: Vec<ReturnOutcome>,
}

impl Orbit {
    pub fn symbols(&self) -> Vec<Symbol> {
        self.steps.iter().filter_map(|s| s.symbol).collect()
    }

    pub fn points(&self) -> Vec<SectionPoint> {
        std::iter::once(self.start).chain(self.steps.iter().filter_map(|s| s.next)).collect()
    }

    pub fn completed(&self) -> bool {
        self.steps.iter().all(|s| s.status == ReturnStatus::Returned)
    }

    /// CSV with columns `step,x_unwrapped,y,sheet,symbol,winding,status`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("step,x_unwrapped,y,sheet,symbol,winding,status\n");
        let _ = writeln!(s, "0,{:.16e},{:.16e},{},,,start", self.start.a, self.start.b, self.start.sheet.as_char());
        for (i, st) in self.steps.iter().enumerate() {
            match st.next {
                Some(p) => {
                    let sym = st.symbol.map(|x| x.to_string()).unwrap_or_default();
                    let _ = writeln!(
                        s,
                        "{},{:.16e},{:.16e},{},{},{},{}",
                        i + 1,
                        p.a,
                        p.b,
                        p.sheet.as_char(),
                        sym,
                        st.winding,
                        st.status.label()
                    );
                }
                None => {
                    let _ = writeln!(s, "{},,,,,{},{}", i + 1, st.winding, st.status.label());
                }
            }
        }
        s
    }
}

/// Applies `ζ` up to `k` times.
pub fn iterate(p: &SectionPoint, config: &ModelConfig, k: usize) -> Result<Orbit> {
    expect_section(p, SectionId::InV)?;
    if k == 0 {
        return Err(Error::InvalidInput("iterate needs k >= 1".into()));
    }
    let mut steps = Vec::with_capacity(k);
    let mut cur = *p;
    for _ in 0..k {
        let out = zeta(&cur, config);
        steps.push(out);
        match out.next {
            Some(n) if out.status == ReturnStatus::Returned => cur = n,
            _ => break,
        }
    }
    Ok(Orbit { start: *p, steps })
}

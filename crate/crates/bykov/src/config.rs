//! Flat `key = value` configuration files.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::ModelConfig;

const KEYS: &[&str] = &[
    "C_v",
    "E_v",
    "C_w",
    "E_w",
    "lambda",
    "Pw1",
    "delta_offset",
    "y_floor",
    "y_max",
    "seed",
    "tol_root",
    "tol_newton",
    "max_iter",
    "psi_vw_gain",
];

fn parse_f64(line: usize, key: &str, value: &str) -> Result<f64> {
    value.parse::<f64>().map_err(|_| Error::Config {
        line,
        message: format!("{key}: cannot parse '{value}' as a number"),
    })
}

fn parse_u64(line: usize, key: &str, value: &str) -> Result<u64> {
    value.parse::<u64>().map_err(|_| Error::Config {
        line,
        message: format!("{key}: cannot parse '{value}' as a non-negative integer"),
    })
}

/// Parses a configuration. Keys not present keep their defaults; unknown
/// or repeated keys are errors.
pub fn parse_config(text: &str) -> Result<ModelConfig> {
    let mut c = ModelConfig::default();
    let mut seen: Vec<&str> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::Config {
            line,
            message: format!("expected 'key = value', got '{content}'"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        let known = KEYS.iter().find(|k| **k == key).ok_or_else(|| Error::Config {
            line,
            message: format!("unknown key '{key}'"),
        })?;
        if seen.contains(known) {
            return Err(Error::Config { line, message: format!("duplicate key '{key}'") });
        }
        seen.push(known);
        match key {
            "C_v" => c.saddles.c_v = parse_f64(line, key, value)?,
            "E_v" => c.saddles.e_v = parse_f64(line, key, value)?,
            "C_w" => c.saddles.c_w = parse_f64(line, key, value)?,
            "E_w" => c.saddles.e_w = parse_f64(line, key, value)?,
            "lambda" => c.unfolding.lambda = parse_f64(line, key, value)?,
            "Pw1" => c.unfolding.pw1 = parse_f64(line, key, value)?,
            "delta_offset" => c.unfolding.delta_offset = parse_f64(line, key, value)?,
            "y_floor" => c.y_floor = parse_f64(line, key, value)?,
            "y_max" => c.y_max = parse_f64(line, key, value)?,
            "seed" => c.seed = parse_u64(line, key, value)?,
            "tol_root" => c.numeric.tol_root = parse_f64(line, key, value)?,
            "tol_newton" => c.numeric.tol_newton = parse_f64(line, key, value)?,
            "max_iter" => c.numeric.max_iter = parse_u64(line, key, value)? as usize,
            "psi_vw_gain" => c.psi_vw_gain = parse_f64(line, key, value)?,
            _ => unreachable!(),
        }
    }
    Ok(c)
}

/// Serializes every key. Floats use Rust's shortest round-trip form, so
/// `parse_config(&write_config(c)) == c`.
pub fn write_config(c: &ModelConfig) -> String {
    let mut s = String::new();
    let mut put = |k: &str, v: String| {
        let _ = writeln!(s, "{k} = {v}");
    };
    put("C_v", format!("{:?}", c.saddles.c_v));
    put("E_v", format!("{:?}", c.saddles.e_v));
    put("C_w", format!("{:?}", c.saddles.c_w));
    put("E_w", format!("{:?}", c.saddles.e_w));
    put("lambda", format!("{:?}", c.unfolding.lambda));
    put("Pw1", format!("{:?}", c.unfolding.pw1));
    put("delta_offset", format!("{:?}", c.unfolding.delta_offset));
    put("y_floor", format!("{:?}", c.y_floor));
    put("y_max", format!("{:?}", c.y_max));
    put("seed", c.seed.to_string());
    put("tol_root", format!("{:?}", c.numeric.tol_root));
    put("tol_newton", format!("{:?}", c.numeric.tol_newton));
    put("max_iter", c.numeric.max_iter.to_string());
    put("psi_vw_gain", format!("{:?}", c.psi_vw_gain));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let mut c = ModelConfig::default();
        c.unfolding.lambda = 0.1 + 0.2;
        c.seed = 42;
        assert_eq!(parse_config(&write_config(&c)).unwrap(), c);
    }

    #[test]
    fn comments_and_blank_lines() {
        let c = parse_config("# header\n\nlambda = 0.005  # smaller\nseed=7\n").unwrap();
        assert_eq!(c.unfolding.lambda, 0.005);
        assert_eq!(c.seed, 7);
    }

    #[test]
    fn decimal_parse_is_correctly_rounded() {
        let c = parse_config(&format!("delta_offset = {:?}", std::f64::consts::FRAC_PI_3)).unwrap();
        assert_eq!(c.unfolding.delta_offset, std::f64::consts::FRAC_PI_3);
    }

    #[test]
    fn unknown_key_rejected() {
        let e = parse_config("lambda = 0.01\nPw2 = 3.14\n").unwrap_err();
        assert!(matches!(e, Error::Config { line: 2, .. }));
    }

    #[test]
    fn duplicate_and_malformed_rejected() {
        assert!(parse_config("seed = 1\nseed = 2").is_err());
        assert!(parse_config("lambda 0.01").is_err());
        assert!(parse_config("lambda = abc").is_err());
        assert!(parse_config("seed = -1").is_err());
    }
}

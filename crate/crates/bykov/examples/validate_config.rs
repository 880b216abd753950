//! Parse a configuration, check the standing hypotheses and print the
//! derived saddle constants.
//!
//! `cargo run --example validate_config -- data/reference.cfg`

use bykov::config::{parse_config, write_config};
use bykov::model::validate;
use bykov::ModelConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = match std::env::args().nth(1) {
        Some(path) => parse_config(&std::fs::read_to_string(path)?)?,
        None => ModelConfig::default(),
    };
    let s = &config.saddles;
    println!("delta_v={} delta_w={} delta={} K={}", s.delta_v(), s.delta_w(), s.delta(), s.k());
    println!("{}", validate(&config));
    print!("{}", write_config(&config));
    Ok(())
}

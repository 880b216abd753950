//! Iterate the first-return map and print the orbit with its symbols.

use bykov::dynamics::{format_word, iterate};
use bykov::{ModelConfig, SectionPoint};

fn main() -> bykov::Result<()> {
    let c = ModelConfig::default();
    let orbit = iterate(&SectionPoint::in_v(1.0, 0.01), &c, 12)?;
    print!("{}", orbit.to_csv());
    println!("itinerary {}", format_word(&orbit.symbols()));
    Ok(())
}

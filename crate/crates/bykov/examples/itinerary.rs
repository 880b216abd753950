//! Find an initial condition that follows a prescribed symbol word.
//!
//! `cargo run --example itinerary -- 1+,2-,1-,2+`

use bykov::chaos::itinerary::realize_itinerary;
use bykov::dynamics::parse_word;
use bykov::ModelConfig;

fn main() -> bykov::Result<()> {
    let word = std::env::args().nth(1).unwrap_or_else(|| "1+,1+,2+,1+,2-,1-".into());
    let r = realize_itinerary(&parse_word(&word)?, &ModelConfig::default())?;
    print!("{}", r.transcript());
    Ok(())
}

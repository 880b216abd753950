//! Attracting periodic orbits born near the largest tangency.

use bykov::tangency::{find_periodic_sinks, find_tangencies};
use bykov::ModelConfig;

fn main() -> bykov::Result<()> {
    let c = ModelConfig::default();
    let rec = find_tangencies(1e-1, 1e-2, &c)?[0];
    println!("tangency at lambda={:.10e}", rec.lambda);
    for o in find_periodic_sinks(&rec, 8, &c) {
        println!("{o}");
        for p in &o.points {
            println!("  x={:.12} y={:.6e} sheet={}", p.a, p.b, p.sheet.as_char());
        }
    }
    Ok(())
}

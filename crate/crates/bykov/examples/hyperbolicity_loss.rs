//! Follow one horseshoe rectangle down in λ until the cone field stops
//! certifying it, and compare with the tangency windows.

use bykov::chaos::horseshoe::horseshoe_rectangles;
use bykov::tangency::{find_tangencies, horseshoe_tangency_scan};
use bykov::ModelConfig;

fn main() -> bykov::Result<()> {
    let c = ModelConfig::default();
    let (rects, _) = horseshoe_rectangles(&[0], 0.05, &c)?;
    match horseshoe_tangency_scan(&rects[0], 2e-2, 2e-3, 1.0, 50, &c)? {
        Some(t) => {
            println!("{} loses hyperbolicity at lambda_c={:.6e}", rects[0].label, t.lambda_c);
            for r in find_tangencies(1e-1, 1e-5, &c)? {
                let inside = r.bracket.0 < t.lambda_c && t.lambda_c < r.bracket.1;
                println!("window [{:.4e}, {:.4e}] lambda_*={:.4e} contains lambda_c: {inside}", r.bracket.0, r.bracket.1, r.lambda);
            }
        }
        None => println!("no loss of hyperbolicity in range"),
    }
    Ok(())
}

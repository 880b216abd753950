//! Monte-Carlo survival of points in the union of two horseshoe rectangles.

use bykov::chaos::escape::escape_experiment;
use bykov::chaos::horseshoe::horseshoe_rectangles;
use bykov::ModelConfig;

fn main() -> bykov::Result<()> {
    let c = ModelConfig::default();
    let (rects, _) = horseshoe_rectangles(&[0, 1], 0.05, &c)?;
    let s = escape_experiment(&rects, 100_000, 6, &c)?;
    print!("{}", s.to_csv());
    if let Some(d) = s.decay {
        println!("decay rate {:.4e}, 95% interval [{:.4e}, {:.4e}]", d.rate, d.ci_lo, d.ci_hi);
    }
    Ok(())
}

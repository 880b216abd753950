//! The nested height intervals on a vertical line whose first-hit images
//! wrap once across the lobe of g, and their crossings with its graph.

use bykov::chaos::crossing::crossing_count;
use bykov::chaos::intervals::{interval_sequence, pairwise_disjoint};
use bykov::curve::FnCurve;
use bykov::dynamics::eta;
use bykov::{ModelConfig, SectionId, SectionPoint};

fn main() -> bykov::Result<()> {
    let c = ModelConfig::default();
    let seq = interval_sequence(0.0, 4, &c)?;
    println!("turn offset m={}", seq.m);
    for iv in &seq.intervals {
        let curve = FnCurve::new(SectionId::OutW, (iv.hi.ln(), iv.lo.ln()), |t: f64| eta(&SectionPoint::in_v(0.0, t.exp()), &c.saddles, c.y_floor));
        let report = crossing_count(&curve, &c.unfolding, 1024, c.numeric.tol_root)?;
        println!("I{} = [{:.6e}, {:.6e}] crossings with g: {}", iv.index, iv.lo, iv.hi, report.count());
    }
    println!("pairwise disjoint: {}", pairwise_disjoint(&seq.intervals));
    Ok(())
}

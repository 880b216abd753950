//! The two saddle passages: a vertical segment on In(v) becomes a spiral
//! on Out(v), and its first-hit image on Out(w) is a helix.

use bykov::curve::{CurveSample, FnCurve};
use bykov::dynamics::eta;
use bykov::local::phi_v;
use bykov::{ModelConfig, SectionId, SectionPoint};

fn main() -> bykov::Result<()> {
    let c = ModelConfig::default();
    let domain = ((1e-6f64).ln(), (0.5f64).ln());

    let spiral = FnCurve::new(SectionId::OutV, domain, |t: f64| phi_v(&SectionPoint::in_v(0.0, t.exp()), &c.saddles, c.y_floor));
    let spiral = CurveSample::from_curve(&spiral, 400)?.classified()?;
    println!("phi_v image of the vertical segment: {:?}", spiral.kind);

    let helix = FnCurve::new(SectionId::OutW, domain, |t: f64| eta(&SectionPoint::in_v(0.0, t.exp()), &c.saddles, c.y_floor));
    let helix = CurveSample::from_curve(&helix, 400)?.classified()?;
    println!("eta image of the vertical segment: {:?}", helix.kind);

    let flat = FnCurve::new(SectionId::OutW, (0.0, 1.0), |x| eta(&SectionPoint::in_v(x, 0.1), &c.saddles, c.y_floor));
    let flat = CurveSample::from_curve(&flat, 50)?.classified()?;
    println!("eta image of a horizontal segment: {:?}", flat.kind);
    Ok(())
}

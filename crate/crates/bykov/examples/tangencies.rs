//! Locate the heteroclinic tangencies for λ in [1e-5, 1e-1] and show the
//! returned-height profile near the fold at the first one.

use bykov::manifold::{Branch, UnstableArc};
use bykov::tangency::{curve_return_profile, find_tangencies, fold_point};
use bykov::ModelConfig;

fn main() -> bykov::Result<()> {
    let c = ModelConfig::default();
    let recs = find_tangencies(1e-1, 1e-5, &c)?;
    for r in &recs {
        println!("{r}");
    }
    for w in recs.windows(2) {
        println!("ratio {:.6}", w[1].lambda / w[0].lambda);
    }
    let first = recs[0];
    let f = fold_point(first.lambda, &c)?;
    println!("fold point at lambda_*: angle={:.6} height={:.6e}", f.a, f.b);
    let at = c.with_lambda(first.lambda);
    let arc = UnstableArc::new(&at);
    let window = (arc.at_offset(Branch::Left, 0.5).unwrap(), arc.at_offset(Branch::Right, 0.5).unwrap());
    for p in curve_return_profile(first.lambda, window, 11, &c)?.iter().step_by(4) {
        println!("s={:.6} theta={:.6} value={:+.3e}", p.s, p.theta, p.value);
    }
    Ok(())
}

//! Points of the unstable-manifold arc that return onto the stable
//! manifold after a given number of turns.

use bykov::chaos::multipulse::find_multipulse;
use bykov::ModelConfig;

fn main() -> bykov::Result<()> {
    let c = ModelConfig::default();
    for p in find_multipulse(&c, 5)? {
        println!(
            "{:<5} winding={} s={:.12} height={:.6e} kind={:?} residual={:.1e}",
            p.branch.label(),
            p.winding,
            p.s,
            p.height,
            p.kind,
            p.residual
        );
    }
    Ok(())
}

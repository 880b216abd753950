//! Build two horseshoe rectangles, certify their transitions and check the
//! vertical cone field.

use bykov::chaos::horseshoe::{build_horseshoe, cone_hyperbolicity};
use bykov::ModelConfig;

fn main() -> bykov::Result<()> {
    let c = ModelConfig::default();
    let h = build_horseshoe(&[0, 1], 0.05, &c)?;
    for r in &h.rects {
        println!("{r}");
    }
    for cert in &h.certificates {
        println!("{cert}");
    }
    print!("transition matrix\n{}", h.matrix);
    println!("{}", cone_hyperbolicity(&h.rects, 1.0, 50, &c)?);
    Ok(())
}

//! The dual weight distribution of C(2,4), q=2, by the MacWilliams transform.
use plucker::codes::{build_generator, weight_distribution, CodeSpec, SweepOptions};
use plucker::gf::Field;
use plucker::qcombin::GrassmannParams;

fn main() -> plucker::Result<()> {
    let params = GrassmannParams::new(2, 4, Field::of_order(2)?)?;
    let dist = weight_distribution(&build_generator(&CodeSpec::grassmann(&params)?)?, &SweepOptions::default())?;
    for (j, b) in dist.macwilliams_dual()?.iter().enumerate() {
        if *b != 0u32.into() {
            println!("B_{j} = {b}");
        }
    }
    Ok(())
}

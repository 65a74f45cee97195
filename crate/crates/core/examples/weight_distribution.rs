//! Full weight distributions of C(2,4) over F_2 and F_3 and of C(3,6) over F_2.
use std::time::Instant;

use plucker::codes::{build_generator, weight_distribution, CodeSpec, SweepOptions};
use plucker::gf::Field;
use plucker::qcombin::GrassmannParams;

fn main() -> plucker::Result<()> {
    for (l, m, q) in [(2, 4, 2), (2, 4, 3), (3, 6, 2)] {
        let params = GrassmannParams::new(l, m, Field::of_order(q)?)?;
        let start = Instant::now();
        let gen = build_generator(&CodeSpec::grassmann(&params)?)?;
        let dist = weight_distribution(&gen, &SweepOptions::default())?;
        println!("C({l},{m}) q={q}: n={} k={} in {:.2?}", gen.n(), gen.k(), start.elapsed());
        print!("{}", dist.to_csv());
    }
    Ok(())
}

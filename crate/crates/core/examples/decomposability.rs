//! Decomposability of hyperplanes via the annihilator of the dual wedge.
use plucker::exterior::{functional_to_wedge, DualFunctional};
use plucker::gf::Field;
use plucker::qcombin::GrassmannParams;

fn main() -> plucker::Result<()> {
    let cases = [(2, "X:3,4"), (2, "X:1,2 + X:3,4"), (3, "X:1,2 + 2*X:1,3"), (3, "X:1,4 + X:2,3 + X:3,4")];
    for (q, s) in cases {
        let params = GrassmannParams::new(2, 4, Field::of_order(q)?)?;
        let f = DualFunctional::parse(&params, s)?;
        let z = functional_to_wedge(&f);
        println!(
            "q={q} {f:<24} z = {z:<18} dim V(z) = {} -> {}",
            z.annihilator_dimension()?,
            if z.is_decomposable()? { "decomposable" } else { "nondecomposable" }
        );
    }
    Ok(())
}

//! Hyperplanes meeting G(2, V_5) in exactly e'(2,5) points, q=2.
use plucker::codes::{attained_family, build_generator, codeword_weight, second_min_weight, CodeSpec};
use plucker::gf::Field;
use plucker::qcombin::GrassmannParams;

fn main() -> plucker::Result<()> {
    let params = GrassmannParams::new(2, 5, Field::of_order(2)?)?;
    let spec = CodeSpec::grassmann(&params)?;
    let gen = build_generator(&spec)?;
    println!("d2 = {}", second_min_weight(&spec)?);
    for f in attained_family(&params, 8, 1)? {
        println!("{:>4}  {f}", codeword_weight(&f, &gen)?);
    }
    Ok(())
}

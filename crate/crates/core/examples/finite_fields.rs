//! Arithmetic tables for F_4 and F_9.
use plucker::gf::Field;

fn main() -> plucker::Result<()> {
    for q in [4, 9] {
        let f = Field::of_order(q)?;
        println!("F_{q} = F_{}", f.spec());
        for a in f.nonzero_elements() {
            let inv = f.inv(a)?;
            println!("  {} * {} = {}", f.format(a), f.format(inv), f.format(f.mul(a, inv)));
        }
    }
    Ok(())
}

//! The string partition of G(2, V_4), q=2, and one section count.
use plucker::codes::verify_string_section;
use plucker::exterior::DualFunctional;
use plucker::gf::Field;
use plucker::grassmann::strings::partition;
use plucker::qcombin::GrassmannParams;

fn main() -> plucker::Result<()> {
    let params = GrassmannParams::new(2, 4, Field::of_order(2)?)?;
    let f = &params.field;
    let part = partition(&params)?;
    println!("G(2, V_3): {} points", part.hyperplane.len());
    for (nu, pts) in &part.strings {
        let pts: Vec<String> = pts.iter().map(|x| x.format(f)).collect();
        println!("string {}: {}", nu.format(f), pts.join(" | "));
    }
    let report = verify_string_section(&DualFunctional::parse(&params, "X:3,4")?)?;
    println!("{}", report.to_json());
    Ok(())
}

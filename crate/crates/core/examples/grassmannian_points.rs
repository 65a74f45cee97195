//! Points of G(2, V_4) over F_2 with their Plücker coordinates.
use plucker::gf::Field;
use plucker::grassmann::{enumerate_grassmannian, PluckerEmbedding};
use plucker::qcombin::GrassmannParams;

fn main() -> plucker::Result<()> {
    let params = GrassmannParams::new(2, 4, Field::of_order(2)?)?;
    let emb = PluckerEmbedding::new(&params);
    let points = enumerate_grassmannian(&params)?;
    println!("{} points, coordinates {:?}", points.len(), emb.tuples().iter().map(|a| a.to_string()).collect::<Vec<_>>());
    for x in &points {
        let p = emb.embed(x);
        let c: Vec<String> = p.coords().iter().map(|&v| params.field.format(v)).collect();
        println!("{:<14} pivots {:<5} [{}]", x.format(&params.field), x.pivots().to_string(), c.join(" "));
    }
    Ok(())
}

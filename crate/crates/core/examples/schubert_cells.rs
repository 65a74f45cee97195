//! Schubert cells and varieties of G(2, V_4): sizes and the code C_alpha.
use plucker::codes::{build_generator, min_distance, weight_distribution, CodeSpec, SweepOptions};
use plucker::gf::Field;
use plucker::grassmann::Grassmannian;
use plucker::qcombin::GrassmannParams;

fn main() -> plucker::Result<()> {
    let params = GrassmannParams::new(2, 4, Field::of_order(2)?)?;
    let g = Grassmannian::new(params.clone())?;
    for alpha in params.index_tuples() {
        let cell = g.cell(&alpha)?.count();
        let variety = g.schubert_variety(&alpha)?.count();
        let spec = CodeSpec::schubert(&params, &alpha)?;
        let dist = weight_distribution(&build_generator(&spec)?, &SweepOptions::default())?;
        println!(
            "alpha={alpha} delta={} |C|={cell} |Omega|={variety} k={} d={} (closed form {})",
            alpha.delta(),
            spec.k(),
            dist.min_weight().unwrap_or(0),
            min_distance(&spec)
        );
    }
    Ok(())
}

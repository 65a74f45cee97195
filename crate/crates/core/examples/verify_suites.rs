//! Runs every applicable verification suite at (l, m, q) given on the
//! command line, default (2, 4, 2).
use plucker::codes::{verify_suite, SweepOptions};
use plucker::gf::Field;
use plucker::qcombin::GrassmannParams;

fn main() -> plucker::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (l, m, q) = match args[..] {
        [l, m, q] => (l as usize, m as usize, q),
        _ => (2, 4, 2),
    };
    let params = GrassmannParams::new(l, m, Field::of_order(q)?)?;
    let report = verify_suite("all", &params, &SweepOptions::default())?;
    for a in &report.assertions {
        println!("{} {}", if a.pass { "pass" } else { "FAIL" }, a.name);
    }
    println!("overall: {}", if report.pass { "pass" } else { "FAIL" });
    Ok(())
}

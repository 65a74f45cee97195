//! Gaussian binomials, the section bounds e and e', and the identity checks.
use plucker::qcombin::{e_bound, e_prime_bound, gaussian_binomial, verify_e_inequalities, verify_gaussian_identities};

fn main() -> plucker::Result<()> {
    let q = 2;
    for m in 2..=6 {
        let row: Vec<String> = (0..=m).map(|l| gaussian_binomial(m, l, q).to_string()).collect();
        println!("m={m}: {}", row.join(" "));
    }
    println!("e(3,6) = {}, e'(3,6) = {}", e_bound(3, 6, q)?, e_prime_bound(3, 6, q)?);
    let mut checks = verify_gaussian_identities(6, 3, q)?;
    checks.extend(verify_e_inequalities(3, 6, q)?);
    for c in checks {
        println!("{:<40} {}", c.identity, if c.pass { "ok" } else { "FAILED" });
    }
    Ok(())
}

//! Central binomial coefficients against |PGL(2,p)|.

use cayley_spectra::arithmetic::{binomial_divides_pgl, minimal_simple_scan};
use cayley_spectra::field::is_prime;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in (3..=31).filter(|&p| is_prime(p)) {
        let r = binomial_divides_pgl(p)?;
        println!(
            "p = {p:>2}: C(p+1,(p+1)/2) = {:>12}, |PGL(2,p)| = {:>6}, divides {}",
            r.binomial, r.pgl_order, r.divides
        );
    }
    let limit = 1_000_000;
    println!("scan up to {limit}: {:?}", minimal_simple_scan(limit)?);
    Ok(())
}

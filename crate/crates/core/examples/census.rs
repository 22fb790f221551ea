//! Counting connected Cayley graphs up to isomorphism.

use cayley_spectra::catalog::parse_group_spec;
use cayley_spectra::group::automorphisms;
use cayley_spectra::search::{census, orbit_representatives, Units};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for spec in ["C11", "C10", "D10", "Q8", "C27"] {
        let g = parse_group_spec(spec)?;
        let r = census(&g)?;
        println!(
            "{spec:<4} total {:>3}  by degree {:?}",
            r.total, r.per_degree
        );
    }

    // Aut(C5) has two orbits on inverse-closed sets of size 2.
    let g = parse_group_spec("C5")?;
    let units = Units::new(&g);
    let all = (0..1u64 << units.len()).map(|m| units.set_of(5, m));
    for s in orbit_representatives(&g, &automorphisms(&g)?, all) {
        println!("C5 orbit representative {:?}", s.elements());
    }
    Ok(())
}

//! The 6-valent involution pairs over D_2p.

use cayley_spectra::cayley::cayley_graph;
use cayley_spectra::constructions::{
    beta_profile, dihedral_aut_search, dihedral_character_check, dihedral_pair, X_S, X_T,
};
use cayley_spectra::field::is_prime;
use cayley_spectra::iso::{isomorphic_with, IsoOptions};
use cayley_spectra::spectra::cospectral_with_limit;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("X_S = {X_S:?}, X_T = {X_T:?}");
    println!("difference profile mod 13: {:?}", beta_profile(&X_S, 13));

    let max: u64 = std::env::args().nth(1).map_or(Ok(61), |a| a.parse())?;
    for p in (13..=max).filter(|&p| is_prime(p)) {
        let pair = dihedral_pair(p)?;
        let a = cayley_graph(&pair.group, &pair.s);
        let b = cayley_graph(&pair.group, &pair.t);
        let n = a.n();
        let opts = IsoOptions {
            max_vertices: n.max(160),
            ..IsoOptions::default()
        };
        println!(
            "p = {p:>3}: cospectral {}, isomorphic {}, affine map {:?}, characters {}",
            cospectral_with_limit(&a, &b, n)?,
            isomorphic_with(&a, &b, opts)?.is_some(),
            dihedral_aut_search(p, &X_S, &X_T),
            dihedral_character_check(p, &X_S)?
        );
    }
    Ok(())
}

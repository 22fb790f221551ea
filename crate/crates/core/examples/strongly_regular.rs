//! Paley, Peisert, slope, rook and Shrikhande graphs.

use cayley_spectra::constructions::{
    paley, peisert, rook_graph, shrikhande, slope_graph, SlopeSet,
};
use cayley_spectra::iso::{isomorphic, isomorphic_with, IsoOptions};
use cayley_spectra::spectra::{cospectral, srg_params};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for q in [9, 49] {
        let (a, b) = (paley(q)?, peisert(q)?);
        println!(
            "q = {q}: {:?}, cospectral {}, isomorphic {}",
            srg_params(&a),
            cospectral(&a, &b)?,
            isomorphic(&a, &b)?.is_some()
        );
    }

    let (r, s) = (rook_graph(4, 4)?, shrikhande());
    println!(
        "rook(4,4) {:?} vs Shrikhande {:?}: isomorphic {}",
        srg_params(&r),
        srg_params(&s),
        isomorphic(&r, &s)?.is_some()
    );

    // Unions of lines through the origin of AG(2, 13).
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let opts = IsoOptions {
        max_vertices: 200,
        ..IsoOptions::default()
    };
    let a = SlopeSet::random(13, 7, &mut rng)?;
    let b = SlopeSet::random(13, 7, &mut rng)?;
    let (ga, gb) = (slope_graph(&a)?, slope_graph(&b)?);
    println!("slopes {:?}: {:?}", a.slopes(), srg_params(&ga));
    println!("slopes {:?}: {:?}", b.slopes(), srg_params(&gb));
    println!("isomorphic {}", isomorphic_with(&ga, &gb, opts)?.is_some());
    Ok(())
}

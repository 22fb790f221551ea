//! Canonical forms and isomorphism witnesses.

use cayley_spectra::fixtures::regular_cospectral_pair_10;
use cayley_spectra::iso::{canonical_form, isomorphic};
use cayley_spectra::spectra::cospectral;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (a, b) = regular_cospectral_pair_10();
    println!("pair: {} and {}", a.to_graph6(), b.to_graph6());
    println!(
        "cospectral {}, isomorphic {}",
        cospectral(&a, &b)?,
        isomorphic(&a, &b)?.is_some()
    );

    let (ca, cb) = (a.complement(), b.complement());
    println!(
        "complements: cospectral {}, isomorphic {}",
        cospectral(&ca, &cb)?,
        isomorphic(&ca, &cb)?.is_some()
    );

    // A shuffled copy has the same canonical form, and the witness maps one
    // onto the other.
    let mut perm: Vec<usize> = (0..a.n()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(7));
    let shuffled = a.relabel(&perm);
    assert!(canonical_form(&a)?.same_graph(&canonical_form(&shuffled)?));
    let witness = isomorphic(&a, &shuffled)?.expect("relabelled copy");
    assert!(a.is_isomorphism_to(&shuffled, &witness));
    println!("witness {witness:?}");
    Ok(())
}

//! Exact characteristic polynomials of Cayley graphs.

use cayley_spectra::cayley::{cayley_graph, is_connected, ConnectionSet};
use cayley_spectra::group::Group;
use cayley_spectra::spectra::{char_poly, eigenvalues_approx, tensor_all_ones, tensor_char_poly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Group::cyclic(11)?;
    for elems in [[1, 2, 9, 10], [1, 3, 8, 10], [1, 4, 7, 10], [1, 5, 6, 10]] {
        let s = ConnectionSet::new(&g, &elems)?;
        let graph = cayley_graph(&g, &s);
        let p = char_poly(&graph)?;
        let top: Vec<String> = eigenvalues_approx(&graph)
            .iter()
            .take(3)
            .map(|l| format!("{l:.4}"))
            .collect();
        println!("C11 {elems:?} connected={}: {p}", is_connected(&g, &s));
        println!("    largest eigenvalues {}", top.join(", "));
    }

    // J_k (x) A scales every eigenvalue by k and adds (k-1)n zeros.
    let s = ConnectionSet::new(&g, &[1, 10])?;
    let cycle = cayley_graph(&g, &s);
    let p = char_poly(&cycle)?;
    let t = tensor_all_ones(&cycle, 3);
    assert_eq!(char_poly(&t)?, tensor_char_poly(&p, 3));
    println!("J_3 (x) C11: {}", char_poly(&t)?);
    Ok(())
}

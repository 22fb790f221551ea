//! Building groups and inspecting their structure.

use cayley_spectra::catalog::{element_words, parse_group_spec};
use cayley_spectra::group::{automorphisms, Group};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c12 = Group::cyclic(12)?;
    let d12 = Group::dihedral(6)?.with_label("D12");
    let prod = Group::direct_product(&Group::cyclic(6)?, &Group::cyclic(2)?)?;

    for g in [&c12, &d12, &prod] {
        g.check_axioms()?;
        let aut = automorphisms(g)?;
        println!(
            "{:<8} order {:>2}  abelian {:<5}  |Aut| {:>3}  element orders {:?}",
            g.label(),
            g.order(),
            g.is_abelian(),
            aut.order(),
            g.element_order_histogram()
        );
    }

    // Specs name catalog groups, products and presentations alike.
    for spec in ["Q8", "C3xC3", "G16_12", "A5"] {
        let g = parse_group_spec(spec)?;
        let words = element_words(&g);
        let involutions: Vec<&str> = g.involutions().iter().map(|&x| words[x].as_str()).collect();
        println!(
            "{spec:<7} order {:>2}, involutions {involutions:?}",
            g.order()
        );
    }

    // a b^k in D_2n is a reflection; its square is the identity.
    let ab3 = d12.mul(d12.generators()[0], d12.pow(d12.generators()[1], 3));
    assert_eq!(d12.element_order(ab3), 2);
    Ok(())
}

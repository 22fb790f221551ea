use cayley_spectra::catalog::{
    element_from_word, element_words, groups_of_order, parse_group_spec,
};
use cayley_spectra::cayley::{cayley_graph, complement_set, ConnectionSet};
use cayley_spectra::graph::Graph;
use cayley_spectra::group::{automorphisms, Group};
use cayley_spectra::iso::{canonical_form, isomorphic};
use cayley_spectra::presentation::{parse_presentation, parse_word, GroupWord};
use cayley_spectra::search::Units;
use cayley_spectra::spectra::{char_poly, CharPoly};
use proptest::prelude::*;

fn small_group() -> impl Strategy<Value = Group> {
    prop_oneof![
        (1usize..=20).prop_map(|n| Group::cyclic(n).unwrap()),
        (1usize..=10).prop_map(|n| Group::dihedral(n).unwrap()),
        (1usize..=5, 1usize..=5).prop_map(|(m, n)| Group::direct_product(
            &Group::cyclic(m).unwrap(),
            &Group::dihedral(n).unwrap()
        )
        .unwrap()),
        (1usize..=16).prop_map(|n| {
            let mut gs = groups_of_order(n).unwrap();
            gs.swap_remove(n % gs.len())
        }),
    ]
}

fn cayley_case() -> impl Strategy<Value = (Group, ConnectionSet)> {
    small_group().prop_flat_map(|g| {
        let units = Units::new(&g);
        let top = 1u64 << units.len();
        (Just(g), 0..top).prop_map(move |(g, m)| {
            let s = Units::new(&g).set_of(g.order(), m);
            (g, s)
        })
    })
}

fn random_graph() -> impl Strategy<Value = Graph> {
    (2usize..=14).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn word() -> impl Strategy<Value = GroupWord> {
    proptest::collection::vec((0usize..3, prop_oneof![-6i32..=-1, 1i32..=6]), 0..10)
        .prop_map(|factors| GroupWord { factors })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn latin_square_and_associativity(g in small_group()) {
        prop_assert!(g.check_axioms().is_ok());
        let n = g.order();
        for a in 0..n {
            let mut row: Vec<usize> = (0..n).map(|b| g.mul(a, b)).collect();
            row.sort_unstable();
            prop_assert_eq!(row, (0..n).collect::<Vec<_>>());
            prop_assert_eq!(g.mul(a, g.inv(a)), 0);
        }
        prop_assert_eq!(g.closure(g.generators()).len(), n);
    }

    #[test]
    fn automorphisms_are_sound(g in small_group()) {
        prop_assume!(g.order() <= 24);
        let aut = automorphisms(&g).unwrap();
        for a in &aut.elements {
            prop_assert!(a.is_automorphism_of(&g));
            prop_assert!(a.then(&a.inverse()).is_identity());
        }
        prop_assert_eq!(aut.order(), aut.elements.len());
    }

    #[test]
    fn word_round_trip(w in word()) {
        let names = ['a', 'b', 'c'];
        let text = w.render(&names);
        let back = parse_word(&text, &names).unwrap();
        prop_assert_eq!(back.free_reduced_letters(), w.free_reduced_letters());
        prop_assert_eq!(parse_word(&back.render(&names), &names).unwrap(), back);
    }

    #[test]
    fn inverse_word_evaluates_to_inverse(w in word()) {
        let g = parse_group_spec("C4xC3xC2").unwrap();
        let text = w.render(&['a', 'b', 'c']);
        let inv = w.inverse().render(&['a', 'b', 'c']);
        let x = element_from_word(&g, &text).unwrap();
        prop_assert_eq!(element_from_word(&g, &inv).unwrap(), g.inv(x));
    }

    #[test]
    fn canonical_form_ignores_labels(g in random_graph(), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let h = g.relabel(&perm);
        let (cg, ch) = (canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        prop_assert_eq!(cg.bits(), ch.bits());
        let w = isomorphic(&g, &h).unwrap().expect("relabelled copy is isomorphic");
        prop_assert!(g.is_isomorphism_to(&h, &w));
        prop_assert_eq!(char_poly(&g).unwrap(), char_poly(&h).unwrap());
    }

    #[test]
    fn isomorphism_verdict_matches_canonical_forms(a in random_graph(), b in random_graph()) {
        let same = a.n() == b.n() && canonical_form(&a).unwrap().same_graph(&canonical_form(&b).unwrap());
        match isomorphic(&a, &b).unwrap() {
            Some(w) => prop_assert!(same && a.is_isomorphism_to(&b, &w)),
            None => prop_assert!(!same),
        }
    }

    #[test]
    fn cayley_graph_is_regular_and_vertex_transitive((g, s) in cayley_case()) {
        let graph = cayley_graph(&g, &s);
        prop_assert_eq!(graph.regular_degree(), Some(s.len()));
        // Right translations are graph automorphisms.
        for h in g.generators() {
            prop_assert!(graph.is_isomorphism_to(&graph, &g.right_translation(*h)));
        }
        let c = cayley_graph(&g, &complement_set(&g, &s));
        prop_assert_eq!(c, graph.complement());
    }

    #[test]
    fn char_poly_basic_identities((g, s) in cayley_case()) {
        let graph = cayley_graph(&g, &s);
        let p = char_poly(&graph).unwrap();
        let n = graph.n();
        prop_assert_eq!(p.degree(), n);
        // Trace of A is zero, trace of A^2 is twice the edge count, and the
        // degree is an eigenvalue of a regular graph.
        prop_assert_eq!(p.coeff(n - 1), 0.into());
        if n >= 2 {
            prop_assert_eq!(p.coeff(n - 2), (-(graph.edge_count() as i64)).into());
        }
        prop_assert_eq!(p.eval(&(s.len() as i64).into()), 0.into());
    }

    #[test]
    fn automorphic_images_give_isomorphic_graphs((g, s) in cayley_case()) {
        prop_assume!(g.order() <= 16);
        let aut = automorphisms(&g).unwrap();
        let sigma = &aut.elements[aut.elements.len() / 2];
        let a = cayley_graph(&g, &s);
        let b = cayley_graph(&g, &s.image(sigma));
        prop_assert!(isomorphic(&a, &b).unwrap().is_some());
    }
}

#[test]
fn aut_of_cyclic_is_totient() {
    for n in 1..=40usize {
        let phi = (1..=n).filter(|&k| num_gcd(k, n) == 1).count();
        assert_eq!(
            automorphisms(&Group::cyclic(n).unwrap()).unwrap().order(),
            phi,
            "n = {n}"
        );
    }
}

fn num_gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn presentation_render_round_trip() {
    for text in [
        "a,b | a^2 = b^7 = 1, (ab^-1)^2 = 1",
        "x,y | x^2 = y^3 = (xy)^5 = 1",
    ] {
        let p = parse_presentation(text).unwrap();
        assert_eq!(parse_presentation(&p.render()).unwrap(), p);
    }
}

#[test]
fn element_words_are_shortest_and_resolve() {
    for spec in ["D14", "Q8", "C3xC3", "G27_3"] {
        let g = parse_group_spec(spec).unwrap();
        for (x, w) in element_words(&g).iter().enumerate() {
            assert_eq!(element_from_word(&g, w).unwrap(), x, "{spec} {w}");
        }
    }
}

#[test]
fn char_poly_of_cycle_matches_chebyshev_recurrence() {
    // det(xI - A(P_n)) satisfies p_n = x p_{n-1} - p_{n-2}; the cycle is
    // p_n - p_{n-2} - 2.
    let mut path = vec![CharPoly::from_i64(&[1]), CharPoly::from_i64(&[1, 0])];
    for n in 2..=30 {
        let a = path[n - 1].mul(&CharPoly::monomial(1));
        let b = &path[n - 2];
        path.push(sub(&a, b));
    }
    for n in 3..=30 {
        let want = sub(&sub(&path[n], &path[n - 2]), &CharPoly::from_i64(&[2]));
        assert_eq!(char_poly(&Graph::cycle(n)).unwrap(), want, "C_{n}");
    }
}

fn sub(a: &CharPoly, b: &CharPoly) -> CharPoly {
    let (da, db) = (a.degree(), b.degree());
    let d = da.max(db);
    let coeffs = (0..=d)
        .map(|i| {
            let k = d - i;
            let x = if k <= da { a.coeff(k) } else { 0.into() };
            let y = if k <= db { b.coeff(k) } else { 0.into() };
            x - y
        })
        .collect();
    CharPoly::from_coeffs(coeffs)
}

//! Derived values checked against independent computations.

use cayley_spectra::cayley::{cayley_graph, ConnectionSet};
use cayley_spectra::constructions::{beta_profile, paley, X_S, X_T};
use cayley_spectra::graph::Graph;
use cayley_spectra::group::Group;
use cayley_spectra::search::census;
use cayley_spectra::spectra::{char_poly, srg_params, CharPoly};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn phi(n: usize) -> usize {
    (1..=n).filter(|&k| gcd(k, n) == 1).count()
}

/// Z_p is a CI group, so connected Cayley graphs over it correspond to
/// nonempty inverse-closed sets up to multipliers. The multipliers act on
/// the (p-1)/2 inverse pairs as a cyclic group of that order, so the count
/// is the number of binary necklaces of length (p-1)/2, less the empty set.
#[test]
fn prime_cyclic_census_is_a_necklace_count() {
    for p in [3usize, 5, 7, 11, 13, 17, 19, 23] {
        let m = (p - 1) / 2;
        let necklaces: usize = (1..=m)
            .filter(|d| m % d == 0)
            .map(|d| phi(d) << (m / d))
            .sum::<usize>()
            / m;
        let c = census(&Group::cyclic(p).unwrap()).unwrap();
        assert_eq!(c.total, necklaces - 1, "p = {p}");
    }
}

/// Small censuses against isomorphism tested over all vertex permutations.
#[test]
fn small_census_by_brute_force() {
    for g in [
        Group::cyclic(6).unwrap(),
        Group::dihedral(3).unwrap(),
        Group::cyclic(7).unwrap(),
    ] {
        let n = g.order();
        let units: Vec<usize> = (1..n).filter(|&x| x <= g.inv(x)).collect();
        let mut classes: Vec<Graph> = Vec::new();
        for mask in 0..1u32 << units.len() {
            let mut elems = Vec::new();
            for (i, &u) in units.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    elems.push(u);
                    elems.push(g.inv(u));
                }
            }
            elems.sort_unstable();
            elems.dedup();
            let graph = cayley_graph(&g, &ConnectionSet::new(&g, &elems).unwrap());
            if graph.is_connected() && !classes.iter().any(|c| brute_isomorphic(c, &graph)) {
                classes.push(graph);
            }
        }
        assert_eq!(census(&g).unwrap().total, classes.len(), "{}", g.label());
    }
}

fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.n();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if a.is_isomorphism_to(b, &perm) {
            return true;
        }
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| perm[i] < perm[i + 1])
        else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

/// Paley graphs of prime order: eigenvalues (q-1)/2 once and
/// (-1 +- sqrt q)/2 each (q-1)/2 times, so the char poly is
/// (x - k)(x^2 + x - (q-1)/4)^((q-1)/2).
#[test]
fn paley_char_poly_closed_form() {
    for q in [5u64, 13, 17, 29, 37, 41] {
        let k = ((q - 1) / 2) as i64;
        let quad = CharPoly::from_i64(&[1, 1, -((q as i64 - 1) / 4)]);
        let want = CharPoly::linear(k).mul(&quad.pow(k as u32));
        let g = paley(q).unwrap();
        assert_eq!(char_poly(&g).unwrap(), want, "q = {q}");
        let s = srg_params(&g).unwrap();
        assert_eq!(
            (s.k, s.lambda, s.mu),
            (k as usize, (q as usize - 5) / 4, (q as usize - 1) / 4)
        );
    }
}

/// The two base sets have equal difference multisets modulo every prime
/// used by the dihedral family.
#[test]
fn dihedral_difference_profiles_by_hand() {
    for p in [13u64, 17, 101, 199] {
        let count = |x: &[u64], c: u64| {
            let mut k = 0;
            for &u in x {
                for &v in x {
                    if (u + p - v) % p == c {
                        k += 1;
                    }
                }
            }
            k
        };
        for c in 0..p {
            assert_eq!(count(&X_S, c), count(&X_T, c), "p = {p}, c = {c}");
            assert_eq!(beta_profile(&X_S, p)[c as usize], count(&X_S, c));
        }
    }
}

//! Named graph families: Paley, Peisert, affine slope graphs, rook and
//! Hamming graphs, the Shrikhande graph and the 6-regular dihedral pair.

use thiserror::Error;

use crate::cayley::{cayley_graph, CayleyError, ConnectionSet};
use crate::field::{is_prime, FieldError, FiniteField};
use crate::graph::Graph;
use crate::group::{Group, GroupError};
use crate::spectra::eigenvalues_approx;

/// Exponent sets `x` for the involutions `a b^x` of the dihedral pair.
pub const X_S: [u64; 6] = [0, 1, 2, 6, 8, 11];
pub const X_T: [u64; 6] = [0, 2, 4, 5, 10, 11];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
}

fn precondition(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::Precondition(msg.into())
}

/// A group, a connection set and the resulting Cayley graph.
#[derive(Clone, Debug)]
pub struct CayleyData {
    pub group: Group,
    pub set: ConnectionSet,
    pub graph: Graph,
}

impl CayleyData {
    fn new(group: Group, elems: &[usize]) -> Result<CayleyData, ConstructionError> {
        let set = ConnectionSet::new(&group, elems)?;
        let graph = cayley_graph(&group, &set);
        Ok(CayleyData { group, set, graph })
    }
}

fn field_cayley(f: &FiniteField, elems: &[u64]) -> Result<CayleyData, ConstructionError> {
    let group = f.additive_group()?;
    let elems: Vec<usize> = elems.iter().map(|&x| x as usize).collect();
    CayleyData::new(group, &elems)
}

/// Paley graph on GF(q) as a Cayley graph over the additive group.
pub fn paley_cayley(q: u64) -> Result<CayleyData, ConstructionError> {
    if q % 4 != 1 {
        return Err(precondition(format!("paley needs q = 1 mod 4, got {q}")));
    }
    let f = FiniteField::of_order(q)?;
    field_cayley(&f, &f.squares())
}

pub fn paley(q: u64) -> Result<Graph, ConstructionError> {
    Ok(paley_cayley(q)?.graph)
}

/// Peisert graph: connection set `{g^j : j = 0, 1 mod 4}` for the primitive
/// element `g`.
pub fn peisert_cayley(q: u64) -> Result<CayleyData, ConstructionError> {
    let f = FiniteField::of_order(q)?;
    let (p, r) = (f.characteristic(), f.degree());
    if p % 4 != 3 || r % 2 != 0 {
        return Err(precondition(format!(
            "peisert needs q = p^r with p = 3 mod 4 and r even, got {p}^{r}"
        )));
    }
    field_cayley(&f, &f.power_classes(4, &[0, 1]))
}

pub fn peisert(q: u64) -> Result<Graph, ConstructionError> {
    Ok(peisert_cayley(q)?.graph)
}

/// Slopes in `0..q`, with `q` itself standing for the vertical direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeSet {
    q: u64,
    slopes: Vec<u64>,
}

impl SlopeSet {
    pub fn new(q: u64, slopes: &[u64]) -> Result<SlopeSet, ConstructionError> {
        if q < 3 || !is_prime(q) {
            return Err(precondition(format!(
                "slope graphs need an odd prime, got {q}"
            )));
        }
        if let Some(&bad) = slopes.iter().find(|&&m| m > q) {
            return Err(precondition(format!("slope {bad} outside 0..={q}")));
        }
        let mut slopes = slopes.to_vec();
        slopes.sort_unstable();
        slopes.dedup();
        Ok(SlopeSet { q, slopes })
    }

    pub fn infinity(&self) -> u64 {
        self.q
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn slopes(&self) -> &[u64] {
        &self.slopes
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }

    /// Uniformly random subset of the `q + 1` slopes with `size` elements.
    pub fn random<R: rand::Rng>(
        q: u64,
        size: usize,
        rng: &mut R,
    ) -> Result<SlopeSet, ConstructionError> {
        let all: Vec<u64> = (0..=q).collect();
        let picked: Vec<u64> = rand::seq::IndexedRandom::choose_multiple(all.as_slice(), rng, size)
            .copied()
            .collect();
        SlopeSet::new(q, &picked)
    }
}

/// Cayley graph on `C_q x C_q` (point `(x, y)` has index `x*q + y`) whose
/// connection set is the union of the lines through the origin with the
/// given slopes.
pub fn slope_cayley(a: &SlopeSet) -> Result<CayleyData, ConstructionError> {
    let q = a.q as usize;
    let cq = Group::cyclic(q)?;
    let group = Group::direct_product(&cq, &cq)?.with_label(format!("C{q} x C{q}"));
    let mut elems = Vec::new();
    for &m in &a.slopes {
        for c in 1..q {
            let (x, y) = if m == a.q {
                (0, c)
            } else {
                (c, c * m as usize % q)
            };
            elems.push(x * q + y);
        }
    }
    CayleyData::new(group, &elems)
}

pub fn slope_graph(a: &SlopeSet) -> Result<Graph, ConstructionError> {
    Ok(slope_cayley(a)?.graph)
}

/// `K_m x K_n` (Cartesian product) as a Cayley graph on `C_m x C_n`.
pub fn rook_cayley(m: usize, n: usize) -> Result<CayleyData, ConstructionError> {
    if m == 0 || n == 0 {
        return Err(precondition("rook graph needs m, n >= 1"));
    }
    let group = Group::direct_product(&Group::cyclic(m)?, &Group::cyclic(n)?)?;
    let mut elems: Vec<usize> = (1..m).map(|i| i * n).collect();
    elems.extend(1..n);
    CayleyData::new(group, &elems)
}

pub fn rook_graph(m: usize, n: usize) -> Result<Graph, ConstructionError> {
    Ok(rook_cayley(m, n)?.graph)
}

/// `m`-fold Cartesian power of `K_n`: words of length `m` over `n`
/// symbols, adjacent when they differ in one place.
pub fn hamming_cayley(m: usize, n: usize) -> Result<CayleyData, ConstructionError> {
    if m == 0 || n == 0 {
        return Err(precondition("hamming graph needs m, n >= 1"));
    }
    let cn = Group::cyclic(n)?;
    let mut group = cn.clone();
    for _ in 1..m {
        group = Group::direct_product(&group, &cn)?;
    }
    let mut elems = Vec::new();
    let mut place = 1;
    for _ in 0..m {
        elems.extend((1..n).map(|d| d * place));
        place *= n;
    }
    let group = group.with_label(format!("C{n}^{m}"));
    CayleyData::new(group, &elems)
}

pub fn hamming_graph(m: usize, n: usize) -> Result<Graph, ConstructionError> {
    Ok(hamming_cayley(m, n)?.graph)
}

/// `Cay(C4 x C4, {±(1,0), ±(0,1), ±(1,1)})`.
pub fn shrikhande_cayley() -> CayleyData {
    let c4 = Group::cyclic(4).expect("C4");
    let group = Group::direct_product(&c4, &c4).expect("C4 x C4");
    let idx = |x: usize, y: usize| x * 4 + y;
    let elems = [
        idx(1, 0),
        idx(3, 0),
        idx(0, 1),
        idx(0, 3),
        idx(1, 1),
        idx(3, 3),
    ];
    CayleyData::new(group, &elems).expect("symmetric set")
}

pub fn shrikhande() -> Graph {
    shrikhande_cayley().graph
}

/// The dihedral group of order `2p` (element `a b^x` has index `p + x`)
/// and the involution sets built from `x_s`, `x_t`.
#[derive(Clone, Debug)]
pub struct DihedralPair {
    pub p: u64,
    pub group: Group,
    pub s: ConnectionSet,
    pub t: ConnectionSet,
}

pub fn involution_set(g: &Group, p: u64, x: &[u64]) -> Result<ConnectionSet, ConstructionError> {
    let elems: Vec<usize> = x.iter().map(|&e| (p + e % p) as usize).collect();
    Ok(ConnectionSet::new(g, &elems)?)
}

pub fn dihedral_pair(p: u64) -> Result<DihedralPair, ConstructionError> {
    if p < 13 || !is_prime(p) {
        return Err(precondition(format!(
            "the dihedral pair needs a prime p >= 13, got {p}"
        )));
    }
    let group = Group::dihedral(p as usize)?;
    let s = involution_set(&group, p, &X_S)?;
    let t = involution_set(&group, p, &X_T)?;
    Ok(DihedralPair { p, group, s, t })
}

/// Ordered pairs `(u, v)` in `x` with `u - v = c (mod p)`.
pub fn beta(x: &[u64], p: u64, c: u64) -> usize {
    let c = c % p;
    x.iter()
        .flat_map(|&u| x.iter().map(move |&v| (u, v)))
        .filter(|&(u, v)| (u % p + p - v % p) % p == c)
        .count()
}

pub fn beta_profile(x: &[u64], p: u64) -> Vec<usize> {
    (0..p).map(|c| beta(x, p, c)).collect()
}

pub fn difference_profiles_equal(x1: &[u64], x2: &[u64], p: u64) -> bool {
    beta_profile(x1, p) == beta_profile(x2, p)
}

/// Some `(l, s)` with `{l + s x : x in x_t} = x_s (mod p)`, scanning `l`
/// then `s` in increasing order.
pub fn dihedral_aut_search(p: u64, x_s: &[u64], x_t: &[u64]) -> Option<(u64, u64)> {
    let mut target: Vec<u64> = x_s.iter().map(|x| x % p).collect();
    target.sort_unstable();
    target.dedup();
    for l in 0..p {
        for s in 1..p {
            let mut image: Vec<u64> = x_t.iter().map(|x| (l + s * (x % p)) % p).collect();
            image.sort_unstable();
            image.dedup();
            if image == target {
                return Some((l, s));
            }
        }
    }
    None
}

/// Squared eigenvalues of `Cay(D_2p, {a b^x})` against the eigenvalues of
/// the circulant with first row `beta(x, p, .)`, each taken twice.
pub fn dihedral_character_check(p: u64, x: &[u64]) -> Result<bool, ConstructionError> {
    let group = Group::dihedral(p as usize)?;
    let set = involution_set(&group, p, x)?;
    let graph = cayley_graph(&group, &set);
    let mut squared: Vec<f64> = eigenvalues_approx(&graph).iter().map(|l| l * l).collect();
    squared.sort_by(f64::total_cmp);

    let profile = beta_profile(x, p);
    let mut circulant = Vec::with_capacity(2 * p as usize);
    for j in 0..p {
        let value: f64 = profile
            .iter()
            .enumerate()
            .map(|(c, &b)| {
                let angle = 2.0 * std::f64::consts::PI * (j as f64) * (c as f64) / p as f64;
                b as f64 * angle.cos()
            })
            .sum();
        circulant.push(value);
        circulant.push(value);
    }
    circulant.sort_by(f64::total_cmp);
    Ok(squared
        .iter()
        .zip(&circulant)
        .all(|(a, b)| (a - b).abs() <= 1e-8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{srg_params, SrgParams};

    fn srg(v: usize, k: usize, lambda: usize, mu: usize) -> Option<SrgParams> {
        Some(SrgParams { v, k, lambda, mu })
    }

    #[test]
    fn paley_examples() {
        assert_eq!(paley(5).unwrap(), Graph::cycle(5));
        assert_eq!(srg_params(&paley(13).unwrap()), srg(13, 6, 2, 3));
        assert_eq!(srg_params(&paley(9).unwrap()), srg(9, 4, 1, 2));
        assert!(paley(7).is_err());
    }

    #[test]
    fn peisert_examples() {
        assert_eq!(srg_params(&peisert(49).unwrap()), srg(49, 24, 11, 12));
        assert_eq!(srg_params(&peisert(9).unwrap()), srg(9, 4, 1, 2));
        assert!(peisert(25).is_err());
        assert!(peisert(7).is_err());
    }

    #[test]
    fn slope_examples() {
        let empty = SlopeSet::new(5, &[]).unwrap();
        assert_eq!(slope_graph(&empty).unwrap().edge_count(), 0);
        let a = SlopeSet::new(5, &[0, 1, 5]).unwrap();
        assert_eq!(srg_params(&slope_graph(&a).unwrap()), srg(25, 12, 5, 6));
        let all = SlopeSet::new(5, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(slope_graph(&all).unwrap(), Graph::complete(25));
        assert!(SlopeSet::new(9, &[1]).is_err());
        assert!(SlopeSet::new(5, &[6]).is_err());
    }

    #[test]
    fn rook_hamming() {
        assert_eq!(srg_params(&rook_graph(4, 4).unwrap()), srg(16, 6, 2, 2));
        let r22 = rook_graph(2, 2).unwrap();
        assert_eq!(r22.regular_degree(), Some(2));
        assert!(r22.is_connected());
        assert_eq!(hamming_graph(2, 3).unwrap(), rook_graph(3, 3).unwrap());
        assert_eq!(hamming_graph(3, 3).unwrap().regular_degree(), Some(6));
        assert_eq!(srg_params(&shrikhande()), srg(16, 6, 2, 2));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&X_S, 13, 0), 6);
        assert_eq!(beta(&X_S, 13, 1), 2);
        for c in 0..13 {
            assert_eq!(beta(&X_S, 13, c), beta(&X_S, 13, (13 - c) % 13));
        }
        assert_eq!(beta_profile(&X_S, 13).iter().sum::<usize>(), 36);
        assert!(difference_profiles_equal(&X_S, &X_T, 13));
        assert!(difference_profiles_equal(&X_S, &X_T, 199));
        assert!(!difference_profiles_equal(&[0, 1], &[0, 2], 7));
    }

    #[test]
    fn aut_search_examples() {
        assert_eq!(dihedral_aut_search(13, &X_S, &X_T), None);
        assert_eq!(dihedral_aut_search(17, &X_S, &X_T), None);
        assert_eq!(dihedral_aut_search(13, &X_S, &X_S), Some((0, 1)));
        // {0,1} -> {2,4} via l = 2, s = 2
        assert_eq!(dihedral_aut_search(7, &[2, 4], &[0, 1]), Some((2, 2)));
    }

    #[test]
    fn dihedral_pair_basics() {
        let pair = dihedral_pair(13).unwrap();
        assert_eq!(pair.s.len(), 6);
        assert_eq!(pair.t.len(), 6);
        assert!(pair
            .s
            .elements()
            .iter()
            .all(|&x| pair.group.element_order(x) == 2));
        assert!(dihedral_pair(11).is_err());
        assert!(dihedral_pair(15).is_err());
    }

    #[test]
    fn character_check() {
        assert!(dihedral_character_check(13, &X_S).unwrap());
        assert!(dihedral_character_check(13, &X_T).unwrap());
        assert!(dihedral_character_check(5, &[0]).unwrap());
    }
}

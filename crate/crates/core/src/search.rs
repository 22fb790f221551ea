//! Exhaustive enumeration of Cayley graphs, census counts and cospectral
//! mate discovery.
//!
//! A symmetric identity-free subset of a group is a union of "units": single
//! involutions and inverse pairs `{x, x^-1}`. Subsets are therefore encoded as
//! bitmasks over the unit list and streamed in increasing mask order.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{element_from_word, element_words, parse_group_spec, CatalogError};
use crate::cayley::{cayley_graph, ConnectionSet};
use crate::graph::Graph;
use crate::group::{automorphisms, AutGroup, Group, GroupError};
use crate::iso::{canonical_form, isomorphic, IsoError};
use crate::spectra::{char_poly, CharPoly, SpectraError};

/// Enumeration refuses groups with more units than this (2^26 subsets).
pub const MAX_UNITS: usize = 26;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("{label} has {units} involution/inverse-pair units, above the limit of {MAX_UNITS}")]
    TooManyUnits { label: String, units: usize },
    #[error("scope mixes group orders {0} and {1}")]
    MixedOrders(usize, usize),
    #[error("empty search scope")]
    EmptyScope,
    #[error("cannot start worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Involutions first, then inverse pairs `(x, x^-1)` with `x < x^-1`.
#[derive(Clone, Debug)]
pub struct Units {
    units: Vec<Vec<usize>>,
    unit_of: Vec<usize>,
}

impl Units {
    pub fn new(g: &Group) -> Units {
        let n = g.order();
        let mut units: Vec<Vec<usize>> = g.involutions().into_iter().map(|x| vec![x]).collect();
        for x in 1..n {
            let y = g.inv(x);
            if x < y {
                units.push(vec![x, y]);
            }
        }
        let mut unit_of = vec![usize::MAX; n];
        for (i, u) in units.iter().enumerate() {
            for &x in u {
                unit_of[x] = i;
            }
        }
        Units { units, unit_of }
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn set_of(&self, order: usize, mask: u64) -> ConnectionSet {
        let mut elems: Vec<usize> = (0..self.units.len())
            .filter(|i| mask >> i & 1 == 1)
            .flat_map(|i| self.units[i].iter().copied())
            .collect();
        elems.sort_unstable();
        ConnectionSet::from_sorted_unchecked(order, elems)
    }

    pub fn mask_of(&self, s: &ConnectionSet) -> u64 {
        s.elements()
            .iter()
            .fold(0, |m, &x| m | 1 << self.unit_of[x])
    }

    /// Masks whose set size lies in `lo..=hi`, ascending.
    pub fn masks_with_size(&self, lo: usize, hi: usize) -> Vec<u64> {
        fn walk(
            sizes: &[usize],
            i: usize,
            mask: u64,
            size: usize,
            lo: usize,
            hi: usize,
            out: &mut Vec<u64>,
        ) {
            if i == sizes.len() {
                if size >= lo {
                    out.push(mask);
                }
                return;
            }
            walk(sizes, i + 1, mask, size, lo, hi, out);
            if size + sizes[i] <= hi {
                walk(sizes, i + 1, mask | 1 << i, size + sizes[i], lo, hi, out);
            }
        }
        let sizes: Vec<usize> = self.units.iter().map(Vec::len).collect();
        let mut out = Vec::new();
        walk(&sizes, 0, 0, 0, lo, hi, &mut out);
        out.sort_unstable();
        out
    }

    /// Image of a mask under an automorphism.
    fn map_mask(&self, mask: u64, sigma: &[usize]) -> u64 {
        let mut out = 0;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= 1 << self.unit_of[sigma[self.units[i][0]]];
        }
        out
    }

    fn check(&self, g: &Group) -> Result<(), SearchError> {
        if self.len() > MAX_UNITS {
            return Err(SearchError::TooManyUnits {
                label: g.label().to_string(),
                units: self.len(),
            });
        }
        Ok(())
    }
}

/// Every symmetric identity-free subset of `g` exactly once.
pub fn enumerate_connection_sets(
    g: &Group,
) -> Result<impl Iterator<Item = ConnectionSet> + '_, SearchError> {
    let units = Units::new(g);
    units.check(g)?;
    let n = g.order();
    Ok((0..1u64 << units.len()).map(move |m| units.set_of(n, m)))
}

/// Bitmasks of one representative per Aut(g)-orbit, in increasing order of
/// the first mask seen from each orbit. The representative itself is the
/// orbit member whose sorted element list is lexicographically least.
pub fn orbit_representative_masks(g: &Group, autg: &AutGroup) -> Result<Vec<u64>, SearchError> {
    let units = Units::new(g);
    units.check(g)?;
    let total = 1u64 << units.len();
    let mut seen = vec![0u64; (total as usize).div_ceil(64)];
    let mut reps = Vec::new();
    let perms: Vec<&[usize]> = autg.elements.iter().map(|a| a.perm.as_slice()).collect();
    let n = g.order();
    for m in 0..total {
        if seen[(m / 64) as usize] >> (m % 64) & 1 == 1 {
            continue;
        }
        let mut best: Option<(Vec<usize>, u64)> = None;
        for sigma in &perms {
            let img = units.map_mask(m, sigma);
            seen[(img / 64) as usize] |= 1 << (img % 64);
            let elems = units.set_of(n, img).elements().to_vec();
            if best.as_ref().is_none_or(|(b, _)| elems < *b) {
                best = Some((elems, img));
            }
        }
        reps.push(best.map_or(m, |(_, img)| img));
    }
    Ok(reps)
}

/// One representative (lexicographically least image) per Aut(g)-orbit of
/// the given sets, in order of first appearance.
pub fn orbit_representatives<I>(g: &Group, autg: &AutGroup, sets: I) -> Vec<ConnectionSet>
where
    I: IntoIterator<Item = ConnectionSet>,
{
    let mut seen: BTreeSet<ConnectionSet> = BTreeSet::new();
    let mut out = Vec::new();
    for s in sets {
        if seen.contains(&s) {
            continue;
        }
        let images: BTreeSet<ConnectionSet> = autg.elements.iter().map(|a| s.image(a)).collect();
        let rep = images.iter().next().cloned().unwrap_or_else(|| s.clone());
        seen.extend(images);
        debug_assert_eq!(rep.group_order(), g.order());
        out.push(rep);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub group: String,
    /// Degree to number of non-isomorphic connected Cayley graphs.
    pub per_degree: BTreeMap<usize, usize>,
    pub total: usize,
}

/// Connected Cayley graphs over `g` up to graph isomorphism.
pub fn census(g: &Group) -> Result<CensusReport, SearchError> {
    census_with(g, true)
}

/// With `orbit_reduction` off every subset is canonically labeled; the
/// result must not change.
pub fn census_with(g: &Group, orbit_reduction: bool) -> Result<CensusReport, SearchError> {
    let classes = connected_classes(g, orbit_reduction)?;
    let mut per_degree = BTreeMap::new();
    for (d, _) in &classes {
        *per_degree.entry(*d).or_insert(0) += 1;
    }
    Ok(CensusReport {
        group: g.label().to_string(),
        per_degree,
        total: classes.len(),
    })
}

/// Degree and canonical-form bits of each connected Cayley graph over `g`,
/// one entry per isomorphism class. Graphs from different groups of the
/// same order are isomorphic iff their entries are equal.
pub fn connected_classes(
    g: &Group,
    orbit_reduction: bool,
) -> Result<BTreeSet<(usize, Vec<u64>)>, SearchError> {
    let units = Units::new(g);
    units.check(g)?;
    let masks: Vec<u64> = if orbit_reduction {
        orbit_representative_masks(g, &automorphisms(g)?)?
    } else {
        (0..1u64 << units.len()).collect()
    };
    let n = g.order();
    let forms: Vec<Option<(usize, Vec<u64>)>> = masks
        .par_iter()
        .map(|&m| {
            let s = units.set_of(n, m);
            let graph = cayley_graph(g, &s);
            if !graph.is_connected() {
                return Ok(None);
            }
            Ok(Some((s.len(), canonical_form(&graph)?.bits().to_vec())))
        })
        .collect::<Result<_, IsoError>>()?;
    Ok(forms.into_iter().flatten().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Connectivity {
    All,
    ConnectedOnly,
}

#[derive(Clone, Debug)]
pub struct SearchScope {
    pub groups: Vec<Group>,
    pub connectivity: Connectivity,
    /// Inclusive bounds on the valency.
    pub degree_bounds: Option<(usize, usize)>,
    /// Enumerate one set per Aut-orbit instead of every subset. Sound,
    /// since an automorphism induces a graph isomorphism.
    pub orbit_reduction: bool,
}

impl SearchScope {
    pub fn new(groups: Vec<Group>) -> SearchScope {
        SearchScope {
            groups,
            connectivity: Connectivity::All,
            degree_bounds: None,
            orbit_reduction: false,
        }
    }

    pub fn connected_only(mut self) -> SearchScope {
        self.connectivity = Connectivity::ConnectedOnly;
        self
    }

    pub fn degrees(mut self, min: usize, max: usize) -> SearchScope {
        self.degree_bounds = Some((min, max));
        self
    }

    pub fn with_orbit_reduction(mut self, on: bool) -> SearchScope {
        self.orbit_reduction = on;
        self
    }
}

/// One side of a mate pair: a representative Cayley graph of an
/// isomorphism class plus every scope group realizing that class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MateMember {
    pub group: String,
    pub elements: Vec<usize>,
    pub words: Vec<String>,
    pub connected: bool,
    pub degree: usize,
    pub realized_over: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CospectralMatePair {
    pub first: MateMember,
    pub second: MateMember,
    pub char_poly: CharPoly,
    pub witness: String,
}

struct Record {
    group: usize,
    mask: u64,
    degree: usize,
    connected: bool,
    poly: CharPoly,
}

struct Class {
    first: usize,
    connected: bool,
    groups: BTreeSet<usize>,
}

/// Every pair of non-isomorphic Cayley graphs in scope sharing a
/// characteristic polynomial, once per pair of isomorphism classes.
///
/// With [`Connectivity::ConnectedOnly`] the first member is connected while
/// its mate may be any graph in scope.
pub fn find_cospectral_mates(scope: &SearchScope) -> Result<Vec<CospectralMatePair>, SearchError> {
    let first = scope.groups.first().ok_or(SearchError::EmptyScope)?;
    for g in &scope.groups {
        if g.order() != first.order() {
            return Err(SearchError::MixedOrders(first.order(), g.order()));
        }
    }
    let n = first.order();
    let all_units: Vec<Units> = scope.groups.iter().map(Units::new).collect();
    // Size-restricted enumeration walks only the admissible masks, so it
    // only needs the units to fit in a u64.
    let sized = scope.degree_bounds.is_some() && !scope.orbit_reduction;
    for (g, u) in scope.groups.iter().zip(&all_units) {
        if !sized || u.len() >= 64 {
            u.check(g)?;
        }
    }

    let mut records: Vec<Record> = Vec::new();
    for (gi, (g, units)) in scope.groups.iter().zip(&all_units).enumerate() {
        let masks: Vec<u64> = match (scope.orbit_reduction, scope.degree_bounds) {
            (true, _) => orbit_representative_masks(g, &automorphisms(g)?)?,
            (false, Some((lo, hi))) => units.masks_with_size(lo, hi),
            (false, None) => (0..1u64 << units.len()).collect(),
        };
        let batch: Vec<Option<Record>> = masks
            .par_iter()
            .map(|&mask| {
                let s = units.set_of(n, mask);
                if let Some((lo, hi)) = scope.degree_bounds {
                    if s.len() < lo || s.len() > hi {
                        return Ok(None);
                    }
                }
                let graph = cayley_graph(g, &s);
                Ok(Some(Record {
                    group: gi,
                    mask,
                    degree: s.len(),
                    connected: graph.is_connected(),
                    poly: char_poly(&graph)?,
                }))
            })
            .collect::<Result<_, SpectraError>>()?;
        records.extend(batch.into_iter().flatten());
    }

    // Single reducer: buckets keyed by the exact polynomial.
    let mut buckets: BTreeMap<&CharPoly, Vec<usize>> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        buckets.entry(&r.poly).or_default().push(i);
    }
    let multi: Vec<(&CharPoly, Vec<usize>)> =
        buckets.into_iter().filter(|(_, v)| v.len() > 1).collect();
    let graph_of = |r: &Record| -> Graph {
        let g = &scope.groups[r.group];
        cayley_graph(g, &all_units[r.group].set_of(n, r.mask))
    };
    let forms: Vec<Vec<Vec<u64>>> = multi
        .par_iter()
        .map(|(_, members)| {
            members
                .iter()
                .map(|&i| Ok(canonical_form(&graph_of(&records[i]))?.bits().to_vec()))
                .collect::<Result<Vec<_>, IsoError>>()
        })
        .collect::<Result<_, IsoError>>()?;

    let words: Vec<Vec<String>> = scope.groups.iter().map(element_words).collect();
    let member = |class: &Class| -> MateMember {
        let r = &records[class.first];
        let g = &scope.groups[r.group];
        let s = all_units[r.group].set_of(n, r.mask);
        MateMember {
            group: g.label().to_string(),
            elements: s.elements().to_vec(),
            words: s
                .elements()
                .iter()
                .map(|&x| words[r.group][x].clone())
                .collect(),
            connected: r.connected,
            degree: r.degree,
            realized_over: class
                .groups
                .iter()
                .map(|&k| scope.groups[k].label().to_string())
                .collect(),
        }
    };

    let mut out = Vec::new();
    for ((poly, members), bits) in multi.iter().zip(&forms) {
        let mut classes: Vec<Class> = Vec::new();
        let mut index: HashMap<&[u64], usize> = HashMap::new();
        for (&i, b) in members.iter().zip(bits) {
            let k = *index.entry(b.as_slice()).or_insert_with(|| {
                classes.push(Class {
                    first: i,
                    connected: records[i].connected,
                    groups: BTreeSet::new(),
                });
                classes.len() - 1
            });
            classes[k].groups.insert(records[i].group);
        }
        for i in 0..classes.len() {
            for j in i + 1..classes.len() {
                let (a, b) = if !classes[i].connected && classes[j].connected {
                    (&classes[j], &classes[i])
                } else {
                    (&classes[i], &classes[j])
                };
                if scope.connectivity == Connectivity::ConnectedOnly && !a.connected {
                    continue;
                }
                out.push(CospectralMatePair {
                    first: member(a),
                    second: member(b),
                    char_poly: (*poly).clone(),
                    witness: "canonical-form".to_string(),
                });
            }
        }
    }
    Ok(out)
}

/// Runs `f` on a pool of `jobs` workers (the global pool when `None`).
pub fn with_jobs<T: Send>(
    jobs: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, SearchError> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| SearchError::Pool(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Re-derives a stored pair from its group labels and words and checks it
/// is cospectral and non-isomorphic.
pub fn replay(pair: &CospectralMatePair) -> Result<bool, SearchError> {
    let build = |m: &MateMember| -> Result<Graph, SearchError> {
        let g = parse_group_spec(&m.group)?;
        let elems = m
            .words
            .iter()
            .map(|w| element_from_word(&g, w))
            .collect::<Result<Vec<_>, _>>()?;
        let s = ConnectionSet::new(&g, &elems).map_err(|e| CatalogError::BadElement {
            word: m.words.join(","),
            reason: e.to_string(),
        })?;
        Ok(cayley_graph(&g, &s))
    };
    let a = build(&pair.first)?;
    let b = build(&pair.second)?;
    let pa = char_poly(&a)?;
    Ok(pa == char_poly(&b)? && pa == pair.char_poly && isomorphic(&a, &b)?.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum CayDsVerdict {
    /// A connected Cayley graph over the group has a non-isomorphic
    /// cospectral mate among Cayley graphs over the peers.
    NotCayDs { witness: Box<CospectralMatePair> },
    /// No such mate exists among the listed peers. Only as strong as the
    /// peer list.
    CayDsRelative { peers: Vec<String> },
}

/// Decides whether some connected Cayley graph over `g` has a cospectral
/// non-isomorphic mate over `g` or a peer. Peers with the label of `g` are
/// skipped.
pub fn cay_ds_verdict(g: &Group, peers: &[Group]) -> Result<CayDsVerdict, SearchError> {
    let mut groups = vec![g.clone()];
    groups.extend(peers.iter().filter(|p| p.label() != g.label()).cloned());
    let labels: Vec<String> = groups[1..].iter().map(|p| p.label().to_string()).collect();
    let scope = SearchScope::new(groups)
        .connected_only()
        .with_orbit_reduction(true);
    let pairs = find_cospectral_mates(&scope)?;
    let label = g.label().to_string();
    let touches = |m: &MateMember| m.connected && m.realized_over.contains(&label);
    match pairs
        .into_iter()
        .find(|p| touches(&p.first) || touches(&p.second))
    {
        Some(p) => Ok(CayDsVerdict::NotCayDs {
            witness: Box::new(p),
        }),
        None => Ok(CayDsVerdict::CayDsRelative { peers: labels }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::groups_of_order;

    #[test]
    fn enumeration_counts() {
        let c5 = Group::cyclic(5).unwrap();
        let sets: Vec<Vec<usize>> = enumerate_connection_sets(&c5)
            .unwrap()
            .map(|s| s.elements().to_vec())
            .collect();
        assert_eq!(sets, vec![vec![], vec![1, 4], vec![2, 3], vec![1, 2, 3, 4]]);
        assert_eq!(
            enumerate_connection_sets(&Group::cyclic(11).unwrap())
                .unwrap()
                .count(),
            32
        );
        assert_eq!(
            enumerate_connection_sets(&Group::dihedral(7).unwrap())
                .unwrap()
                .count(),
            1024
        );
    }

    #[test]
    fn orbit_counts() {
        let c5 = Group::cyclic(5).unwrap();
        let aut = automorphisms(&c5).unwrap();
        let reps = orbit_representatives(&c5, &aut, enumerate_connection_sets(&c5).unwrap());
        assert_eq!(reps.len(), 3);

        let c11 = Group::cyclic(11).unwrap();
        let aut = automorphisms(&c11).unwrap();
        let reps = orbit_representatives(&c11, &aut, enumerate_connection_sets(&c11).unwrap());
        let mut sizes: Vec<usize> = reps.iter().map(|s| s.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [0, 2, 4, 4, 6, 6, 8, 10]);
        let masks = orbit_representative_masks(&c11, &aut).unwrap();
        let units = Units::new(&c11);
        let mut via_masks: Vec<ConnectionSet> =
            masks.iter().map(|&m| units.set_of(11, m)).collect();
        let mut via_sets = reps.clone();
        via_masks.sort();
        via_sets.sort();
        assert_eq!(via_masks, via_sets);

        let trivial = AutGroup::trivial(11);
        assert_eq!(
            orbit_representatives(&c11, &trivial, enumerate_connection_sets(&c11).unwrap()).len(),
            32
        );
    }

    #[test]
    fn census_c11_and_order_10() {
        let r = census(&Group::cyclic(11).unwrap()).unwrap();
        assert_eq!(r.total, 7);
        assert_eq!(
            r.per_degree.into_iter().collect::<Vec<_>>(),
            [(2, 1), (4, 2), (6, 2), (8, 1), (10, 1)]
        );
        // 16 classes each, and the two class sets coincide.
        let c10 = census(&Group::cyclic(10).unwrap()).unwrap();
        let d10 = census(&Group::dihedral(5).unwrap()).unwrap();
        assert_eq!((c10.total, d10.total), (16, 16));
        assert_eq!(c10.per_degree, d10.per_degree);
    }

    #[test]
    fn orbit_reduction_does_not_change_census() {
        for n in [6, 8, 9, 12] {
            for g in groups_of_order(n).unwrap() {
                assert_eq!(
                    census_with(&g, true).unwrap(),
                    census_with(&g, false).unwrap()
                );
            }
        }
    }

    #[test]
    fn sized_masks_match_filter() {
        let g = crate::catalog::parse_group_spec("C2xD8").unwrap();
        let units = Units::new(&g);
        let want: Vec<u64> = (0..1u64 << units.len())
            .filter(|&m| (3..=5).contains(&units.set_of(16, m).len()))
            .collect();
        assert_eq!(units.masks_with_size(3, 5), want);
    }

    #[test]
    fn prime_order_has_no_mates() {
        let scope = SearchScope::new(vec![Group::cyclic(11).unwrap()]);
        assert!(find_cospectral_mates(&scope).unwrap().is_empty());
    }

    #[test]
    fn mates_replay_and_are_deterministic() {
        let groups = groups_of_order(8).unwrap();
        let scope = SearchScope::new(groups.clone());
        let one = with_jobs(Some(1), || find_cospectral_mates(&scope))
            .unwrap()
            .unwrap();
        let two = with_jobs(Some(3), || find_cospectral_mates(&scope))
            .unwrap()
            .unwrap();
        assert_eq!(one, two);
        for p in &one {
            assert!(replay(p).unwrap());
        }
        let reduced = find_cospectral_mates(&scope.clone().with_orbit_reduction(true)).unwrap();
        assert_eq!(reduced.len(), one.len());
    }
}

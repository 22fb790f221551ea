//! Transcribed cospectral pairs: connection-set tables and a 10-vertex
//! regular pair.
//!
//! The JSON files live in `fixtures/` and are compiled in. A different
//! directory holding files of the same names can be loaded with
//! [`load_table_fixtures`].

use std::collections::HashMap;
use std::path::Path;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cayley::{cayley_graph, CayleyError, ConnectionSet};
use crate::graph::{EdgeList, Graph, GraphError};
use crate::group::{Group, GroupError};
use crate::iso::{isomorphic_with, IsoError, IsoOptions};
use crate::perm::{PermError, Permutation};
use crate::presentation::{evaluate_word, parse_presentation, parse_word, ParseError};
use crate::spectra::{char_poly_with_limit, CharPoly, SpectraError};
use crate::todd_coxeter::{default_max_cosets, todd_coxeter, EnumerationError};

pub const TABLES_FILE: &str = "cospectral_tables.json";
pub const REGULAR10_FILE: &str = "regular10_pair.json";
/// SHA-256 of the bundled `regular10_pair.json`.
pub const REGULAR10_SHA256: &str =
    "faf8c6f3a4b1cec4d7dc093d1d7c641c77044aa2cf9f37c8baee0babcf1290ef";
/// Environment variable naming a replacement fixture directory.
pub const FIXTURE_DIR_ENV: &str = "SPECTRAL_CAYLEY_FIXTURES";

const TABLES_JSON: &str = include_str!("../fixtures/cospectral_tables.json");
const REGULAR10_JSON: &str = include_str!("../fixtures/regular10_pair.json");

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("bad fixture JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{id}: word '{word}' does not name an element: {reason}")]
    BadWord {
        id: String,
        word: String,
        reason: String,
    },
    #[error("{id}: {side} set is not a connection set: {source}")]
    BadSet {
        id: String,
        side: &'static str,
        source: CayleyError,
    },
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Iso(#[from] IsoError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationData {
    pub degree: usize,
    pub generators: Vec<String>,
}

/// How a fixture group is built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "lowercase")]
pub enum Realization {
    Presentation(String),
    Permutations(PermutationData),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureGroup {
    #[serde(flatten)]
    pub realization: Realization,
    pub name: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub cospectral: bool,
    pub isomorphic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureRecord {
    pub id: String,
    pub source: String,
    pub group: FixtureGroup,
    /// Group for the second set when it differs from `group`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_group: Option<FixtureGroup>,
    pub s_words: Vec<String>,
    pub t_words: Vec<String>,
    pub expect: Expectation,
}

impl FixtureRecord {
    /// Table part of the id, e.g. `order-16`.
    pub fn table(&self) -> &str {
        self.id.split('/').next().unwrap_or(&self.id)
    }
}

/// The bundled table fixtures.
pub fn bundled_table_fixtures() -> Vec<FixtureRecord> {
    serde_json::from_str(TABLES_JSON).expect("bundled fixtures parse")
}

/// Table fixtures from `dir/cospectral_tables.json`.
pub fn load_table_fixtures(dir: &Path) -> Result<Vec<FixtureRecord>, FixtureError> {
    let path = dir.join(TABLES_FILE);
    let text = std::fs::read_to_string(&path).map_err(|source| FixtureError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

/// Fixtures from the directory in [`FIXTURE_DIR_ENV`] if set, else the
/// bundled ones.
pub fn table_fixtures_from_env() -> Result<Vec<FixtureRecord>, FixtureError> {
    match std::env::var_os(FIXTURE_DIR_ENV) {
        Some(dir) => load_table_fixtures(Path::new(&dir)),
        None => Ok(bundled_table_fixtures()),
    }
}

/// A realized fixture group with a word resolver.
pub struct RealizedGroup {
    pub group: Group,
    names: Vec<char>,
    perms: Option<HashMap<Permutation, usize>>,
    degree: usize,
}

impl RealizedGroup {
    pub fn new(fg: &FixtureGroup) -> Result<RealizedGroup, FixtureError> {
        match &fg.realization {
            Realization::Presentation(text) => {
                let p = parse_presentation(text)?;
                let group = todd_coxeter(&p, default_max_cosets(None))?.with_label(fg.name.clone());
                Ok(RealizedGroup {
                    group,
                    names: p.generator_names,
                    perms: None,
                    degree: 0,
                })
            }
            Realization::Permutations(data) => {
                let gens = data
                    .generators
                    .iter()
                    .map(|c| Permutation::parse_cycles(data.degree, c))
                    .collect::<Result<Vec<_>, _>>()?;
                let (group, elems) = Group::from_permutations_with_elements(
                    data.degree,
                    &gens,
                    crate::group::DEFAULT_MAX_ORDER,
                )?;
                let index = elems.into_iter().enumerate().map(|(i, p)| (p, i)).collect();
                Ok(RealizedGroup {
                    group: group.with_label(fg.name.clone()),
                    names: (0..gens.len()).map(|i| (b'a' + i as u8) as char).collect(),
                    perms: Some(index),
                    degree: data.degree,
                })
            }
        }
    }

    /// A group word, or cycle notation for permutation groups.
    pub fn element(&self, word: &str) -> Result<usize, String> {
        if let Some(index) = &self.perms {
            if word.trim_start().starts_with('(') && word.contains(|c: char| c.is_ascii_digit()) {
                let p = Permutation::parse_cycles(self.degree, word).map_err(|e| e.to_string())?;
                return index
                    .get(&p)
                    .copied()
                    .ok_or_else(|| "permutation is not in the group".to_string());
            }
        }
        let w = parse_word(word, &self.names).map_err(|e| e.to_string())?;
        Ok(evaluate_word(&self.group, self.group.generators(), &w))
    }

    pub fn connection_set(
        &self,
        id: &str,
        side: &'static str,
        words: &[String],
    ) -> Result<ConnectionSet, FixtureError> {
        let elems = words
            .iter()
            .map(|w| {
                self.element(w).map_err(|reason| FixtureError::BadWord {
                    id: id.to_string(),
                    word: w.clone(),
                    reason,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        ConnectionSet::new(&self.group, &elems).map_err(|source| FixtureError::BadSet {
            id: id.to_string(),
            side,
            source,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureOutcome {
    pub id: String,
    pub source: String,
    pub vertices: usize,
    pub s_degree: usize,
    pub t_degree: usize,
    pub cospectral: bool,
    pub isomorphic: bool,
    pub passed: bool,
    pub char_poly: Option<CharPoly>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Builds both Cayley graphs of a record and compares them.
pub fn replay_fixture(rec: &FixtureRecord) -> Result<FixtureOutcome, FixtureError> {
    let start = Instant::now();
    let gs = RealizedGroup::new(&rec.group)?;
    let gt = match &rec.t_group {
        Some(t) => Some(RealizedGroup::new(t)?),
        None => None,
    };
    let gt = gt.as_ref().unwrap_or(&gs);
    let s = gs.connection_set(&rec.id, "S", &rec.s_words)?;
    let t = gt.connection_set(&rec.id, "T", &rec.t_words)?;
    let a = cayley_graph(&gs.group, &s);
    let b = cayley_graph(&gt.group, &t);
    let limit = a.n().max(b.n());
    let pa = char_poly_with_limit(&a, limit)?;
    let cospectral = a.n() == b.n() && pa == char_poly_with_limit(&b, limit)?;
    let opts = IsoOptions {
        max_vertices: limit.max(IsoOptions::default().max_vertices),
        ..IsoOptions::default()
    };
    let isomorphic = isomorphic_with(&a, &b, opts)?.is_some();
    Ok(FixtureOutcome {
        id: rec.id.clone(),
        source: rec.source.clone(),
        vertices: a.n(),
        s_degree: s.len(),
        t_degree: t.len(),
        cospectral,
        isomorphic,
        passed: cospectral == rec.expect.cospectral && isomorphic == rec.expect.isomorphic,
        char_poly: cospectral.then_some(pa),
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct PairFile {
    first: EdgeList,
    second: EdgeList,
}

/// Raw text of the bundled 10-vertex pair file.
pub fn regular10_json() -> &'static str {
    REGULAR10_JSON
}

/// The two 4-regular 10-vertex graphs, cospectral and non-isomorphic, whose
/// complements are also cospectral and non-isomorphic.
pub fn regular_cospectral_pair_10() -> (Graph, Graph) {
    parse_pair(REGULAR10_JSON).expect("bundled pair parses")
}

/// Text of the 10-vertex pair file from [`FIXTURE_DIR_ENV`] if set, else
/// the bundled copy.
pub fn regular10_json_from_env() -> Result<String, FixtureError> {
    match std::env::var_os(FIXTURE_DIR_ENV) {
        Some(dir) => {
            let path = Path::new(&dir).join(REGULAR10_FILE);
            std::fs::read_to_string(&path).map_err(|source| FixtureError::Io {
                path: path.display().to_string(),
                source,
            })
        }
        None => Ok(REGULAR10_JSON.to_string()),
    }
}

/// Lowercase hex SHA-256.
pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn parse_pair(text: &str) -> Result<(Graph, Graph), FixtureError> {
    let f: PairFile = serde_json::from_str(text)?;
    Ok((
        Graph::from_edge_list(&f.first)?,
        Graph::from_edge_list(&f.second)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_row_present_once() {
        let recs = bundled_table_fixtures();
        let mut count: HashMap<&str, usize> = HashMap::new();
        for r in &recs {
            *count.entry(r.table()).or_default() += 1;
        }
        assert_eq!(count["order-16"], 8);
        assert_eq!(count["order-32"], 1);
        assert_eq!(count["order-27"], 3);
        assert_eq!(count["special"], 2);
        assert_eq!(count["dihedral"], 14);
        let mut ids: Vec<&str> = recs.iter().map(|r| r.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), recs.len());
    }

    #[test]
    fn json_round_trip() {
        let recs = bundled_table_fixtures();
        let text = serde_json::to_string(&recs).unwrap();
        let back: Vec<FixtureRecord> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, recs);
    }

    #[test]
    fn reproducing_rows() {
        let recs = bundled_table_fixtures();
        for id in ["dihedral/1", "dihedral/2", "special/1"] {
            let rec = recs.iter().find(|r| r.id == id).unwrap();
            let out = replay_fixture(rec).unwrap();
            assert!(out.passed, "{out:?}");
        }
    }

    #[test]
    fn order16_row2_as_printed_differs() {
        // Equal spectra force equal trace(A^3) = 6 * triangles; these differ.
        let rec = bundled_table_fixtures()
            .into_iter()
            .find(|r| r.id == "order-16/2")
            .unwrap();
        let gs = RealizedGroup::new(&rec.group).unwrap();
        let gt = RealizedGroup::new(rec.t_group.as_ref().unwrap()).unwrap();
        let a = cayley_graph(
            &gs.group,
            &gs.connection_set(&rec.id, "S", &rec.s_words).unwrap(),
        );
        let b = cayley_graph(
            &gt.group,
            &gt.connection_set(&rec.id, "T", &rec.t_words).unwrap(),
        );
        assert_eq!((a.triangle_count(), b.triangle_count()), (16, 32));
        let out = replay_fixture(&rec).unwrap();
        assert!(!out.cospectral && !out.passed);
    }

    #[test]
    fn a5_words_resolve() {
        let rec = bundled_table_fixtures()
            .into_iter()
            .find(|r| r.group.name == "A5")
            .unwrap();
        let g = RealizedGroup::new(&rec.group).unwrap();
        assert_eq!(g.group.order(), 60);
        let s = g.connection_set(&rec.id, "S", &rec.s_words).unwrap();
        assert_eq!(s.len(), 7);
        assert!(g.element("(1,2)").is_err());
    }

    #[test]
    fn regular_pair_shape() {
        let (a, b) = regular_cospectral_pair_10();
        assert_eq!(a.regular_degree(), Some(4));
        assert_eq!(b.regular_degree(), Some(4));
        assert_eq!(a.n(), 10);
    }

    #[test]
    fn bundled_pair_checksum() {
        assert_eq!(sha256_hex(regular10_json().as_bytes()), REGULAR10_SHA256);
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}

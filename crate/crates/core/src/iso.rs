//! Colour refinement and canonical labelling by individualization and
//! refinement.
//!
//! The canonical leaf is the one with the lexicographically smallest
//! relabelled adjacency matrix. Leaves with equal matrices give
//! automorphisms, which prune the search in two ways: children of a node
//! lying in one orbit of the automorphisms fixing that node's prefix are
//! explored once, and on discovering an automorphism the search returns to
//! the deepest common ancestor of the two leaves.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::graph::Graph;

pub const DEFAULT_MAX_VERTICES: usize = 160;
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Leaves remembered for automorphism detection.
const MAX_STORED_LEAVES: usize = 50_000;
const MAX_STORED_AUTOMORPHISMS: usize = 4_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("graph has {n} vertices, above the limit of {max}")]
    SizeLimit { n: usize, max: usize },
    #[error("search exceeded the budget of {0} nodes")]
    BudgetExceeded(u64),
    #[error("internal error: isomorphism witness failed verification")]
    WitnessFailed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoOptions {
    pub max_vertices: usize,
    pub node_budget: u64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            max_vertices: DEFAULT_MAX_VERTICES,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Vertex colours; equal values mean the same class.
pub type Coloring = Vec<usize>;

/// A relabelling-invariant encoding plus the labelling that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<u64>,
    /// `perm[v]` is the canonical position of vertex `v`.
    perm: Vec<usize>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Row-major adjacency rows of the canonical graph, `ceil(n/64)` words each.
    pub fn bits(&self) -> &[u64] {
        &self.bits
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn graph(&self) -> Graph {
        let words = self.n.div_ceil(64).max(1);
        let mut g = Graph::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.bits[i * words + j / 64] >> (j % 64) & 1 == 1 {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// True iff both forms encode the same graph (the permutations may differ).
    pub fn same_graph(&self, other: &CanonicalForm) -> bool {
        self.n == other.n && self.bits == other.bits
    }
}

/// Ordered partition of the vertex set.
#[derive(Clone, Debug)]
struct Partition {
    lab: Vec<u32>,
    /// vertex -> start position of its cell
    cell_of: Vec<u32>,
    /// cell start -> one past its end
    end: Vec<u32>,
    cells: usize,
}

impl Partition {
    /// Cells ordered by ascending colour value.
    fn from_coloring(colors: &[usize]) -> Partition {
        let n = colors.len();
        let mut lab: Vec<u32> = (0..n as u32).collect();
        lab.sort_by_key(|&v| (colors[v as usize], v));
        let mut cell_of = vec![0u32; n];
        let mut end = vec![0u32; n];
        let mut cells = 0;
        let mut start = 0;
        while start < n {
            let mut e = start + 1;
            while e < n && colors[lab[e] as usize] == colors[lab[start] as usize] {
                e += 1;
            }
            for &v in &lab[start..e] {
                cell_of[v as usize] = start as u32;
            }
            end[start] = e as u32;
            cells += 1;
            start = e;
        }
        Partition {
            lab,
            cell_of,
            end,
            cells,
        }
    }

    fn n(&self) -> usize {
        self.lab.len()
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.n()
    }

    fn cell_starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.n() {
            out.push(s);
            s = self.end[s] as usize;
        }
        out
    }

    /// First largest non-singleton cell.
    fn target_cell(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < self.n() {
            let e = self.end[s] as usize;
            if e - s > 1 && best.is_none_or(|(bs, be)| e - s > be - bs) {
                best = Some((s, e));
            }
            s = e;
        }
        best
    }

    /// Moves `v` to the front of its cell and splits it off.
    fn individualize(&mut self, v: usize) -> usize {
        let s = self.cell_of[v] as usize;
        let e = self.end[s] as usize;
        let at = self.lab[s..e]
            .iter()
            .position(|&x| x as usize == v)
            .unwrap()
            + s;
        self.lab.swap(s, at);
        self.end[s] = (s + 1) as u32;
        self.end[s + 1] = e as u32;
        for &x in &self.lab[s + 1..e] {
            self.cell_of[x as usize] = (s + 1) as u32;
        }
        self.cells += 1;
        s
    }

    fn to_coloring(&self) -> Coloring {
        let starts = self.cell_starts();
        let mut color = vec![0; self.n()];
        for (c, &s) in starts.iter().enumerate() {
            for &v in &self.lab[s..self.end[s] as usize] {
                color[v as usize] = c;
            }
        }
        color
    }
}

/// Splitter-driven equitable refinement. Every step depends only on cell
/// positions and neighbour counts, so the result commutes with relabelling.
fn refine_partition(g: &Graph, p: &mut Partition, initial: &[usize]) {
    let n = g.n();
    let words = n.div_ceil(64).max(1);
    let mut in_queue = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &s in initial {
        if !in_queue[s] {
            in_queue[s] = true;
            queue.push_back(s);
        }
    }
    let mut mask = vec![0u64; words];
    let mut count = vec![0u32; n];
    let mut scratch: Vec<(u32, u32)> = Vec::with_capacity(n);
    while let Some(w) = queue.pop_front() {
        in_queue[w] = false;
        if p.is_discrete() {
            break;
        }
        mask.iter_mut().for_each(|m| *m = 0);
        for &x in &p.lab[w..p.end[w] as usize] {
            mask[x as usize / 64] |= 1 << (x % 64);
        }
        for (v, c) in count.iter_mut().enumerate().take(n) {
            *c = g
                .row(v)
                .iter()
                .zip(&mask)
                .map(|(a, b)| (a & b).count_ones())
                .sum();
        }
        let mut s = 0;
        while s < n {
            let e = p.end[s] as usize;
            if e - s > 1 {
                let c0 = count[p.lab[s] as usize];
                if p.lab[s + 1..e].iter().any(|&x| count[x as usize] != c0) {
                    scratch.clear();
                    scratch.extend(p.lab[s..e].iter().map(|&x| (count[x as usize], x)));
                    scratch.sort_unstable();
                    for (i, &(_, x)) in scratch.iter().enumerate() {
                        p.lab[s + i] = x;
                    }
                    // fragment boundaries
                    let mut frags: Vec<(usize, usize)> = Vec::new();
                    let mut fs = s;
                    for i in s + 1..=e {
                        if i == e || scratch[i - s].0 != scratch[i - 1 - s].0 {
                            frags.push((fs, i));
                            fs = i;
                        }
                    }
                    for &(a, b) in &frags {
                        p.end[a] = b as u32;
                        for &x in &p.lab[a..b] {
                            p.cell_of[x as usize] = a as u32;
                        }
                    }
                    p.cells += frags.len() - 1;
                    let skip = if in_queue[s] {
                        Some(s)
                    } else {
                        let largest = frags.iter().map(|&(a, b)| b - a).max().unwrap();
                        frags
                            .iter()
                            .find(|&&(a, b)| b - a == largest)
                            .map(|&(a, _)| a)
                    };
                    for &(a, _) in &frags {
                        if Some(a) != skip && !in_queue[a] {
                            in_queue[a] = true;
                            queue.push_back(a);
                        }
                    }
                }
            }
            s = e;
        }
    }
}

/// Coarsest equitable refinement of `initial`; colours are renumbered
/// `0..k` in cell order.
pub fn refine(g: &Graph, initial: &[usize]) -> Coloring {
    assert_eq!(
        initial.len(),
        g.n(),
        "colouring length must match vertex count"
    );
    let mut p = Partition::from_coloring(initial);
    let starts = p.cell_starts();
    refine_partition(g, &mut p, &starts);
    p.to_coloring()
}

struct StoredLeaf {
    lab: Vec<u32>,
    seq: Vec<u32>,
}

struct Search<'a> {
    g: &'a Graph,
    words: usize,
    nodes: u64,
    budget: u64,
    best: Option<(Vec<u64>, Vec<u32>)>,
    by_hash: HashMap<u64, Vec<usize>>,
    stored: Vec<StoredLeaf>,
    auts: Vec<Vec<u32>>,
}

fn find(uf: &mut [u32], x: u32) -> u32 {
    let mut r = x;
    while uf[r as usize] != r {
        r = uf[r as usize];
    }
    let mut y = x;
    while uf[y as usize] != r {
        let next = uf[y as usize];
        uf[y as usize] = r;
        y = next;
    }
    r
}

impl Search<'_> {
    fn certificate(&self, lab: &[u32]) -> Vec<u64> {
        let n = lab.len();
        let mut pos = vec![0u32; n];
        for (i, &v) in lab.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let mut bits = vec![0u64; n * self.words];
        for (i, &v) in lab.iter().enumerate() {
            let row = &mut bits[i * self.words..(i + 1) * self.words];
            for u in self.g.neighbors(v as usize) {
                let j = pos[u] as usize;
                row[j / 64] |= 1 << (j % 64);
            }
        }
        bits
    }

    fn is_automorphism(&self, gamma: &[u32]) -> bool {
        self.g
            .edges()
            .iter()
            .all(|&(u, v)| self.g.has_edge(gamma[u] as usize, gamma[v] as usize))
    }

    /// Returns `Some(level)` to unwind the search to that level.
    fn explore(&mut self, part: &Partition, seq: &mut Vec<u32>) -> Result<Option<usize>, IsoError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(IsoError::BudgetExceeded(self.budget));
        }
        let Some((s, e)) = part.target_cell() else {
            return Ok(self.leaf(part, seq));
        };
        let level = seq.len();
        let n = part.n();
        let mut uf: Vec<u32> = (0..n as u32).collect();
        let mut seen_auts = 0;
        let mut explored: Vec<u32> = Vec::new();
        let mut candidates: Vec<u32> = part.lab[s..e].to_vec();
        candidates.sort_unstable();
        for v in candidates {
            for gamma in &self.auts[seen_auts..] {
                if seq.iter().all(|&x| gamma[x as usize] == x) {
                    for x in 0..n as u32 {
                        let (a, b) = (find(&mut uf, x), find(&mut uf, gamma[x as usize]));
                        if a != b {
                            uf[a.max(b) as usize] = a.min(b);
                        }
                    }
                }
            }
            seen_auts = self.auts.len();
            let rv = find(&mut uf, v);
            if explored.iter().any(|&u| find(&mut uf, u) == rv) {
                continue;
            }
            explored.push(v);
            let mut child = part.clone();
            let cell = child.individualize(v as usize);
            refine_partition(self.g, &mut child, &[cell]);
            seq.push(v);
            let r = self.explore(&child, seq)?;
            seq.pop();
            if let Some(l) = r {
                if l < level {
                    return Ok(Some(l));
                }
            }
        }
        Ok(None)
    }

    fn leaf(&mut self, part: &Partition, seq: &[u32]) -> Option<usize> {
        let cert = self.certificate(&part.lab);
        let mut hasher = DefaultHasher::new();
        cert.hash(&mut hasher);
        let h = hasher.finish();
        let better = match &self.best {
            None => true,
            Some((b, _)) => cert < *b,
        };
        let mut jump = None;
        if let Some(idxs) = self.by_hash.get(&h) {
            for &i in idxs {
                let other = &self.stored[i];
                let mut gamma = vec![0u32; part.n()];
                for (a, b) in part.lab.iter().zip(&other.lab) {
                    gamma[*a as usize] = *b;
                }
                if self.is_automorphism(&gamma) {
                    let common = seq
                        .iter()
                        .zip(&other.seq)
                        .take_while(|(a, b)| a == b)
                        .count();
                    if self.auts.len() < MAX_STORED_AUTOMORPHISMS {
                        self.auts.push(gamma);
                    }
                    jump = Some(common);
                    break;
                }
            }
        }
        if better {
            self.best = Some((cert, part.lab.clone()));
        }
        if jump.is_none() && self.stored.len() < MAX_STORED_LEAVES {
            self.by_hash.entry(h).or_default().push(self.stored.len());
            self.stored.push(StoredLeaf {
                lab: part.lab.clone(),
                seq: seq.to_vec(),
            });
        }
        jump
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, IsoError> {
    canonical_form_with(g, IsoOptions::default())
}

pub fn canonical_form_with(g: &Graph, opts: IsoOptions) -> Result<CanonicalForm, IsoError> {
    let n = g.n();
    if n > opts.max_vertices {
        return Err(IsoError::SizeLimit {
            n,
            max: opts.max_vertices,
        });
    }
    let mut part = Partition::from_coloring(&g.degrees());
    let starts = part.cell_starts();
    refine_partition(g, &mut part, &starts);
    let mut search = Search {
        g,
        words: n.div_ceil(64).max(1),
        nodes: 0,
        budget: opts.node_budget,
        best: None,
        by_hash: HashMap::new(),
        stored: Vec::new(),
        auts: Vec::new(),
    };
    if n == 0 {
        return Ok(CanonicalForm {
            n,
            bits: vec![0],
            perm: Vec::new(),
        });
    }
    search.explore(&part, &mut Vec::new())?;
    let (bits, lab) = search.best.expect("search visits at least one leaf");
    let mut perm = vec![0; n];
    for (i, &v) in lab.iter().enumerate() {
        perm[v as usize] = i;
    }
    Ok(CanonicalForm { n, bits, perm })
}

/// A vertex map carrying `a` onto `b`, verified edge by edge, or `None`.
pub fn isomorphic(a: &Graph, b: &Graph) -> Result<Option<Vec<usize>>, IsoError> {
    isomorphic_with(a, b, IsoOptions::default())
}

pub fn isomorphic_with(
    a: &Graph,
    b: &Graph,
    opts: IsoOptions,
) -> Result<Option<Vec<usize>>, IsoError> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(None);
    }
    let ca = canonical_form_with(a, opts)?;
    let cb = canonical_form_with(b, opts)?;
    if !ca.same_graph(&cb) {
        return Ok(None);
    }
    let mut inv_b = vec![0; b.n()];
    for (v, &i) in cb.perm.iter().enumerate() {
        inv_b[i] = v;
    }
    let witness: Vec<usize> = ca.perm.iter().map(|&i| inv_b[i]).collect();
    if !a.is_isomorphism_to(b, &witness) {
        return Err(IsoError::WitnessFailed);
    }
    Ok(Some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn shuffled(g: &Graph, seed: u64) -> (Graph, Vec<usize>) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rng);
        (g.relabel(&perm), perm)
    }

    fn classes(c: &Coloring) -> usize {
        let mut v = c.clone();
        v.sort_unstable();
        v.dedup();
        v.len()
    }

    #[test]
    fn refine_examples() {
        assert_eq!(classes(&refine(&Graph::complete(6), &[0; 6])), 1);
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(classes(&refine(&star, &[0; 4])), 2);
        let path = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let c = refine(&path, &[0; 5]);
        assert_eq!(classes(&c), 3);
        assert_eq!(refine(&path, &c), c);
    }

    #[test]
    fn canonical_invariance() {
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        let base = canonical_form(&petersen).unwrap();
        assert_eq!(petersen.relabel(base.perm()), base.graph());
        for seed in 0..20 {
            let (h, _) = shuffled(&petersen, seed);
            let c = canonical_form(&h).unwrap();
            assert!(c.same_graph(&base));
            assert_eq!(h.relabel(c.perm()), c.graph());
        }
    }

    #[test]
    fn complete_graph_is_cheap() {
        let k = Graph::complete(60);
        let opts = IsoOptions {
            node_budget: 20_000,
            ..IsoOptions::default()
        };
        canonical_form_with(&k, opts).unwrap();
    }

    #[test]
    fn isomorphism_examples() {
        assert!(isomorphic(&Graph::complete(4), &Graph::cycle(4))
            .unwrap()
            .is_none());
        let c6 = Graph::cycle(6);
        let (h, _) = shuffled(&c6, 3);
        let w = isomorphic(&c6, &h).unwrap().unwrap();
        assert!(c6.is_isomorphism_to(&h, &w));
        // C6 versus two triangles: same degrees, not isomorphic.
        let tt = Graph::complete(3).disjoint_copies(2);
        assert!(isomorphic(&c6, &tt).unwrap().is_none());
    }

    #[test]
    fn limits() {
        let opts = IsoOptions {
            max_vertices: 5,
            ..IsoOptions::default()
        };
        assert!(matches!(
            canonical_form_with(&Graph::cycle(6), opts),
            Err(IsoError::SizeLimit { .. })
        ));
        let opts = IsoOptions {
            node_budget: 3,
            ..IsoOptions::default()
        };
        assert!(matches!(
            canonical_form_with(&Graph::cycle(12), opts),
            Err(IsoError::BudgetExceeded(3))
        ));
    }
}

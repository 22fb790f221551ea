//! Simple undirected graphs stored as adjacency bit matrices.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) is a loop or out of range")]
    BadEdge(usize, usize),
    #[error("invalid graph6 string: {0}")]
    Graph6(String),
}

/// An undirected loopless graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph {{ n: {}, edges: {:?} }}", self.n, self.edges())
    }
}

/// JSON edge list: `{"n": .., "edges": [[u, v], ..]}` with `u < v`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`, for `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(GraphError::BadEdge(u, v));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "bad edge ({u}, {v})");
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] &= !(1 << (v % 64));
        self.adj[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    /// `Some(k)` if every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|u| self.degree(u) == k).then_some(k)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Number of common neighbours of `u` and `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    pub fn triangle_count(&self) -> usize {
        let mut t = 0;
        for u in 0..self.n {
            for v in self.neighbors(u).filter(|&v| v > u) {
                t += self
                    .neighbors(v)
                    .filter(|&w| w > v && self.has_edge(u, w))
                    .count();
            }
        }
        t
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Off-diagonal complement.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// True iff `perm` is a bijection carrying edges of `self` exactly onto
    /// edges of `other`.
    pub fn is_isomorphism_to(&self, other: &Graph, perm: &[usize]) -> bool {
        if self.n != other.n || perm.len() != self.n {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        if self.edge_count() != other.edge_count() {
            return false;
        }
        self.edges()
            .iter()
            .all(|&(u, v)| other.has_edge(perm[u], perm[v]))
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count() == 1
    }

    /// Block-diagonal union of `k` copies.
    pub fn disjoint_copies(&self, k: usize) -> Graph {
        let mut g = Graph::empty(self.n * k);
        for c in 0..k {
            for (u, v) in self.edges() {
                g.add_edge(c * self.n + u, c * self.n + v);
            }
        }
        g
    }

    /// Integer adjacency matrix, row-major.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|u| {
                (0..self.n)
                    .map(|v| i64::from(self.has_edge(u, v)))
                    .collect()
            })
            .collect()
    }

    pub fn to_edge_list(&self) -> EdgeList {
        EdgeList {
            n: self.n,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_edge_list(list: &EdgeList) -> Result<Graph, GraphError> {
        let edges: Vec<(usize, usize)> = list.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(list.n, &edges)
    }

    /// graph6 encoding (no `>>graph6<<` header).
    pub fn to_graph6(&self) -> String {
        let mut out = Vec::new();
        encode_graph6_size(self.n, &mut out);
        let mut acc = 0u8;
        let mut nbits = 0;
        for j in 1..self.n {
            for i in 0..j {
                acc = (acc << 1) | u8::from(self.has_edge(i, j));
                nbits += 1;
                if nbits == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            out.push((acc << (6 - nbits)) + 63);
        }
        String::from_utf8(out).expect("graph6 is ASCII")
    }

    pub fn from_graph6(text: &str) -> Result<Graph, GraphError> {
        let text = text.trim_end_matches(['\n', '\r']);
        let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
        let bytes = text.as_bytes();
        if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
            return Err(GraphError::Graph6("byte outside 63..=126".into()));
        }
        let (n, mut pos) = decode_graph6_size(bytes)?;
        let mut g = Graph::empty(n);
        let mut bit = 0usize;
        let total = n * n.saturating_sub(1) / 2;
        let needed = total.div_ceil(6);
        if bytes.len() - pos != needed {
            return Err(GraphError::Graph6(format!(
                "expected {needed} data bytes, found {}",
                bytes.len() - pos
            )));
        }
        let mut current = 0u8;
        for j in 1..n {
            for i in 0..j {
                if bit.is_multiple_of(6) {
                    current = bytes[pos] - 63;
                    pos += 1;
                }
                if current >> (5 - bit % 6) & 1 == 1 {
                    g.add_edge(i, j);
                }
                bit += 1;
            }
        }
        Ok(g)
    }
}

fn encode_graph6_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

fn decode_graph6_size(bytes: &[u8]) -> Result<(usize, usize), GraphError> {
    let short = || GraphError::Graph6("truncated size field".into());
    let first = *bytes.first().ok_or_else(short)?;
    if first < 126 {
        return Ok(((first - 63) as usize, 1));
    }
    let (start, len) = if bytes.get(1) == Some(&126) {
        (2, 6)
    } else {
        (1, 3)
    };
    if bytes.len() < start + len {
        return Err(short());
    }
    let n = bytes[start..start + len]
        .iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    Ok((n, start + len))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_known_strings() {
        // Standard reference encodings.
        assert_eq!(Graph::complete(4).to_graph6(), "C~");
        assert_eq!(Graph::cycle(5).to_graph6(), "Dhc");
        assert_eq!(Graph::empty(0).to_graph6(), "?");
        let petersen_outer = Graph::cycle(5);
        assert_eq!(Graph::from_graph6("Dhc").unwrap(), petersen_outer);
    }

    #[test]
    fn graph6_large_size_field() {
        let g = Graph::cycle(100);
        let s = g.to_graph6();
        assert!(s.starts_with('~'));
        assert_eq!(Graph::from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(Graph::from_graph6("C").is_err());
        assert!(Graph::from_graph6("C~~").is_err());
        assert!(Graph::from_graph6("C\x01").is_err());
    }

    #[test]
    fn basic_counts() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.triangle_count(), 4);
        assert_eq!(k4.regular_degree(), Some(3));
        assert_eq!(k4.complement().edge_count(), 0);
        let two = Graph::complete(3).disjoint_copies(2);
        assert_eq!(two.component_count(), 2);
        assert!(!two.is_connected());
        assert_eq!(Graph::cycle(6).common_neighbors(0, 2), 1);
    }

    #[test]
    fn edge_list_json_is_sorted() {
        let g = Graph::from_edges(4, &[(3, 1), (0, 2), (2, 1)]).unwrap();
        let json = serde_json::to_string(&g.to_edge_list()).unwrap();
        assert_eq!(json, r#"{"n":4,"edges":[[0,2],[1,2],[1,3]]}"#);
        assert_eq!(
            Graph::from_edge_list(&serde_json::from_str(&json).unwrap()).unwrap(),
            g
        );
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
    }

    #[test]
    fn isomorphism_check() {
        let c = Graph::cycle(5);
        let perm = [2, 4, 1, 3, 0];
        let d = c.relabel(&perm);
        assert!(c.is_isomorphism_to(&d, &perm));
        assert!(!c.is_isomorphism_to(&d, &[0, 1, 2, 3, 4]) || c == d);
    }
}

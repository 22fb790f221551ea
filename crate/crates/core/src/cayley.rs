//! Connection sets and Cayley graphs.

use thiserror::Error;

use crate::graph::Graph;
use crate::group::{AutGroup, Automorphism, Group};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("connection set contains the identity")]
    IdentityInSet,
    #[error("connection set is not inverse-closed: {element} is present but its inverse {inverse} is not")]
    NotInverseClosed { element: usize, inverse: usize },
    #[error("element {element} is outside a group of order {order}")]
    OutOfRange { element: usize, order: usize },
}

/// An identity-free, inverse-closed subset of a group, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConnectionSet {
    order: usize,
    elements: Vec<usize>,
}

impl ConnectionSet {
    pub fn new(g: &Group, elems: &[usize]) -> Result<ConnectionSet, CayleyError> {
        let n = g.order();
        let mut member = vec![false; n];
        for &x in elems {
            if x >= n {
                return Err(CayleyError::OutOfRange {
                    element: x,
                    order: n,
                });
            }
            member[x] = true;
        }
        if member[0] {
            return Err(CayleyError::IdentityInSet);
        }
        let elements: Vec<usize> = (0..n).filter(|&x| member[x]).collect();
        for &x in &elements {
            if !member[g.inv(x)] {
                return Err(CayleyError::NotInverseClosed {
                    element: x,
                    inverse: g.inv(x),
                });
            }
        }
        Ok(ConnectionSet { order: n, elements })
    }

    /// Builds a set from a membership mask without validation. Callers
    /// guarantee symmetry and that index 0 is absent.
    pub(crate) fn from_sorted_unchecked(order: usize, elements: Vec<usize>) -> ConnectionSet {
        ConnectionSet { order, elements }
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Image under an automorphism, re-sorted.
    pub fn image(&self, sigma: &Automorphism) -> ConnectionSet {
        let mut elements: Vec<usize> = self.elements.iter().map(|&x| sigma.apply(x)).collect();
        elements.sort_unstable();
        ConnectionSet {
            order: self.order,
            elements,
        }
    }
}

pub fn make_connection_set(g: &Group, elems: &[usize]) -> Result<ConnectionSet, CayleyError> {
    ConnectionSet::new(g, elems)
}

/// `a ~ b` iff `a * b^-1` lies in `s`.
pub fn cayley_graph(g: &Group, s: &ConnectionSet) -> Graph {
    let n = g.order();
    assert_eq!(
        s.group_order(),
        n,
        "connection set belongs to another group"
    );
    let mut member = vec![false; n];
    for &x in s.elements() {
        member[x] = true;
    }
    let mut graph = Graph::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            if member[g.mul(a, g.inv(b))] {
                graph.add_edge(a, b);
            }
        }
    }
    graph
}

/// `(G \ S) \ {1}`.
pub fn complement_set(g: &Group, s: &ConnectionSet) -> ConnectionSet {
    let elements = (1..g.order()).filter(|&x| !s.contains(x)).collect();
    ConnectionSet::from_sorted_unchecked(g.order(), elements)
}

/// Connectivity of the Cayley graph, decided by BFS on the graph itself.
pub fn is_connected(g: &Group, s: &ConnectionSet) -> bool {
    cayley_graph(g, s).is_connected()
}

pub fn disjoint_copies(graph: &Graph, k: usize) -> Graph {
    assert!(k >= 1, "need at least one copy");
    graph.disjoint_copies(k)
}

/// Some automorphism carrying `s` onto `t`, trying `autg` in stored order.
pub fn ci_equivalent(
    s: &ConnectionSet,
    t: &ConnectionSet,
    autg: &AutGroup,
) -> Option<Automorphism> {
    if s.len() != t.len() || s.group_order() != t.group_order() {
        return None;
    }
    if s == t {
        return Some(Automorphism::identity(s.group_order()));
    }
    autg.elements
        .iter()
        .find(|sigma| s.elements().iter().all(|&x| t.contains(sigma.apply(x))))
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::automorphisms;

    #[test]
    fn validation() {
        let c5 = Group::cyclic(5).unwrap();
        assert_eq!(
            ConnectionSet::new(&c5, &[4, 1, 1]).unwrap().elements(),
            &[1, 4]
        );
        assert_eq!(
            ConnectionSet::new(&c5, &[1]),
            Err(CayleyError::NotInverseClosed {
                element: 1,
                inverse: 4
            })
        );
        assert_eq!(
            ConnectionSet::new(&c5, &[0]),
            Err(CayleyError::IdentityInSet)
        );
        assert!(matches!(
            ConnectionSet::new(&c5, &[7]),
            Err(CayleyError::OutOfRange { .. })
        ));
    }

    #[test]
    fn cycle_and_complete() {
        let c5 = Group::cyclic(5).unwrap();
        let s = ConnectionSet::new(&c5, &[1, 4]).unwrap();
        assert_eq!(cayley_graph(&c5, &s), Graph::cycle(5));
        let all = complement_set(&c5, &ConnectionSet::new(&c5, &[]).unwrap());
        assert_eq!(cayley_graph(&c5, &all), Graph::complete(5));
        assert_eq!(complement_set(&c5, &s).elements(), &[2, 3]);
    }

    #[test]
    fn edge_rule_on_nonabelian_group() {
        // In D6 with a = 3, b = 1: a*b^-1 = a*b^2 = 5.
        let d6 = Group::dihedral(3).unwrap();
        let s = ConnectionSet::new(&d6, &[5]).unwrap();
        let gr = cayley_graph(&d6, &s);
        assert!(gr.has_edge(3, 1));
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(gr.has_edge(a, b), a != b && d6.mul(a, d6.inv(b)) == 5);
            }
        }
    }

    #[test]
    fn complement_graph_matches() {
        let d8 = Group::dihedral(4).unwrap();
        let s = ConnectionSet::new(&d8, &[1, 3, 4]).unwrap();
        assert_eq!(
            cayley_graph(&d8, &complement_set(&d8, &s)),
            cayley_graph(&d8, &s).complement()
        );
    }

    #[test]
    fn connectivity() {
        let c16 = Group::cyclic(16).unwrap();
        let s = ConnectionSet::new(&c16, &[4, 12]).unwrap();
        assert!(!is_connected(&c16, &s));
        assert_eq!(cayley_graph(&c16, &s).component_count(), 4);
        assert!(is_connected(
            &c16,
            &ConnectionSet::new(&c16, &[1, 15]).unwrap()
        ));
    }

    #[test]
    fn multiplier_equivalence_on_c11() {
        let c11 = Group::cyclic(11).unwrap();
        let aut = automorphisms(&c11).unwrap();
        let s = ConnectionSet::new(&c11, &[1, 10]).unwrap();
        let t = ConnectionSet::new(&c11, &[3, 8]).unwrap();
        let sigma = ci_equivalent(&s, &t, &aut).unwrap();
        assert_eq!(s.image(&sigma), t);
        assert!(ci_equivalent(&s, &s, &aut).unwrap().is_identity());
        let gs = cayley_graph(&c11, &s);
        let gt = cayley_graph(&c11, &t);
        assert!(gs.is_isomorphism_to(&gt, &sigma.perm));
    }
}

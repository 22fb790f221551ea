//! Finite groups realized as multiplication tables.
//!
//! Every [`Group`] pins its identity at index 0. Elements are plain `usize`
//! indices into the table; the numbering is deterministic for each builder.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Permutation;

/// Largest group order any builder will produce unless told otherwise.
pub const DEFAULT_MAX_ORDER: usize = 4096;
/// Largest group order [`automorphisms`] accepts by default.
pub const DEFAULT_MAX_AUT_ORDER: usize = 256;

/// Groups up to this order get a full triple-loop associativity check.
const FULL_ASSOCIATIVITY_LIMIT: usize = 64;
const SAMPLED_TRIPLES: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order must be at least 1")]
    InvalidOrder,
    #[error("group of order {order} exceeds the configured maximum {max}")]
    SizeLimit { order: usize, max: usize },
    #[error("generator {index} acts on {found} points, expected {expected}")]
    DegreeMismatch {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("generator action is not regular: {0}")]
    NotRegular(String),
    #[error("group axiom violated: {0}")]
    Axiom(String),
}

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<usize>,
    label: String,
}

/// Serialized form of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDump {
    pub order: usize,
    pub label: String,
    /// Row-major multiplication table.
    pub mult: Vec<usize>,
    pub generators: Vec<usize>,
}

impl Group {
    /// The cyclic group `C_n` with `i * j = (i + j) mod n` and generator `1`.
    pub fn cyclic(n: usize) -> Result<Group, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidOrder);
        }
        check_limit(n, DEFAULT_MAX_ORDER)?;
        let mut mult = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                mult.push(((i + j) % n) as u32);
            }
        }
        let inv = (0..n).map(|i| ((n - i) % n) as u32).collect();
        Ok(Group {
            order: n,
            mult,
            inv,
            generators: vec![1 % n],
            label: format!("C{n}"),
        })
    }

    /// The dihedral group `D_{2n}` of order `2n`.
    ///
    /// Element `k < n` is the rotation `b^k`; element `n + k` is `a b^k`.
    /// The generators are `[a, b]` with `a` an involution, `b` of order `n`
    /// and `(a b^-1)^2 = 1`.
    pub fn dihedral(n: usize) -> Result<Group, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidOrder);
        }
        let order = 2 * n;
        check_limit(order, DEFAULT_MAX_ORDER)?;
        let decode = |x: usize| (x / n, x % n);
        let mut mult = Vec::with_capacity(order * order);
        for x in 0..order {
            let (e1, k1) = decode(x);
            for y in 0..order {
                let (e2, k2) = decode(y);
                // b^k a = a b^-k
                let k = if e2 == 1 { (n - k1) % n + k2 } else { k1 + k2 } % n;
                mult.push((((e1 + e2) % 2) * n + k) as u32);
            }
        }
        let inv = (0..order)
            .map(|x| {
                let (e, k) = decode(x);
                if e == 1 {
                    x as u32
                } else {
                    ((n - k) % n) as u32
                }
            })
            .collect();
        Ok(Group {
            order,
            mult,
            inv,
            generators: vec![n, 1 % n],
            label: format!("D{order}"),
        })
    }

    /// Direct product with the default size limit.
    pub fn direct_product(g: &Group, h: &Group) -> Result<Group, GroupError> {
        Self::direct_product_with_limit(g, h, DEFAULT_MAX_ORDER)
    }

    /// Direct product; element `(x, y)` has index `x * |h| + y`.
    pub fn direct_product_with_limit(
        g: &Group,
        h: &Group,
        max: usize,
    ) -> Result<Group, GroupError> {
        let (m, n) = (g.order, h.order);
        let order = m.checked_mul(n).ok_or(GroupError::SizeLimit {
            order: usize::MAX,
            max,
        })?;
        check_limit(order, max)?;
        let mut mult = Vec::with_capacity(order * order);
        for x1 in 0..m {
            for y1 in 0..n {
                for x2 in 0..m {
                    let gx = g.mul(x1, x2) * n;
                    for y2 in 0..n {
                        mult.push((gx + h.mul(y1, y2)) as u32);
                    }
                }
            }
        }
        let inv = (0..order)
            .map(|z| (g.inv(z / n) * n + h.inv(z % n)) as u32)
            .collect();
        let generators = g
            .generators
            .iter()
            .map(|&x| x * n)
            .chain(h.generators.iter().copied())
            .collect();
        Ok(Group {
            order,
            mult,
            inv,
            generators,
            label: format!("{}x{}", g.label, h.label),
        })
    }

    /// The permutation group generated by `gens`, as an abstract group.
    pub fn from_permutations(degree: usize, gens: &[Permutation]) -> Result<Group, GroupError> {
        Self::from_permutations_with_elements(degree, gens, DEFAULT_MAX_ORDER).map(|(g, _)| g)
    }

    /// Like [`Group::from_permutations`], also returning the permutation
    /// realizing each element index. Products compose left to right.
    pub fn from_permutations_with_elements(
        degree: usize,
        gens: &[Permutation],
        max: usize,
    ) -> Result<(Group, Vec<Permutation>), GroupError> {
        for (index, p) in gens.iter().enumerate() {
            if p.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    index,
                    found: p.degree(),
                    expected: degree,
                });
            }
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut actions: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
        let mut next = 0;
        while next < elements.len() {
            let x = elements[next].clone();
            for (gi, g) in gens.iter().enumerate() {
                let y = x.then(g);
                let target = match index.get(&y) {
                    Some(&t) => t,
                    None => {
                        if elements.len() >= max {
                            return Err(GroupError::SizeLimit {
                                order: elements.len() + 1,
                                max,
                            });
                        }
                        index.insert(y.clone(), elements.len());
                        elements.push(y);
                        elements.len() - 1
                    }
                };
                actions[gi].push(target);
            }
            next += 1;
        }
        // Discovery order above is the same breadth-first order
        // from_generator_action renumbers by, so indices line up.
        let mut group = Self::from_generator_action(elements.len(), &actions, "perm")?;
        group.label = format!("PermGroup({})", elements.len());
        Ok((group, elements))
    }

    /// Builds the group whose right regular action is given by `actions`:
    /// `actions[g][x]` is the point `x * g_g`, and point 0 is the identity.
    ///
    /// Points are renumbered in breadth-first order from 0. The action must
    /// be regular; this is verified.
    pub fn from_generator_action(
        n: usize,
        actions: &[Vec<usize>],
        label: &str,
    ) -> Result<Group, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidOrder);
        }
        for (index, a) in actions.iter().enumerate() {
            if a.len() != n {
                return Err(GroupError::DegreeMismatch {
                    index,
                    found: a.len(),
                    expected: n,
                });
            }
        }
        const NONE: usize = usize::MAX;
        let mut new_id = vec![NONE; n];
        let mut old_of = Vec::with_capacity(n);
        // tree[j] = (parent, generator) for j > 0, in the new numbering
        let mut tree: Vec<(usize, usize)> = Vec::with_capacity(n);
        new_id[0] = 0;
        old_of.push(0);
        tree.push((0, 0));
        let mut head = 0;
        while head < old_of.len() {
            let old = old_of[head];
            for (gi, a) in actions.iter().enumerate() {
                let t = a[old];
                if new_id[t] == NONE {
                    new_id[t] = old_of.len();
                    old_of.push(t);
                    tree.push((head, gi));
                }
            }
            head += 1;
        }
        if old_of.len() != n {
            return Err(GroupError::NotRegular(format!(
                "only {} of {} points reachable from the identity",
                old_of.len(),
                n
            )));
        }
        let right: Vec<Vec<usize>> = actions
            .iter()
            .map(|a| (0..n).map(|x| new_id[a[old_of[x]]]).collect())
            .collect();
        // column j of the table: x * j = (x * parent) * g
        let mut mult = vec![0u32; n * n];
        for x in 0..n {
            mult[x * n] = x as u32;
        }
        for j in 1..n {
            let (p, gi) = tree[j];
            for x in 0..n {
                mult[x * n + j] = right[gi][mult[x * n + p] as usize] as u32;
            }
        }
        let generators: Vec<usize> = right.iter().map(|r| r[0]).collect();
        let mut inv = vec![u32::MAX; n];
        for x in 0..n {
            for y in 0..n {
                if mult[x * n + y] == 0 {
                    if inv[x] != u32::MAX {
                        return Err(GroupError::NotRegular(format!(
                            "element {x} has two right inverses"
                        )));
                    }
                    inv[x] = y as u32;
                }
            }
            if inv[x] == u32::MAX {
                return Err(GroupError::NotRegular(format!(
                    "element {x} has no inverse"
                )));
            }
        }
        let group = Group {
            order: n,
            mult,
            inv,
            generators,
            label: label.to_string(),
        };
        group.check_latin()?;
        // (x g) y = x (g y) for generators g suffices for associativity.
        for &g in &group.generators {
            for x in 0..n {
                let xg = group.mul(x, g);
                for y in 0..n {
                    if group.mul(xg, y) != group.mul(x, group.mul(g, y)) {
                        return Err(GroupError::NotRegular(format!(
                            "({x}*{g})*{y} != {x}*({g}*{y})"
                        )));
                    }
                }
            }
        }
        Ok(group)
    }

    /// Builds a group from an explicit row-major table, validating every axiom.
    pub fn from_table(
        order: usize,
        mult: Vec<usize>,
        generators: Vec<usize>,
        label: &str,
    ) -> Result<Group, GroupError> {
        if order == 0 {
            return Err(GroupError::InvalidOrder);
        }
        check_limit(order, DEFAULT_MAX_ORDER)?;
        if mult.len() != order * order || mult.iter().any(|&x| x >= order) {
            return Err(GroupError::Axiom("table has the wrong shape".into()));
        }
        if generators.iter().any(|&x| x >= order) {
            return Err(GroupError::Axiom("generator out of range".into()));
        }
        let mult: Vec<u32> = mult.into_iter().map(|x| x as u32).collect();
        let mut inv = vec![0u32; order];
        for x in 0..order {
            match (0..order).find(|&y| mult[x * order + y] == 0) {
                Some(y) => inv[x] = y as u32,
                None => return Err(GroupError::Axiom(format!("element {x} has no inverse"))),
            }
        }
        let g = Group {
            order,
            mult,
            inv,
            generators,
            label: label.to_string(),
        };
        g.check_axioms()?;
        Ok(g)
    }

    pub fn from_dump(dump: &GroupDump) -> Result<Group, GroupError> {
        Self::from_table(
            dump.order,
            dump.mult.clone(),
            dump.generators.clone(),
            &dump.label,
        )
    }

    pub fn to_dump(&self) -> GroupDump {
        GroupDump {
            order: self.order,
            label: self.label.clone(),
            mult: self.mult.iter().map(|&x| x as usize).collect(),
            generators: self.generators.clone(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Group {
        self.label = label.into();
        self
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `x^k` for any integer `k`.
    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut e = k.unsigned_abs();
        let mut acc = 0;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|x| self.element_order(x)).collect()
    }

    /// Map from element order to the number of elements of that order.
    pub fn element_order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for x in 0..self.order {
            *h.entry(self.element_order(x)).or_insert(0) += 1;
        }
        h
    }

    pub fn involutions(&self) -> Vec<usize> {
        (1..self.order).filter(|&x| self.inv(x) == x).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// The subgroup generated by `elems`, as a sorted element list.
    pub fn closure(&self, elems: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut out = vec![0];
        while let Some(x) = queue.pop_front() {
            for &g in elems {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Checks the Latin-square, identity, inverse, associativity and
    /// generation invariants. Associativity is exhaustive up to order 64 and
    /// sampled (10^4 fixed-seed triples) above.
    pub fn check_axioms(&self) -> Result<(), GroupError> {
        let n = self.order;
        self.check_latin()?;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(GroupError::Axiom(format!(
                    "index 0 is not an identity at {x}"
                )));
            }
            if self.mul(x, self.inv(x)) != 0 {
                return Err(GroupError::Axiom(format!("inv[{x}] is wrong")));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| {
            if self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)) {
                Ok(())
            } else {
                Err(GroupError::Axiom(format!("({a}*{b})*{c} != {a}*({b}*{c})")))
            }
        };
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assoc(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_TRIPLES {
                assoc(
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                )?;
            }
        }
        if self.closure(&self.generators).len() != n {
            return Err(GroupError::Axiom(
                "generators do not generate the group".into(),
            ));
        }
        Ok(())
    }

    fn check_latin(&self) -> Result<(), GroupError> {
        let n = self.order;
        let mut seen = vec![0usize; n];
        for pass in 0..2 {
            for x in 0..n {
                let stamp = pass * n + x + 1;
                for y in 0..n {
                    let v = if pass == 0 {
                        self.mul(x, y)
                    } else {
                        self.mul(y, x)
                    };
                    if seen[v] == stamp {
                        let what = if pass == 0 { "row" } else { "column" };
                        return Err(GroupError::Axiom(format!("{what} {x} repeats {v}")));
                    }
                    seen[v] = stamp;
                }
            }
        }
        Ok(())
    }

    /// Permutation of the elements given by right multiplication by `h`.
    pub fn right_translation(&self, h: usize) -> Vec<usize> {
        (0..self.order).map(|x| self.mul(x, h)).collect()
    }
}

fn check_limit(order: usize, max: usize) -> Result<(), GroupError> {
    if order > max {
        Err(GroupError::SizeLimit { order, max })
    } else {
        Ok(())
    }
}

/// A group automorphism as a permutation of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    pub perm: Vec<usize>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Automorphism {
            perm: (0..n).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            perm: self.perm.iter().map(|&x| other.perm[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut perm = vec![0; self.perm.len()];
        for (i, &x) in self.perm.iter().enumerate() {
            perm[x] = i;
        }
        Automorphism { perm }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Checks `perm[x*y] = perm[x]*perm[y]` on all pairs and bijectivity.
    pub fn is_automorphism_of(&self, g: &Group) -> bool {
        let n = g.order();
        if self.perm.len() != n || self.perm[0] != 0 {
            return false;
        }
        let mut seen = vec![false; n];
        for &x in &self.perm {
            if x >= n || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        (0..n).all(|x| (0..n).all(|y| self.perm[g.mul(x, y)] == g.mul(self.perm[x], self.perm[y])))
    }
}

/// The full automorphism group, as an explicit element list.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub elements: Vec<Automorphism>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// The group containing only the identity map.
    pub fn trivial(n: usize) -> Self {
        AutGroup {
            elements: vec![Automorphism::identity(n)],
        }
    }
}

/// All automorphisms of `g`, with the default order limit.
pub fn automorphisms(g: &Group) -> Result<AutGroup, GroupError> {
    automorphisms_with_limit(g, DEFAULT_MAX_AUT_ORDER)
}

/// Backtracks over images of an irredundant generator list. Candidate images
/// have the same element order, are tried in ascending index order, and must
/// avoid the subgroup generated by the images already chosen.
pub fn automorphisms_with_limit(g: &Group, max: usize) -> Result<AutGroup, GroupError> {
    let n = g.order();
    check_limit(n, max)?;
    // Irredundant generators: each one enlarges the subgroup so far.
    let mut gens = Vec::new();
    let mut span = vec![0usize];
    for &x in g.generators() {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.closure(&gens);
        }
    }
    if gens.is_empty() {
        return Ok(AutGroup::trivial(n));
    }
    // Spanning tree of the Cayley digraph on `gens`.
    let mut tree: Vec<(usize, usize, usize)> = Vec::with_capacity(n); // (elem, parent, gen slot)
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (k, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                tree.push((y, x, k));
                queue.push_back(y);
            }
        }
    }
    let orders = g.element_orders();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| (1..n).filter(|&y| orders[y] == orders[s]).collect())
        .collect();

    let mut found = Vec::new();
    let mut images = vec![0usize; gens.len()];
    let mut phi = vec![0usize; n];
    extend_images(
        g,
        &gens,
        &candidates,
        &tree,
        0,
        &mut images,
        &mut phi,
        &mut found,
    );
    Ok(AutGroup { elements: found })
}

#[allow(clippy::too_many_arguments)]
fn extend_images(
    g: &Group,
    gens: &[usize],
    candidates: &[Vec<usize>],
    tree: &[(usize, usize, usize)],
    depth: usize,
    images: &mut Vec<usize>,
    phi: &mut Vec<usize>,
    found: &mut Vec<Automorphism>,
) {
    if depth == gens.len() {
        if let Some(a) = try_extend(g, gens, tree, images, phi) {
            found.push(a);
        }
        return;
    }
    let sub = g.closure(&images[..depth]);
    for &c in &candidates[depth] {
        if sub.binary_search(&c).is_ok() {
            continue;
        }
        images[depth] = c;
        extend_images(g, gens, candidates, tree, depth + 1, images, phi, found);
    }
}

fn try_extend(
    g: &Group,
    gens: &[usize],
    tree: &[(usize, usize, usize)],
    images: &[usize],
    phi: &mut [usize],
) -> Option<Automorphism> {
    let n = g.order();
    phi[0] = 0;
    for &(y, parent, k) in tree {
        phi[y] = g.mul(phi[parent], images[k]);
    }
    let mut hit = vec![false; n];
    for &v in phi.iter() {
        if hit[v] {
            return None;
        }
        hit[v] = true;
    }
    for x in 0..n {
        for (k, &s) in gens.iter().enumerate() {
            if phi[g.mul(x, s)] != g.mul(phi[x], images[k]) {
                return None;
            }
        }
    }
    Some(Automorphism { perm: phi.to_vec() })
}

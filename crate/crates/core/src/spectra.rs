//! Exact characteristic polynomials and related spectral tools.
//!
//! `char_poly` reduces an integer matrix modulo a run of primes below
//! 2^62, computes each characteristic polynomial from an upper Hessenberg
//! form and lifts the result with the Chinese remainder theorem. Enough
//! primes are used to exceed twice a Hadamard-type bound on the
//! coefficients, so the lift is exact. Bipartite graphs are handled through
//! the Gram matrix of the biadjacency block, which halves the dimension.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::Graph;

pub const DEFAULT_MAX_VERTICES: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectraError {
    #[error("graph has {n} vertices, above the limit of {max}")]
    SizeLimit { n: usize, max: usize },
}

/// A monic integer polynomial, coefficients stored leading first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    /// Coefficients leading first. Panics if the list is empty.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> CharPoly {
        assert!(
            !coeffs.is_empty(),
            "a polynomial needs a leading coefficient"
        );
        CharPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> CharPoly {
        CharPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x - r`.
    pub fn linear(r: i64) -> CharPoly {
        CharPoly::from_i64(&[1, -r])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> CharPoly {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = BigInt::one();
        CharPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k`.
    pub fn coeff(&self, k: usize) -> BigInt {
        let d = self.degree();
        if k > d {
            BigInt::zero()
        } else {
            self.coeffs[d - k].clone()
        }
    }

    pub fn mul(&self, other: &CharPoly) -> CharPoly {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CharPoly { coeffs: out }
    }

    pub fn pow(&self, k: u32) -> CharPoly {
        (0..k).fold(CharPoly::monomial(0), |acc, _| acc.mul(self))
    }

    /// The polynomial whose roots are `k` times the roots of `self`.
    pub fn scale_roots(&self, k: i64) -> CharPoly {
        let k = BigInt::from(k);
        let mut factor = BigInt::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &factor);
            factor *= &k;
        }
        CharPoly { coeffs }
    }

    /// Value at an integer point (Horner).
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("CharPoly serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct CharPolyJson {
    degree: usize,
    coeffs: Vec<String>,
}

impl Serialize for CharPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CharPolyJson {
            degree: self.degree(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CharPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = CharPolyJson::deserialize(d)?;
        if raw.coeffs.len() != raw.degree + 1 {
            return Err(D::Error::custom("coefficient count does not match degree"));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| c.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CharPoly { coeffs })
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = d - i;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            if !mag.is_one() || power == 0 {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{power}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Strongly regular parameters `(v, k, lambda, mu)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

pub fn char_poly(graph: &Graph) -> Result<CharPoly, SpectraError> {
    char_poly_with_limit(graph, DEFAULT_MAX_VERTICES)
}

pub fn char_poly_with_limit(graph: &Graph, max: usize) -> Result<CharPoly, SpectraError> {
    let n = graph.n();
    if n > max {
        return Err(SpectraError::SizeLimit { n, max });
    }
    if let Some((left, right)) = bipartition(graph) {
        // det(xI - A) = x^(m - k) det(x^2 I - B^T B), B the m x k biadjacency
        // block with m >= k.
        let (big, small) = if left.len() >= right.len() {
            (left, right)
        } else {
            (right, left)
        };
        let gram: Vec<Vec<i64>> = small
            .iter()
            .map(|&u| {
                small
                    .iter()
                    .map(|&v| {
                        if u == v {
                            graph.degree(u) as i64
                        } else {
                            graph.common_neighbors(u, v) as i64
                        }
                    })
                    .collect()
            })
            .collect();
        let q = char_poly_integer(&gram);
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (i, c) in q.coeffs.into_iter().enumerate() {
            coeffs[2 * i] = c;
        }
        debug_assert_eq!(2 * small.len() + (big.len() - small.len()), n);
        return Ok(CharPoly { coeffs });
    }
    Ok(char_poly_integer(&graph.adjacency_matrix()))
}

/// Two colour classes if the graph is bipartite and has an edge.
fn bipartition(graph: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    if graph.edge_count() == 0 {
        return None;
    }
    let n = graph.n();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in graph.neighbors(u) {
                if side[v] == u8::MAX {
                    side[v] = 1 - side[u];
                    stack.push(v);
                } else if side[v] == side[u] {
                    return None;
                }
            }
        }
    }
    let left = (0..n).filter(|&v| side[v] == 0).collect();
    let right = (0..n).filter(|&v| side[v] == 1).collect();
    Some((left, right))
}

/// Exact characteristic polynomial of a square integer matrix.
fn char_poly_integer(m: &[Vec<i64>]) -> CharPoly {
    let n = m.len();
    if n == 0 {
        return CharPoly::monomial(0);
    }
    // |c_k| <= C(n,k) * (product of the k largest row norms) by Hadamard
    // on principal minors, so every coefficient is below 2^n * prod max(1, r_i).
    let log_rows: f64 = m
        .iter()
        .map(|row| {
            let sq: f64 = row.iter().map(|&x| (x as f64) * (x as f64)).sum();
            sq.sqrt().max(1.0).log2()
        })
        .sum();
    let bound_bits = (n as f64 + log_rows).ceil() as u64 + 2;

    let mut modulus = BigUint::one();
    let mut residues: Vec<BigUint> = vec![BigUint::zero(); n + 1];
    let mut primes = PrimesBelow::new(1 << 62);
    while modulus.bits() <= bound_bits {
        let p = primes.next().expect("enough 62-bit primes");
        let local = char_poly_mod(m, &Montgomery::new(p));
        crt_step(&mut residues, &mut modulus, &local, p);
    }
    let half = &modulus >> 1;
    let modulus_signed = BigInt::from_biguint(Sign::Plus, modulus.clone());
    let coeffs = residues
        .into_iter()
        .map(|r| {
            let big = BigInt::from_biguint(Sign::Plus, r.clone());
            if r > half {
                big - &modulus_signed
            } else {
                big
            }
        })
        .collect();
    CharPoly { coeffs }
}

/// Garner-style update of every coefficient with one more residue.
fn crt_step(residues: &mut [BigUint], modulus: &mut BigUint, local: &[u64], p: u64) {
    let m_mod_p = (&*modulus % p).to_u64().unwrap();
    let m_inv = pow_mod_u128(m_mod_p, p - 2, p);
    for (r, &lp) in residues.iter_mut().zip(local) {
        let r_mod_p = (&*r % p).to_u64().unwrap();
        let t = ((lp + p - r_mod_p) as u128 % p as u128 * m_inv as u128 % p as u128) as u64;
        if t != 0 {
            *r += &*modulus * t;
        }
    }
    *modulus *= p;
}

fn pow_mod_u128(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Montgomery arithmetic modulo an odd `p < 2^63` with `R = 2^64`.
struct Montgomery {
    p: u64,
    p_neg_inv: u64,
    r2: u64,
}

impl Montgomery {
    fn new(p: u64) -> Self {
        // Newton iteration for p^-1 mod 2^64.
        let mut inv = 1u64;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = (r as u128 * r as u128 % p as u128) as u64;
        Montgomery {
            p,
            p_neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.p_neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn to_mont(&self, x: i64) -> u64 {
        let r = x.rem_euclid(self.p as i64) as u64;
        self.mul(r, self.r2)
    }

    fn out_of_mont(&self, x: u64) -> u64 {
        self.reduce(x as u128)
    }

    fn inv(&self, a: u64) -> u64 {
        let mut acc = self.to_mont(1);
        let mut base = a;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Descending primes below a start value.
struct PrimesBelow {
    next: u64,
}

impl PrimesBelow {
    fn new(start: u64) -> Self {
        PrimesBelow { next: start - 1 }
    }
}

impl Iterator for PrimesBelow {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while self.next > 2 {
            let c = self.next;
            self.next -= 1;
            if c % 2 == 1 && is_prime_u64(c) {
                return Some(c);
            }
        }
        None
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Characteristic polynomial over GF(p), coefficients leading first.
fn char_poly_mod(m: &[Vec<i64>], f: &Montgomery) -> Vec<u64> {
    let n = m.len();
    let mut h: Vec<Vec<u64>> = m
        .iter()
        .map(|r| r.iter().map(|&x| f.to_mont(x)).collect())
        .collect();

    // Reduce to upper Hessenberg form by similarity transforms.
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = f.inv(h[j + 1][j]);
        for k in j + 2..n {
            if h[k][j] == 0 {
                continue;
            }
            let u = f.mul(h[k][j], inv);
            // row_k -= u * row_{j+1}
            let (upper, lower) = h.split_at_mut(k);
            let src = &upper[j + 1];
            let dst = &mut lower[0];
            for (d, &s) in dst[j..].iter_mut().zip(&src[j..]) {
                if s != 0 {
                    *d = f.sub(*d, f.mul(u, s));
                }
            }
            // col_{j+1} += u * col_k
            for row in h.iter_mut() {
                if row[k] != 0 {
                    row[j + 1] = f.add(row[j + 1], f.mul(u, row[k]));
                }
            }
        }
    }

    // polys[m] = char poly of the leading m x m block, low degree first.
    let one = f.to_mont(1);
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![one]);
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            next[i] = f.sub(next[i], f.mul(h[k][k], c));
        }
        let mut t = one;
        for i in (0..k).rev() {
            t = f.mul(t, h[i + 1][i]);
            if t == 0 {
                break;
            }
            let coef = f.mul(h[i][k], t);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(coef, c));
            }
        }
        polys.push(next);
    }
    let mut out: Vec<u64> = polys
        .pop()
        .unwrap()
        .into_iter()
        .map(|x| f.out_of_mont(x))
        .collect();
    out.reverse();
    out
}

pub fn cospectral(a: &Graph, b: &Graph) -> Result<bool, SpectraError> {
    cospectral_with_limit(a, b, DEFAULT_MAX_VERTICES)
}

pub fn cospectral_with_limit(a: &Graph, b: &Graph, max: usize) -> Result<bool, SpectraError> {
    Ok(a.n() == b.n() && char_poly_with_limit(a, max)? == char_poly_with_limit(b, max)?)
}

/// Eigenvalues of the adjacency matrix, descending.
pub fn eigenvalues_approx(graph: &Graph) -> Vec<f64> {
    let n = graph.n();
    let m = DMatrix::from_fn(n, n, |i, j| f64::from(u8::from(graph.has_edge(i, j))));
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

/// Parameters if the graph is strongly regular (and neither complete nor
/// edgeless).
pub fn srg_params(graph: &Graph) -> Option<SrgParams> {
    let v = graph.n();
    let k = graph.regular_degree()?;
    if k == 0 || k + 1 == v {
        return None;
    }
    let (mut lambda, mut mu) = (None, None);
    for a in 0..v {
        for b in a + 1..v {
            let c = graph.common_neighbors(a, b);
            let slot = if graph.has_edge(a, b) {
                &mut lambda
            } else {
                &mut mu
            };
            match *slot {
                None => *slot = Some(c),
                Some(x) if x != c => return None,
                _ => {}
            }
        }
    }
    Some(SrgParams {
        v,
        k,
        lambda: lambda?,
        mu: mu?,
    })
}

/// Graph with adjacency `J_k (x) A`: vertex `i*n + u` is adjacent to `j*n + v`
/// whenever `u ~ v`.
pub fn tensor_all_ones(graph: &Graph, k: usize) -> Graph {
    assert!(k >= 1, "k must be positive");
    let n = graph.n();
    let mut out = Graph::empty(k * n);
    for (u, v) in graph.edges() {
        for i in 0..k {
            for j in 0..k {
                out.add_edge(i * n + u, j * n + v);
            }
        }
    }
    out
}

/// Expected char poly of `J_k (x) A` from that of `A`: roots scaled by `k`
/// and `(k-1)n` extra zeros.
pub fn tensor_char_poly(p: &CharPoly, k: usize) -> CharPoly {
    p.scale_roots(k as i64)
        .mul(&CharPoly::monomial((k - 1) * p.degree()))
}

//! Finite fields GF(p^r) with p^r at most 10^4.
//!
//! An element is encoded as the integer `sum c_i p^i`, where `c_i` is the
//! coefficient of `t^i` in its polynomial representative. With this
//! encoding the additive group is the direct product `C_p x ... x C_p`
//! built by `Group::direct_product` (most significant digit first).

use thiserror::Error;

use crate::group::{Group, GroupError};

pub const MAX_FIELD_ORDER: u64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds {MAX_FIELD_ORDER}")]
    TooLarge(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("no irreducible polynomial found")]
    NoModulus,
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    r: u32,
    q: u64,
    /// Monic modulus, lowest coefficient first (length r + 1).
    modulus: Vec<u64>,
    primitive: u64,
    exp: Vec<u64>,
    log: Vec<u64>,
}

pub fn is_prime(n: u64) -> bool {
    crate::spectra::is_prime_u64(n)
}

/// `(p, r)` with `q = p^r`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = 0;
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
        r += 1;
    }
    (m == 1).then_some((p, r))
}

fn digits(x: u64, p: u64, r: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(r as usize);
    let mut x = x;
    for _ in 0..r {
        out.push(x % p);
        x /= p;
    }
    out
}

fn encode(c: &[u64], p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic `m` over GF(p), low degree first.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let shift = a.len() - dm;
            for i in 0..dm {
                a[shift + i] = (a[shift + i] + p - lead * m[i] % p) % p;
            }
        }
    }
    a
}

fn poly_mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

/// Monic polynomials of degree `d`, by increasing encoding of the lower
/// coefficients.
fn monic_polys(d: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    (0..p.pow(d as u32)).map(move |x| {
        let mut c = digits(x, p, d as u32);
        c.push(1);
        c
    })
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    for k in 1..=d / 2 {
        for g in monic_polys(k, p) {
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FiniteField {
    pub fn new(p: u64, r: u32) -> Result<FiniteField, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if r == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = p.checked_pow(r).filter(|&q| q <= MAX_FIELD_ORDER);
        let q = q.ok_or(FieldError::TooLarge(p.saturating_pow(r)))?;
        let modulus = if r == 1 {
            vec![0, 1]
        } else {
            monic_polys(r as usize, p)
                .find(|f| is_irreducible(f, p))
                .ok_or(FieldError::NoModulus)?
        };
        let mut field = FiniteField {
            p,
            r,
            q,
            modulus,
            primitive: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let factors = prime_factors(q - 1);
        let primitive = (1..q)
            .find(|&g| factors.iter().all(|&l| field.slow_pow(g, (q - 1) / l) != 1))
            .ok_or(FieldError::NoModulus)?;
        field.primitive = primitive;
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u64; q as usize];
        let mut x = 1u64;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = field.slow_mul(x, primitive);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn of_order(q: u64) -> Result<FiniteField, FieldError> {
        let (p, r) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        FiniteField::new(p, r)
    }

    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        let da = digits(a, self.p, self.r);
        let db = digits(b, self.p, self.r);
        encode(&poly_mul_mod(&da, &db, &self.modulus, self.p), self.p)
    }

    fn slow_pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn primitive(&self) -> u64 {
        self.primitive
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.r {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        let d: Vec<u64> = digits(a, self.p, self.r)
            .into_iter()
            .map(|c| (self.p - c) % self.p)
            .collect();
        encode(&d, self.p)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.exp[((self.q - 1 - self.log[a as usize]) % (self.q - 1)) as usize])
    }

    /// `g^k` for the primitive element `g`.
    pub fn primitive_power(&self, k: u64) -> u64 {
        self.exp[(k % (self.q - 1)) as usize]
    }

    pub fn log(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn mult_order(&self, a: u64) -> Option<u64> {
        let l = self.log(a)?;
        Some((self.q - 1) / num_integer::gcd(l, self.q - 1))
    }

    /// Non-zero squares, sorted by encoding.
    pub fn squares(&self) -> Vec<u64> {
        self.power_classes(2, &[0])
    }

    /// `{g^j : j mod m in classes}`, sorted by encoding.
    pub fn power_classes(&self, m: u64, classes: &[u64]) -> Vec<u64> {
        let mut out: Vec<u64> = (0..self.q - 1)
            .filter(|j| classes.contains(&(j % m)))
            .map(|j| self.exp[j as usize])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The additive group, with element index equal to the field encoding.
    pub fn additive_group(&self) -> Result<Group, GroupError> {
        let cp = Group::cyclic(self.p as usize)?;
        let mut g = cp.clone();
        for _ in 1..self.r {
            g = Group::direct_product(&g, &cp)?;
        }
        Ok(g.with_label(format!("GF({})+", self.q)))
    }
}

pub fn gf(p: u64, r: u32) -> Result<FiniteField, FieldError> {
    FiniteField::new(p, r)
}

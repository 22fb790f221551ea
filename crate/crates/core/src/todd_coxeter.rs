//! Coset enumeration over the trivial subgroup (HLT strategy with
//! immediate coincidence processing).

use thiserror::Error;

use crate::group::{Group, GroupError};
use crate::presentation::{parse_presentation, ParseError, Presentation};

pub const DEFAULT_MAX_COSETS: usize = 100_000;

/// The table may hold this many rows (live or dead) per allowed live coset.
const ROWS_PER_LIVE_COSET: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("coset enumeration overflow: more than {limit} {what} cosets (group may be infinite or too large)")]
    Overflow { limit: usize, what: &'static str },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

const NONE: u32 = u32::MAX;

struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max_live: usize,
    max_rows: usize,
    queue: Vec<u32>,
}

impl CosetTable {
    fn new(ngens: usize, max_live: usize) -> Self {
        let cols = 2 * ngens;
        CosetTable {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            live: 1,
            max_live,
            max_rows: max_live.saturating_mul(ROWS_PER_LIVE_COSET).max(1024),
            queue: Vec::new(),
        }
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, v: u32) {
        self.table[c * self.cols + x] = v;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), EnumerationError> {
        if self.live >= self.max_live {
            return Err(EnumerationError::Overflow {
                limit: self.max_live,
                what: "live",
            });
        }
        if self.rows() >= self.max_rows {
            return Err(EnumerationError::Overflow {
                limit: self.max_rows,
                what: "total",
            });
        }
        let d = self.rows();
        self.parent.push(d as u32);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        self.set(c, x, d as u32);
        self.set(d, x ^ 1, c as u32);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut x = c;
        while self.parent[x] as usize != r {
            let next = self.parent[x] as usize;
            self.parent[x] = r as u32;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill] = keep as u32;
        self.live -= 1;
        self.queue.push(kill as u32);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i] as usize;
            i += 1;
            for x in 0..self.cols {
                let d = self.get(dead, x);
                if d == NONE {
                    continue;
                }
                let d = d as usize;
                // d^(x^-1) pointed back at `dead`
                self.set(d, x ^ 1, NONE);
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mux = self.get(mu, x);
                if mux != NONE {
                    self.merge(nu, mux as usize);
                } else {
                    let nux = self.get(nu, x ^ 1);
                    if nux != NONE {
                        self.merge(mu, nux as usize);
                    } else {
                        self.set(mu, x, nu as u32);
                        self.set(nu, x ^ 1, mu as u32);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<(), EnumerationError> {
        let r = word.len();
        let (mut f, mut b) = (c, c);
        let mut i = 0usize; // next letter from the front
        let mut j = r; // one past the next letter from the back
        loop {
            while i < j {
                let t = self.get(f, word[i]);
                if t == NONE {
                    break;
                }
                f = t as usize;
                i += 1;
            }
            if i >= j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let t = self.get(b, word[j - 1] ^ 1);
                if t == NONE {
                    break;
                }
                b = t as usize;
                j -= 1;
            }
            if j <= i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                // deduction
                self.set(f, word[i], b as u32);
                self.set(b, word[i] ^ 1, f as u32);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }
}

/// Converts a relator to table columns (`2g` for `g`, `2g+1` for `g^-1`),
/// freely and cyclically reduced.
fn relator_columns(p: &Presentation) -> Vec<Vec<usize>> {
    p.relators
        .iter()
        .map(|r| {
            let mut letters = r.free_reduced_letters();
            while letters.len() >= 2 {
                let (g0, e0) = letters[0];
                let (g1, e1) = letters[letters.len() - 1];
                if g0 == g1 && e0 == -e1 {
                    letters.pop();
                    letters.remove(0);
                } else {
                    break;
                }
            }
            letters
                .into_iter()
                .map(|(g, e)| 2 * g + usize::from(e < 0))
                .collect::<Vec<_>>()
        })
        .filter(|w: &Vec<usize>| !w.is_empty())
        .collect()
}

/// Enumerates cosets of the trivial subgroup and returns the group given by
/// the regular representation. The returned generators correspond to the
/// presentation's letters in order.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> Result<Group, EnumerationError> {
    let ngens = p.generator_count();
    let relators = relator_columns(p);
    let mut t = CosetTable::new(ngens, max_cosets.max(1));
    let mut c = 0;
    while c < t.rows() {
        if t.is_live(c) {
            for w in &relators {
                t.scan_and_fill(c, w)?;
                if !t.is_live(c) {
                    break;
                }
            }
            if t.is_live(c) {
                for x in 0..t.cols {
                    if t.get(c, x) == NONE {
                        t.define(c, x)?;
                    }
                }
            }
        }
        c += 1;
    }

    let live: Vec<usize> = (0..t.rows()).filter(|&c| t.is_live(c)).collect();
    let mut index = vec![usize::MAX; t.rows()];
    for (i, &c) in live.iter().enumerate() {
        index[c] = i;
    }
    let mut actions = vec![Vec::with_capacity(live.len()); ngens];
    for &c in &live {
        for (g, action) in actions.iter_mut().enumerate() {
            let target = t.get(c, 2 * g);
            debug_assert_ne!(target, NONE);
            let target = t.rep(target as usize);
            action.push(index[target]);
        }
    }
    let label = format!("<{}>", p.render());
    Ok(Group::from_generator_action(live.len(), &actions, &label)?)
}

/// `max_cosets` rule: ten times the expected order when one is known.
pub fn default_max_cosets(expected_order: Option<usize>) -> usize {
    expected_order.map_or(DEFAULT_MAX_COSETS, |n| 10 * n.max(1))
}

/// Parses and enumerates a presentation in one step.
pub fn realize(text: &str, expected_order: Option<usize>) -> Result<Group, EnumerationError> {
    let p = parse_presentation(text)?;
    todd_coxeter(&p, default_max_cosets(expected_order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::verify_presentation;

    #[test]
    fn small_examples() {
        let d16 = realize("a,b | a^2=b^2=1, (ab)^8=1", None).unwrap();
        assert_eq!(d16.order(), 16);
        let g27 = realize("a,b | a^9=b^3=1, b^-1ab=a^-2", None).unwrap();
        assert_eq!(g27.order(), 27);
        let g56 = realize("a,b | a^7=b^2=(aba^-1b)^2=aba^-3(ba)^2=1", None).unwrap();
        assert_eq!(g56.order(), 56);
        assert_eq!(realize("a | a^5=1", None).unwrap().order(), 5);
        assert_eq!(realize("a | a=1", None).unwrap().order(), 1);
    }

    #[test]
    fn round_trip_verifies() {
        for text in [
            "a,b | a^2=b^2=1, (ab)^8=1",
            "a,b | a^4=b^4=1, a^2=b^2, (ab)^3=ba^-1",
            "a,b | a^9=b^3=1, b^-1ab=a^-2",
            "a,b,c | a^3=b^3=c^3=1, ab=ba, ac=ca, bc=cb",
        ] {
            let p = parse_presentation(text).unwrap();
            let g = todd_coxeter(&p, DEFAULT_MAX_COSETS).unwrap();
            g.check_axioms().unwrap();
            assert!(verify_presentation(&g, &p, g.generators()), "{text}");
        }
    }

    #[test]
    fn overflow_on_infinite_group() {
        let err = realize("a,b | ab=ba", Some(50)).unwrap_err();
        assert!(matches!(err, EnumerationError::Overflow { .. }));
        let err = realize("a | a^1000=1", Some(10)).unwrap_err();
        assert!(matches!(err, EnumerationError::Overflow { .. }));
    }

    #[test]
    fn matches_builtin_dihedral() {
        for n in 2..12 {
            let text = format!("a,b | a^2=b^{n}=1, (ab^-1)^2=1");
            let g = realize(&text, None).unwrap();
            assert_eq!(g.order(), 2 * n);
            let p = parse_presentation(&text).unwrap();
            let d = Group::dihedral(n).unwrap();
            assert!(verify_presentation(&d, &p, d.generators()));
            assert_eq!(g.element_order_histogram(), d.element_order_histogram());
        }
    }
}

//! Permutations of `0..degree` and cycle notation.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} appears twice")]
    RepeatedPoint(usize),
    #[error("malformed cycle notation at byte {offset}: {reason}")]
    Syntax { offset: usize, reason: &'static str },
    #[error("image list is not a permutation")]
    NotBijective,
}

/// A permutation stored as its image list: `self.0[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(PermError::NotBijective);
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for &p in cycle.iter() {
                if p >= degree {
                    return Err(PermError::PointOutOfRange {
                        point: p + 1,
                        degree,
                    });
                }
                if seen[p] {
                    return Err(PermError::RepeatedPoint(p + 1));
                }
                seen[p] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation(images))
    }

    /// Parses 1-based cycle notation such as `(1,2)(3,4,5)` or `(1 2)(3 4 5)`.
    /// The empty string and `()` denote the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self, PermError> {
        let bytes = text.as_bytes();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b' ' | b'\t' => i += 1,
                b'(' => {
                    i += 1;
                    let mut cycle = Vec::new();
                    loop {
                        while i < bytes.len() && matches!(bytes[i], b' ' | b',' | b'\t') {
                            i += 1;
                        }
                        if i >= bytes.len() {
                            return Err(PermError::Syntax {
                                offset: i,
                                reason: "unclosed cycle",
                            });
                        }
                        if bytes[i] == b')' {
                            i += 1;
                            break;
                        }
                        let start = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        if start == i {
                            return Err(PermError::Syntax {
                                offset: i,
                                reason: "expected a point",
                            });
                        }
                        let point: usize =
                            text[start..i].parse().map_err(|_| PermError::Syntax {
                                offset: start,
                                reason: "point too large",
                            })?;
                        if point == 0 || point > degree {
                            return Err(PermError::PointOutOfRange { point, degree });
                        }
                        cycle.push(point - 1);
                    }
                    cycles.push(cycle);
                }
                _ => {
                    return Err(PermError::Syntax {
                        offset: i,
                        reason: "expected '('",
                    })
                }
            }
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self` followed by `other` (left-to-right composition): `x -> other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

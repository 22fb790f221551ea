//! Words over named generators and finite group presentations.
//!
//! Grammar (ASCII only):
//!
//! ```text
//! word := "1" | atom+
//! atom := (letter | "(" word ")") ("^" "-"? digits)?
//! presentation := letters-separated-by-commas "|" chain ("," chain)*
//! chain := word ("=" word)+
//! ```

use std::fmt;

use thiserror::Error;

use crate::group::Group;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty word at byte {offset}")]
    Empty { offset: usize },
    #[error("unknown generator '{letter}' at byte {offset}")]
    UnknownLetter { letter: char, offset: usize },
    #[error("unbalanced parenthesis at byte {offset}")]
    Unbalanced { offset: usize },
    #[error("zero exponent at byte {offset}")]
    ZeroExponent { offset: usize },
    #[error("malformed exponent at byte {offset}")]
    BadExponent { offset: usize },
    #[error("unexpected character '{found}' at byte {offset}")]
    Unexpected { found: char, offset: usize },
    #[error("relation '{text}' needs at least one '='")]
    MalformedRelation { text: String },
    #[error("malformed generator list: {0}")]
    BadGenerators(String),
    #[error("missing '|' between generators and relations")]
    MissingBar,
}

/// A word in the free group: a sequence of (generator index, exponent)
/// factors. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord {
    pub factors: Vec<(usize, i32)>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn generator(index: usize) -> Self {
        GroupWord {
            factors: vec![(index, 1)],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord {
            factors: self.factors.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &GroupWord) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        GroupWord { factors }
    }

    /// Total letter count, counting `a^-3` as three.
    pub fn length(&self) -> usize {
        self.factors
            .iter()
            .map(|&(_, e)| e.unsigned_abs() as usize)
            .sum()
    }

    /// Expands into single letters `(generator, +1 | -1)` and cancels
    /// adjacent inverse pairs.
    pub fn free_reduced_letters(&self) -> Vec<(usize, i32)> {
        let mut out: Vec<(usize, i32)> = Vec::with_capacity(self.length());
        for &(g, e) in &self.factors {
            let s = e.signum();
            for _ in 0..e.unsigned_abs() {
                match out.last() {
                    Some(&(h, t)) if h == g && t == -s => {
                        out.pop();
                    }
                    _ => out.push((g, s)),
                }
            }
        }
        out
    }

    /// Renders the word with the given generator letters; `1` for the identity.
    pub fn render(&self, names: &[char]) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        let mut s = String::new();
        for &(g, e) in &self.factors {
            s.push(names[g]);
            if e != 1 {
                s.push('^');
                s.push_str(&e.to_string());
            }
        }
        s
    }
}

/// Parses a word such as `aba^-3(ba)^2` over the given generator letters.
pub fn parse_word(text: &str, names: &[char]) -> Result<GroupWord, ParseError> {
    let mut p = WordParser {
        bytes: text.as_bytes(),
        pos: 0,
        names,
    };
    p.skip_ws();
    if p.pos == p.bytes.len() {
        return Err(ParseError::Empty { offset: p.pos });
    }
    // lone "1"
    let trimmed = text.trim();
    if trimmed == "1" {
        return Ok(GroupWord::identity());
    }
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        let c = p.bytes[p.pos] as char;
        return Err(if c == ')' {
            ParseError::Unbalanced { offset: p.pos }
        } else {
            ParseError::Unexpected {
                found: c,
                offset: p.pos,
            }
        });
    }
    Ok(w)
}

struct WordParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    names: &'a [char],
}

impl WordParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<GroupWord, ParseError> {
        let start = self.pos;
        let mut out = GroupWord::identity();
        loop {
            self.skip_ws();
            if self.pos >= self.bytes.len() {
                break;
            }
            let c = self.bytes[self.pos];
            let base = if c == b'(' {
                let open = self.pos;
                self.pos += 1;
                self.skip_ws();
                let inner = if self.bytes.get(self.pos) == Some(&b'1') {
                    self.pos += 1;
                    GroupWord::identity()
                } else {
                    self.word()?
                };
                self.skip_ws();
                if self.bytes.get(self.pos) != Some(&b')') {
                    return Err(ParseError::Unbalanced { offset: open });
                }
                self.pos += 1;
                inner
            } else if c.is_ascii_alphabetic() {
                let letter = c as char;
                let g = self.names.iter().position(|&n| n == letter).ok_or(
                    ParseError::UnknownLetter {
                        letter,
                        offset: self.pos,
                    },
                )?;
                self.pos += 1;
                GroupWord::generator(g)
            } else {
                break;
            };
            let exp = self.exponent()?;
            if let [(g, 1)] = base.factors[..] {
                out.factors.push((g, exp));
                continue;
            }
            let unit = if exp < 0 { base.inverse() } else { base };
            for _ in 0..exp.unsigned_abs() {
                out.factors.extend_from_slice(&unit.factors);
            }
        }
        if self.pos == start || (out.factors.is_empty() && self.pos == start) {
            return Err(ParseError::Empty { offset: start });
        }
        Ok(out)
    }

    fn exponent(&mut self) -> Result<i32, ParseError> {
        if self.bytes.get(self.pos) != Some(&b'^') {
            return Ok(1);
        }
        let at = self.pos;
        self.pos += 1;
        let neg = if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let digits_start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return Err(ParseError::BadExponent { offset: at });
        }
        let text = std::str::from_utf8(&self.bytes[digits_start..self.pos]).unwrap();
        let value: i32 = text
            .parse()
            .map_err(|_| ParseError::BadExponent { offset: at })?;
        if value == 0 {
            return Err(ParseError::ZeroExponent { offset: at });
        }
        Ok(if neg { -value } else { value })
    }
}

/// A finite presentation `<generators | relators>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generator_names: Vec<char>,
    pub relators: Vec<GroupWord>,
}

impl Presentation {
    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    fn with_generators(gens: &str) -> Result<Self, ParseError> {
        let mut names = Vec::new();
        for part in gens.split(',') {
            let part = part.trim();
            let mut chars = part.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if c.is_ascii_alphabetic() => {
                    if names.contains(&c) {
                        return Err(ParseError::BadGenerators(format!("'{c}' repeated")));
                    }
                    names.push(c);
                }
                _ => {
                    return Err(ParseError::BadGenerators(format!(
                        "'{part}' is not a single letter"
                    )))
                }
            }
        }
        Ok(Presentation {
            generator_names: names,
            relators: Vec::new(),
        })
    }

    /// Adds relators for a chain `w1=w2=...=wk`: `w_i w_{i+1}^-1` for each
    /// consecutive pair.
    fn push_chain(&mut self, chain: &str) -> Result<(), ParseError> {
        let parts: Vec<&str> = chain.split('=').collect();
        if parts.len() < 2 {
            return Err(ParseError::MalformedRelation {
                text: chain.trim().to_string(),
            });
        }
        let words = parts
            .iter()
            .map(|p| parse_word(p, &self.generator_names))
            .collect::<Result<Vec<_>, _>>()?;
        for pair in words.windows(2) {
            self.relators.push(pair[0].concat(&pair[1].inverse()));
        }
        Ok(())
    }

    pub fn render(&self) -> String {
        let gens: Vec<String> = self.generator_names.iter().map(|c| c.to_string()).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| format!("{}=1", r.render(&self.generator_names)))
            .collect();
        format!("{} | {}", gens.join(","), rels.join(", "))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Parses `<gens> | <relation list>`, e.g. `a,b | a^2=b^2=1, (ab)^8=1`.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let (gens, rels) = text.split_once('|').ok_or(ParseError::MissingBar)?;
    let mut p = Presentation::with_generators(gens)?;
    for chain in rels.split(',') {
        if chain.trim().is_empty() {
            continue;
        }
        p.push_chain(chain)?;
    }
    Ok(p)
}

/// Parses the line-oriented file format: a first line `gens: a,b,...`
/// followed by one relation chain per line. Blank lines and lines starting
/// with `#` are ignored.
pub fn parse_presentation_file(text: &str) -> Result<Presentation, ParseError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let first = lines
        .next()
        .ok_or_else(|| ParseError::BadGenerators("missing 'gens:' line".into()))?;
    let gens = first
        .strip_prefix("gens:")
        .ok_or_else(|| ParseError::BadGenerators("first line must start with 'gens:'".into()))?;
    let mut p = Presentation::with_generators(gens)?;
    for line in lines {
        p.push_chain(line)?;
    }
    Ok(p)
}

/// Left-to-right product of the assigned images raised to their exponents.
pub fn evaluate_word(g: &Group, assignment: &[usize], w: &GroupWord) -> usize {
    w.factors.iter().fold(0, |acc, &(gen, e)| {
        g.mul(acc, g.pow(assignment[gen], e as i64))
    })
}

/// True iff every relator evaluates to the identity and the assigned images
/// generate `g`.
pub fn verify_presentation(g: &Group, p: &Presentation, assignment: &[usize]) -> bool {
    if assignment.len() != p.generator_count() || assignment.iter().any(|&x| x >= g.order()) {
        return false;
    }
    p.relators
        .iter()
        .all(|r| evaluate_word(g, assignment, r) == 0)
        && g.closure(assignment).len() == g.order()
}

#[cfg(test)]
mod tests {
    use super::*;

    const AB: [char; 2] = ['a', 'b'];

    fn w(f: &[(usize, i32)]) -> GroupWord {
        GroupWord {
            factors: f.to_vec(),
        }
    }

    #[test]
    fn word_examples() {
        assert_eq!(parse_word("1", &AB).unwrap(), GroupWord::identity());
        let ab8 = parse_word("(ab)^8", &AB).unwrap();
        assert_eq!(ab8.factors.len(), 16);
        assert!(ab8.factors.chunks(2).all(|c| c == [(0, 1), (1, 1)]));
        assert_eq!(
            parse_word("aba^-3(ba)^2", &AB).unwrap(),
            w(&[(0, 1), (1, 1), (0, -3), (1, 1), (0, 1), (1, 1), (0, 1)])
        );
    }

    #[test]
    fn negative_powers_invert_groups() {
        assert_eq!(
            parse_word("(ab^2)^-2", &AB).unwrap(),
            w(&[(1, -2), (0, -1), (1, -2), (0, -1)])
        );
    }

    #[test]
    fn word_errors() {
        assert!(matches!(
            parse_word("abc", &AB),
            Err(ParseError::UnknownLetter {
                letter: 'c',
                offset: 2
            })
        ));
        assert!(matches!(
            parse_word("(ab", &AB),
            Err(ParseError::Unbalanced { offset: 0 })
        ));
        assert!(matches!(
            parse_word("ab)", &AB),
            Err(ParseError::Unbalanced { offset: 2 })
        ));
        assert!(matches!(
            parse_word("a^0", &AB),
            Err(ParseError::ZeroExponent { offset: 1 })
        ));
        assert!(matches!(parse_word("", &AB), Err(ParseError::Empty { .. })));
        assert!(matches!(
            parse_word("a^", &AB),
            Err(ParseError::BadExponent { .. })
        ));
        assert!(matches!(
            parse_word("()", &AB),
            Err(ParseError::Empty { .. })
        ));
    }

    #[test]
    fn presentation_examples() {
        let p = parse_presentation("a | a^5=1").unwrap();
        assert_eq!(p.relators, vec![w(&[(0, 5)])]);

        let d16 = parse_presentation("a,b | a^2=b^2=1, (ab)^8=1").unwrap();
        assert_eq!(d16.relators.len(), 3);
        assert_eq!(d16.relators[0], w(&[(0, 2), (1, -2)]));
        assert_eq!(d16.relators[1], w(&[(1, 2)]));
        assert_eq!(d16.relators[2], parse_word("(ab)^8", &AB).unwrap());

        let q16 = parse_presentation("a,b | a^4=b^4=1, a^2=b^2, (ab)^3=ba^-1").unwrap();
        assert_eq!(q16.relators.len(), 4);
        assert_eq!(q16.relators[0], w(&[(0, 4), (1, -4)]));
        assert_eq!(q16.relators[1], w(&[(1, 4)]));
        assert_eq!(q16.relators[2], w(&[(0, 2), (1, -2)]));
        assert_eq!(
            q16.relators[3],
            parse_word("(ab)^3", &AB)
                .unwrap()
                .concat(&parse_word("ba^-1", &AB).unwrap().inverse())
        );
    }

    #[test]
    fn presentation_errors() {
        assert!(matches!(
            parse_presentation("a,b | a^2"),
            Err(ParseError::MalformedRelation { .. })
        ));
        assert!(matches!(
            parse_presentation("a,b a^2=1"),
            Err(ParseError::MissingBar)
        ));
        assert!(matches!(
            parse_presentation("a,bc | a=1"),
            Err(ParseError::BadGenerators(_))
        ));
    }

    #[test]
    fn presentation_file_format() {
        let text = "gens: a,b\n# dihedral of order 16\na^2=b^2=1\n(ab)^8=1\n";
        let p = parse_presentation_file(text).unwrap();
        assert_eq!(p, parse_presentation("a,b | a^2=b^2=1, (ab)^8=1").unwrap());
    }

    #[test]
    fn evaluation() {
        let c4 = Group::cyclic(4).unwrap();
        assert_eq!(evaluate_word(&c4, &[1], &GroupWord::identity()), 0);
        assert_eq!(evaluate_word(&c4, &[1], &w(&[(0, 2)])), 2);

        // (b^-1b^-1)^-1 = b^2 is the central involution of D_8. Brute
        // oracle: the unique non-identity element commuting with everything.
        let d8 = Group::dihedral(4).unwrap();
        let (a, b) = (d8.generators()[0], d8.generators()[1]);
        let z = evaluate_word(&d8, &[a, b], &parse_word("(b^-1b^-1)^-1", &AB).unwrap());
        let central: Vec<usize> = (1..8)
            .filter(|&x| (0..8).all(|y| d8.mul(x, y) == d8.mul(y, x)))
            .collect();
        assert_eq!(central, vec![z]);
        // ab is a reflection, so (ab)^2 is trivial.
        let ab2 = evaluate_word(&d8, &[a, b], &parse_word("(ab)^2", &AB).unwrap());
        assert_eq!(ab2, 0);
    }

    #[test]
    fn verification() {
        let d16p = parse_presentation("a,b | a^2=b^2=1, (ab)^8=1").unwrap();
        // Both generators of the presentation are reflections.
        let d16 = Group::dihedral(8).unwrap();
        let (a, b) = (d16.generators()[0], d16.generators()[1]);
        assert!(verify_presentation(&d16, &d16p, &[a, d16.mul(a, b)]));
        let c16 = Group::cyclic(16).unwrap();
        assert!(!verify_presentation(&c16, &d16p, &[8, 8]));
        assert!(!verify_presentation(&c16, &d16p, &[1, 8]));
    }

    #[test]
    fn render_round_trip() {
        for text in ["aba^-3(ba)^2", "a^2b^-1", "1", "(ab)^3ba^-1"] {
            let w = parse_word(text, &AB).unwrap();
            assert_eq!(parse_word(&w.render(&AB), &AB).unwrap(), w);
        }
    }
}

//! Built-in group realizations and the group specification mini-language.
//!
//! Specs understood by [`parse_group_spec`]:
//!
//! * `C<n>` cyclic of order n, `D<2n>` dihedral of order 2n,
//! * products joined by `x`, e.g. `C4xC4` or `C2xD8`,
//! * catalog names such as `Q8`, `A4`, `Dic12`, `A5`, `G16_7`, `G27_4`,
//!   `G32_6`, `G32_50`, `G56_11`,
//! * `perm:<file>` (one permutation per line, cycle notation, 1-based),
//! * `pres:<file>` (presentation file format).
//!
//! Generator letters `a, b, c, ...` bind to the group's generator list in
//! order. For `D<2n>`, `a` is a reflection and `b` a rotation.

use std::collections::VecDeque;
use std::path::Path;

use thiserror::Error;

use crate::group::{Group, GroupError};
use crate::perm::{PermError, Permutation};
use crate::presentation::{parse_presentation_file, parse_word, ParseError};
use crate::todd_coxeter::{default_max_cosets, realize, todd_coxeter, EnumerationError};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown group spec '{0}'")]
    UnknownSpec(String),
    #[error("no built-in groups of order {0}")]
    UnsupportedOrder(usize),
    #[error("realized group {name} has order {found}, expected {expected}")]
    WrongOrder {
        name: String,
        found: usize,
        expected: usize,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("'{word}': {reason}")]
    BadElement { word: String, reason: String },
}

/// `(name, order, presentation)` for every presented group in the catalog.
pub const PRESENTED: &[(&str, usize, &str)] = &[
    ("Q8", 8, "a,b | a^4=1, a^2=b^2, b^-1ab=a^-1"),
    ("A4", 12, "a,b | a^2=b^3=(ab)^3=1"),
    ("Dic12", 12, "a,b | a^6=1, a^3=b^2, b^-1ab=a^-1"),
    ("G16_1", 16, "a | a^16=1"),
    ("G16_2", 16, "a,b | a^4=b^4=1, ab=ba"),
    ("G16_3", 16, "a,b | a^4=b^2=(a^2b)^2=(ab)^4=1"),
    ("G16_4", 16, "a,b | a^4=b^4=1, a^-1ba=b^-1"),
    ("G16_5", 16, "a,b | a^8=b^2=1, ab=ba"),
    ("G16_6", 16, "a,b | a^8=b^2=1, bab=a^5"),
    ("G16_7", 16, "a,b | a^2=b^2=1, (ab)^8=1"),
    ("G16_8", 16, "a,b | a^4=b^2=1, (a^2b)^2=1, (ab)^3=ba"),
    ("G16_9", 16, "a,b | a^4=b^4=1, a^2=b^2, (ab)^3=ba^-1"),
    ("G16_10", 16, "a,b,c | a^4=b^2=c^2=1, ab=ba, ac=ca, bc=cb"),
    (
        "G16_11",
        16,
        "a,b,c | a^2=b^2=c^2=1, (ac)^2=1, (bc)^2=1, (ab)^4=1",
    ),
    (
        "G16_12",
        16,
        "a,b,c | c^2=1, a^2=b^2=b^-2, a^-1ba=b^-1, ac=ca, bc=cb",
    ),
    (
        "G16_13",
        16,
        "a,b,c | a^2=b^2=c^4=1, ac=ca, bc=cb, c^2=(ba)^2",
    ),
    (
        "G16_14",
        16,
        "a,b,c,d | a^2=b^2=c^2=d^2=(ab)^2=(ac)^2=(bc)^2=(ad)^2=(bd)^2=(cd)^2=1",
    ),
    ("G27_2", 27, "a,b | a^9=b^3=1, ab=ba"),
    ("G27_3", 27, "a,b | a^3=b^3=(ab)^3=(ab^-1)^3=1"),
    ("G27_4", 27, "a,b | a^9=b^3=1, b^-1ab=a^-2"),
    ("G27_5", 27, "a,b,c | a^3=b^3=c^3=1, ab=ba, ac=ca, bc=cb"),
    (
        "G32_6",
        32,
        "a,b | a^4=b^2=1, (ba^-1)^4=1, (ba^-1ba)^2=1, a(ba^-2)^3ba=1",
    ),
    (
        "G32_50",
        32,
        "a,b,c,d | a^2=d^2=b^4=c^4=1, b^2c^2=1, bc^-1b^-1c^-1=1, (ab^-1)^2=1, \
         acac^-1=1, bdb^-1d=1, cdc^-1d=1, ac^2dad=1",
    ),
    ("G56_11", 56, "a,b | a^7=b^2=(aba^-1b)^2=aba^-3(ba)^2=1"),
];

/// Generators of A_5 in 1-based cycle notation.
pub const A5_GENERATORS: [&str; 2] = ["(1,2,3,4,5)", "(1,2,3)"];

/// Realizes one of the [`PRESENTED`] groups, checking its order.
pub fn presented(name: &str) -> Result<Group, CatalogError> {
    let &(name, order, text) = PRESENTED
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| CatalogError::UnknownSpec(name.to_string()))?;
    let g = realize(text, Some(order))?;
    if g.order() != order {
        return Err(CatalogError::WrongOrder {
            name: name.to_string(),
            found: g.order(),
            expected: order,
        });
    }
    Ok(g.with_label(name))
}

pub fn alternating5() -> Result<Group, CatalogError> {
    let gens = A5_GENERATORS
        .iter()
        .map(|c| Permutation::parse_cycles(5, c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Group::from_permutations(5, &gens)?.with_label("A5"))
}

/// Parses a group spec; see the module docs.
pub fn parse_group_spec(spec: &str) -> Result<Group, CatalogError> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix("perm:") {
        return group_from_perm_file(Path::new(path));
    }
    if let Some(path) = spec.strip_prefix("pres:") {
        let text = read(Path::new(path))?;
        let p = parse_presentation_file(&text)?;
        let g = todd_coxeter(&p, default_max_cosets(None))?;
        return Ok(g.with_label(spec));
    }
    let parts: Vec<&str> = spec.split('x').collect();
    if parts.len() > 1 {
        let mut g = atom(parts[0])?;
        for part in &parts[1..] {
            g = Group::direct_product(&g, &atom(part)?)?;
        }
        return Ok(g.with_label(spec));
    }
    atom(spec)
}

fn atom(spec: &str) -> Result<Group, CatalogError> {
    let unknown = || CatalogError::UnknownSpec(spec.to_string());
    if spec == "A5" {
        return alternating5();
    }
    if PRESENTED.iter().any(|(n, _, _)| *n == spec) {
        return presented(spec);
    }
    let (kind, digits) = spec.split_at(
        spec.find(|c: char| c.is_ascii_digit())
            .ok_or_else(unknown)?,
    );
    let n: usize = digits.parse().map_err(|_| unknown())?;
    match kind {
        "C" => Ok(Group::cyclic(n)?.with_label(spec)),
        "D" if n >= 2 && n.is_multiple_of(2) => Ok(Group::dihedral(n / 2)?.with_label(spec)),
        _ => Err(unknown()),
    }
}

fn read(path: &Path) -> Result<String, CatalogError> {
    std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// One permutation per non-blank line; the degree is the largest point.
fn group_from_perm_file(path: &Path) -> Result<Group, CatalogError> {
    let text = read(path)?;
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let degree = lines
        .iter()
        .flat_map(|l| l.split(|c: char| !c.is_ascii_digit()))
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
        .unwrap_or(1);
    let gens = lines
        .iter()
        .map(|l| Permutation::parse_cycles(degree, l))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Group::from_permutations(degree, &gens)?.with_label(format!("perm:{}", path.display())))
}

/// Every group of order `n` the crate can realize, in a fixed order.
///
/// Complete for `n <= 16`; orders 22, 26 give the cyclic and dihedral
/// groups, 27 all five groups, 32 the two presented groups, 56 `G56_11`
/// and 60 `A5`.
pub fn groups_of_order(n: usize) -> Result<Vec<Group>, CatalogError> {
    let c = |k: usize| Group::cyclic(k).map(|g| g.with_label(format!("C{k}")));
    let d = |k: usize| Group::dihedral(k / 2).map(|g| g.with_label(format!("D{k}")));
    let prod = |spec: &str| parse_group_spec(spec);
    let names = |list: &[&str]| {
        list.iter()
            .map(|s| presented(s))
            .collect::<Result<Vec<_>, _>>()
    };
    let out = match n {
        1 | 2 | 3 | 5 | 7 | 11 | 13 => vec![c(n)?],
        4 => vec![c(4)?, prod("C2xC2")?],
        6 | 10 | 14 | 22 | 26 => vec![c(n)?, d(n)?],
        8 => vec![
            c(8)?,
            prod("C4xC2")?,
            prod("C2xC2xC2")?,
            d(8)?,
            presented("Q8")?,
        ],
        9 => vec![c(9)?, prod("C3xC3")?],
        12 => vec![
            c(12)?,
            prod("C6xC2")?,
            d(12)?,
            presented("A4")?,
            presented("Dic12")?,
        ],
        15 => vec![c(15)?],
        16 => names(&[
            "G16_1", "G16_2", "G16_3", "G16_4", "G16_5", "G16_6", "G16_7", "G16_8", "G16_9",
            "G16_10", "G16_11", "G16_12", "G16_13", "G16_14",
        ])?,
        27 => {
            let mut v = vec![c(27)?];
            v.extend(names(&["G27_2", "G27_3", "G27_4", "G27_5"])?);
            v
        }
        32 => names(&["G32_6", "G32_50"])?,
        56 => names(&["G56_11"])?,
        60 => vec![alternating5()?],
        _ => return Err(CatalogError::UnsupportedOrder(n)),
    };
    Ok(out)
}

/// Generator letters `a, b, c, ...` for `g`.
pub fn generator_letters(g: &Group) -> Vec<char> {
    (0..g.generators().len())
        .map(|i| (b'a' + i as u8) as char)
        .collect()
}

/// Resolves a group word (in the generator letters) or, for permutation
/// groups, a cycle-notation permutation to an element index.
pub fn element_from_word(g: &Group, word: &str) -> Result<usize, CatalogError> {
    let letters = generator_letters(g);
    let w = parse_word(word, &letters)?;
    Ok(crate::presentation::evaluate_word(g, g.generators(), &w))
}

/// A shortest word for every element, as rendered text. Breadth-first over
/// generators and their inverses, so the choice is deterministic.
pub fn element_words(g: &Group) -> Vec<String> {
    let letters = generator_letters(g);
    let n = g.order();
    let mut word: Vec<Option<Vec<(usize, i32)>>> = vec![None; n];
    word[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let base = word[x].clone().unwrap();
        for (gi, &gen) in g.generators().iter().enumerate() {
            for (e, y) in [(1, g.mul(x, gen)), (-1, g.mul(x, g.inv(gen)))] {
                if word[y].is_none() {
                    let mut w = base.clone();
                    match w.last_mut() {
                        Some((last, k)) if *last == gi && k.signum() == e => *k += e,
                        _ => w.push((gi, e)),
                    }
                    word[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
    }
    word.into_iter()
        .map(|w| {
            let w = w.expect("generators generate");
            if w.is_empty() {
                return "1".to_string();
            }
            w.iter()
                .map(|&(gi, e)| match e {
                    1 => letters[gi].to_string(),
                    _ => format!("{}^{}", letters[gi], e),
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::automorphisms;

    #[test]
    fn small_order_counts() {
        let counts = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];
        for (i, &k) in counts.iter().enumerate() {
            let gs = groups_of_order(i + 1).unwrap();
            assert_eq!(gs.len(), k, "order {}", i + 1);
            for g in &gs {
                assert_eq!(g.order(), i + 1, "{}", g.label());
            }
        }
    }

    #[test]
    fn groups_pairwise_distinct() {
        for n in [8, 12, 16, 27] {
            let gs = groups_of_order(n).unwrap();
            let keys: Vec<_> = gs
                .iter()
                .map(|g| {
                    let aut = automorphisms(g).unwrap().order();
                    (g.element_order_histogram(), aut, g.is_abelian())
                })
                .collect();
            for i in 0..keys.len() {
                for j in i + 1..keys.len() {
                    assert_ne!(keys[i], keys[j], "{} vs {}", gs[i].label(), gs[j].label());
                }
            }
        }
    }

    #[test]
    fn larger_presentations() {
        for (name, order) in [("G32_6", 32), ("G32_50", 32), ("G56_11", 56)] {
            assert_eq!(presented(name).unwrap().order(), order);
        }
        let a5 = alternating5().unwrap();
        assert_eq!(a5.order(), 60);
        let h = a5.element_order_histogram();
        assert_eq!(
            h.into_iter().collect::<Vec<_>>(),
            [(1, 1), (2, 15), (3, 20), (5, 24)]
        );
    }

    #[test]
    fn g16_12_is_q8_times_c2() {
        let g = presented("G16_12").unwrap();
        let q8c2 =
            Group::direct_product(&presented("Q8").unwrap(), &Group::cyclic(2).unwrap()).unwrap();
        assert_eq!(g.element_order_histogram(), q8c2.element_order_histogram());
        assert_eq!(
            automorphisms(&g).unwrap().order(),
            automorphisms(&q8c2).unwrap().order()
        );
    }

    #[test]
    fn specs() {
        assert_eq!(parse_group_spec("D26").unwrap().order(), 26);
        assert_eq!(parse_group_spec("C4xC4").unwrap().involutions().len(), 3);
        assert_eq!(parse_group_spec("C2xD8").unwrap().order(), 16);
        assert!(parse_group_spec("D7").is_err());
        assert!(parse_group_spec("X3").is_err());
        let d26 = parse_group_spec("D26").unwrap();
        let a = element_from_word(&d26, "a").unwrap();
        let b = element_from_word(&d26, "b").unwrap();
        assert_eq!(d26.element_order(a), 2);
        assert_eq!(d26.element_order(b), 13);
        assert_eq!(
            element_from_word(&d26, "ab^2").unwrap(),
            d26.mul(a, d26.pow(b, 2))
        );
    }

    #[test]
    fn element_words_resolve() {
        for g in [
            parse_group_spec("D12").unwrap(),
            presented("G16_9").unwrap(),
        ] {
            let words = element_words(&g);
            for (x, w) in words.iter().enumerate() {
                assert_eq!(element_from_word(&g, w).unwrap(), x, "{w}");
            }
        }
    }
}

//! Words in free groups.
//!
//! A [`Word`] is stored as syllables `(letter, exponent)` and is always kept
//! reduced: no zero exponents, no two adjacent syllables on the same letter.
//! Letters are indices `0..rank`; an [`Alphabet`] gives them names for
//! parsing and display (`x^3 y^-2 x`).

mod free_product;
mod pingpong;
mod schreier;

use std::fmt;

use thiserror::Error;

use crate::fingroup::GroupError;

pub use free_product::{free_product_multiply, validate_alternating, AltWord};
pub use pingpong::{is_strictly_growing, ping_pong_sequence, sl2_ping_pong};
pub use schreier::{CosetTable, GeneratorWord, SchreierGenerator, SchreierGenerators};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeError {
    #[error("words over alphabets of rank {left} and {right} cannot be combined")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("letter index {letter} is outside an alphabet of rank {rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("expected {expected} generator images, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("generator images must all have the same degree")]
    DegreeMismatch,
    #[error("the given subgroup is not contained in the image group")]
    NotASubgroup,
    #[error("word does not lie in the subgroup")]
    NotInSubgroup,
    #[error("ping-pong needs n >= 2, got {0}")]
    PingPongParameter(i64),
    #[error("malformed free-product word: {0}")]
    Malformed(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A reduced word over an alphabet of `rank` letters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    syllables: Vec<(usize, i64)>,
}

/// Free reduction by a single left-to-right pass with a stack.
pub fn reduce(rank: usize, raw: &[(usize, i64)]) -> Result<Word, FreeError> {
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(raw.len());
    for &(letter, e) in raw {
        if letter >= rank {
            return Err(FreeError::LetterOutOfRange { letter, rank });
        }
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some(top) if top.0 == letter => {
                top.1 += e;
                if top.1 == 0 {
                    out.pop();
                }
            }
            _ => out.push((letter, e)),
        }
    }
    Ok(Word {
        rank,
        syllables: out,
    })
}

impl Word {
    pub fn identity(rank: usize) -> Word {
        Word {
            rank,
            syllables: Vec::new(),
        }
    }

    /// The word `x_letter^exp`.
    pub fn letter(rank: usize, letter: usize, exp: i64) -> Result<Word, FreeError> {
        reduce(rank, &[(letter, exp)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// `l(w) = Σ |m_i|`.
    pub fn len(&self) -> u64 {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// The word spelled out one letter at a time as `(letter, ±1)`.
    pub fn letters(&self) -> Vec<(usize, i64)> {
        self.syllables
            .iter()
            .flat_map(|&(l, e)| std::iter::repeat_n((l, e.signum()), e.unsigned_abs() as usize))
            .collect()
    }

    pub fn exponent_sum(&self, letter: usize) -> i64 {
        self.syllables
            .iter()
            .filter(|s| s.0 == letter)
            .map(|s| s.1)
            .sum()
    }

    fn check_rank(&self, other: &Word) -> Result<(), FreeError> {
        if self.rank != other.rank {
            return Err(FreeError::AlphabetMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    /// Reduced concatenation `self · other`.
    pub fn multiply(&self, other: &Word) -> Result<Word, FreeError> {
        self.check_rank(other)?;
        let mut raw = self.syllables.clone();
        raw.extend_from_slice(&other.syllables);
        reduce(self.rank, &raw)
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            syllables: self.syllables.iter().rev().map(|&(l, e)| (l, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut raw = Vec::with_capacity(base.syllables.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            raw.extend_from_slice(&base.syllables);
        }
        reduce(self.rank, &raw).expect("letters already in range")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.syllables)
    }
}

/// Names for the letters of a free group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Alphabet {
        Alphabet {
            names: names.into_iter().map(Into::into).collect(),
        }
    }

    /// `x, y` for rank 2, `x, y, z` for rank 3, `x1, x2, …` beyond that.
    pub fn standard(rank: usize) -> Alphabet {
        if rank <= 3 {
            Alphabet::new(["x", "y", "z"].into_iter().take(rank))
        } else {
            Alphabet::new((1..=rank).map(|i| format!("x{i}")))
        }
    }

    /// Parses a comma-separated list of letter names.
    pub fn parse_list(s: &str) -> Result<Alphabet, FreeError> {
        let names: Vec<String> = s.split(',').map(|t| t.trim().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(FreeError::Parse {
                    pos: 0,
                    msg: format!("invalid letter name {n:?}"),
                });
            }
            if names[..i].contains(n) {
                return Err(FreeError::Parse {
                    pos: 0,
                    msg: format!("duplicate letter {n:?}"),
                });
            }
        }
        Ok(Alphabet { names })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Parses whitespace-separated syllables such as `x^3 y^-2 x` without
    /// reducing. `1` denotes the empty word.
    pub fn parse_raw(&self, s: &str) -> Result<Vec<(usize, i64)>, FreeError> {
        let mut out = Vec::new();
        let mut offset = 0;
        for token in s.split_whitespace() {
            let pos = s[offset..].find(token).map_or(offset, |p| p + offset);
            offset = pos + token.len();
            if token == "1" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.parse().map_err(|_| FreeError::Parse {
                        pos: pos + n.len() + 1,
                        msg: format!("bad exponent {e:?}"),
                    })?;
                    (n, e)
                }
                None => (token, 1),
            };
            let letter = self
                .names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| FreeError::Parse {
                    pos,
                    msg: format!("unknown letter {name:?}"),
                })?;
            out.push((letter, exp));
        }
        Ok(out)
    }

    pub fn parse(&self, s: &str) -> Result<Word, FreeError> {
        reduce(self.rank(), &self.parse_raw(s)?)
    }

    pub fn format(&self, w: &Word) -> String {
        if w.is_identity() {
            return "1".to_string();
        }
        w.syllables
            .iter()
            .map(|&(l, e)| {
                let name = self.names.get(l).map_or("?", String::as_str);
                if e == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `(x^m y^{k+1})⁻¹ y x^m y^k` in `F_2 = F(x, y)`, reduced.
pub fn commutator_generator(m: i64, k: i64) -> Word {
    let raw = [(1, -(k + 1)), (0, -m), (1, 1), (0, m), (1, k)];
    reduce(2, &raw).expect("rank 2 letters")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Alphabet {
        Alphabet::standard(3)
    }

    #[test]
    fn worked_reduction() {
        let a = xyz();
        let w = a.parse("x^3 x^2 z^0 y z^4 z^-2 x^0 z^-2 y^-2").unwrap();
        assert_eq!(a.format(&w), "x^5 y^-1");
        assert!(a.parse("x^0 y^0").unwrap().is_identity());
        let r = a.parse("x^2 y^3 z x^4").unwrap();
        assert_eq!(reduce(3, r.syllables()).unwrap(), r);
    }

    #[test]
    fn products() {
        let a = Alphabet::standard(2);
        let u = a.parse("x y").unwrap();
        let v = a.parse("y^-1 x").unwrap();
        assert_eq!(a.format(&u.multiply(&v).unwrap()), "x^2");
        assert!(u.multiply(&u.inverse()).unwrap().is_identity());
        assert_eq!(a.format(&u.pow(2)), "x y x y");
        assert_eq!(a.format(&u.pow(-1)), "y^-1 x^-1");
        assert_eq!(u.len(), 2);
        let w3 = Word::identity(3);
        assert_eq!(
            u.multiply(&w3),
            Err(FreeError::AlphabetMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn parse_errors() {
        let a = Alphabet::standard(2);
        assert!(matches!(a.parse("x q"), Err(FreeError::Parse { pos: 2, .. })));
        assert!(matches!(a.parse("x^a"), Err(FreeError::Parse { .. })));
        assert!(Alphabet::parse_list("a,b,a").is_err());
        assert_eq!(Alphabet::parse_list("a, b").unwrap().rank(), 2);
        assert!(a.parse("1").unwrap().is_identity());
    }

    #[test]
    fn commutator_generators() {
        let a = Alphabet::standard(2);
        assert!(commutator_generator(0, 0).is_identity());
        assert_eq!(a.format(&commutator_generator(1, 0)), "y^-1 x^-1 y x");
        for m in -3..=3 {
            for k in -3..=3 {
                let w = commutator_generator(m, k);
                assert_eq!(w.exponent_sum(0), 0);
                assert_eq!(w.exponent_sum(1), 0);
            }
        }
    }
}

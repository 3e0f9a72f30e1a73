//! The textual group grammar shared with the command line:
//! `C12`, `S4`, `A5`, `D6`, `Q8`, `V4`, `GL(2,3)`, `SL(2,3)`, `UT(3,2)`,
//! `prod(C2,C12)`, `sd(C3,C2,inv)`, `hol(C3)`, `wr(C2,C2)`,
//! `perm[(1 2),(1 2 3)]`, `table(path/to/group.json)`.

use std::fmt;
use std::str::FromStr;

use super::*;
use crate::matgrp;

/// How the second factor of `sd(N,K,·)` acts on the first: every generator
/// of `K` acts trivially or by the power map `x ↦ x^r` (which needs `N`
/// abelian). `inv` is `r = -1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionSpec {
    Trivial,
    Power(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    Dihedral(usize),
    Quaternion,
    Klein4,
    General { n: usize, p: u32 },
    Special { n: usize, p: u32 },
    UpperUnitriangular { n: usize, p: u32 },
    Product(Vec<GroupSpec>),
    Semidirect(Box<GroupSpec>, Box<GroupSpec>, ActionSpec),
    Holomorph(Box<GroupSpec>),
    Wreath(Box<GroupSpec>, Box<GroupSpec>),
    PermGens { degree: usize, gens: Vec<Permutation> },
    Table(String),
}

/// Groups used as a test corpus and listed by the command line.
pub const LIBRARY: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C16", "C27",
    "C30", "C32", "C81", "S3", "S4", "S5", "A4", "A5", "D3", "D4", "D5", "D6", "D7", "D8", "D9",
    "D10", "Q8", "V4", "GL(2,2)", "GL(2,3)", "SL(2,3)", "UT(3,2)", "UT(3,3)", "UT(4,2)",
    "prod(C2,C2)", "prod(C2,C2,C2)", "prod(C3,C3)", "prod(C2,C4)", "prod(C2,C6)", "prod(C4,C4)",
    "prod(C4,C6)", "prod(C2,C12)", "prod(C3,C9)", "prod(C3,C3,C3)", "prod(C9,C9)",
    "prod(C3,C27)", "prod(Q8,C2)", "prod(D4,C2)", "prod(S3,C2)", "prod(S3,C3)", "prod(S3,S3)",
    "prod(A4,C2)", "prod(Q8,C3)", "prod(D4,C3)", "sd(C3,C2,inv)", "sd(C5,C4,2)", "sd(C7,C3,2)",
    "sd(C3,C4,inv)", "sd(C9,C3,4)", "sd(C8,C2,3)", "sd(C8,C2,5)", "sd(prod(C3,C3),C2,inv)",
    "hol(C3)", "hol(C4)", "hol(C5)", "hol(C6)", "hol(C7)", "hol(C8)", "hol(V4)", "wr(C2,C2)",
    "wr(C3,C2)", "wr(C2,C3)", "wr(C4,C2)", "wr(C2,C4)", "perm[(1 2 3 4 5),(2 5)(3 4)]",
];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> ConstructionError {
    ConstructionError::Parse {
        pos,
        msg: msg.into(),
    }
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn expect(&mut self, c: char) -> Result<(), ConstructionError> {
        self.skip_ws();
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(err(self.pos, format!("expected '{c}', found '{d}'"))),
            None => Err(err(self.pos, format!("expected '{c}', found end of input"))),
        }
    }

    fn number<T: FromStr>(&mut self) -> Result<T, ConstructionError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(err(start, "expected a number"));
        }
        digits
            .parse()
            .map_err(|_| err(start, format!("number {digits} is out of range")))
    }

    fn field_params(&mut self) -> Result<(usize, u32), ConstructionError> {
        self.expect('(')?;
        let n = self.number()?;
        self.expect(',')?;
        let p = self.number()?;
        self.expect(')')?;
        Ok((n, p))
    }

    fn action(&mut self) -> Result<ActionSpec, ConstructionError> {
        self.skip_ws();
        let start = self.pos;
        let word = self.take_while(|c| c.is_ascii_alphanumeric() || c == '-');
        match word {
            "triv" => Ok(ActionSpec::Trivial),
            "inv" => Ok(ActionSpec::Power(-1)),
            _ => word
                .parse()
                .map(ActionSpec::Power)
                .map_err(|_| err(start, format!("unknown action {word:?}; use triv, inv or an integer"))),
        }
    }

    fn perm_list(&mut self) -> Result<GroupSpec, ConstructionError> {
        self.expect('[')?;
        let start = self.pos;
        let close = self.src[start..]
            .find(']')
            .ok_or_else(|| err(start, "unterminated permutation list"))?;
        let body = &self.src[start..start + close];
        self.pos = start + close + 1;
        let mut pieces = Vec::new();
        let (mut depth, mut from) = (0i32, 0);
        for (i, c) in body.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    pieces.push((from, &body[from..i]));
                    from = i + 1;
                }
                _ => {}
            }
        }
        pieces.push((from, &body[from..]));
        let mut parsed = Vec::new();
        for (off, text) in &pieces {
            if text.trim().is_empty() {
                return Err(err(start + off, "empty permutation"));
            }
            let p = Permutation::parse(text.trim(), None)
                .map_err(|e| err(start + off, e.to_string()))?;
            parsed.push(p);
        }
        let degree = parsed.iter().map(Permutation::degree).max().unwrap_or(1).max(1);
        let gens = pieces
            .iter()
            .map(|(off, text)| {
                Permutation::parse(text.trim(), Some(degree)).map_err(|e| err(start + off, e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(GroupSpec::PermGens { degree, gens })
    }

    fn group(&mut self) -> Result<GroupSpec, ConstructionError> {
        self.skip_ws();
        let start = self.pos;
        let name = self.take_while(|c| c.is_ascii_alphabetic());
        let boxed = |g| Box::new(g);
        let spec = match name {
            "C" | "S" | "A" | "D" | "Q" | "V" => {
                let n: usize = self.number()?;
                match (name, n) {
                    ("C", _) => GroupSpec::Cyclic(n),
                    ("S", _) => GroupSpec::Symmetric(n),
                    ("A", _) => GroupSpec::Alternating(n),
                    ("D", _) => GroupSpec::Dihedral(n),
                    ("Q", 8) => GroupSpec::Quaternion,
                    ("V", 4) => GroupSpec::Klein4,
                    _ => return Err(err(start, format!("unknown group {name}{n}"))),
                }
            }
            "GL" => {
                let (n, p) = self.field_params()?;
                GroupSpec::General { n, p }
            }
            "SL" => {
                let (n, p) = self.field_params()?;
                GroupSpec::Special { n, p }
            }
            "UT" => {
                let (n, p) = self.field_params()?;
                GroupSpec::UpperUnitriangular { n, p }
            }
            "prod" => {
                self.expect('(')?;
                let mut parts = vec![self.group()?];
                loop {
                    self.skip_ws();
                    if self.peek() == Some(',') {
                        self.pos += 1;
                        parts.push(self.group()?);
                    } else {
                        break;
                    }
                }
                self.expect(')')?;
                GroupSpec::Product(parts)
            }
            "sd" => {
                self.expect('(')?;
                let n = self.group()?;
                self.expect(',')?;
                let k = self.group()?;
                self.expect(',')?;
                let a = self.action()?;
                self.expect(')')?;
                GroupSpec::Semidirect(boxed(n), boxed(k), a)
            }
            "hol" => {
                self.expect('(')?;
                let g = self.group()?;
                self.expect(')')?;
                GroupSpec::Holomorph(boxed(g))
            }
            "wr" => {
                self.expect('(')?;
                let g = self.group()?;
                self.expect(',')?;
                let h = self.group()?;
                self.expect(')')?;
                GroupSpec::Wreath(boxed(g), boxed(h))
            }
            "perm" => self.perm_list()?,
            "table" => {
                self.expect('(')?;
                let from = self.pos;
                let path = self.take_while(|c| c != ')').trim().to_string();
                if path.is_empty() {
                    return Err(err(from, "empty path"));
                }
                self.expect(')')?;
                GroupSpec::Table(path)
            }
            "" => return Err(err(start, "expected a group")),
            _ => return Err(err(start, format!("unknown constructor {name:?}"))),
        };
        Ok(spec)
    }
}

impl FromStr for GroupSpec {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let g = p.group()?;
        p.skip_ws();
        if p.pos < s.len() {
            return Err(err(p.pos, "trailing input"));
        }
        Ok(g)
    }
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionSpec::Trivial => write!(f, "triv"),
            ActionSpec::Power(-1) => write!(f, "inv"),
            ActionSpec::Power(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Quaternion => write!(f, "Q8"),
            GroupSpec::Klein4 => write!(f, "V4"),
            GroupSpec::General { n, p } => write!(f, "GL({n},{p})"),
            GroupSpec::Special { n, p } => write!(f, "SL({n},{p})"),
            GroupSpec::UpperUnitriangular { n, p } => write!(f, "UT({n},{p})"),
            GroupSpec::Product(parts) => {
                let s: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "prod({})", s.join(","))
            }
            GroupSpec::Semidirect(n, k, a) => write!(f, "sd({n},{k},{a})"),
            GroupSpec::Holomorph(g) => write!(f, "hol({g})"),
            GroupSpec::Wreath(g, h) => write!(f, "wr({g},{h})"),
            GroupSpec::PermGens { gens, .. } => {
                let s: Vec<String> = gens.iter().map(ToString::to_string).collect();
                write!(f, "perm[{}]", s.join(","))
            }
            GroupSpec::Table(path) => write!(f, "table({path})"),
        }
    }
}

fn power_action(n: &FinGroup, k: &FinGroup, r: i64) -> Result<Vec<Vec<usize>>, ConstructionError> {
    if !n.is_abelian() {
        return Err(ConstructionError::InvalidParameter(
            "power-map actions need an abelian normal factor".into(),
        ));
    }
    let map: Vec<usize> = n.elements().map(|x| n.pow(x, r)).collect();
    Ok(extend_action(k, &vec![map; k.generators().len()], n.order()))
}

impl GroupSpec {
    pub fn parse(s: &str) -> Result<GroupSpec, ConstructionError> {
        s.parse()
    }

    pub fn build(&self, limits: &Limits) -> Result<FinGroup, ConstructionError> {
        let max = limits.max_order;
        match self {
            GroupSpec::Cyclic(n) => cyclic(*n, max),
            GroupSpec::Symmetric(n) => symmetric(*n, max),
            GroupSpec::Alternating(n) => alternating(*n, max),
            GroupSpec::Dihedral(n) => dihedral(*n, max),
            GroupSpec::Quaternion => Ok(quaternion()),
            GroupSpec::Klein4 => Ok(klein4()),
            GroupSpec::General { n, p } => Ok(matgrp::gl_as_fingroup(*n, *p, max)?.0),
            GroupSpec::Special { n, p } => Ok(matgrp::sl_as_fingroup(*n, *p, max)?.0),
            GroupSpec::UpperUnitriangular { n, p } => Ok(matgrp::ut_sylow(*n, *p, max)?.0),
            GroupSpec::Product(parts) => {
                let groups = parts.iter().map(|g| g.build(limits)).collect::<Result<Vec<_>, _>>()?;
                direct_product_many(&groups.iter().collect::<Vec<_>>(), max)
            }
            GroupSpec::Semidirect(n, k, a) => {
                let n = n.build(limits)?;
                let k = k.build(limits)?;
                let action = match a {
                    ActionSpec::Trivial => vec![n.elements().collect(); k.order()],
                    ActionSpec::Power(r) => power_action(&n, &k, *r)?,
                };
                semidirect_product(&n, &k, &action, max)
            }
            GroupSpec::Holomorph(g) => holomorph(&g.build(limits)?, limits),
            GroupSpec::Wreath(g, h) => wreath_restricted(&g.build(limits)?, &h.build(limits)?, max),
            GroupSpec::PermGens { degree, gens } => Ok(FinGroup::from_permutations(*degree, gens, max)?.0),
            GroupSpec::Table(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| ConstructionError::Io(format!("{path}: {e}")))?;
                serde_json::from_str(&text).map_err(|e| ConstructionError::Io(format!("{path}: {e}")))
            }
        }
    }
}

/// Parses and builds in one step.
pub fn build_group(spec: &str, limits: &Limits) -> Result<FinGroup, ConstructionError> {
    GroupSpec::parse(spec)?.build(limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_display() {
        for s in LIBRARY {
            let g = GroupSpec::parse(s).unwrap();
            assert_eq!(g.to_string(), *s);
        }
        let g = GroupSpec::parse(" prod( C2 , sd(C3,C2,inv) ) ").unwrap();
        assert_eq!(g.to_string(), "prod(C2,sd(C3,C2,inv))");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let pos = |s: &str| match GroupSpec::parse(s) {
            Err(ConstructionError::Parse { pos, .. }) => pos,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("X5"), 0);
        assert_eq!(pos("prod(C2,Z3)"), 8);
        assert_eq!(pos("C"), 1);
        assert_eq!(pos("C2 x"), 3);
        assert_eq!(pos("sd(C3,C2,foo)"), 9);
        assert_eq!(pos("Q7"), 0);
        assert_eq!(pos("perm[(1 2),(1 1)]"), 11);
    }

    #[test]
    fn library_orders() {
        let lim = Limits::default();
        let expect = [
            ("S4", 24),
            ("GL(2,3)", 48),
            ("SL(2,3)", 24),
            ("UT(4,2)", 64),
            ("sd(C5,C4,2)", 20),
            ("hol(C8)", 32),
            ("wr(C2,C4)", 64),
            ("perm[(1 2 3 4 5),(2 5)(3 4)]", 10),
        ];
        for (s, n) in expect {
            assert_eq!(build_group(s, &lim).unwrap().order(), n, "{s}");
        }
    }

    #[test]
    fn named_isomorphisms() {
        let lim = Limits::default();
        let iso = |a: &str, b: &str| {
            build_group(a, &lim)
                .unwrap()
                .is_isomorphic(&build_group(b, &lim).unwrap())
                .unwrap()
        };
        assert!(iso("sd(C3,C2,inv)", "S3"));
        assert!(iso("D3", "S3"));
        assert!(iso("hol(V4)", "S4"));
        assert!(iso("GL(2,2)", "S3"));
        assert!(iso("prod(C4,C6)", "prod(C2,C12)"));
        assert!(!iso("sd(C3,C4,inv)", "D6"));
    }

    #[test]
    fn rejected_actions() {
        let lim = Limits::default();
        assert!(matches!(
            build_group("sd(C7,C3,3)", &lim),
            Err(ConstructionError::NotAHomomorphism(_))
        ));
        assert!(matches!(
            build_group("sd(S3,C2,inv)", &lim),
            Err(ConstructionError::InvalidParameter(_))
        ));
        assert!(build_group("sd(S3,C2,triv)", &lim).is_ok());
    }
}

//! Finitely generated abelian groups.
//!
//! An abelian group is presented by a relation matrix whose rows are
//! relations among the generators (one column per generator). The
//! [stacked basis](stacked_basis) reduction diagonalizes the matrix with
//! unimodular row and column operations, and the diagonal gives the
//! invariant factors.

pub mod numtheory;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::fingroup::{FinGroup, GroupError, Subgroup};
use crate::matgrp::SquareIntMatrix;
pub use numtheory::{euler_phi, power_order};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("the zero matrix has no stacked basis")]
    ZeroMatrix,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("matrix shape: {0}")]
    Shape(String),
    #[error("{d} does not divide {n}")]
    DoesNotDivide { d: u64, n: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// JSON number when it fits in 64 bits, decimal string otherwise.
pub fn json_int(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

/// A dense integer matrix. Zero rows are allowed (a presentation with no
/// relations); there is always at least one column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<IntMatrix, AbelianError> {
        let cols = rows.first().map_or(0, Vec::len);
        if cols == 0 {
            return Err(AbelianError::Shape("at least one column is required".into()));
        }
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AbelianError::Shape("rows have different lengths".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<IntMatrix, AbelianError> {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Reads `[[2,0],[0,3]]` or a whitespace grid with one row per line.
    pub fn parse(s: &str) -> Result<IntMatrix, AbelianError> {
        let t = s.trim();
        if t.starts_with('[') {
            let rows: Vec<Vec<i64>> =
                serde_json::from_str(t).map_err(|e| AbelianError::Parse(e.to_string()))?;
            return IntMatrix::from_i64_rows(&rows);
        }
        let rows = t
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|x| {
                        x.parse::<BigInt>()
                            .map_err(|_| AbelianError::Parse(format!("bad integer {x:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        IntMatrix::from_rows(rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, AbelianError> {
        if self.cols != other.rows {
            return Err(AbelianError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<BigInt, AbelianError> {
        if self.rows != self.cols {
            return Err(AbelianError::Shape("determinant of a non-square matrix".into()));
        }
        let sq = SquareIntMatrix::from_rows(self.to_rows())
            .map_err(|e| AbelianError::Shape(e.to_string()))?;
        Ok(sq.det())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] += t · row[src]`.
    fn add_row(&mut self, src: usize, dst: usize, t: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(src, c) * t;
            self.entries[dst * self.cols + c] += v;
        }
    }

    /// `col[dst] += t · col[src]`.
    fn add_col(&mut self, src: usize, dst: usize, t: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, src) * t;
            self.entries[r * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c);
            self.entries[r * self.cols + c] = v;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(BigInt::to_string).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<serde_json::Value>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(json_int).collect())
            .collect();
        rows.serialize(s)
    }
}

/// gcd of the entries; `0` for the zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Unimodular `U` (rows × rows) and `V` (cols × cols) with `U·M·V` diagonal.
/// `diagonal` holds the nonzero diagonal entries `a_1 | a_2 | … | a_k`,
/// all positive, in the leading positions.
#[derive(Clone, Debug, Serialize)]
pub struct StackedBasis {
    pub u: IntMatrix,
    pub v: IntMatrix,
    #[serde(serialize_with = "ser_ints")]
    pub diagonal: Vec<BigInt>,
}

fn ser_ints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    v.iter().map(json_int).collect::<Vec<_>>().serialize(s)
}

impl StackedBasis {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

/// Position of the smallest nonzero `|entry|` in the block `[t.., t..]`,
/// ties broken by row then column.
fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|b| ax < b.0) {
                best = Some((ax, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Diagonalizes `m` into a divisibility chain.
///
/// Each step moves an entry of least absolute value to the pivot, clears its
/// row and column by Euclidean steps (restarting from a new least entry when
/// a remainder survives), and repairs divisibility by adding an offending
/// column to the pivot column.
pub fn stacked_basis(m: &IntMatrix) -> Result<StackedBasis, AbelianError> {
    if m.is_zero() {
        return Err(AbelianError::ZeroMatrix);
    }
    let mut a = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let mut diagonal = Vec::new();
    let mut t = 0;
    while let Some((pi, pj)) = min_pivot(&a, t) {
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..a.rows {
                let q = a.get(i, t).div_floor(a.get(t, t));
                if !q.is_zero() {
                    a.add_row(t, i, &-&q);
                    u.add_row(t, i, &-&q);
                }
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..a.cols {
                let q = a.get(t, j).div_floor(a.get(t, t));
                if !q.is_zero() {
                    a.add_col(t, j, &-&q);
                    v.add_col(t, j, &-&q);
                }
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                // a nonzero remainder is smaller than the pivot: move it in
                let (pi, pj) = min_pivot(&a, t).expect("nonzero block");
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let pivot = a.get(t, t).clone();
            let offending = (t + 1..a.rows)
                .flat_map(|i| (t + 1..a.cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&pivot));
            match offending {
                Some((_, j)) => {
                    a.add_col(j, t, &BigInt::one());
                    v.add_col(j, t, &BigInt::one());
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        diagonal.push(a.get(t, t).clone());
        t += 1;
        if t >= a.rows.min(a.cols) {
            break;
        }
    }
    Ok(StackedBasis { u, v, diagonal })
}

/// `Z/n_1 ⊕ … ⊕ Z/n_k ⊕ Z^rank` with `1 < n_1 | n_2 | … | n_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantFactors {
    #[serde(serialize_with = "ser_ints")]
    pub torsion: Vec<BigInt>,
    pub rank: usize,
}

impl InvariantFactors {
    pub fn from_u64(torsion: &[u64], rank: usize) -> InvariantFactors {
        InvariantFactors {
            torsion: torsion.iter().map(|&x| BigInt::from(x)).collect(),
            rank,
        }
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().filter_map(ToPrimitive::to_u64).collect()
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|n| format!("Z/{n}")).collect();
        if self.rank > 0 {
            parts.push(if self.rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.rank)
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Invariant factors of the abelian group with one generator per column of
/// `relations` and one relation per row.
pub fn invariant_factors(relations: &IntMatrix) -> InvariantFactors {
    if relations.is_zero() {
        return InvariantFactors {
            torsion: Vec::new(),
            rank: relations.cols,
        };
    }
    let sb = stacked_basis(relations).expect("nonzero matrix");
    InvariantFactors {
        rank: relations.cols - sb.rank(),
        torsion: sb.diagonal.into_iter().filter(|a| !a.is_one()).collect(),
    }
}

/// Invariant factors of a finite abelian group, found by splitting off a
/// cyclic subgroup of maximal order and recursing on the quotient.
pub fn decompose_finite_abelian(g: &FinGroup) -> Result<InvariantFactors, AbelianError> {
    if !g.is_abelian() {
        return Err(AbelianError::NotAbelian);
    }
    let mut factors = Vec::new();
    let mut current = g.clone();
    while current.order() > 1 {
        let x = current
            .elements()
            .max_by_key(|&x| (current.element_order(x), std::cmp::Reverse(x)))
            .expect("nonempty group");
        factors.push(current.element_order(x) as u64);
        let c = current.generate(&[x]);
        current = current.quotient(&c)?.group;
    }
    factors.reverse();
    Ok(InvariantFactors::from_u64(&factors, 0))
}

/// The Sylow subgroups `{x : ord(x) = p^α}` of an abelian group, one per
/// prime divisor of `|G|`.
pub fn primary_decomposition(g: &FinGroup) -> Result<Vec<(u64, Subgroup)>, AbelianError> {
    if !g.is_abelian() {
        return Err(AbelianError::NotAbelian);
    }
    numtheory::prime_divisors(g.order() as u64)
        .into_iter()
        .map(|p| Ok((p, g.subgroup_from_elements(&g.p_elements(p))?)))
        .collect()
}

/// The unique subgroup of order `d` in `C_n = ⟨x⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicSubgroup {
    pub n: u64,
    pub d: u64,
    /// The subgroup is generated by `x^generator_power`.
    pub generator_power: u64,
    /// Number of generators of the subgroup, `Φ(d)`.
    pub generator_count: u64,
}

impl fmt::Display for CyclicSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 1 {
            write!(f, "gp{{e}}")
        } else if self.generator_power == 1 {
            write!(f, "gp{{x}}")
        } else {
            write!(f, "gp{{x^{}}}", self.generator_power)
        }
    }
}

pub fn cyclic_subgroup_of_order(n: u64, d: u64) -> Result<CyclicSubgroup, AbelianError> {
    if n == 0 || d == 0 || !n.is_multiple_of(d) {
        return Err(AbelianError::DoesNotDivide { d, n });
    }
    Ok(CyclicSubgroup {
        n,
        d,
        generator_power: n / d,
        generator_count: euler_phi(d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_basis(a: &IntMatrix) -> StackedBasis {
        let sb = stacked_basis(a).unwrap();
        let d = sb.u.mul(a).unwrap().mul(&sb.v).unwrap();
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let expect = if i == j && i < sb.rank() {
                    sb.diagonal[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(d.get(i, j), &expect, "{a}");
            }
        }
        assert!(sb.u.det().unwrap().abs().is_one());
        assert!(sb.v.det().unwrap().abs().is_one());
        for w in sb.diagonal.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        sb
    }

    #[test]
    fn content_examples() {
        assert_eq!(content(&ints(&[6, 10, 15])), BigInt::one());
        assert_eq!(content(&ints(&[0, 0, 0])), BigInt::zero());
        assert_eq!(content(&ints(&[4, 8])), BigInt::from(4));
        assert_eq!(content(&ints(&[-4, 8])), BigInt::from(4));
    }

    #[test]
    fn stacked_basis_examples() {
        assert_eq!(check_basis(&m(&[vec![2, 0], vec![0, 3]])).diagonal, ints(&[1, 6]));
        assert_eq!(check_basis(&IntMatrix::identity(3)).diagonal, ints(&[1, 1, 1]));
        assert_eq!(check_basis(&m(&[vec![1, 1], vec![0, 2]])).diagonal, ints(&[1, 2]));
        assert_eq!(check_basis(&m(&[vec![4, 0], vec![0, 6]])).diagonal, ints(&[2, 12]));
        check_basis(&m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        check_basis(&m(&[vec![0, 3, 0, 5]]));
        assert_eq!(stacked_basis(&IntMatrix::zeros(2, 2)).unwrap_err(), AbelianError::ZeroMatrix);
    }

    #[test]
    fn invariant_factor_examples() {
        assert_eq!(
            invariant_factors(&m(&[vec![2, 0], vec![0, 3]])),
            InvariantFactors::from_u64(&[6], 0)
        );
        assert_eq!(invariant_factors(&IntMatrix::zeros(0, 3)), InvariantFactors::from_u64(&[], 3));
        assert_eq!(
            invariant_factors(&m(&[vec![4, 0], vec![0, 6]])),
            InvariantFactors::from_u64(&[2, 12], 0)
        );
        let f = invariant_factors(&m(&[vec![2, 0, 0]]));
        assert_eq!(f, InvariantFactors::from_u64(&[2], 2));
        assert_eq!(f.to_string(), "Z/2 + Z^2");
    }

    #[test]
    fn parsing() {
        assert_eq!(IntMatrix::parse("[[2,0],[0,3]]").unwrap(), m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(IntMatrix::parse("2 0\n0 3\n").unwrap(), m(&[vec![2, 0], vec![0, 3]]));
        assert!(IntMatrix::parse("2 0\n3").is_err());
        assert!(IntMatrix::parse("2 x").is_err());
    }

    #[test]
    fn cyclic_subgroups() {
        let s = cyclic_subgroup_of_order(30, 6).unwrap();
        assert_eq!(s.to_string(), "gp{x^5}");
        assert_eq!(power_order(30, s.generator_power), 6);
        assert_eq!(s.generator_count, 2);
        assert_eq!(cyclic_subgroup_of_order(30, 1).unwrap().to_string(), "gp{e}");
        assert!(cyclic_subgroup_of_order(30, 7).is_err());
        assert_eq!(numtheory::divisors(30).len(), 8);
    }
}

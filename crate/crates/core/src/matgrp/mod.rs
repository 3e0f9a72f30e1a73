//! Integer and modular matrix groups.
//!
//! [`SquareIntMatrix`] carries exact integer arithmetic for `SL_n(Z)` and
//! `GL_n(Z)`; [`ModMatrix`] carries arithmetic mod a prime and is used to
//! materialize `GL_n(Z_p)`, `SL_n(Z_p)` and `UT_n(Z_p)` as finite groups.

mod decompose;
mod modp;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::abelian::numtheory::prime_power;
use crate::fingroup::GroupError;

pub use decompose::{
    decompose_gln_z, decompose_sln_z, elementary_commutator_check, evaluate_ab, evaluate_bc,
    sl2_to_ab, sl2_to_bc, BcLetter, ElementaryWord, Factor,
};
pub use modp::{
    count_invertible, gl_as_fingroup, primitive_root, sl_as_fingroup, ut_sylow, ModMatrix,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("matrix rows must all have length {0}")]
    NotSquare(usize),
    #[error("matrix dimensions {0} and {1} differ")]
    DimensionMismatch(usize, usize),
    #[error("matrices must have at least one row")]
    Empty,
    #[error("determinant is {0}, expected 1")]
    DetNotOne(BigInt),
    #[error("determinant is {0}, expected 1 or -1")]
    DetNotUnit(BigInt),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("dimension must be at least {min}, got {n}")]
    Dimension { n: usize, min: usize },
    #[error("indices must be distinct and within 1..={n}")]
    BadIndices { n: usize },
    #[error("an exponent does not fit in 64 bits")]
    ExponentOverflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// An `n × n` matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareIntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl SquareIntMatrix {
    pub fn identity(n: usize) -> SquareIntMatrix {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        SquareIntMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<SquareIntMatrix, MatError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatError::Empty);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatError::NotSquare(n));
        }
        Ok(SquareIntMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<SquareIntMatrix, MatError> {
        SquareIntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Parses `[[a,b],[c,d]]`.
    pub fn parse(s: &str) -> Result<SquareIntMatrix, MatError> {
        let rows: Vec<Vec<i64>> =
            serde_json::from_str(s).map_err(|e| MatError::Parse(e.to_string()))?;
        SquareIntMatrix::from_i64_rows(&rows)
    }

    /// `e_ij(t) = I + t·E_ij` with 0-based `i ≠ j`.
    pub fn elementary(n: usize, i: usize, j: usize, t: impl Into<BigInt>) -> SquareIntMatrix {
        assert!(i != j && i < n && j < n, "elementary matrix needs distinct indices");
        let mut m = SquareIntMatrix::identity(n);
        m.entries[i * n + j] = t.into();
        m
    }

    /// `diag(1, …, 1, -1)`.
    pub fn neg_diag(n: usize) -> SquareIntMatrix {
        let mut m = SquareIntMatrix::identity(n);
        m.entries[n * n - 1] = -BigInt::one();
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.n).map(<[BigInt]>::to_vec).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == SquareIntMatrix::identity(self.n)
    }

    /// Matrix product. Panics on a dimension mismatch.
    pub fn mul(&self, other: &SquareIntMatrix) -> SquareIntMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * &other.entries[k * n + j];
                }
            }
        }
        SquareIntMatrix { n, entries }
    }

    pub fn try_mul(&self, other: &SquareIntMatrix) -> Result<SquareIntMatrix, MatError> {
        if self.n != other.n {
            return Err(MatError::DimensionMismatch(self.n, other.n));
        }
        Ok(self.mul(other))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        let mut a = self.rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// `col[dst] += t · col[src]`, i.e. right multiplication by `e_{src,dst}(t)`.
    pub(crate) fn add_col(&mut self, src: usize, dst: usize, t: &BigInt) {
        for r in 0..self.n {
            let v = &self.entries[r * self.n + src] * t;
            self.entries[r * self.n + dst] += v;
        }
    }

    /// `row[dst] += t · row[src]`, i.e. left multiplication by `e_{dst,src}(t)`.
    pub(crate) fn add_row(&mut self, src: usize, dst: usize, t: &BigInt) {
        for c in 0..self.n {
            let v = &self.entries[src * self.n + c] * t;
            self.entries[dst * self.n + c] += v;
        }
    }
}

impl fmt::Display for SquareIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for SquareIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rows of numbers; entries outside the 64-bit range are written as strings.
impl Serialize for SquareIntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<serde_json::Value>> = self
            .entries
            .chunks(self.n)
            .map(|r| {
                r.iter().map(crate::abelian::json_int).collect()
            })
            .collect();
        rows.serialize(s)
    }
}

fn check_order_args(n: usize, q: u64) -> Result<(), MatError> {
    if n == 0 {
        return Err(MatError::Dimension { n, min: 1 });
    }
    if prime_power(q).is_none() {
        return Err(MatError::NotPrimePower(q));
    }
    Ok(())
}

/// `|GL_n(F_q)| = ∏_{k=0}^{n-1} (q^n - q^k)`.
pub fn gl_order(n: usize, q: u64) -> Result<BigUint, MatError> {
    check_order_args(n, q)?;
    let q = BigUint::from(q);
    let qn = q.pow(n as u32);
    Ok((0..n).map(|k| &qn - q.pow(k as u32)).product())
}

/// `|SL_n(F_q)| = q^{n-1} ∏_{k=0}^{n-2} (q^n - q^k)`.
pub fn sl_order(n: usize, q: u64) -> Result<BigUint, MatError> {
    check_order_args(n, q)?;
    let q = BigUint::from(q);
    let qn = q.pow(n as u32);
    let prod: BigUint = (0..n.saturating_sub(1)).map(|k| &qn - q.pow(k as u32)).product();
    Ok(q.pow(n as u32 - 1) * prod)
}

/// Whether `|det M| = 1`.
pub fn is_unimodular(m: &SquareIntMatrix) -> bool {
    m.det().abs().is_one()
}

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::{MatError, SquareIntMatrix};
use crate::freegrp::{reduce, Word};

/// One factor of an [`ElementaryWord`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `e_ij(t)` with 0-based `i ≠ j`.
    Elementary { i: usize, j: usize, t: BigInt },
    /// `diag(1, …, 1, -1)`.
    NegDiag,
}

impl Factor {
    fn inverse(&self) -> Factor {
        match self {
            Factor::Elementary { i, j, t } => Factor::Elementary {
                i: *i,
                j: *j,
                t: -t,
            },
            Factor::NegDiag => Factor::NegDiag,
        }
    }

    pub fn matrix(&self, n: usize) -> SquareIntMatrix {
        match self {
            Factor::Elementary { i, j, t } => SquareIntMatrix::elementary(n, *i, *j, t.clone()),
            Factor::NegDiag => SquareIntMatrix::neg_diag(n),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Elementary { i, j, t } if *i < 9 && *j < 9 => {
                write!(f, "e_{}{}({t})", i + 1, j + 1)
            }
            Factor::Elementary { i, j, t } => write!(f, "e_{{{},{}}}({t})", i + 1, j + 1),
            Factor::NegDiag => write!(f, "d(-1)"),
        }
    }
}

/// A product of elementary matrices (and possibly `d(-1)`), evaluated
/// left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryWord {
    pub n: usize,
    pub factors: Vec<Factor>,
}

impl ElementaryWord {
    pub fn evaluate(&self) -> SquareIntMatrix {
        let mut m = SquareIntMatrix::identity(self.n);
        for f in &self.factors {
            match f {
                Factor::Elementary { i, j, t } => m.add_col(*i, *j, t),
                Factor::NegDiag => {
                    let last = self.n - 1;
                    m.add_col(last, last, &BigInt::from(-2));
                }
            }
        }
        m
    }

    pub fn neg_diag_count(&self) -> usize {
        self.factors.iter().filter(|f| **f == Factor::NegDiag).count()
    }
}

impl fmt::Display for ElementaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "I");
        }
        let parts: Vec<String> = self.factors.iter().map(Factor::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for ElementaryWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.factors.iter().map(Factor::to_string).collect();
        parts.serialize(s)
    }
}

/// Reduces `m` to `diag(1, …, 1, det m)` and returns the word for `m`.
///
/// Row `s` is cleared to `(1, 0, …, 0)` by column operations (Euclid with the
/// smallest nonzero entry as pivot, ties to the lowest column), then column
/// `s` is cleared by row operations, and the process recurses on the
/// trailing block.
fn reduce_unimodular(m: &SquareIntMatrix) -> (Vec<Factor>, Vec<Factor>, BigInt) {
    let n = m.dim();
    let mut w = m.clone();
    let mut left: Vec<Factor> = Vec::new();
    let mut right: Vec<Factor> = Vec::new();
    let mut col_op = |w: &mut SquareIntMatrix, src: usize, dst: usize, t: BigInt| {
        if !t.is_zero() {
            w.add_col(src, dst, &t);
            right.push(Factor::Elementary { i: src, j: dst, t });
        }
    };
    for s in 0..n.saturating_sub(1) {
        loop {
            let nonzero: Vec<usize> = (s..n).filter(|&c| !w.get(s, c).is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let pivot = *nonzero
                .iter()
                .min_by_key(|&&c| (w.get(s, c).abs(), c))
                .unwrap();
            for &c in &nonzero {
                if c != pivot {
                    let q: BigInt = w.get(s, c) / w.get(s, pivot);
                    col_op(&mut w, pivot, c, -q);
                }
            }
        }
        let c = (s..n).find(|&c| !w.get(s, c).is_zero()).expect("unimodular row");
        if c != s {
            col_op(&mut w, c, s, BigInt::one());
            col_op(&mut w, s, c, -BigInt::one());
        }
        if w.get(s, s) == &-BigInt::one() {
            let k = s + 1;
            col_op(&mut w, s, k, -BigInt::one());
            col_op(&mut w, k, s, BigInt::from(2));
            col_op(&mut w, s, k, -BigInt::one());
        }
        for r in s + 1..n {
            let a = w.get(r, s).clone();
            if !a.is_zero() {
                w.add_row(s, r, &-&a);
                left.push(Factor::Elementary { i: r, j: s, t: -a });
            }
        }
    }
    let last = w.get(n - 1, n - 1).clone();
    (left, right, last)
}

fn assemble(n: usize, left: Vec<Factor>, middle: Option<Factor>, right: Vec<Factor>) -> ElementaryWord {
    // L_k…L_1 · M · R_1…R_m = D  ⇒  M = L_1⁻¹…L_k⁻¹ · D · R_m⁻¹…R_1⁻¹
    let mut factors: Vec<Factor> = left.iter().map(Factor::inverse).collect();
    factors.extend(middle);
    factors.extend(right.iter().rev().map(Factor::inverse));
    ElementaryWord { n, factors }
}

/// Writes a determinant-one integer matrix as a product of elementary
/// matrices `e_ij(t)`.
pub fn decompose_sln_z(m: &SquareIntMatrix) -> Result<ElementaryWord, MatError> {
    let d = m.det();
    if !d.is_one() {
        return Err(MatError::DetNotOne(d));
    }
    let (left, right, last) = reduce_unimodular(m);
    debug_assert!(last.is_one());
    Ok(assemble(m.dim(), left, None, right))
}

/// Writes a determinant `±1` integer matrix as elementary matrices and at
/// most one `d(-1)`.
pub fn decompose_gln_z(m: &SquareIntMatrix) -> Result<ElementaryWord, MatError> {
    let d = m.det();
    if !d.abs().is_one() {
        return Err(MatError::DetNotUnit(d));
    }
    if d.is_one() {
        return decompose_sln_z(m);
    }
    let (left, right, last) = reduce_unimodular(m);
    debug_assert_eq!(last, -BigInt::one());
    Ok(assemble(m.dim(), left, Some(Factor::NegDiag), right))
}

/// Verifies `[e_ij(λ), e_jk(μ)] = e_ik(λμ)` with `[a, b] = a b a⁻¹ b⁻¹`.
/// Indices are 1-based.
pub fn elementary_commutator_check(
    n: usize,
    i: usize,
    j: usize,
    k: usize,
    lambda: i64,
    mu: i64,
) -> Result<bool, MatError> {
    if n < 3 {
        return Err(MatError::Dimension { n, min: 3 });
    }
    let ok = |x: usize| (1..=n).contains(&x);
    if !(ok(i) && ok(j) && ok(k)) || i == j || j == k || i == k {
        return Err(MatError::BadIndices { n });
    }
    let (i, j, k) = (i - 1, j - 1, k - 1);
    let a = SquareIntMatrix::elementary(n, i, j, lambda);
    let b = SquareIntMatrix::elementary(n, j, k, mu);
    let a_inv = SquareIntMatrix::elementary(n, i, j, -lambda);
    let b_inv = SquareIntMatrix::elementary(n, j, k, -mu);
    let lhs = a.mul(&b).mul(&a_inv).mul(&b_inv);
    let rhs = SquareIntMatrix::elementary(n, i, k, BigInt::from(lambda) * mu);
    Ok(lhs == rhs)
}

/// Letters of a word in `B = [[1,1],[0,1]]` and `C = [[1,0],[1,1]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BcLetter {
    B,
    C,
}

fn to_i64(x: &BigInt) -> Result<i64, MatError> {
    x.to_i64().ok_or(MatError::ExponentOverflow)
}

fn check_sl2(m: &SquareIntMatrix) -> Result<(), MatError> {
    if m.dim() != 2 {
        return Err(MatError::DimensionMismatch(m.dim(), 2));
    }
    let d = m.det();
    if !d.is_one() {
        return Err(MatError::DetNotOne(d));
    }
    Ok(())
}

/// Writes `m ∈ SL_2(Z)` as a word in `B^{±1}` and `C^{±1}`.
///
/// Right multiplication by `B^t` adds `t` times the first column to the
/// second, and by `C^t` adds `t` times the second column to the first. A
/// Euclidean descent on the bottom row brings it to `(0, 1)`, which leaves
/// `B^b` for some `b`.
pub fn sl2_to_bc(m: &SquareIntMatrix) -> Result<Vec<(BcLetter, i64)>, MatError> {
    check_sl2(m)?;
    let mut w = m.clone();
    let mut ops: Vec<(BcLetter, BigInt)> = Vec::new();
    let mut apply = |w: &mut SquareIntMatrix, l: BcLetter, t: BigInt| {
        if t.is_zero() {
            return;
        }
        match l {
            BcLetter::B => w.add_col(0, 1, &t),
            BcLetter::C => w.add_col(1, 0, &t),
        }
        ops.push((l, t));
    };
    loop {
        let c = w.get(1, 0).clone();
        let d = w.get(1, 1).clone();
        if c.is_zero() || d.is_zero() {
            break;
        }
        if c.abs() >= d.abs() {
            apply(&mut w, BcLetter::C, -(&c / &d));
        } else {
            apply(&mut w, BcLetter::B, -(&d / &c));
        }
    }
    if w.get(1, 1).is_zero() {
        // bottom row (c, 0) with c = ±1
        let c = w.get(1, 0).clone();
        apply(&mut w, BcLetter::B, c.clone());
        apply(&mut w, BcLetter::C, -c);
    }
    if w.get(1, 1) == &-BigInt::one() {
        apply(&mut w, BcLetter::C, BigInt::one());
        apply(&mut w, BcLetter::B, BigInt::from(-2));
        apply(&mut w, BcLetter::C, BigInt::one());
    }
    debug_assert!(w.get(1, 0).is_zero() && w.get(1, 1).is_one() && w.get(0, 0).is_one());
    // m · R_1 ⋯ R_k = B^b  ⇒  m = B^b R_k⁻¹ ⋯ R_1⁻¹
    let mut word = Vec::with_capacity(ops.len() + 1);
    let b = w.get(0, 1);
    if !b.is_zero() {
        word.push((BcLetter::B, to_i64(b)?));
    }
    for (l, t) in ops.iter().rev() {
        word.push((*l, -to_i64(t)?));
    }
    Ok(word)
}

/// Evaluates a word in `B` and `C`.
pub fn evaluate_bc(word: &[(BcLetter, i64)]) -> SquareIntMatrix {
    let mut m = SquareIntMatrix::identity(2);
    for &(l, t) in word {
        let t = BigInt::from(t);
        match l {
            BcLetter::B => m.add_col(0, 1, &t),
            BcLetter::C => m.add_col(1, 0, &t),
        }
    }
    m
}

/// Writes `m ∈ SL_2(Z)` as a reduced word in `A = [[0,1],[-1,0]]` (letter 0)
/// and `B = [[1,1],[0,1]]` (letter 1), substituting `C^t = A⁻¹ B^{-t} A`.
pub fn sl2_to_ab(m: &SquareIntMatrix) -> Result<Word, MatError> {
    let bc = sl2_to_bc(m)?;
    let mut raw = Vec::with_capacity(bc.len() * 3);
    for (l, t) in bc {
        match l {
            BcLetter::B => raw.push((1, t)),
            BcLetter::C => raw.extend([(0, -1), (1, -t), (0, 1)]),
        }
    }
    Ok(reduce(2, &raw).expect("rank 2 letters"))
}

/// Evaluates a word in `A` (letter 0) and `B` (letter 1).
pub fn evaluate_ab(w: &Word) -> SquareIntMatrix {
    let a = SquareIntMatrix::from_i64_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
    let mut m = SquareIntMatrix::identity(2);
    for &(l, e) in w.syllables() {
        if l == 0 {
            for _ in 0..e.rem_euclid(4) {
                m = m.mul(&a);
            }
        } else {
            m.add_col(0, 1, &BigInt::from(e));
        }
    }
    m
}

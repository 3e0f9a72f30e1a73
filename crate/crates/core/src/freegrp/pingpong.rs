use num_bigint::BigInt;
use num_traits::Signed;

use super::{FreeError, Word};
use crate::matgrp::SquareIntMatrix;

fn check(n: i64, w: &Word) -> Result<(), FreeError> {
    if n < 2 {
        return Err(FreeError::PingPongParameter(n));
    }
    if w.rank() != 2 {
        return Err(FreeError::RankMismatch {
            expected: 2,
            got: w.rank(),
        });
    }
    Ok(())
}

/// Evaluates a word in `x, y` at `x = [[1,n],[0,1]]`, `y = [[1,0],[n,1]]`.
pub fn sl2_ping_pong(n: i64, w: &Word) -> Result<SquareIntMatrix, FreeError> {
    check(n, w)?;
    let mut m = SquareIntMatrix::identity(2);
    for &(l, k) in w.syllables() {
        let t = BigInt::from(n) * k;
        let factor = if l == 0 {
            SquareIntMatrix::elementary(2, 0, 1, t)
        } else {
            SquareIntMatrix::elementary(2, 1, 0, t)
        };
        m = m.mul(&factor);
    }
    Ok(m)
}

/// The first-row sequence `a_1, a_2, …` of an alternating word
/// `x^{k_1} y^{k_2} …`: `a_1 = 1`, `a_2 = n k_1`,
/// `a_{i+2} = a_i + n k_{i+1} a_{i+1}`.
///
/// Returns `None` when `w` is empty or starts with `y`.
pub fn ping_pong_sequence(n: i64, w: &Word) -> Result<Option<Vec<BigInt>>, FreeError> {
    check(n, w)?;
    let syl = w.syllables();
    if syl.first().is_none_or(|s| s.0 != 0) {
        return Ok(None);
    }
    let mut a = vec![BigInt::from(1), BigInt::from(n) * syl[0].1];
    for &(_, k) in &syl[1..] {
        let len = a.len();
        let next = &a[len - 2] + BigInt::from(n) * k * &a[len - 1];
        a.push(next);
    }
    Ok(Some(a))
}

/// Whether `|a_{i+1}| > |a_i|` along the whole sequence.
pub fn is_strictly_growing(a: &[BigInt]) -> bool {
    a.windows(2).all(|w| w[1].abs() > w[0].abs())
}

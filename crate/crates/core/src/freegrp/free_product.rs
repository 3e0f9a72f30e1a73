use super::FreeError;
use crate::fingroup::FinGroup;

/// A word in a free product `G_1 ⋆ G_2 ⋆ …`: syllables `(factor, element)`
/// with no identity syllables and adjacent syllables from distinct factors.
pub type AltWord = Vec<(usize, usize)>;

pub fn validate_alternating(factors: &[FinGroup], w: &[(usize, usize)]) -> Result<(), FreeError> {
    for (i, &(f, x)) in w.iter().enumerate() {
        let g = factors
            .get(f)
            .ok_or_else(|| FreeError::Malformed(format!("syllable {i}: no factor {f}")))?;
        if x >= g.order() {
            return Err(FreeError::Malformed(format!(
                "syllable {i}: element {x} outside factor {f}"
            )));
        }
        if x == g.identity() {
            return Err(FreeError::Malformed(format!("syllable {i} is the identity")));
        }
        if i > 0 && w[i - 1].0 == f {
            return Err(FreeError::Malformed(format!(
                "syllables {} and {i} lie in the same factor",
                i - 1
            )));
        }
    }
    Ok(())
}

/// `u · v` in the free product: concatenate, multiply same-factor
/// neighbours at the seam, drop identities, and repeat while the seam keeps
/// collapsing.
pub fn free_product_multiply(
    factors: &[FinGroup],
    u: &[(usize, usize)],
    v: &[(usize, usize)],
) -> Result<AltWord, FreeError> {
    validate_alternating(factors, u)?;
    validate_alternating(factors, v)?;
    let mut out: AltWord = u.to_vec();
    for &(f, x) in v {
        match out.last() {
            Some(&(g, y)) if g == f => {
                out.pop();
                let z = factors[f].mul(y, x);
                if z != factors[f].identity() {
                    out.push((f, z));
                }
            }
            _ => out.push((f, x)),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FinGroup {
        let labels = (0..n).map(|i| format!("{i}")).collect();
        FinGroup::from_fn(labels, |a, b| (a + b) % n, None).unwrap()
    }

    #[test]
    fn cancellation_cascades() {
        let fs = [cyclic(5), cyclic(3)];
        // a = 1, a⁻¹ = 4 in the first factor
        assert!(free_product_multiply(&fs, &[(0, 1)], &[(0, 4)]).unwrap().is_empty());
        // (a b)(b⁻¹ c) = ac
        let w = free_product_multiply(&fs, &[(0, 1), (1, 1)], &[(1, 2), (0, 2)]).unwrap();
        assert_eq!(w, vec![(0, 3)]);
        // (a b)(b⁻¹ a⁻¹) = e
        let w = free_product_multiply(&fs, &[(0, 1), (1, 1)], &[(1, 2), (0, 4)]).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn infinite_dihedral_words_never_vanish() {
        let fs = [cyclic(2), cyclic(2)];
        let st = vec![(0, 1), (1, 1)];
        let mut w: AltWord = Vec::new();
        for k in 1..=20 {
            w = free_product_multiply(&fs, &w, &st).unwrap();
            assert_eq!(w.len(), 2 * k);
        }
    }

    #[test]
    fn malformed_words() {
        let fs = [cyclic(2), cyclic(2)];
        assert!(free_product_multiply(&fs, &[(0, 0)], &[]).is_err());
        assert!(free_product_multiply(&fs, &[(0, 1), (0, 1)], &[]).is_err());
        assert!(free_product_multiply(&fs, &[(2, 1)], &[]).is_err());
    }
}

use std::collections::HashMap;

use super::{reduce, FreeError, Word};
use crate::fingroup::{FinGroup, Side, Subgroup};
use crate::perm::Permutation;

/// Left cosets of `H = φ⁻¹(K)` in the free group `F_n`, where `φ` sends the
/// `i`-th free generator to a permutation and `K` is a subgroup of the image.
///
/// Cosets are numbered in the order their shortlex-least representatives
/// are found, so coset 0 is `H` itself with representative the empty word.
/// Letter order for shortlex is `x1 < x1⁻¹ < x2 < x2⁻¹ < …`.
#[derive(Clone, Debug)]
pub struct CosetTable {
    rank: usize,
    image_group: FinGroup,
    image_elements: Vec<Permutation>,
    subgroup: Subgroup,
    /// `coset_of[g]` for each element `g` of the image group.
    coset_of: Vec<usize>,
    /// `transitions[c][2i]` is `x_i · c`, `transitions[c][2i + 1]` is `x_i⁻¹ · c`.
    transitions: Vec<Vec<usize>>,
    transversal: Vec<Word>,
    /// Image-group element of each transversal word.
    coset_rep: Vec<usize>,
}

/// `φ(x t)⁻¹ x t` for a transversal word `t` (coset index) and a free
/// generator `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierGenerator {
    pub coset: usize,
    pub letter: usize,
    pub word: Word,
}

#[derive(Clone, Debug)]
pub struct SchreierGenerators {
    pub generators: Vec<SchreierGenerator>,
    index: HashMap<(usize, usize), usize>,
}

/// A word in the Schreier generators: `(generator index, ±1)` pairs, freely
/// reduced.
pub type GeneratorWord = Vec<(usize, i64)>;

impl CosetTable {
    /// Coset table for `H = φ⁻¹(⟨k_gens⟩)`.
    pub fn new(
        rank: usize,
        images: &[Permutation],
        k_gens: &[Permutation],
        max_order: usize,
    ) -> Result<CosetTable, FreeError> {
        if images.len() != rank {
            return Err(FreeError::RankMismatch {
                expected: rank,
                got: images.len(),
            });
        }
        let degree = images.first().map_or(1, Permutation::degree);
        if images.iter().chain(k_gens).any(|p| p.degree() != degree) {
            return Err(FreeError::DegreeMismatch);
        }
        let (group, elements) = FinGroup::from_permutations(degree, images, max_order)?;
        let lookup: HashMap<&Permutation, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut k_idx = Vec::with_capacity(k_gens.len());
        for p in k_gens {
            k_idx.push(*lookup.get(p).ok_or(FreeError::NotASubgroup)?);
        }
        let subgroup = group.generate(&k_idx);

        let blocks = group.cosets(&subgroup, Side::Left);
        let mut raw_coset = vec![0; group.order()];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                raw_coset[x] = i;
            }
        }
        let gen_idx: Vec<usize> = images.iter().map(|p| lookup[p]).collect();
        let letter_elem = |col: usize| {
            let g = gen_idx[col / 2];
            if col.is_multiple_of(2) {
                g
            } else {
                group.inv(g)
            }
        };

        // shortlex BFS over cosets: a word one letter longer is `letter · t`
        let j = blocks.len();
        let mut number = vec![usize::MAX; j];
        let mut transversal = vec![Word::identity(rank)];
        let mut coset_rep = vec![group.identity()];
        number[raw_coset[group.identity()]] = 0;
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut next = Vec::new();
            for col in 0..2 * rank {
                for &c in &level {
                    let g = group.mul(letter_elem(col), coset_rep[c]);
                    let rc = raw_coset[g];
                    if number[rc] == usize::MAX {
                        let id = transversal.len();
                        number[rc] = id;
                        let exp = if col % 2 == 0 { 1 } else { -1 };
                        let mut raw = vec![(col / 2, exp)];
                        raw.extend_from_slice(transversal[c].syllables());
                        transversal.push(reduce(rank, &raw)?);
                        coset_rep.push(g);
                        next.push(id);
                    }
                }
            }
            level = next;
        }
        let coset_of: Vec<usize> = raw_coset.iter().map(|&rc| number[rc]).collect();
        let transitions = (0..j)
            .map(|c| {
                (0..2 * rank)
                    .map(|col| coset_of[group.mul(letter_elem(col), coset_rep[c])])
                    .collect()
            })
            .collect();
        Ok(CosetTable {
            rank,
            image_group: group,
            image_elements: elements,
            subgroup,
            coset_of,
            transitions,
            transversal,
            coset_rep,
        })
    }

    /// Coset table of the kernel of `φ`.
    pub fn kernel(rank: usize, images: &[Permutation], max_order: usize) -> Result<CosetTable, FreeError> {
        CosetTable::new(rank, images, &[], max_order)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The index `j = [F_n : H]`.
    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn transversal(&self) -> &[Word] {
        &self.transversal
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.transitions
    }

    pub fn image_group(&self) -> &FinGroup {
        &self.image_group
    }

    pub fn image_elements(&self) -> &[Permutation] {
        &self.image_elements
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Image-group element of the transversal word of coset `c`.
    pub fn coset_representative(&self, c: usize) -> usize {
        self.coset_rep[c]
    }

    fn column(letter: usize, sign: i64) -> usize {
        2 * letter + usize::from(sign < 0)
    }

    /// The coset `w·H`, found by acting with the letters of `w` from the
    /// right end.
    pub fn coset_of_word(&self, w: &Word) -> Result<usize, FreeError> {
        if w.rank() != self.rank {
            return Err(FreeError::AlphabetMismatch {
                left: self.rank,
                right: w.rank(),
            });
        }
        let mut c = 0;
        for &(l, e) in w.syllables().iter().rev() {
            let col = Self::column(l, e);
            for _ in 0..e.unsigned_abs() {
                c = self.transitions[c][col];
            }
        }
        Ok(c)
    }

    /// The transversal representative `φ(w)` of `w·H`.
    pub fn representative(&self, w: &Word) -> Result<&Word, FreeError> {
        Ok(&self.transversal[self.coset_of_word(w)?])
    }

    pub fn contains(&self, w: &Word) -> Result<bool, FreeError> {
        Ok(self.coset_of_word(w)? == 0)
    }

    /// Image-group coset index of an element, in this table's numbering.
    pub fn coset_of_element(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    /// Every suffix of every transversal word is again a transversal word.
    pub fn is_schreier(&self) -> bool {
        let set: std::collections::HashSet<&Word> = self.transversal.iter().collect();
        self.transversal.iter().all(|t| {
            let letters = t.letters();
            (0..=letters.len()).all(|i| {
                let suffix = reduce(self.rank, &letters[i..]).expect("in range");
                set.contains(&suffix)
            })
        })
    }

    /// The nontrivial `φ(x t)⁻¹ x t` over transversal words `t` and free
    /// generators `x`, ordered by coset then letter.
    pub fn schreier_generators(&self) -> SchreierGenerators {
        let mut generators = Vec::new();
        let mut index = HashMap::new();
        for (c, t) in self.transversal.iter().enumerate() {
            for x in 0..self.rank {
                let target = self.transitions[c][Self::column(x, 1)];
                let mut raw: Vec<(usize, i64)> = self.transversal[target].inverse().syllables().to_vec();
                raw.push((x, 1));
                raw.extend_from_slice(t.syllables());
                let word = reduce(self.rank, &raw).expect("in range");
                if !word.is_identity() {
                    index.insert((c, x), generators.len());
                    generators.push(SchreierGenerator {
                        coset: c,
                        letter: x,
                        word,
                    });
                }
            }
        }
        SchreierGenerators { generators, index }
    }

    /// Writes `h ∈ H` as a product of Schreier generators and inverses.
    pub fn rewrite_in_generators(
        &self,
        gens: &SchreierGenerators,
        h: &Word,
    ) -> Result<GeneratorWord, FreeError> {
        if !self.contains(h)? {
            return Err(FreeError::NotInSubgroup);
        }
        let letters = h.letters();
        let mut factors: Vec<(usize, i64)> = Vec::new();
        let mut c = 0;
        for &(l, e) in letters.iter().rev() {
            let next = self.transitions[c][Self::column(l, e)];
            // the factor is φ(l t)⁻¹ l t with t the transversal word of c
            let symbol = if e > 0 {
                gens.index.get(&(c, l)).map(|&g| (g, 1))
            } else {
                gens.index.get(&(next, l)).map(|&g| (g, -1))
            };
            if let Some(s) = symbol {
                factors.push(s);
            }
            c = next;
        }
        factors.reverse();
        let n = gens.generators.len();
        Ok(reduce(n.max(1), &factors)?.syllables().to_vec())
    }
}

impl SchreierGenerators {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn words(&self) -> Vec<&Word> {
        self.generators.iter().map(|g| &g.word).collect()
    }

    /// Substitutes the generator words back into `w` and reduces.
    pub fn expand(&self, rank: usize, w: &[(usize, i64)]) -> Word {
        let mut raw = Vec::new();
        for &(g, e) in w {
            let base = self.generators[g].word.pow(e);
            raw.extend_from_slice(base.syllables());
        }
        reduce(rank, &raw).expect("generator words share the alphabet")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegrp::Alphabet;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn parity_kernel() {
        let t = perm("(1 2)", 2);
        let ct = CosetTable::kernel(2, &[t.clone(), t], 100).unwrap();
        let a = Alphabet::standard(2);
        assert_eq!(ct.index(), 2);
        let reps: Vec<String> = ct.transversal().iter().map(|w| a.format(w)).collect();
        assert_eq!(reps, vec!["1", "x"]);
        assert!(ct.is_schreier());
        let gens = ct.schreier_generators();
        assert_eq!(gens.len(), 3);
    }

    #[test]
    fn s3_kernel_has_rank_seven() {
        let ct = CosetTable::kernel(2, &[perm("(1 2)", 3), perm("(1 2 3)", 3)], 100).unwrap();
        assert_eq!(ct.index(), 6);
        assert!(ct.is_schreier());
        let gens = ct.schreier_generators();
        assert_eq!(gens.len(), 7);
        for g in &gens.generators {
            assert!(ct.contains(&g.word).unwrap());
        }
        let whole = CosetTable::new(2, &[perm("(1 2)", 3), perm("(1 2 3)", 3)], &[perm("(1 2)", 3), perm("(1 2 3)", 3)], 100).unwrap();
        assert_eq!(whole.index(), 1);
        assert_eq!(whole.schreier_generators().len(), 2);
    }

    #[test]
    fn cyclic_kernel_and_rewriting() {
        let ct = CosetTable::kernel(1, &[perm("(1 2)", 2)], 100).unwrap();
        let gens = ct.schreier_generators();
        assert_eq!(gens.len(), 1);
        let a = Alphabet::standard(1);
        assert_eq!(a.format(&gens.generators[0].word), "x^2");
        let h = a.parse("x^2").unwrap();
        assert_eq!(ct.rewrite_in_generators(&gens, &h).unwrap(), vec![(0, 1)]);
        let h6 = a.parse("x^-6").unwrap();
        assert_eq!(ct.rewrite_in_generators(&gens, &h6).unwrap(), vec![(0, -3)]);
        assert_eq!(
            ct.rewrite_in_generators(&gens, &a.parse("x").unwrap()),
            Err(FreeError::NotInSubgroup)
        );
    }

    #[test]
    fn rewriting_round_trips() {
        let ct = CosetTable::kernel(2, &[perm("(1 2)", 3), perm("(1 2 3)", 3)], 100).unwrap();
        let gens = ct.schreier_generators();
        for (i, g) in gens.generators.iter().enumerate() {
            assert_eq!(ct.rewrite_in_generators(&gens, &g.word).unwrap(), vec![(i, 1)]);
        }
        let a = Alphabet::standard(2);
        let h = a.parse("x^2 y^3 x y x y y x^2 y^-1").unwrap();
        assert!(ct.contains(&h).unwrap());
        let r = ct.rewrite_in_generators(&gens, &h).unwrap();
        assert_eq!(gens.expand(2, &r), h);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(
            CosetTable::kernel(2, &[perm("(1 2)", 2)], 100),
            Err(FreeError::RankMismatch { .. })
        ));
        assert_eq!(
            CosetTable::new(1, &[perm("(1 2 3)", 3)], &[perm("(1 2)", 3)], 100).unwrap_err(),
            FreeError::NotASubgroup
        );
    }
}

use std::collections::HashSet;

use rand::Rng;
use serde::Serialize;

use super::iso::WordTree;
use super::{FinGroup, Fingerprint, Subgroup};
use crate::abelian::numtheory::prime_divisors;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    UpperCentral,
    Composition,
    Subnormal,
}

/// Summary of one factor `members[i] / members[i + 1]` of a series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorDescriptor {
    pub order: usize,
    pub fingerprint: Fingerprint,
    /// `C<n>` when the factor is cyclic.
    pub name: Option<String>,
}

impl FactorDescriptor {
    pub fn of(g: &FinGroup) -> FactorDescriptor {
        FactorDescriptor {
            order: g.order(),
            fingerprint: g.fingerprint(),
            name: g.is_cyclic().then(|| format!("C{}", g.order())),
        }
    }
}

/// A descending chain of subgroups together with its factors.
///
/// `members` runs from the top of the chain down. The upper central series is
/// reported in the same descending orientation, `Z_k ⊇ … ⊇ Z_0 = {e}`.
/// `complete` records whether the chain spans `G` down to `{e}`.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub members: Vec<Subgroup>,
    pub factors: Vec<FactorDescriptor>,
    pub complete: bool,
}

impl SeriesReport {
    /// Number of strictly decreasing steps.
    pub fn length(&self) -> usize {
        self.members
            .windows(2)
            .filter(|w| w[0].order() != w[1].order())
            .count()
    }

    pub fn member_orders(&self) -> Vec<usize> {
        self.members.iter().map(Subgroup::order).collect()
    }

    pub fn factor_orders(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.order).collect()
    }
}

/// Outcome of comparing two lists of factor groups up to reordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorMatch {
    /// A bijection between the lists pairs up isomorphic groups.
    Isomorphic,
    /// Some groups were too large for the isomorphism search; their
    /// fingerprints agree.
    FingerprintEqual,
    Different,
}

/// Compares two factor lists as multisets. Pairs larger than `bound` are
/// matched on fingerprints only.
pub fn compare_factor_lists(a: &[FinGroup], b: &[FinGroup], bound: usize) -> FactorMatch {
    if a.len() != b.len() {
        return FactorMatch::Different;
    }
    let mut used = vec![false; b.len()];
    let mut weak = false;
    let fb: Vec<Fingerprint> = b.iter().map(FinGroup::fingerprint).collect();
    'outer: for x in a {
        let fx = x.fingerprint();
        for (j, y) in b.iter().enumerate() {
            if used[j] || fb[j] != fx {
                continue;
            }
            if x.order() > bound {
                used[j] = true;
                weak = true;
                continue 'outer;
            }
            if x.find_isomorphism(y).is_some() {
                used[j] = true;
                continue 'outer;
            }
        }
        return FactorMatch::Different;
    }
    if weak {
        FactorMatch::FingerprintEqual
    } else {
        FactorMatch::Isomorphic
    }
}

impl FinGroup {
    /// `A / B` for subgroups `B ⊴ A`, as a standalone group.
    pub fn section(&self, a: &Subgroup, b: &Subgroup) -> Result<FinGroup, super::GroupError> {
        let (local, embed) = self.subgroup_as_group(a);
        let inner: Vec<usize> = embed
            .iter()
            .enumerate()
            .filter(|&(_, &x)| b.contains(x))
            .map(|(i, _)| i)
            .collect();
        if inner.len() != b.order() {
            return Err(super::GroupError::NotASubgroup);
        }
        let n = local.subgroup_from_elements(&inner)?;
        Ok(local.quotient(&n)?.group)
    }

    /// `H'`, the subgroup of `H` generated by commutators of its elements.
    pub fn derived_subgroup_of(&self, h: &Subgroup) -> Subgroup {
        let gens = h.generators();
        let mut comms = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                comms.push(self.commutator(a, b));
            }
        }
        self.normal_closure_in(h, &comms)
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        self.derived_subgroup_of(&self.whole())
    }

    fn report(&self, kind: SeriesKind, members: Vec<Subgroup>, complete: bool) -> SeriesReport {
        let factors = members
            .windows(2)
            .map(|w| {
                let f = self
                    .section(&w[0], &w[1])
                    .expect("consecutive members of a series are normal");
                FactorDescriptor::of(&f)
            })
            .collect();
        SeriesReport {
            kind,
            members,
            factors,
            complete,
        }
    }

    /// `G ⊇ G' ⊇ G'' ⊇ …` until it stabilizes.
    pub fn derived_series(&self) -> SeriesReport {
        let mut members = vec![self.whole()];
        loop {
            let last = members.last().unwrap();
            let next = self.derived_subgroup_of(last);
            if next.order() == last.order() {
                break;
            }
            members.push(next);
        }
        let complete = members.last().unwrap().is_trivial();
        self.report(SeriesKind::Derived, members, complete)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().complete
    }

    /// `Γ_1 = G`, `Γ_{i+1} = [G, Γ_i]` until it stabilizes.
    pub fn lower_central_series(&self) -> SeriesReport {
        let mut members = vec![self.whole()];
        loop {
            let last = members.last().unwrap();
            let mut comms = Vec::new();
            for &g in self.generators() {
                for &h in last.generators() {
                    comms.push(self.commutator(g, h));
                }
            }
            let next = self.normal_closure(&comms);
            if next.order() == last.order() {
                break;
            }
            members.push(next);
        }
        let complete = members.last().unwrap().is_trivial();
        self.report(SeriesKind::LowerCentral, members, complete)
    }

    /// `Z_0 = {e}`, `Z_{i+1}/Z_i = Z(G/Z_i)` until it stabilizes, reported
    /// from the top down.
    pub fn upper_central_series(&self) -> SeriesReport {
        let mut ascending = vec![self.trivial_subgroup()];
        loop {
            let last = ascending.last().unwrap();
            let elems: Vec<usize> = self
                .elements()
                .filter(|&x| {
                    self.generators()
                        .iter()
                        .all(|&g| last.contains(self.commutator(x, g)))
                })
                .collect();
            if elems.len() == last.order() {
                break;
            }
            let gens = self.greedy_generators(&elems);
            let next = self.generate(&gens);
            ascending.push(next);
        }
        let complete = ascending.last().unwrap().order() == self.order();
        ascending.reverse();
        self.report(SeriesKind::UpperCentral, ascending, complete)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().complete
    }

    /// Length of the lower central series when it reaches `{e}`.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let s = self.lower_central_series();
        s.complete.then(|| s.length())
    }

    /// Every normal subgroup of `G`: joins of normal closures of single
    /// conjugacy classes. Sorted by `(order, elements)`.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let mut found: HashSet<Subgroup> = HashSet::new();
        let mut list: Vec<Subgroup> = Vec::new();
        for c in self.conjugacy_classes() {
            let n = self.normal_closure(&[c.representative]);
            if found.insert(n.clone()) {
                list.push(n);
            }
        }
        let minimal = list.clone();
        let mut i = 0;
        while i < list.len() {
            for m in &minimal {
                if m.is_subset(&list[i]) {
                    continue;
                }
                let j = self.join(&list[i], m);
                if found.insert(j.clone()) {
                    list.push(j);
                }
            }
            i += 1;
        }
        list.sort();
        list
    }

    /// Kernels of the nonzero homomorphisms `G → C_p` over all primes `p`.
    fn prime_index_normal_subgroups(&self) -> Vec<Subgroup> {
        let abel = self.order() / self.commutator_subgroup().order();
        let tree = WordTree::new(self, self.generators().to_vec());
        let k = tree.gens.len();
        let mut out: HashSet<Subgroup> = HashSet::new();
        for p in prime_divisors(abel as u64) {
            let p = p as usize;
            let mut images = vec![0usize; k];
            // projective representatives: the first nonzero coordinate is 1
            for lead in 0..k {
                for x in images.iter_mut() {
                    *x = 0;
                }
                images[lead] = 1;
                let free = k - lead - 1;
                let total = p.checked_pow(free as u32).unwrap_or(usize::MAX);
                for mut code in 0..total {
                    for slot in images[lead + 1..].iter_mut() {
                        *slot = code % p;
                        code /= p;
                    }
                    if let Some(kernel) = self.kernel_mod_p(&tree, &images, p) {
                        out.insert(kernel);
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    fn kernel_mod_p(&self, tree: &WordTree, images: &[usize], p: usize) -> Option<Subgroup> {
        let mut phi = vec![0usize; self.order()];
        for &x in &tree.order[1..] {
            let (parent, j) = tree.parent[x];
            phi[x] = (phi[parent] + images[j]) % p;
        }
        for x in self.elements() {
            for (j, &s) in tree.gens.iter().enumerate() {
                if phi[self.mul(x, s)] != (phi[x] + images[j]) % p {
                    return None;
                }
            }
        }
        let kernel: Vec<usize> = self.elements().filter(|&x| phi[x] == 0).collect();
        let gens = self.greedy_generators(&kernel);
        Some(self.generate(&gens))
    }

    /// Maximal proper normal subgroups of `G`, sorted by decreasing order,
    /// ties by element list.
    pub fn maximal_normal_subgroups(&self) -> Vec<Subgroup> {
        if self.order() == 1 {
            return Vec::new();
        }
        let mut out = if self.is_solvable() {
            self.prime_index_normal_subgroups()
        } else {
            let normals = self.normal_subgroups();
            let proper: Vec<&Subgroup> = normals.iter().filter(|n| n.order() < self.order()).collect();
            proper
                .iter()
                .filter(|n| {
                    !proper
                        .iter()
                        .any(|m| m.order() > n.order() && n.is_subset(m))
                })
                .map(|n| (*n).clone())
                .collect()
        };
        out.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.elements().cmp(b.elements())));
        out
    }

    fn composition_chain(&self, mut choose: impl FnMut(&[Subgroup]) -> usize) -> Vec<Subgroup> {
        let mut members = vec![self.whole()];
        loop {
            let h = members.last().unwrap();
            if h.is_trivial() {
                break;
            }
            let (local, embed) = self.subgroup_as_group(h);
            let candidates = local.maximal_normal_subgroups();
            let pick = &candidates[choose(&candidates)];
            let elems: Vec<usize> = pick.elements().iter().map(|&x| embed[x]).collect();
            let gens = self.greedy_generators(&elems);
            members.push(self.generate(&gens));
        }
        members
    }

    /// Composition series choosing, at each step, the largest maximal normal
    /// subgroup (ties broken by element list).
    pub fn composition_series(&self) -> SeriesReport {
        let members = self.composition_chain(|_| 0);
        self.report(SeriesKind::Composition, members, true)
    }

    /// Composition series choosing a uniformly random maximal normal subgroup
    /// at each step.
    pub fn composition_series_random<R: Rng + ?Sized>(&self, rng: &mut R) -> SeriesReport {
        let members = self.composition_chain(|c| rng.gen_range(0..c.len()));
        self.report(SeriesKind::Composition, members, true)
    }

    /// Factor groups of a descending chain.
    pub fn series_factors(&self, members: &[Subgroup]) -> Vec<FinGroup> {
        members
            .windows(2)
            .map(|w| self.section(&w[0], &w[1]).expect("normal step"))
            .collect()
    }

    /// Composition factor fingerprints, sorted.
    pub fn jh_factors(&self) -> Vec<Fingerprint> {
        let mut f: Vec<Fingerprint> = self
            .composition_series()
            .factors
            .into_iter()
            .map(|d| d.fingerprint)
            .collect();
        f.sort();
        f
    }

    /// Checks that `members` descends from `G` to `{e}` with each member
    /// normal in its predecessor, and reports it as a subnormal series.
    pub fn subnormal_series(&self, members: Vec<Subgroup>) -> Option<SeriesReport> {
        let first_ok = members.first().is_some_and(|m| m.order() == self.order());
        let last_ok = members.last().is_some_and(Subgroup::is_trivial);
        let steps_ok = members
            .windows(2)
            .all(|w| w[1].is_subset(&w[0]) && self.is_normal_in(&w[1], &w[0]));
        (first_ok && last_ok && steps_ok).then(|| self.report(SeriesKind::Subnormal, members, true))
    }

    /// Whether `G` is simple (nontrivial with no proper nontrivial normal
    /// subgroup).
    pub fn is_simple(&self) -> bool {
        self.order() > 1
            && self
                .conjugacy_classes()
                .iter()
                .filter(|c| c.representative != self.identity())
                .all(|c| self.normal_closure(&[c.representative]).order() == self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn perm_group(n: usize, gens: &[&str]) -> FinGroup {
        let gens: Vec<Permutation> = gens
            .iter()
            .map(|s| Permutation::parse(s, Some(n)).unwrap())
            .collect();
        FinGroup::from_permutations(n, &gens, 1000).unwrap().0
    }

    #[test]
    fn s3_series() {
        let g = perm_group(3, &["(1 2)", "(1 2 3)"]);
        assert_eq!(g.commutator_subgroup().order(), 3);
        assert!(g.is_solvable());
        assert!(!g.is_nilpotent());
        assert_eq!(g.nilpotency_class(), None);
        assert_eq!(g.composition_series().factor_orders(), vec![2, 3]);
        let upper = g.upper_central_series();
        assert!(!upper.complete);
        assert_eq!(upper.member_orders(), vec![1]);
    }

    #[test]
    fn s4_composition_series() {
        let g = perm_group(4, &["(1 2)", "(1 2 3 4)"]);
        let s = g.composition_series();
        assert_eq!(s.member_orders(), vec![24, 12, 4, 2, 1]);
        assert_eq!(s.factor_orders(), vec![2, 3, 2, 2]);
        assert!(s.factors.iter().all(|f| f.name.is_some()));
    }

    #[test]
    fn a5_is_simple() {
        let g = perm_group(5, &["(1 2 3)", "(1 2 3 4 5)"]);
        assert_eq!(g.order(), 60);
        assert!(g.is_simple());
        assert!(!g.is_solvable());
        assert_eq!(g.normal_subgroups().len(), 2);
        let s = g.composition_series();
        assert_eq!(s.factor_orders(), vec![60]);
        assert_eq!(s.factors[0].name, None);
    }

    #[test]
    fn s5_normal_subgroups() {
        let g = perm_group(5, &["(1 2)", "(1 2 3 4 5)"]);
        let orders: Vec<usize> = g.normal_subgroups().iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 60, 120]);
        assert_eq!(g.composition_series().factor_orders(), vec![2, 60]);
    }

    #[test]
    fn subnormal_chain_validation() {
        let g = perm_group(3, &["(1 2)", "(1 2 3)"]);
        let a3 = g.commutator_subgroup();
        let ok = g.subnormal_series(vec![g.whole(), a3, g.trivial_subgroup()]);
        assert_eq!(ok.unwrap().length(), 2);
        let t = g.generate(&[g.find_label("(1 2)").unwrap()]);
        assert!(g
            .subnormal_series(vec![g.whole(), t, g.trivial_subgroup()])
            .is_none());
    }
}

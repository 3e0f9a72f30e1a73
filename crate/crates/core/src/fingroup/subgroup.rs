use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{FinGroup, GroupError};

/// A subgroup of a [`FinGroup`], held as a sorted set of element indices of
/// the parent together with a generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: Vec<usize>,
    members: FixedBitSet,
    generators: Vec<usize>,
}

impl Subgroup {
    fn from_members(members: FixedBitSet, generators: Vec<usize>) -> Subgroup {
        Subgroup {
            elements: members.ones().collect(),
            members,
            generators,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Element indices in increasing order.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    /// Order of the parent group.
    pub fn parent_order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }
}

impl Serialize for Subgroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Subgroup", 3)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("elements", &self.elements)?;
        st.serialize_field("generators", &self.generators)?;
        st.end()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state)
    }
}

/// Orders subgroups by size, then lexicographically by element set.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub size: usize,
    pub elements: Vec<usize>,
}

/// `|G| = |Z(G)| + Σ [G : C_G(x_i)]` over the non-central classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEquation {
    pub order: usize,
    pub center_size: usize,
    /// Non-central classes, smallest first.
    pub classes: Vec<ConjugacyClass>,
}

impl ClassEquation {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.center_size + self.classes.iter().map(|c| c.size).sum::<usize>() == self.order
            && self
                .classes
                .iter()
                .all(|c| c.size > 1 && self.order.is_multiple_of(c.size))
    }
}

impl std::fmt::Display for ClassEquation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} = {}", self.order, self.center_size)?;
        for c in &self.classes {
            write!(f, " + {}", c.size)?;
        }
        Ok(())
    }
}

/// A quotient group `G/N` and the map sending each element of `G` to its coset.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FinGroup,
    pub coset_of: Vec<usize>,
}

impl FinGroup {
    pub fn whole(&self) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert_range(..);
        Subgroup::from_members(members, self.generators.clone())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.generate(&[])
    }

    /// The subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let m = self.order();
        let mut members = FixedBitSet::with_capacity(m);
        members.insert(self.identity);
        let mut list = vec![self.identity];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !members.put(y) {
                    list.push(y);
                }
            }
            i += 1;
        }
        let gens = super::dedup_generators(gens, self.identity);
        Subgroup::from_members(members, gens)
    }

    /// Extends `h` by the extra elements `extra`.
    pub fn extend(&self, h: &Subgroup, extra: &[usize]) -> Subgroup {
        let mut gens = h.generators.clone();
        gens.extend_from_slice(extra);
        self.generate(&gens)
    }

    /// Subgroup criterion: `S` is non-empty and `a b⁻¹ ∈ S` for all `a, b ∈ S`.
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        if set.is_empty() || set.iter().any(|&x| x >= self.order()) {
            return false;
        }
        let mut members = FixedBitSet::with_capacity(self.order());
        for &x in set {
            members.insert(x);
        }
        set.iter().all(|&a| {
            set.iter()
                .all(|&b| members.contains(self.mul(a, self.inv(b))))
        })
    }

    /// Wraps an element set known to be a subgroup.
    pub fn subgroup_from_elements(&self, set: &[usize]) -> Result<Subgroup, GroupError> {
        if !self.is_subgroup(set) {
            return Err(GroupError::NotASubgroup);
        }
        let gens = self.greedy_generators(set);
        Ok(self.generate(&gens))
    }

    pub fn join(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        self.extend(h, &k.generators)
    }

    pub fn intersection(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut members = h.members.clone();
        members.intersect_with(&k.members);
        let elems: Vec<usize> = members.ones().collect();
        let gens = self.greedy_generators(&elems);
        Subgroup::from_members(members, gens)
    }

    /// Index `[G : H]`.
    pub fn index(&self, h: &Subgroup) -> usize {
        self.order() / h.order()
    }

    /// Cosets of `h`, each sorted, listed by smallest element.
    pub fn cosets(&self, h: &Subgroup, side: Side) -> Vec<Vec<usize>> {
        let m = self.order();
        let mut seen = FixedBitSet::with_capacity(m);
        let mut out = Vec::new();
        for x in 0..m {
            if seen.contains(x) {
                continue;
            }
            let mut coset: Vec<usize> = h
                .elements
                .iter()
                .map(|&y| match side {
                    Side::Left => self.mul(x, y),
                    Side::Right => self.mul(y, x),
                })
                .collect();
            coset.sort_unstable();
            for &c in &coset {
                seen.insert(c);
            }
            out.push(coset);
        }
        out
    }

    /// `|HK|`, counted directly as a set of products.
    pub fn product_set_size(&self, h: &Subgroup, k: &Subgroup) -> usize {
        let mut members = FixedBitSet::with_capacity(self.order());
        for &a in &h.elements {
            for &b in &k.elements {
                members.insert(self.mul(a, b));
            }
        }
        members.count_ones(..)
    }

    /// `g H g⁻¹`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        for &x in &h.elements {
            members.insert(self.conjugate(g, x));
        }
        let gens = h.generators.iter().map(|&x| self.conjugate(g, x)).collect();
        Subgroup::from_members(members, gens)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.is_normal_in(h, &self.whole())
    }

    /// Whether `n ⊆ h` and `n` is normal in `h`.
    pub fn is_normal_in(&self, n: &Subgroup, h: &Subgroup) -> bool {
        n.is_subset(h)
            && h.generators.iter().all(|&g| {
                n.generators
                    .iter()
                    .all(|&x| n.contains(self.conjugate(g, x)))
            })
    }

    /// Smallest normal subgroup of `G` containing `set`.
    pub fn normal_closure(&self, set: &[usize]) -> Subgroup {
        self.normal_closure_in(&self.whole(), set)
    }

    /// Smallest normal subgroup of `h` containing `set` (which must lie in `h`).
    pub fn normal_closure_in(&self, h: &Subgroup, set: &[usize]) -> Subgroup {
        let mut n = self.generate(set);
        loop {
            let mut extra = Vec::new();
            for &g in &h.generators {
                for &x in &n.generators {
                    let c = self.conjugate(g, x);
                    if !n.contains(c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return n;
            }
            n = self.extend(&n, &extra);
        }
    }

    pub fn centralizer(&self, x: usize) -> Subgroup {
        self.centralizer_of_set(&[x])
    }

    /// Elements commuting with every element of `set`.
    pub fn centralizer_of_set(&self, set: &[usize]) -> Subgroup {
        let elems: Vec<usize> = self
            .elements()
            .filter(|&g| set.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        let gens = self.greedy_generators(&elems);
        self.generate(&gens)
    }

    /// `{g : g S g⁻¹ = S}` for an arbitrary element set `S`.
    pub fn normalizer(&self, set: &[usize]) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        for &x in set {
            members.insert(x);
        }
        let elems: Vec<usize> = self
            .elements()
            .filter(|&g| set.iter().all(|&x| members.contains(self.conjugate(g, x))))
            .collect();
        let gens = self.greedy_generators(&elems);
        self.generate(&gens)
    }

    /// Normalizer of a subgroup, testing only its generators.
    pub fn normalizer_of(&self, h: &Subgroup) -> Subgroup {
        let elems: Vec<usize> = self
            .elements()
            .filter(|&g| h.generators.iter().all(|&x| h.contains(self.conjugate(g, x))))
            .collect();
        let gens = self.greedy_generators(&elems);
        self.generate(&gens)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer_of_set(&self.generators.clone())
    }

    /// `Z(H)` for a subgroup `H`.
    pub fn center_of(&self, h: &Subgroup) -> Subgroup {
        let elems: Vec<usize> = h
            .elements
            .iter()
            .copied()
            .filter(|&x| {
                h.generators
                    .iter()
                    .all(|&g| self.mul(g, x) == self.mul(x, g))
            })
            .collect();
        let gens = self.greedy_generators(&elems);
        self.generate(&gens)
    }

    /// Conjugacy classes of `h` (under conjugation by `h`), listed by smallest
    /// element.
    pub fn conjugacy_classes_of(&self, h: &Subgroup) -> Vec<ConjugacyClass> {
        let mut seen = FixedBitSet::with_capacity(self.order());
        let mut out = Vec::new();
        for &x in &h.elements {
            if seen.contains(x) {
                continue;
            }
            seen.insert(x);
            let mut orbit = vec![x];
            let mut i = 0;
            while i < orbit.len() {
                let y = orbit[i];
                for &g in &h.generators {
                    let z = self.conjugate(g, y);
                    if !seen.put(z) {
                        orbit.push(z);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(ConjugacyClass {
                representative: orbit[0],
                size: orbit.len(),
                elements: orbit,
            });
        }
        out
    }

    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        self.conjugacy_classes_of(&self.whole())
    }

    pub fn class_equation(&self) -> ClassEquation {
        let classes = self.conjugacy_classes();
        let center_size = classes.iter().filter(|c| c.size == 1).count();
        let mut nontrivial: Vec<ConjugacyClass> =
            classes.into_iter().filter(|c| c.size > 1).collect();
        nontrivial.sort_by_key(|c| (c.size, c.representative));
        ClassEquation {
            order: self.order(),
            center_size,
            classes: nontrivial,
        }
    }

    /// Materializes a subgroup as a group in its own right. The second value
    /// maps each new index to the parent index.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FinGroup, Vec<usize>) {
        let embed = h.elements.clone();
        let mut local = HashMap::with_capacity(embed.len());
        for (i, &x) in embed.iter().enumerate() {
            local.insert(x, i);
        }
        let n = embed.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = local[&self.mul(embed[i], embed[j])] as u32;
            }
        }
        let group = FinGroup {
            labels: embed.iter().map(|&x| self.labels[x].clone()).collect(),
            table,
            identity: local[&self.identity],
            inverses: embed.iter().map(|&x| local[&self.inv(x)]).collect(),
            generators: h.generators.iter().map(|x| local[x]).collect(),
        };
        (group, embed)
    }

    /// The quotient `G/N` by a normal subgroup. Cosets are numbered by their
    /// smallest element, so the identity coset comes first when the identity
    /// has index 0.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient, GroupError> {
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let cosets = self.cosets(n, Side::Left);
        let mut coset_of = vec![0; self.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                coset_of[x] = i;
            }
        }
        let k = cosets.len();
        let mut table = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                table[i * k + j] = coset_of[self.mul(cosets[i][0], cosets[j][0])] as u32;
            }
        }
        let labels = cosets
            .iter()
            .map(|c| format!("[{}]", self.labels[c[0]]))
            .collect();
        let identity = coset_of[self.identity];
        let inverses = (0..k).map(|i| coset_of[self.inv(cosets[i][0])]).collect();
        let gens = self
            .generators
            .iter()
            .map(|&g| coset_of[g])
            .collect::<Vec<_>>();
        let group = FinGroup {
            labels,
            table,
            identity,
            inverses,
            generators: super::dedup_generators(&gens, identity),
        };
        Ok(Quotient { group, coset_of })
    }

    /// Orbit of an element set under conjugation by `G`: all distinct
    /// conjugates `g H g⁻¹`, in discovery order.
    pub fn conjugates_of(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut out = vec![h.clone()];
        let mut seen: std::collections::HashSet<Subgroup> = std::collections::HashSet::new();
        seen.insert(h.clone());
        let mut queue = VecDeque::from([h.clone()]);
        while let Some(k) = queue.pop_front() {
            for &g in &self.generators {
                let c = self.conjugate_subgroup(&k, g);
                if seen.insert(c.clone()) {
                    out.push(c.clone());
                    queue.push_back(c);
                }
            }
        }
        out
    }
}

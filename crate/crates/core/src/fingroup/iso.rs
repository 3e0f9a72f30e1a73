use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::{FinGroup, GroupError};
use crate::perm::Permutation;

/// Isomorphism invariants used to filter candidate pairs before searching
/// for an explicit isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    /// `(element order, number of elements of that order)`, ascending.
    pub order_histogram: Vec<(usize, usize)>,
    /// Conjugacy class sizes, ascending.
    pub class_sizes: Vec<usize>,
}

/// `Aut(G)` as a permutation group on the elements of `G`.
#[derive(Clone, Debug)]
pub struct Automorphisms {
    pub group: FinGroup,
    /// `maps[a][x]` is the image of element `x` under automorphism `a`.
    pub maps: Vec<Vec<usize>>,
}

/// Spanning tree of a group over a generating set: every non-identity
/// element `x` is `parent · gen` for a unique recorded pair.
pub(super) struct WordTree {
    pub(super) gens: Vec<usize>,
    /// Elements in breadth-first order, identity first.
    pub(super) order: Vec<usize>,
    pub(super) parent: Vec<(usize, usize)>,
    /// Orders of the subgroups generated by each prefix of `gens`.
    prefix_orders: Vec<usize>,
}

impl WordTree {
    pub(super) fn new(g: &FinGroup, gens: Vec<usize>) -> WordTree {
        let m = g.order();
        let mut parent = vec![(usize::MAX, usize::MAX); m];
        let mut seen = vec![false; m];
        seen[g.identity()] = true;
        let mut order = vec![g.identity()];
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for (j, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = (x, j);
                    order.push(y);
                }
            }
            i += 1;
        }
        let prefix_orders = (1..=gens.len())
            .map(|k| g.generate(&gens[..k]).order())
            .collect();
        WordTree {
            gens,
            order,
            parent,
            prefix_orders,
        }
    }

    /// Extends generator images to a map on all of `G`, then checks that it
    /// is a bijective homomorphism onto `h`.
    fn extend(&self, g: &FinGroup, h: &FinGroup, images: &[usize]) -> Option<Vec<usize>> {
        let m = g.order();
        let mut phi = vec![usize::MAX; m];
        phi[g.identity()] = h.identity();
        for &x in &self.order[1..] {
            let (p, j) = self.parent[x];
            phi[x] = h.mul(phi[p], images[j]);
        }
        let mut hit = vec![false; h.order()];
        for &y in &phi {
            if hit[y] {
                return None;
            }
            hit[y] = true;
        }
        for x in 0..m {
            for (j, &s) in self.gens.iter().enumerate() {
                if phi[g.mul(x, s)] != h.mul(phi[x], images[j]) {
                    return None;
                }
            }
        }
        Some(phi)
    }
}

impl FinGroup {
    pub fn fingerprint(&self) -> Fingerprint {
        let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
        for x in self.elements() {
            *hist.entry(self.element_order(x)).or_default() += 1;
        }
        let mut class_sizes: Vec<usize> = self.conjugacy_classes().iter().map(|c| c.size).collect();
        class_sizes.sort_unstable();
        Fingerprint {
            order: self.order(),
            abelian: self.is_abelian(),
            order_histogram: hist.into_iter().collect(),
            class_sizes,
        }
    }

    fn class_size_table(&self) -> Vec<usize> {
        let mut out = vec![0; self.order()];
        for c in self.conjugacy_classes() {
            for &x in &c.elements {
                out[x] = c.size;
            }
        }
        out
    }

    /// Calls `visit` with every isomorphism `self → other` until it returns
    /// `false`.
    fn search_isomorphisms(&self, other: &FinGroup, mut visit: impl FnMut(Vec<usize>) -> bool) {
        if self.order() != other.order() {
            return;
        }
        let gens = self.greedy_generators(&self.elements().collect::<Vec<_>>());
        let tree = WordTree::new(self, gens);
        let cs_g = self.class_size_table();
        let cs_h = other.class_size_table();
        let candidates: Vec<Vec<usize>> = tree
            .gens
            .iter()
            .map(|&s| {
                let o = self.element_order(s);
                other
                    .elements()
                    .filter(|&y| other.element_order(y) == o && cs_h[y] == cs_g[s])
                    .collect()
            })
            .collect();

        fn rec(
            g: &FinGroup,
            h: &FinGroup,
            tree: &WordTree,
            candidates: &[Vec<usize>],
            images: &mut Vec<usize>,
            visit: &mut dyn FnMut(Vec<usize>) -> bool,
        ) -> bool {
            let k = images.len();
            if k == tree.gens.len() {
                if let Some(phi) = tree.extend(g, h, images) {
                    return visit(phi);
                }
                return true;
            }
            for &y in &candidates[k] {
                images.push(y);
                if h.generate(images).order() == tree.prefix_orders[k]
                    && !rec(g, h, tree, candidates, images, visit)
                {
                    images.pop();
                    return false;
                }
                images.pop();
            }
            true
        }
        rec(
            self,
            other,
            &tree,
            &candidates,
            &mut Vec::new(),
            &mut visit,
        );
    }

    /// An explicit isomorphism `self → other` as an element map, if one exists.
    pub fn find_isomorphism(&self, other: &FinGroup) -> Option<Vec<usize>> {
        if self.fingerprint() != other.fingerprint() {
            return None;
        }
        let mut found = None;
        self.search_isomorphisms(other, |phi| {
            found = Some(phi);
            false
        });
        found
    }

    /// Isomorphism test for groups up to `bound` elements.
    pub fn is_isomorphic_with(&self, other: &FinGroup, bound: usize) -> Result<bool, GroupError> {
        if self.order().max(other.order()) > bound {
            return Err(GroupError::BoundExceeded {
                what: "isomorphism search".into(),
                bound,
            });
        }
        Ok(self.find_isomorphism(other).is_some())
    }

    /// Isomorphism test with the default brute-force bound (64 elements).
    pub fn is_isomorphic(&self, other: &FinGroup) -> Result<bool, GroupError> {
        self.is_isomorphic_with(other, super::Limits::default().max_brute_force)
    }

    /// Every automorphism of `G`, as element maps in search order.
    pub fn automorphism_maps(&self, max_count: usize) -> Result<Vec<Vec<usize>>, GroupError> {
        let mut maps = Vec::new();
        let mut overflow = false;
        self.search_isomorphisms(self, |phi| {
            if maps.len() >= max_count {
                overflow = true;
                return false;
            }
            maps.push(phi);
            true
        });
        if overflow {
            return Err(GroupError::BoundExceeded {
                what: "automorphism count".into(),
                bound: max_count,
            });
        }
        Ok(maps)
    }

    /// `Aut(G)` realized as a permutation group on the elements of `G`.
    /// Composition is `(αβ)(x) = α(β(x))`.
    pub fn aut_group(&self, limits: &super::Limits) -> Result<Automorphisms, GroupError> {
        if self.order() > limits.max_brute_force {
            return Err(GroupError::BoundExceeded {
                what: "automorphism search".into(),
                bound: limits.max_brute_force,
            });
        }
        let maps = self.automorphism_maps(limits.max_order)?;
        let perms: Vec<Permutation> = maps
            .iter()
            .map(|m| Permutation::from_images0_unchecked(m.clone()))
            .collect();
        let m = self.order();
        let identity = Permutation::identity(m);
        let mut gens: Vec<Permutation> = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::from([identity.clone()]);
        for p in &perms {
            if !span.contains(p) {
                gens.push(p.clone());
                let (_, elems) =
                    FinGroup::from_permutations(m, &gens, limits.max_order)?;
                span = elems.into_iter().collect();
            }
        }
        let self_gens = self.generators().to_vec();
        let label = |p: &Permutation| {
            if p.is_identity() {
                return "id".to_string();
            }
            let parts: Vec<String> = self_gens
                .iter()
                .map(|&s| format!("{}->{}", self.label(s), self.label(p.image0(s))))
                .collect();
            format!("[{}]", parts.join(", "))
        };
        let (group, elems) =
            FinGroup::closure(identity, &gens, |a, b| a * b, label, limits.max_order)?;
        if group.order() != maps.len() {
            return Err(GroupError::OracleInconsistent(
                "automorphism closure disagrees with the enumeration".into(),
            ));
        }
        let maps = elems.iter().map(|p| p.as_slice0().to_vec()).collect();
        Ok(Automorphisms { group, maps })
    }
}

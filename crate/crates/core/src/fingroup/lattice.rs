use std::collections::HashSet;

use super::{FinGroup, GroupError, Limits, Subgroup};

impl FinGroup {
    /// The distinct cyclic subgroups `⟨x⟩`, sorted.
    pub fn cyclic_subgroups(&self) -> Vec<Subgroup> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in self.elements() {
            let c = self.generate(&[x]);
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        out.sort();
        out
    }

    /// Every subgroup of `G`, sorted by `(order, elements)`.
    ///
    /// Every subgroup is a join of cyclic subgroups, so the list is closed
    /// under joining with cyclic subgroups starting from the cyclic ones.
    pub fn all_subgroups(&self, limits: &Limits) -> Result<Vec<Subgroup>, GroupError> {
        if self.order() > limits.max_subgroup_scan {
            return Err(GroupError::BoundExceeded {
                what: "subgroup enumeration".into(),
                bound: limits.max_subgroup_scan,
            });
        }
        let cyclic = self.cyclic_subgroups();
        let mut seen: HashSet<Subgroup> = cyclic.iter().cloned().collect();
        let mut list = cyclic.clone();
        let mut i = 0;
        while i < list.len() {
            if list[i].order() < self.order() {
                for c in &cyclic {
                    if c.is_subset(&list[i]) {
                        continue;
                    }
                    let j = self.join(&list[i], c);
                    if !seen.contains(&j) {
                        seen.insert(j.clone());
                        list.push(j);
                    }
                }
            }
            i += 1;
        }
        list.sort();
        Ok(list)
    }

    /// Proper subgroups not contained in any other proper subgroup.
    pub fn maximal_subgroups(&self, limits: &Limits) -> Result<Vec<Subgroup>, GroupError> {
        let all = self.all_subgroups(limits)?;
        let proper: Vec<&Subgroup> = all.iter().filter(|h| h.order() < self.order()).collect();
        Ok(proper
            .iter()
            .filter(|h| {
                !proper
                    .iter()
                    .any(|k| k.order() > h.order() && h.is_subset(k))
            })
            .map(|h| (*h).clone())
            .collect())
    }

    /// Intersection of all maximal subgroups; `G` itself when `G` is trivial.
    pub fn frattini(&self, limits: &Limits) -> Result<Subgroup, GroupError> {
        let max = self.maximal_subgroups(limits)?;
        Ok(max
            .iter()
            .fold(self.whole(), |acc, m| self.intersection(&acc, m)))
    }

    /// Elements `x` that can be dropped from any generating set containing
    /// them, found by brute force over the subgroup lattice.
    pub fn non_generators(&self, limits: &Limits) -> Result<Vec<usize>, GroupError> {
        let all = self.all_subgroups(limits)?;
        let proper: Vec<&Subgroup> = all.iter().filter(|h| h.order() < self.order()).collect();
        Ok(self
            .elements()
            .filter(|&x| {
                proper
                    .iter()
                    .all(|h| h.contains(x) || self.extend(h, &[x]).order() < self.order())
            })
            .collect())
    }
}

//! Finite group actions stored as dense tables.
//!
//! An [`Action`] records `g(x)` for every element `g` and point `x`, and is
//! checked on construction to be a left action: `e(x) = x` and
//! `(gh)(x) = g(h(x))`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::numtheory::factorize;
use crate::constructions::{self, ConstructionError};
use crate::fingroup::{FinGroup, GroupError, Limits, Side, Subgroup};
use crate::perm::Permutation;

/// Largest `N` accepted by [`factorization_orbits`]; trial division stays
/// below a million steps.
pub const MAX_FACTOR_INPUT: u64 = 1_000_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("point {x} is outside a domain of {points} points")]
    PointOutOfRange { x: usize, points: usize },
    #[error("not a group action: {0}")]
    NotAnAction(String),
    #[error("orbit count is not integral: Σχ = {total} is not divisible by |G| = {order}")]
    NonIntegralCount { total: usize, order: usize },
    #[error("{what} exceeds the bound {bound}")]
    BoundExceeded { what: String, bound: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid action description: {0}")]
    Parse(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Clone, Debug)]
pub struct Action {
    group: FinGroup,
    points: usize,
    /// `table[g][x] = g(x)`.
    table: Vec<Vec<usize>>,
    point_labels: Option<Vec<String>>,
}

/// Fixed-point count of one group element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedCount {
    pub element: String,
    pub fixed: usize,
}

/// Orbit count by averaging fixed points, cross-checked against the orbit
/// partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurnsideReport {
    pub group_order: usize,
    pub points: usize,
    /// `χ(g)` for every element in group order.
    pub chi: Vec<FixedCount>,
    pub chi_total: usize,
    pub orbit_count: usize,
    pub orbits: Vec<Vec<usize>>,
}

impl BurnsideReport {
    /// `fixed-point count ↦ number of elements with that count`.
    pub fn chi_histogram(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for c in &self.chi {
            *out.entry(c.fixed).or_default() += 1;
        }
        out
    }
}

impl Action {
    /// Builds an action from `table[g][x]`, verifying the action axioms.
    ///
    /// Compatibility is checked against the generators only:
    /// `table[g·s] = table[g] ∘ table[s]` for all `g` and generators `s`
    /// implies it for all pairs by induction on word length.
    pub fn new(group: FinGroup, points: usize, table: Vec<Vec<usize>>) -> Result<Action, ActionError> {
        if table.len() != group.order() {
            return Err(ActionError::NotAnAction(format!(
                "expected {} rows, got {}",
                group.order(),
                table.len()
            )));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != points {
                return Err(ActionError::NotAnAction(format!(
                    "row for {} has {} entries, expected {points}",
                    group.label(g),
                    row.len()
                )));
            }
            let mut hit = vec![false; points];
            for &y in row {
                if y >= points || std::mem::replace(&mut hit[y], true) {
                    return Err(ActionError::NotAnAction(format!(
                        "{} does not permute the points",
                        group.label(g)
                    )));
                }
            }
        }
        if table[group.identity()].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(ActionError::NotAnAction("the identity moves a point".into()));
        }
        for g in group.elements() {
            for &s in group.generators() {
                let gs = &table[group.mul(g, s)];
                if (0..points).any(|x| gs[x] != table[g][table[s][x]]) {
                    return Err(ActionError::NotAnAction(format!(
                        "({}·{})(x) differs from {}({}(x))",
                        group.label(g),
                        group.label(s),
                        group.label(g),
                        group.label(s)
                    )));
                }
            }
        }
        Ok(Action {
            group,
            points,
            table,
            point_labels: None,
        })
    }

    pub fn with_point_labels(mut self, labels: Vec<String>) -> Result<Action, ActionError> {
        if labels.len() != self.points {
            return Err(ActionError::InvalidArgument(format!(
                "{} labels for {} points",
                labels.len(),
                self.points
            )));
        }
        self.point_labels = Some(labels);
        Ok(self)
    }

    /// Left translation `g(x) = gx`.
    pub fn regular(group: &FinGroup) -> Action {
        let table = group
            .elements()
            .map(|g| group.elements().map(|x| group.mul(g, x)).collect())
            .collect();
        let labels = group.labels().to_vec();
        Action {
            group: group.clone(),
            points: group.order(),
            table,
            point_labels: Some(labels),
        }
    }

    /// Every element fixes every point.
    pub fn trivial(group: &FinGroup, points: usize) -> Action {
        Action {
            group: group.clone(),
            points,
            table: vec![(0..points).collect(); group.order()],
            point_labels: None,
        }
    }

    /// Conjugation `g(x) = g x g⁻¹`.
    pub fn conjugation(group: &FinGroup) -> Action {
        let table = group
            .elements()
            .map(|g| group.elements().map(|x| group.conjugate(g, x)).collect())
            .collect();
        let labels = group.labels().to_vec();
        Action {
            group: group.clone(),
            points: group.order(),
            table,
            point_labels: Some(labels),
        }
    }

    /// Left translation on the left cosets of `h`, in the order returned by
    /// [`FinGroup::cosets`].
    pub fn on_cosets(group: &FinGroup, h: &Subgroup) -> Action {
        let blocks = group.cosets(h, Side::Left);
        let mut block_of = vec![0; group.order()];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                block_of[x] = i;
            }
        }
        let table = group
            .elements()
            .map(|g| blocks.iter().map(|b| block_of[group.mul(g, b[0])]).collect())
            .collect();
        let labels = blocks
            .iter()
            .map(|b| format!("{}H", group.label(b[0])))
            .collect();
        Action {
            group: group.clone(),
            points: blocks.len(),
            table,
            point_labels: Some(labels),
        }
    }

    /// A permutation group acting on its points `0..degree`.
    pub fn natural(degree: usize, generators: &[Permutation], max_order: usize) -> Result<Action, ActionError> {
        let (group, elements) = FinGroup::from_permutations(degree, generators, max_order)?;
        let table = elements.iter().map(|p| p.as_slice0().to_vec()).collect();
        let labels = (1..=degree).map(|i| i.to_string()).collect();
        Ok(Action {
            group,
            points: degree,
            table,
            point_labels: Some(labels),
        })
    }

    /// The action on the disjoint union of the domains, points renumbered
    /// consecutively.
    pub fn disjoint_union(parts: &[Action]) -> Result<Action, ActionError> {
        let first = parts
            .first()
            .ok_or_else(|| ActionError::InvalidArgument("empty union".into()))?;
        if parts.iter().any(|a| a.group != first.group) {
            return Err(ActionError::InvalidArgument(
                "all parts must be actions of the same group".into(),
            ));
        }
        let mut table = vec![Vec::new(); first.group.order()];
        let mut offset = 0;
        for a in parts {
            for (g, row) in a.table.iter().enumerate() {
                table[g].extend(row.iter().map(|&y| y + offset));
            }
            offset += a.points;
        }
        Ok(Action {
            group: first.group.clone(),
            points: offset,
            table,
            point_labels: None,
        })
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn point_label(&self, x: usize) -> String {
        self.point_labels
            .as_ref()
            .map_or_else(|| x.to_string(), |l| l[x].clone())
    }

    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.table[g][x]
    }

    fn check_point(&self, x: usize) -> Result<(), ActionError> {
        if x >= self.points {
            return Err(ActionError::PointOutOfRange {
                x,
                points: self.points,
            });
        }
        Ok(())
    }

    /// `Orb(x)`, sorted.
    pub fn orbit(&self, x: usize) -> Result<Vec<usize>, ActionError> {
        self.check_point(x)?;
        let mut seen = vec![false; self.points];
        seen[x] = true;
        let mut out = vec![x];
        let mut i = 0;
        while i < out.len() {
            for &s in self.group.generators() {
                let y = self.table[s][out[i]];
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        Ok(out)
    }

    /// `Stab(x) = {g : g(x) = x}`.
    pub fn stabilizer(&self, x: usize) -> Result<Subgroup, ActionError> {
        self.check_point(x)?;
        let fixing: Vec<usize> = self
            .group
            .elements()
            .filter(|&g| self.table[g][x] == x)
            .collect();
        Ok(self.group.subgroup_from_elements(&fixing)?)
    }

    /// Some `g` with `g(x) = y`, if `y` lies in the orbit of `x`.
    pub fn transporter(&self, x: usize, y: usize) -> Result<Option<usize>, ActionError> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(self.group.elements().find(|&g| self.table[g][x] == y))
    }

    /// The orbits, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.points];
        let mut out = Vec::new();
        for x in 0..self.points {
            if !seen[x] {
                let o = self.orbit(x).expect("point in range");
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.points <= 1 || self.orbits().len() == 1
    }

    /// `χ(g)`, the number of points fixed by `g`.
    pub fn fixed_points(&self, g: usize) -> usize {
        self.table[g]
            .iter()
            .enumerate()
            .filter(|&(x, &y)| x == y)
            .count()
    }

    /// Elements acting as the identity.
    pub fn kernel(&self) -> Subgroup {
        let k: Vec<usize> = self
            .group
            .elements()
            .filter(|&g| self.fixed_points(g) == self.points)
            .collect();
        self.group
            .subgroup_from_elements(&k)
            .expect("the kernel of an action is a subgroup")
    }

    /// Counts orbits as `(1/|G|) Σ χ(g)` and checks the count against the
    /// orbit partition.
    pub fn burnside_count(&self) -> Result<BurnsideReport, ActionError> {
        let chi: Vec<FixedCount> = self
            .group
            .elements()
            .map(|g| FixedCount {
                element: self.group.label(g).to_string(),
                fixed: self.fixed_points(g),
            })
            .collect();
        let total: usize = chi.iter().map(|c| c.fixed).sum();
        let order = self.group.order();
        if !total.is_multiple_of(order) {
            return Err(ActionError::NonIntegralCount { total, order });
        }
        let orbits = self.orbits();
        if orbits.len() != total / order {
            return Err(ActionError::NotAnAction(format!(
                "{} orbits found but the fixed-point average is {}",
                orbits.len(),
                total / order
            )));
        }
        Ok(BurnsideReport {
            group_order: order,
            points: self.points,
            chi,
            chi_total: total,
            orbit_count: total / order,
            orbits,
        })
    }
}

/// `∩_{x ∈ G} x H x⁻¹`, the largest normal subgroup of `G` inside `H`.
pub fn core(group: &FinGroup, h: &Subgroup) -> Subgroup {
    group
        .conjugates_of(h)
        .iter()
        .fold(h.clone(), |acc, c| group.intersection(&acc, c))
}

/// `G` acting on the left cosets of `H`, together with the kernel of the
/// action.
pub fn coset_action(group: &FinGroup, h: &Subgroup) -> (Action, Subgroup) {
    let a = Action::on_cosets(group, h);
    let k = a.kernel();
    (a, k)
}

/// Every way to write `e` as an ordered sum of `k` nonnegative parts.
fn compositions(e: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![e]];
    }
    let mut out = Vec::new();
    for first in 0..=e {
        for mut rest in compositions(e - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `S_k` permuting the positions of ordered factorizations
/// `N = d_1 d_2 ⋯ d_k`, with `σ(d)_j = d_{σ⁻¹(j)}`.
///
/// Points are the factor tuples, built prime by prime from the exponent
/// compositions, so there are `∏ C(e_i + k - 1, k - 1)` of them.
pub fn factorization_action(n: u64, k: usize, limits: &Limits) -> Result<Action, ActionError> {
    if n == 0 || k == 0 {
        return Err(ActionError::InvalidArgument("N and k must be at least 1".into()));
    }
    if n > MAX_FACTOR_INPUT {
        return Err(ActionError::BoundExceeded {
            what: "number to factor".into(),
            bound: MAX_FACTOR_INPUT,
        });
    }
    let mut tuples: Vec<Vec<u64>> = vec![vec![1; k]];
    for (p, e) in factorize(n) {
        let comps = compositions(e, k);
        if tuples.len().saturating_mul(comps.len()) > limits.max_order {
            return Err(ActionError::BoundExceeded {
                what: "factorization domain".into(),
                bound: limits.max_order as u64,
            });
        }
        tuples = tuples
            .iter()
            .flat_map(|t| {
                comps.iter().map(move |c| {
                    t.iter()
                        .zip(c)
                        .map(|(&d, &ci)| d * p.pow(ci))
                        .collect::<Vec<u64>>()
                })
            })
            .collect();
    }
    tuples.sort();
    let index: HashMap<&Vec<u64>, usize> = tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut gens = Vec::new();
    if k >= 2 {
        gens.push(Permutation::transposition(k, 1, 2).map_err(GroupError::from)?);
    }
    if k >= 3 {
        let cycle: Vec<usize> = (1..k).chain(std::iter::once(0)).collect();
        gens.push(Permutation::from_images0(cycle).map_err(GroupError::from)?);
    }
    let (group, perms) = FinGroup::from_permutations(k, &gens, limits.max_order)?;
    let table = perms
        .iter()
        .map(|sigma| {
            tuples
                .iter()
                .map(|t| {
                    let mut moved = vec![0; k];
                    for (i, &d) in t.iter().enumerate() {
                        moved[sigma.image0(i)] = d;
                    }
                    index[&moved]
                })
                .collect()
        })
        .collect();
    let labels = tuples
        .iter()
        .map(|t| {
            let parts: Vec<String> = t.iter().map(u64::to_string).collect();
            parts.join("·")
        })
        .collect();
    Action::new(group, tuples.len(), table)?.with_point_labels(labels)
}

/// The number of unordered factorizations of `N` into `k` factors, counted
/// as orbits of [`factorization_action`].
pub fn factorization_orbits(n: u64, k: usize, limits: &Limits) -> Result<BurnsideReport, ActionError> {
    factorization_action(n, k, limits)?.burnside_count()
}

/// JSON description of an action: a group spec plus either a full table
/// (`table[g][x]`, rows in the group's element order) or, for permutation
/// actions, nothing else when the group is given as `perm[...]`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDescription {
    pub group: String,
    pub points: Option<usize>,
    pub table: Option<Vec<Vec<usize>>>,
}

impl ActionDescription {
    pub fn parse(text: &str) -> Result<ActionDescription, ActionError> {
        serde_json::from_str(text).map_err(|e| ActionError::Parse(e.to_string()))
    }

    /// Without a table the group must be `perm[...]` and acts naturally.
    pub fn build(&self, limits: &Limits) -> Result<Action, ActionError> {
        let spec = constructions::GroupSpec::parse(&self.group)?;
        match (&self.table, &spec) {
            (Some(table), _) => {
                let group = spec.build(limits)?;
                let points = self.points.unwrap_or_else(|| table.first().map_or(0, Vec::len));
                Action::new(group, points, table.clone())
            }
            (None, constructions::GroupSpec::PermGens { degree, gens }) => {
                Action::natural(*degree, gens, limits.max_order)
            }
            (None, _) => Err(ActionError::Parse(
                "a table is required unless the group is given as perm[...]".into(),
            )),
        }
    }
}

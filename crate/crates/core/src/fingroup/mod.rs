//! Finite groups materialized as multiplication tables.
//!
//! A [`FinGroup`] is an indexed element set with a full `m × m` table. Every
//! structural query (subgroups, cosets, conjugacy, Sylow theory, series,
//! quotients, automorphisms) works on element indices against that table.

mod iso;
mod lattice;
mod series;
mod subgroup;
mod sylow;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::perm::{PermError, Permutation};

pub use iso::{Automorphisms, Fingerprint};
pub use series::{compare_factor_lists, FactorDescriptor, FactorMatch, SeriesKind, SeriesReport};
pub use sylow::SylowRow;
pub use subgroup::{ClassEquation, ConjugacyClass, Quotient, Side, Subgroup};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("{what} exceeds the bound {bound}")]
    BoundExceeded { what: String, bound: usize },
    #[error("inconsistent multiplication oracle: {0}")]
    OracleInconsistent(String),
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u64, order: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Size limits for the exhaustive algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group materialized by closure or a constructor.
    pub max_order: usize,
    /// Largest group whose full subgroup lattice is enumerated.
    pub max_subgroup_scan: usize,
    /// Largest group handed to automorphism and isomorphism search.
    pub max_brute_force: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 20_000,
            max_subgroup_scan: 256,
            max_brute_force: 64,
        }
    }
}

/// Groups at or below this order get an exhaustive associativity check.
const EXHAUSTIVE_ASSOC: usize = 128;
const SAMPLED_TRIPLES: usize = 100_000;
const ORACLE_SAMPLES: usize = 10_000;

#[derive(Clone, PartialEq, Eq)]
pub struct FinGroup {
    labels: Vec<String>,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

impl FinGroup {
    pub fn trivial() -> FinGroup {
        FinGroup {
            labels: vec!["e".into()],
            table: vec![0],
            identity: 0,
            inverses: vec![0],
            generators: vec![],
        }
    }

    /// Builds a group from an explicit Cayley table and validates it.
    ///
    /// When `generators` is `None` a small generating set is chosen greedily.
    pub fn from_table(
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        generators: Option<Vec<usize>>,
    ) -> Result<FinGroup, GroupError> {
        let m = table.len();
        if m == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if labels.len() != m {
            return Err(GroupError::InvalidTable(format!(
                "{} labels for {m} elements",
                labels.len()
            )));
        }
        let mut flat = Vec::with_capacity(m * m);
        for row in &table {
            if row.len() != m {
                return Err(GroupError::InvalidTable("table is not square".into()));
            }
            for &x in row {
                if x >= m {
                    return Err(GroupError::InvalidTable(format!("entry {x} out of range")));
                }
                flat.push(x as u32);
            }
        }
        Self::from_flat(labels, flat, generators)
    }

    /// Builds a group of order `labels.len()` whose product is `mul`.
    pub fn from_fn(
        labels: Vec<String>,
        mul: impl Fn(usize, usize) -> usize,
        generators: Option<Vec<usize>>,
    ) -> Result<FinGroup, GroupError> {
        let m = labels.len();
        if m == 0 {
            return Err(GroupError::InvalidTable("empty element set".into()));
        }
        let mut flat = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                let c = mul(a, b);
                if c >= m {
                    return Err(GroupError::InvalidTable(format!("product {c} out of range")));
                }
                flat.push(c as u32);
            }
        }
        Self::from_flat(labels, flat, generators)
    }

    fn from_flat(
        labels: Vec<String>,
        table: Vec<u32>,
        generators: Option<Vec<usize>>,
    ) -> Result<FinGroup, GroupError> {
        let m = labels.len();
        let identity = (0..m)
            .find(|&e| (0..m).all(|x| table[e * m + x] as usize == x))
            .ok_or_else(|| GroupError::InvalidTable("no identity element".into()))?;
        let mut g = FinGroup {
            labels,
            table,
            identity,
            inverses: vec![0; m],
            generators: vec![],
        };
        g.check_latin()?;
        g.fill_inverses()?;
        g.check_associative()?;
        g.generators = match generators {
            Some(gens) => {
                if gens.iter().any(|&x| x >= m) {
                    return Err(GroupError::InvalidTable("generator out of range".into()));
                }
                let gens = dedup_generators(&gens, identity);
                if g.generate(&gens).order() != m {
                    return Err(GroupError::InvalidTable(
                        "listed generators do not generate the group".into(),
                    ));
                }
                gens
            }
            None => g.greedy_generators(&(0..m).collect::<Vec<_>>()),
        };
        Ok(g)
    }

    /// Closes `generators` under the multiplication oracle `mul`.
    ///
    /// Elements are numbered breadth-first from the identity, multiplying on
    /// the right by the generators in input order. Returns the group together
    /// with the concrete element behind each index.
    pub fn closure<T, M, L>(
        identity: T,
        generators: &[T],
        mul: M,
        label: L,
        max_order: usize,
    ) -> Result<(FinGroup, Vec<T>), GroupError>
    where
        T: Clone + Eq + Hash,
        M: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let k = generators.len();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
        let mut right: Vec<u32> = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            for (j, g) in generators.iter().enumerate() {
                let y = mul(&elements[i], g);
                let idx = match index.get(&y) {
                    Some(&t) => t,
                    None => {
                        if elements.len() >= max_order {
                            return Err(GroupError::BoundExceeded {
                                what: "group closure".into(),
                                bound: max_order,
                            });
                        }
                        let t = elements.len();
                        index.insert(y.clone(), t);
                        elements.push(y);
                        parent.push((i, j));
                        t
                    }
                };
                right.push(idx as u32);
            }
            i += 1;
        }
        let m = elements.len();
        if mul(&elements[0], &elements[0]) != elements[0] {
            return Err(GroupError::OracleInconsistent(
                "identity is not idempotent".into(),
            ));
        }
        let mut table = vec![0u32; m * m];
        for a in 0..m {
            let row = &mut table[a * m..(a + 1) * m];
            row[0] = a as u32;
            for b in 1..m {
                let (p, j) = parent[b];
                row[b] = right[row[p] as usize * k + j];
            }
        }
        let gens: Vec<usize> = (0..k).map(|j| right[j] as usize).collect();
        let mut g = FinGroup {
            labels: elements.iter().map(&label).collect(),
            table,
            identity: 0,
            inverses: vec![0; m],
            generators: dedup_generators(&gens, 0),
        };
        g.check_latin()
            .map_err(|e| GroupError::OracleInconsistent(e.to_string()))?;
        g.fill_inverses()
            .map_err(|e| GroupError::OracleInconsistent(e.to_string()))?;
        g.check_associative()
            .map_err(|e| GroupError::OracleInconsistent(e.to_string()))?;
        let check = |a: usize, b: usize| -> Result<(), GroupError> {
            let prod = mul(&elements[a], &elements[b]);
            if index.get(&prod) != Some(&g.mul(a, b)) {
                return Err(GroupError::OracleInconsistent(format!(
                    "oracle product of elements {a} and {b} disagrees with the closure"
                )));
            }
            Ok(())
        };
        if m <= EXHAUSTIVE_ASSOC {
            for a in 0..m {
                for b in 0..m {
                    check(a, b)?;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..ORACLE_SAMPLES {
                check(rng.gen_range(0..m), rng.gen_range(0..m))?;
            }
        }
        Ok((g, elements))
    }

    /// The permutation group of the given degree generated by `generators`.
    pub fn from_permutations(
        degree: usize,
        generators: &[Permutation],
        max_order: usize,
    ) -> Result<(FinGroup, Vec<Permutation>), GroupError> {
        for p in generators {
            if p.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, p.degree()).into());
            }
        }
        FinGroup::closure(
            Permutation::identity(degree),
            generators,
            |a, b| a * b,
            |p| p.to_string(),
            max_order,
        )
    }

    fn check_latin(&self) -> Result<(), GroupError> {
        let m = self.order();
        let mut seen = vec![usize::MAX; m];
        for a in 0..m {
            for b in 0..m {
                let x = self.mul(a, b);
                if seen[x] == a {
                    return Err(GroupError::InvalidTable(format!("row {a} repeats {x}")));
                }
                seen[x] = a;
            }
        }
        let mut seen = vec![usize::MAX; m];
        for b in 0..m {
            for a in 0..m {
                let x = self.mul(a, b);
                if seen[x] == b {
                    return Err(GroupError::InvalidTable(format!("column {b} repeats {x}")));
                }
                seen[x] = b;
            }
        }
        Ok(())
    }

    fn fill_inverses(&mut self) -> Result<(), GroupError> {
        let m = self.order();
        for a in 0..m {
            let inv = (0..m)
                .find(|&b| self.mul(a, b) == self.identity)
                .ok_or_else(|| GroupError::InvalidTable(format!("element {a} has no inverse")))?;
            if self.mul(inv, a) != self.identity {
                return Err(GroupError::InvalidTable(format!(
                    "left and right inverses of {a} differ"
                )));
            }
            self.inverses[a] = inv;
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        let m = self.order();
        let fail = |a, b, c| GroupError::InvalidTable(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})"));
        if m <= EXHAUSTIVE_ASSOC {
            for a in 0..m {
                for b in 0..m {
                    let ab = self.mul(a, b);
                    for c in 0..m {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(fail(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xa55);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (
                    rng.gen_range(0..m),
                    rng.gen_range(0..m),
                    rng.gen_range(0..m),
                );
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(fail(a, b, c));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(ab, self.inv(ba))
    }

    /// `g x g⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|a| self.element_order(a) == self.order())
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|a| self.element_order(a))
            .fold(1, num_integer::lcm)
    }

    /// The left-regular representation `g ↦ (x ↦ g x)` as permutations of
    /// the element indices.
    pub fn left_regular_permutations(&self) -> Vec<Permutation> {
        self.elements()
            .map(|g| {
                Permutation::from_images0_unchecked(
                    self.elements().map(|x| self.mul(g, x)).collect(),
                )
            })
            .collect()
    }

    /// Greedy generating set for the subgroup spanned by `pool`: repeatedly
    /// add the highest-order element of `pool` outside the current span.
    pub(crate) fn greedy_generators(&self, pool: &[usize]) -> Vec<usize> {
        let mut by_order: Vec<(usize, usize)> = pool
            .iter()
            .map(|&x| (self.element_order(x), x))
            .filter(|&(o, _)| o > 1)
            .collect();
        by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut gens = Vec::new();
        let mut span = self.generate(&[]);
        for (_, x) in by_order {
            if !span.contains(x) {
                gens.push(x);
                span = self.generate(&gens);
            }
        }
        gens
    }

    /// The full table as nested rows.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        let m = self.order();
        (0..m)
            .map(|a| (0..m).map(|b| self.mul(a, b)).collect())
            .collect()
    }
}

fn dedup_generators(gens: &[usize], identity: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for &g in gens {
        if g != identity && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

impl fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinGroup")
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    generators: Vec<usize>,
}

impl Serialize for FinGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GroupJson {
            order: self.order(),
            labels: self.labels.clone(),
            table: self.table_rows(),
            identity: self.identity,
            generators: self.generators.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FinGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = GroupJson::deserialize(deserializer)?;
        if j.order != j.labels.len() {
            return Err(D::Error::custom("order disagrees with label count"));
        }
        let g = FinGroup::from_table(j.labels, j.table, Some(j.generators))
            .map_err(D::Error::custom)?;
        if g.identity != j.identity {
            return Err(D::Error::custom("identity index disagrees with the table"));
        }
        Ok(g)
    }
}

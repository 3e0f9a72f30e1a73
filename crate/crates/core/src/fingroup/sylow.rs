use serde::Serialize;

use super::{FinGroup, GroupError, Subgroup};
use crate::abelian::numtheory::{factorize, is_prime, p_part};

/// One row of a Sylow table: the prime, the number of Sylow p-subgroups and
/// their common order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowRow {
    pub p: u64,
    pub count: usize,
    pub subgroup_order: usize,
}

impl FinGroup {
    fn sylow_order(&self, p: u64) -> Result<usize, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let (q, a) = p_part(self.order() as u64, p);
        if a == 0 {
            return Err(GroupError::PrimeDoesNotDivide {
                p,
                order: self.order(),
            });
        }
        Ok(q as usize)
    }

    /// One Sylow p-subgroup, grown from the trivial subgroup one factor of
    /// `p` at a time inside successive normalizers.
    pub fn sylow_subgroup(&self, p: u64) -> Result<Subgroup, GroupError> {
        let target = self.sylow_order(p)?;
        let p = p as usize;
        let mut sub = self.trivial_subgroup();
        while sub.order() < target {
            let norm = self.normalizer_of(&sub);
            let mut grown = None;
            for &x in norm.elements() {
                if sub.contains(x) {
                    continue;
                }
                // order of the coset x·P in N(P)/P
                let mut k = 1;
                let mut y = x;
                while !sub.contains(y) {
                    y = self.mul(y, x);
                    k += 1;
                }
                if k % p == 0 {
                    let step = self.pow(x, (k / p) as i64);
                    grown = Some(self.extend(&sub, &[step]));
                    break;
                }
            }
            sub = grown.expect("a non-Sylow p-subgroup has p | [N(P) : P]");
        }
        Ok(sub)
    }

    /// All Sylow p-subgroups, sorted.
    pub fn sylow_subgroups(&self, p: u64) -> Result<Vec<Subgroup>, GroupError> {
        let one = self.sylow_subgroup(p)?;
        let mut all = self.conjugates_of(&one);
        all.sort();
        Ok(all)
    }

    pub fn sylow_table(&self) -> Vec<SylowRow> {
        factorize(self.order() as u64)
            .into_iter()
            .map(|(p, _)| {
                let subs = self.sylow_subgroups(p).expect("p divides |G|");
                SylowRow {
                    p,
                    count: subs.len(),
                    subgroup_order: subs[0].order(),
                }
            })
            .collect()
    }

    /// A subgroup of order `m` where `|G| = m·n` with `gcd(m, n) = 1`.
    ///
    /// Searches for pairwise compatible Sylow subgroups for the primes of
    /// `m` whose join has order exactly `m`. Solvable groups always have one;
    /// other groups may yield `None`.
    pub fn hall_subgroup(&self, m: usize) -> Result<Option<Subgroup>, GroupError> {
        let order = self.order();
        if m == 0 || !order.is_multiple_of(m) || num_integer::gcd(m, order / m) != 1 {
            return Err(GroupError::InvalidArgument(format!(
                "{m} is not a Hall divisor of {order}"
            )));
        }
        if m == 1 {
            return Ok(Some(self.trivial_subgroup()));
        }
        let primes: Vec<u64> = factorize(m as u64).into_iter().map(|(p, _)| p).collect();
        let sylows = primes
            .iter()
            .map(|&p| self.sylow_subgroups(p))
            .collect::<Result<Vec<_>, _>>()?;
        fn search(
            g: &FinGroup,
            sylows: &[Vec<Subgroup>],
            current: &Subgroup,
            m: usize,
        ) -> Option<Subgroup> {
            let Some((first, rest)) = sylows.split_first() else {
                return (current.order() == m).then(|| current.clone());
            };
            for p in first {
                let joined = g.join(current, p);
                if m.is_multiple_of(joined.order()) {
                    if let Some(found) = search(g, rest, &joined, m) {
                        return Some(found);
                    }
                }
            }
            None
        }
        Ok(search(self, &sylows, &self.trivial_subgroup(), m))
    }

    /// Elements whose order is a power of `p` (including the identity).
    pub fn p_elements(&self, p: u64) -> Vec<usize> {
        self.elements()
            .filter(|&x| {
                let o = self.element_order(x) as u64;
                p_part(o, p).0 == o
            })
            .collect()
    }
}

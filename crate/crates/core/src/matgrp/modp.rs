use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{gl_order, sl_order, MatError};
use crate::abelian::numtheory::{is_prime, prime_divisors};
use crate::fingroup::{FinGroup, GroupError};

/// An `n × n` matrix over `Z_p` with entries in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModMatrix {
    n: usize,
    p: u32,
    entries: Vec<u32>,
}

impl ModMatrix {
    pub fn identity(n: usize, p: u32) -> ModMatrix {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1 % p;
        }
        ModMatrix { n, p, entries }
    }

    pub fn from_entries(n: usize, p: u32, entries: Vec<u32>) -> ModMatrix {
        assert_eq!(entries.len(), n * n);
        ModMatrix {
            n,
            p,
            entries: entries.into_iter().map(|x| x % p).collect(),
        }
    }

    /// `e_ij(t)`, 0-based.
    pub fn elementary(n: usize, p: u32, i: usize, j: usize, t: u32) -> ModMatrix {
        let mut m = ModMatrix::identity(n, p);
        m.entries[i * n + j] = t % p;
        m
    }

    /// `diag(a, 1, …, 1)`.
    pub fn scalar_first(n: usize, p: u32, a: u32) -> ModMatrix {
        let mut m = ModMatrix::identity(n, p);
        m.entries[0] = a % p;
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        let n = self.n;
        let p = u64::from(self.p);
        let mut entries = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let s: u64 = (0..n)
                    .map(|k| u64::from(self.entries[i * n + k]) * u64::from(other.entries[k * n + j]))
                    .sum();
                entries[i * n + j] = (s % p) as u32;
            }
        }
        ModMatrix {
            n,
            p: self.p,
            entries,
        }
    }

    /// Determinant mod `p` by Gaussian elimination (`p` prime).
    pub fn det(&self) -> u32 {
        let n = self.n;
        let p = u64::from(self.p);
        let mut a: Vec<u64> = self.entries.iter().map(|&x| u64::from(x)).collect();
        let mut det = 1u64;
        for k in 0..n {
            let Some(r) = (k..n).find(|&r| a[r * n + k] != 0) else {
                return 0;
            };
            if r != k {
                for c in 0..n {
                    a.swap(k * n + c, r * n + c);
                }
                det = (p - det) % p;
            }
            let piv = a[k * n + k];
            det = det * piv % p;
            let inv = mod_pow(piv, p - 2, p);
            for i in k + 1..n {
                let f = a[i * n + k] * inv % p;
                if f == 0 {
                    continue;
                }
                for c in k..n {
                    a[i * n + c] = (a[i * n + c] + p * p - f * a[k * n + c] % p) % p;
                }
            }
        }
        det as u32
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .chunks(self.n)
            .map(|r| {
                let cells: Vec<String> = r.iter().map(u32::to_string).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} mod {}", self.p)
    }
}

/// Smallest generator of the multiplicative group mod a prime `p`.
pub fn primitive_root(p: u64) -> Result<u64, MatError> {
    if !is_prime(p) {
        return Err(MatError::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let qs = prime_divisors(p - 1);
    Ok((2..p)
        .find(|&g| qs.iter().all(|&q| mod_pow(g, (p - 1) / q, p) != 1))
        .expect("primes have primitive roots"))
}

/// Counts `n × n` matrices over `Z_p` by brute force: returns the number
/// with nonzero determinant and the number with determinant 1.
pub fn count_invertible(n: usize, p: u32) -> Result<(u64, u64), MatError> {
    if !is_prime(u64::from(p)) {
        return Err(MatError::NotPrime(u64::from(p)));
    }
    let cells = n * n;
    let total = u64::from(p)
        .checked_pow(cells as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or(MatError::Group(GroupError::BoundExceeded {
            what: "matrix enumeration".into(),
            bound: 1 << 24,
        }))?;
    let mut invertible = 0;
    let mut unit = 0;
    let mut entries = vec![0u32; cells];
    for mut code in 0..total {
        for e in entries.iter_mut() {
            *e = (code % u64::from(p)) as u32;
            code /= u64::from(p);
        }
        let d = ModMatrix::from_entries(n, p, entries.clone()).det();
        if d != 0 {
            invertible += 1;
        }
        if d == 1 % p {
            unit += 1;
        }
    }
    Ok((invertible, unit))
}

fn closure_checked(
    n: usize,
    p: u32,
    gens: Vec<ModMatrix>,
    expected: BigUint,
    what: &str,
    max_order: usize,
) -> Result<(FinGroup, Vec<ModMatrix>), MatError> {
    if expected > BigUint::from(max_order) {
        return Err(MatError::Group(GroupError::BoundExceeded {
            what: what.to_string(),
            bound: max_order,
        }));
    }
    let (g, elems) = FinGroup::closure(
        ModMatrix::identity(n, p),
        &gens,
        |a, b| a.mul(b),
        ModMatrix::to_string,
        max_order,
    )?;
    if Some(g.order()) != expected.to_usize() {
        return Err(MatError::Group(GroupError::OracleInconsistent(format!(
            "{what} closure has {} elements, expected {expected}",
            g.order()
        ))));
    }
    Ok((g, elems))
}

fn check_prime(p: u32) -> Result<(), MatError> {
    if is_prime(u64::from(p)) {
        Ok(())
    } else {
        Err(MatError::NotPrime(u64::from(p)))
    }
}

/// `GL_n(Z_p)`, generated by the `e_ij(1)` and `diag(ω, 1, …, 1)` for a
/// primitive root `ω`.
pub fn gl_as_fingroup(n: usize, p: u32, max_order: usize) -> Result<(FinGroup, Vec<ModMatrix>), MatError> {
    check_prime(p)?;
    let expected = gl_order(n, u64::from(p))?;
    let mut gens = transvections(n, p, false);
    let w = primitive_root(u64::from(p))? as u32;
    if w != 1 {
        gens.push(ModMatrix::scalar_first(n, p, w));
    }
    closure_checked(n, p, gens, expected, "GL", max_order)
}

/// `SL_n(Z_p)`, generated by the `e_ij(1)`.
pub fn sl_as_fingroup(n: usize, p: u32, max_order: usize) -> Result<(FinGroup, Vec<ModMatrix>), MatError> {
    check_prime(p)?;
    let expected = sl_order(n, u64::from(p))?;
    closure_checked(n, p, transvections(n, p, false), expected, "SL", max_order)
}

/// Upper unitriangular `UT_n(Z_p)`, of order `p^{n(n-1)/2}`.
pub fn ut_sylow(n: usize, p: u32, max_order: usize) -> Result<(FinGroup, Vec<ModMatrix>), MatError> {
    check_prime(p)?;
    if n == 0 {
        return Err(MatError::Dimension { n, min: 1 });
    }
    let expected = BigUint::from(p).pow((n * (n - 1) / 2) as u32);
    closure_checked(n, p, transvections(n, p, true), expected, "UT", max_order)
}

fn transvections(n: usize, p: u32, upper_only: bool) -> Vec<ModMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && (!upper_only || i < j) {
                out.push(ModMatrix::elementary(n, p, i, j, 1));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_matches_formulas() {
        for (n, p) in [(1, 5), (2, 2), (2, 3), (3, 2)] {
            let (inv, unit) = count_invertible(n, p).unwrap();
            assert_eq!(BigUint::from(inv), gl_order(n, u64::from(p)).unwrap());
            assert_eq!(BigUint::from(unit), sl_order(n, u64::from(p)).unwrap());
        }
    }

    #[test]
    fn small_matrix_groups() {
        assert_eq!(gl_as_fingroup(2, 3, 1000).unwrap().0.order(), 48);
        assert_eq!(sl_as_fingroup(2, 3, 1000).unwrap().0.order(), 24);
        assert_eq!(gl_as_fingroup(1, 7, 1000).unwrap().0.order(), 6);
        assert!(gl_as_fingroup(1, 7, 1000).unwrap().0.is_cyclic());
        assert_eq!(gl_as_fingroup(1, 2, 1000).unwrap().0.order(), 1);
        let (ut, _) = ut_sylow(3, 2, 1000).unwrap();
        assert_eq!(ut.order(), 8);
        assert!(!ut.is_abelian());
        assert!(ut_sylow(2, 5, 1000).unwrap().0.is_cyclic());
        assert!(matches!(
            gl_as_fingroup(3, 3, 1000),
            Err(MatError::Group(GroupError::BoundExceeded { .. }))
        ));
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert!(primitive_root(8).is_err());
    }
}

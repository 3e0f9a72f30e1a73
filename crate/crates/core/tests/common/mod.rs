#![allow(dead_code)]

use gtkit::constructions::{build_group, LIBRARY};
use gtkit::fingroup::{FinGroup, Limits};
use gtkit::perm::Permutation;

/// Library groups of order at most `max`, with their specs.
pub fn library(max: usize) -> Vec<(String, FinGroup)> {
    let lim = Limits::default();
    LIBRARY
        .iter()
        .map(|s| (s.to_string(), build_group(s, &lim).unwrap()))
        .filter(|(_, g)| g.order() <= max)
        .collect()
}

pub fn group(spec: &str) -> FinGroup {
    build_group(spec, &Limits::default()).unwrap()
}

pub fn perm(s: &str, degree: usize) -> Permutation {
    Permutation::parse(s, Some(degree)).unwrap()
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

/// `adj(m)` with `m · adj(m) = det(m) · I`.
fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != j)
                .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, &x)| x).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            out[i][j] = s * det(&minor);
        }
    }
    out
}

/// Rank over the rationals by fraction-free elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank && a[i][c] != 0 {
                let (f, g) = (a[i][c], a[rank][c]);
                for k in 0..cols {
                    a[i][k] = a[i][k] * g - a[rank][k] * f;
                }
                let h = a[i].iter().fold(0i128, |acc, &x| {
                    let (mut u, mut v) = (acc.abs(), x.abs());
                    while v != 0 {
                        (u, v) = (v, u % v);
                    }
                    u
                });
                if h > 1 {
                    a[i].iter_mut().for_each(|x| *x /= h);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn prime_divisors_u64(n: u64) -> Vec<u64> {
    prime_factors(n as usize).into_iter().map(|p| p as u64).collect()
}

/// Invariant factors `n_1 | … | n_k` (all > 1) of a finite abelian group of
/// the given order, recovered from `count(m) = #{g : m·g = 0}`.
pub fn invariants_from_counts(order: u64, count: impl Fn(u64) -> u64) -> Vec<u64> {
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for p in prime_divisors_u64(order) {
        // at_least[k-1] = number of cyclic factors with p-valuation ≥ k
        let mut at_least = Vec::new();
        let (mut prev, mut q) = (1u64, p);
        loop {
            let n = count(q);
            let mut ratio = n / prev;
            let mut e = 0;
            while ratio > 1 {
                ratio /= p;
                e += 1;
            }
            if e == 0 {
                break;
            }
            at_least.push(e);
            prev = n;
            q *= p;
        }
        per_prime.push((p, at_least));
    }
    let k = per_prime.iter().map(|(_, a)| a.first().copied().unwrap_or(0)).max().unwrap_or(0) as usize;
    let mut out: Vec<u64> = (1..=k)
        .map(|i| {
            per_prime
                .iter()
                .map(|(p, a)| p.pow(a.iter().filter(|&&c| c as usize >= i).count() as u32))
                .product()
        })
        .collect();
    out.reverse();
    out
}

fn span_mod(gens: &[Vec<i64>], d: i64, dim: usize) -> std::collections::HashSet<Vec<i64>> {
    let mut set = std::collections::HashSet::new();
    let zero = vec![0; dim];
    set.insert(zero.clone());
    let mut queue = vec![zero];
    while let Some(v) = queue.pop() {
        for g in gens {
            let w: Vec<i64> = v.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(d)).collect();
            if set.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    set
}

/// Torsion of `Z^c / rowspace(rows)` when the rows span a full-rank lattice:
/// `v ↦ v · adj(M_0) mod det M_0` embeds `Z^c / rowspace(M_0)` for a
/// nonsingular `c`-subset `M_0` of the rows, and the remaining rows are
/// quotiented out by enumeration.
fn finite_quotient(rows: &[Vec<i64>], c: usize) -> Vec<u64> {
    let idx: Vec<usize> = (0..rows.len()).collect();
    let mut best: Option<(i64, Vec<usize>)> = None;
    for subset in combinations(&idx, c) {
        let m0: Vec<Vec<i64>> = subset.iter().map(|&i| rows[i].clone()).collect();
        let d = det(&m0).abs();
        if d != 0 && best.as_ref().is_none_or(|b| d < b.0) {
            best = Some((d, subset));
        }
    }
    let (d, subset) = best.expect("full column rank");
    if d == 1 {
        return Vec::new();
    }
    let m0: Vec<Vec<i64>> = subset.iter().map(|&i| rows[i].clone()).collect();
    let adj = adjugate(&m0);
    let phi = |v: &[i64]| -> Vec<i64> {
        (0..c)
            .map(|j| (0..c).map(|k| v[k] * adj[k][j]).sum::<i64>().rem_euclid(d))
            .collect()
    };
    let basis: Vec<Vec<i64>> = (0..c)
        .map(|i| {
            let mut e = vec![0; c];
            e[i] = 1;
            phi(&e)
        })
        .collect();
    let g0 = span_mod(&basis, d, c);
    assert_eq!(g0.len() as i64, d);
    let others: Vec<Vec<i64>> = (0..rows.len())
        .filter(|i| !subset.contains(i))
        .map(|i| phi(&rows[i]))
        .collect();
    let s = span_mod(&others, d, c);
    let order = g0.len() as u64 / s.len() as u64;
    invariants_from_counts(order, |m| {
        let hits = g0
            .iter()
            .filter(|g| s.contains(&g.iter().map(|x| (x * m as i64).rem_euclid(d)).collect::<Vec<_>>()))
            .count();
        (hits / s.len()) as u64
    })
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// gcd of all `r × r` minors.
fn determinantal_divisor(rows: &[Vec<i64>], r: usize) -> i64 {
    let ri: Vec<usize> = (0..rows.len()).collect();
    let ci: Vec<usize> = (0..rows[0].len()).collect();
    let mut g = 0;
    for rs in combinations(&ri, r) {
        for cs in combinations(&ci, r) {
            let m: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j]).collect()).collect();
            g = gcd(g, det(&m));
        }
    }
    g
}

/// Brute-force `(torsion, free rank)` of `Z^c / rowspace(rows)`.
///
/// Returns `None` only when the enumeration would be too large.
pub fn quotient_oracle(rows: &[Vec<i64>], c: usize) -> Option<(Vec<u64>, usize)> {
    let r = if rows.is_empty() { 0 } else { rational_rank(rows) };
    if r == 0 {
        return Some((Vec::new(), c));
    }
    if r == c {
        return Some((finite_quotient(rows, c), 0));
    }
    if r == rows.len() {
        // same nonzero invariant factors as the transpose, whose quotient is finite
        let t: Vec<Vec<i64>> = (0..c).map(|j| rows.iter().map(|row| row[j]).collect()).collect();
        return Some((finite_quotient(&t, rows.len()), c - r));
    }
    // Hom(A, Z/q) = {x : M x ≡ 0 mod q} ≅ (Z/q)^{c-r} ⊕ T when q = d_r
    let q = determinantal_divisor(rows, r);
    if (q as f64).powi(c as i32) > 3e6 {
        return None;
    }
    let mut sols: Vec<Vec<i64>> = Vec::new();
    let total = q.pow(c as u32);
    for code in 0..total {
        let mut x = vec![0; c];
        let mut t = code;
        for xi in x.iter_mut() {
            *xi = t % q;
            t /= q;
        }
        if rows.iter().all(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>().rem_euclid(q) == 0) {
            sols.push(x);
        }
    }
    let mut inv = invariants_from_counts(sols.len() as u64, |m| {
        sols.iter()
            .filter(|x| x.iter().all(|&v| (v * m as i64).rem_euclid(q) == 0))
            .count() as u64
    });
    for _ in 0..c - r {
        let pos = inv.iter().rposition(|&n| n == q as u64).expect("free part shows up as Z/q");
        inv.remove(pos);
    }
    Some((inv, c - r))
}

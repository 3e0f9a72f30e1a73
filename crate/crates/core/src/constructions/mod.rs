//! Named groups and ways of building new groups from old ones.
//!
//! Every constructor goes through [`FinGroup::closure`], so element order is
//! breadth-first from the identity over the listed generators and labels
//! describe the elements (`σ^2 τ`, `(a,b)`, `f:[g1,g2]|h`).

mod spec;

use std::collections::VecDeque;

use thiserror::Error;

use crate::fingroup::{FinGroup, GroupError, Limits};
use crate::matgrp::MatError;
use crate::perm::{Cycle, PermError, Permutation};

pub use spec::{build_group, ActionSpec, GroupSpec, LIBRARY};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("action is not a homomorphism into the automorphism group: {0}")]
    NotAHomomorphism(String),
    #[error("cannot read group table: {0}")]
    Io(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Matrix(#[from] MatError),
}

impl From<PermError> for ConstructionError {
    fn from(e: PermError) -> Self {
        ConstructionError::Group(e.into())
    }
}

fn bound_error(what: &str, bound: usize) -> ConstructionError {
    ConstructionError::Group(GroupError::BoundExceeded {
        what: what.to_string(),
        bound,
    })
}

/// `C_n = ⟨x⟩`, elements `e, x, x^2, …`.
pub fn cyclic(n: usize, max_order: usize) -> Result<FinGroup, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::InvalidParameter("C0 is not a group".into()));
    }
    if n > max_order {
        return Err(bound_error("cyclic group", max_order));
    }
    let gens: Vec<usize> = if n > 1 { vec![1] } else { Vec::new() };
    let label = |&k: &usize| match k {
        0 => "e".to_string(),
        1 => "x".to_string(),
        _ => format!("x^{k}"),
    };
    Ok(FinGroup::closure(0usize, &gens, |a, b| (a + b) % n, label, max_order)?.0)
}

/// `D_n = ⟨σ, τ⟩` with `σ^n = τ^2 = e`, `στ = τσ^{n-1}`; elements are
/// `σ^i τ^j` stored as `(i, j)`.
pub fn dihedral(n: usize, max_order: usize) -> Result<FinGroup, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::InvalidParameter(format!(
            "D{n}: dihedral groups need n >= 3"
        )));
    }
    if 2 * n > max_order {
        return Err(bound_error("dihedral group", max_order));
    }
    let mul = |&(i, a): &(usize, usize), &(j, b): &(usize, usize)| {
        let j = if a == 1 { (n - j) % n } else { j };
        ((i + j) % n, (a + b) % 2)
    };
    let label = |&(i, a): &(usize, usize)| {
        let s = match i {
            0 => String::new(),
            1 => "σ".to_string(),
            _ => format!("σ^{i}"),
        };
        match (s.is_empty(), a) {
            (true, 0) => "e".to_string(),
            (true, _) => "τ".to_string(),
            (false, 0) => s,
            (false, _) => format!("{s} τ"),
        }
    };
    Ok(FinGroup::closure((0, 0), &[(1, 0), (0, 1)], mul, label, max_order)?.0)
}

/// 2×2 matrix over the Gaussian integers, entries `(re, im)`.
type GaussMatrix = [[(i64, i64); 2]; 2];

fn gauss_mul(a: &GaussMatrix, b: &GaussMatrix) -> GaussMatrix {
    let cm = |x: (i64, i64), y: (i64, i64)| (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
    let add = |x: (i64, i64), y: (i64, i64)| (x.0 + y.0, x.1 + y.1);
    let mut out = [[(0, 0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = add(cm(a[i][0], b[0][j]), cm(a[i][1], b[1][j]));
        }
    }
    out
}

fn gauss_neg(a: &GaussMatrix) -> GaussMatrix {
    let mut out = *a;
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            *x = (-x.0, -x.1);
        }
    }
    out
}

/// The quaternion group generated by `a = [[i,0],[0,-i]]` and
/// `b = [[0,-1],[1,0]]`, with `c = ab` and `a² = b² = c² = -I`.
pub fn quaternion() -> FinGroup {
    let one: GaussMatrix = [[(1, 0), (0, 0)], [(0, 0), (1, 0)]];
    let a: GaussMatrix = [[(0, 1), (0, 0)], [(0, 0), (0, -1)]];
    let b: GaussMatrix = [[(0, 0), (-1, 0)], [(1, 0), (0, 0)]];
    let c = gauss_mul(&a, &b);
    let names: Vec<(GaussMatrix, &str)> = vec![
        (one, "I"),
        (gauss_neg(&one), "-I"),
        (a, "a"),
        (gauss_neg(&a), "-a"),
        (b, "b"),
        (gauss_neg(&b), "-b"),
        (c, "c"),
        (gauss_neg(&c), "-c"),
    ];
    let label = |m: &GaussMatrix| {
        names
            .iter()
            .find(|(n, _)| n == m)
            .map_or("?".to_string(), |(_, s)| s.to_string())
    };
    FinGroup::closure(one, &[a, b], gauss_mul, label, 8)
        .expect("the quaternion group has 8 elements")
        .0
}

/// Klein's four group as the integer matrices `I`, `a = [[0,1],[1,0]]`,
/// `b = [[0,-1],[-1,0]]`, `c = -I`.
pub fn klein4() -> FinGroup {
    type M = [[i64; 2]; 2];
    let mul = |x: &M, y: &M| -> M {
        [
            [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
            [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
        ]
    };
    let label = |x: &M| {
        match x {
            [[1, 0], [0, 1]] => "e",
            [[0, 1], [1, 0]] => "a",
            [[0, -1], [-1, 0]] => "b",
            _ => "c",
        }
        .to_string()
    };
    FinGroup::closure([[1, 0], [0, 1]], &[[[0, 1], [1, 0]], [[0, -1], [-1, 0]]], mul, label, 4)
        .expect("V4 has 4 elements")
        .0
}

/// `S_n` generated by `(1 2)` and `(1 2 … n)`.
pub fn symmetric(n: usize, max_order: usize) -> Result<FinGroup, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::InvalidParameter("S0 is not supported".into()));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::transposition(n, 1, 2)?);
    }
    if n >= 3 {
        gens.push(Permutation::from_cycles(&[Cycle::new((1..=n).collect())?], n)?);
    }
    Ok(FinGroup::from_permutations(n, &gens, max_order)?.0)
}

/// `A_n` generated by the 3-cycles `(1 2 k)`, `3 ≤ k ≤ n`.
pub fn alternating(n: usize, max_order: usize) -> Result<FinGroup, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::InvalidParameter("A0 is not supported".into()));
    }
    let mut gens = Vec::new();
    for k in 3..=n {
        gens.push(Permutation::from_cycles(&[Cycle::new(vec![1, 2, k])?], n)?);
    }
    Ok(FinGroup::from_permutations(n, &gens, max_order)?.0)
}

fn product_size(orders: &[usize], max_order: usize) -> Result<usize, ConstructionError> {
    orders
        .iter()
        .try_fold(1usize, |acc, &o| acc.checked_mul(o))
        .filter(|&n| n <= max_order)
        .ok_or_else(|| bound_error("product group", max_order))
}

/// `G_1 × … × G_k` with componentwise multiplication. Generators are those
/// of each factor in turn, embedded with identities elsewhere.
pub fn direct_product_many(groups: &[&FinGroup], max_order: usize) -> Result<FinGroup, ConstructionError> {
    product_size(&groups.iter().map(|g| g.order()).collect::<Vec<_>>(), max_order)?;
    let identity: Vec<usize> = groups.iter().map(|g| g.identity()).collect();
    let mut gens = Vec::new();
    for (i, g) in groups.iter().enumerate() {
        for &s in g.generators() {
            let mut v = identity.clone();
            v[i] = s;
            gens.push(v);
        }
    }
    let mul = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> {
        groups
            .iter()
            .enumerate()
            .map(|(i, g)| g.mul(a[i], b[i]))
            .collect()
    };
    let label = |a: &Vec<usize>| {
        let parts: Vec<&str> = groups.iter().enumerate().map(|(i, g)| g.label(a[i])).collect();
        format!("({})", parts.join(","))
    };
    Ok(FinGroup::closure(identity.clone(), &gens, mul, label, max_order)?.0)
}

pub fn direct_product(g: &FinGroup, h: &FinGroup, max_order: usize) -> Result<FinGroup, ConstructionError> {
    direct_product_many(&[g, h], max_order)
}

/// Extends automorphisms assigned to the generators of `k` to a map on all
/// of `k` via `f_{xg} = f_x ∘ f_g`.
pub fn extend_action(k: &FinGroup, gen_maps: &[Vec<usize>], n_order: usize) -> Vec<Vec<usize>> {
    let mut maps: Vec<Option<Vec<usize>>> = vec![None; k.order()];
    maps[k.identity()] = Some((0..n_order).collect());
    let mut queue = VecDeque::from([k.identity()]);
    while let Some(x) = queue.pop_front() {
        for (j, &g) in k.generators().iter().enumerate() {
            let y = k.mul(x, g);
            if maps[y].is_none() {
                let fx = maps[x].as_ref().unwrap();
                let composed = gen_maps[j].iter().map(|&v| fx[v]).collect();
                maps[y] = Some(composed);
                queue.push_back(y);
            }
        }
    }
    maps.into_iter().map(|m| m.expect("generators span K")).collect()
}

/// Checks that `action[k]` is an automorphism of `n` for every `k` and that
/// `k ↦ action[k]` is a homomorphism.
pub fn verify_action(n: &FinGroup, k: &FinGroup, action: &[Vec<usize>]) -> Result<(), ConstructionError> {
    if action.len() != k.order() || action.iter().any(|f| f.len() != n.order()) {
        return Err(ConstructionError::NotAHomomorphism("action table has the wrong shape".into()));
    }
    for (u, f) in action.iter().enumerate() {
        let mut hit = vec![false; n.order()];
        for &y in f {
            if y >= n.order() || std::mem::replace(&mut hit[y], true) {
                return Err(ConstructionError::NotAHomomorphism(format!(
                    "the map for {} is not a bijection",
                    k.label(u)
                )));
            }
        }
        for x in n.elements() {
            for y in n.elements() {
                if f[n.mul(x, y)] != n.mul(f[x], f[y]) {
                    return Err(ConstructionError::NotAHomomorphism(format!(
                        "the map for {} does not respect multiplication",
                        k.label(u)
                    )));
                }
            }
        }
    }
    for u in k.elements() {
        for v in k.elements() {
            let uv = &action[k.mul(u, v)];
            if (0..n.order()).any(|x| uv[x] != action[u][action[v][x]]) {
                return Err(ConstructionError::NotAHomomorphism(format!(
                    "f({}·{}) differs from f({})∘f({})",
                    k.label(u),
                    k.label(v),
                    k.label(u),
                    k.label(v)
                )));
            }
        }
    }
    Ok(())
}

/// `N ⋊ K` on pairs `(x, u)` with `(x, u)(y, v) = (x·f_u(y), uv)`, where
/// `action[u]` is the automorphism `f_u` of `N` as an element map.
pub fn semidirect_product(
    n: &FinGroup,
    k: &FinGroup,
    action: &[Vec<usize>],
    max_order: usize,
) -> Result<FinGroup, ConstructionError> {
    product_size(&[n.order(), k.order()], max_order)?;
    verify_action(n, k, action)?;
    let identity = (n.identity(), k.identity());
    let mut gens: Vec<(usize, usize)> = n.generators().iter().map(|&s| (s, k.identity())).collect();
    gens.extend(k.generators().iter().map(|&t| (n.identity(), t)));
    let mul = |&(x, u): &(usize, usize), &(y, v): &(usize, usize)| (n.mul(x, action[u][y]), k.mul(u, v));
    let label = |&(x, u): &(usize, usize)| format!("({},{})", n.label(x), k.label(u));
    Ok(FinGroup::closure(identity, &gens, mul, label, max_order)?.0)
}

/// `Hol(G) = G ⋊ Aut(G)` with `(x, α)(y, β) = (x·α(y), αβ)`.
pub fn holomorph(g: &FinGroup, limits: &Limits) -> Result<FinGroup, ConstructionError> {
    let aut = g.aut_group(limits)?;
    semidirect_product(g, &aut.group, &aut.maps, limits.max_order)
}

/// Restricted wreath product `G wr H`: pairs `(f, h)` with `f : H → G`,
/// multiplied by `(f, h)(g, h_1) = (f·g^h, h h_1)` where `g^h(x) = g(xh)`.
pub fn wreath_restricted(g: &FinGroup, h: &FinGroup, max_order: usize) -> Result<FinGroup, ConstructionError> {
    let base = u32::try_from(h.order())
        .ok()
        .and_then(|e| g.order().checked_pow(e))
        .ok_or_else(|| bound_error("wreath product", max_order))?;
    product_size(&[base, h.order()], max_order)?;
    type Elem = (Vec<usize>, usize);
    let ones = vec![g.identity(); h.order()];
    let mut gens: Vec<Elem> = Vec::new();
    for &s in g.generators() {
        let mut f = ones.clone();
        f[h.identity()] = s;
        gens.push((f, h.identity()));
    }
    for &t in h.generators() {
        gens.push((ones.clone(), t));
    }
    let mul = |(f, a): &Elem, (k, b): &Elem| -> Elem {
        let prod = (0..h.order()).map(|x| g.mul(f[x], k[h.mul(x, *a)])).collect();
        (prod, h.mul(*a, *b))
    };
    let label = |(f, a): &Elem| {
        let vals: Vec<&str> = f.iter().map(|&v| g.label(v)).collect();
        format!("f:[{}]|{}", vals.join(","), h.label(*a))
    };
    Ok(FinGroup::closure((ones.clone(), h.identity()), &gens, mul, label, max_order)?.0)
}

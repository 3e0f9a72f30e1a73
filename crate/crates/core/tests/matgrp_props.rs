use std::collections::HashMap;

use gtkit::freegrp::{reduce, Word};
use gtkit::matgrp::{
    decompose_gln_z, decompose_sln_z, elementary_commutator_check, evaluate_ab, gl_as_fingroup, gl_order,
    sl2_to_ab, sl_as_fingroup, sl_order, ut_sylow, Factor, SquareIntMatrix,
};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_elementary_product(n: usize, len: usize, rng: &mut impl Rng) -> SquareIntMatrix {
    let mut m = SquareIntMatrix::identity(n);
    for _ in 0..len {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        m = m.mul(&SquareIntMatrix::elementary(n, i, j, rng.gen_range(-4i64..=4)));
    }
    m
}

fn neg_diag_count(w: &gtkit::matgrp::ElementaryWord) -> usize {
    w.factors.iter().filter(|f| matches!(f, Factor::NegDiag)).count()
}

#[test]
fn special_linear_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=4);
        let m = random_elementary_product(n, rng.gen_range(0..12), &mut rng);
        let w = decompose_sln_z(&m).unwrap();
        assert!(w.factors.iter().all(|f| matches!(f, Factor::Elementary { .. })));
        assert_eq!(w.evaluate(), m);
    }
}

#[test]
fn general_linear_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=4);
        let mut m = if n == 1 {
            SquareIntMatrix::identity(1)
        } else {
            random_elementary_product(n, rng.gen_range(0..10), &mut rng)
        };
        let flip = rng.gen_bool(0.5);
        if flip {
            let d = SquareIntMatrix::neg_diag(n);
            m = if rng.gen() { d.mul(&m) } else { m.mul(&d) };
        }
        let w = decompose_gln_z(&m).unwrap();
        assert_eq!(w.evaluate(), m);
        assert_eq!(w.evaluate().det(), m.det());
        assert_eq!(neg_diag_count(&w), usize::from(flip));
    }
    let bad = SquareIntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
    assert!(decompose_gln_z(&bad).is_err());
    assert!(decompose_sln_z(&SquareIntMatrix::neg_diag(2)).is_err());
}

/// Counts matrices over `Z_p` with nonzero determinant and with determinant 1.
fn enumerate_counts(n: usize, p: i64) -> (u64, u64) {
    fn det(m: &[i64], n: usize) -> i64 {
        match n {
            1 => m[0],
            2 => m[0] * m[3] - m[1] * m[2],
            3 => {
                m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
                    + m[2] * (m[3] * m[7] - m[4] * m[6])
            }
            _ => unreachable!(),
        }
    }
    let cells = (n * n) as u32;
    let (mut inv, mut unit) = (0, 0);
    for code in 0..p.pow(cells) {
        let m: Vec<i64> = (0..cells).map(|k| code / p.pow(k) % p).collect();
        let d = det(&m, n).rem_euclid(p);
        inv += u64::from(d != 0);
        unit += u64::from(d == 1);
    }
    (inv, unit)
}

#[test]
fn order_formulas_match_enumeration() {
    for (n, p) in [(1, 2), (1, 5), (2, 2), (2, 3), (2, 5), (3, 2)] {
        let (inv, unit) = enumerate_counts(n, p);
        assert_eq!(gl_order(n, p as u64).unwrap(), BigUint::from(inv), "GL({n},{p})");
        assert_eq!(sl_order(n, p as u64).unwrap(), BigUint::from(unit), "SL({n},{p})");
    }
    assert_eq!(gl_order(2, 3).unwrap(), BigUint::from(48u32));
    assert_eq!(gl_order(2, 4).unwrap(), BigUint::from(180u32));
    assert!(gl_order(2, 6).is_err());
    let (g, _) = gl_as_fingroup(2, 3, 1000).unwrap();
    let (s, _) = sl_as_fingroup(2, 3, 1000).unwrap();
    assert_eq!((g.order(), s.order()), (48, 24));
}

#[test]
fn unitriangular_is_sylow() {
    for (n, p) in [(2usize, 2u32), (2, 3), (3, 2)] {
        let (g, gl_elems) = gl_as_fingroup(n, p, 1000).unwrap();
        let (_, ut_elems) = ut_sylow(n, p, 1000).unwrap();
        let index: HashMap<_, _> = gl_elems.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let members: Vec<usize> = ut_elems.iter().map(|m| index[m]).collect();
        let ut = g.subgroup_from_elements(&members).unwrap();
        let sylows = g.sylow_subgroups(u64::from(p)).unwrap();
        assert!(sylows.contains(&ut), "UT_{n}({p})");
    }
}

fn mat(rows: [[i64; 2]; 2]) -> SquareIntMatrix {
    SquareIntMatrix::from_i64_rows(&[rows[0].to_vec(), rows[1].to_vec()]).unwrap()
}

/// Evaluates a word in `A = [[0,1],[-1,0]]` and `B = [[1,1],[0,1]]` by
/// repeated matrix multiplication.
fn eval_ab_naive(w: &Word) -> SquareIntMatrix {
    let a = mat([[0, 1], [-1, 0]]);
    let a_inv = mat([[0, -1], [1, 0]]);
    let b = mat([[1, 1], [0, 1]]);
    let b_inv = mat([[1, -1], [0, 1]]);
    let mut m = SquareIntMatrix::identity(2);
    for (l, e) in w.letters() {
        m = m.mul(match (l, e > 0) {
            (0, true) => &a,
            (0, false) => &a_inv,
            (_, true) => &b,
            (_, false) => &b_inv,
        });
    }
    m
}

#[test]
fn sl2_words_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..1000 {
        let len = rng.gen_range(0..10);
        let raw: Vec<(usize, i64)> = (0..len).map(|_| (rng.gen_range(0..2), rng.gen_range(-3..=3))).collect();
        let w = reduce(2, &raw).unwrap();
        let m = eval_ab_naive(&w);
        assert_eq!(evaluate_ab(&w), m);
        let back = sl2_to_ab(&m).unwrap();
        assert_eq!(eval_ab_naive(&back), m);
    }
}

#[test]
fn a_is_b_c_inverse_b() {
    let a = mat([[0, 1], [-1, 0]]);
    let b = mat([[1, 1], [0, 1]]);
    let c_inv = mat([[1, 0], [-1, 1]]);
    assert_eq!(b.mul(&c_inv).mul(&b), a);
    assert_eq!(eval_ab_naive(&sl2_to_ab(&a).unwrap()), a);
    assert!(sl2_to_ab(&SquareIntMatrix::identity(2)).unwrap().is_identity());
}

proptest! {
    #[test]
    fn elementary_commutators(n in 3usize..=5, l in -20i64..20, m in -20i64..20, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut idx: Vec<usize> = (1..=n).collect();
        rand::seq::SliceRandom::shuffle(idx.as_mut_slice(), &mut rng);
        prop_assert!(elementary_commutator_check(n, idx[0], idx[1], idx[2], l, m).unwrap());
    }

    #[test]
    fn sl2_decomposition_of_random_matrices(a in -40i64..40, b in -40i64..40) {
        // complete (a, b) with gcd 1 to a determinant-1 matrix
        let g = num_integer::gcd(a, b);
        prop_assume!(g == 1);
        let (mut x, mut y) = (0i64, 0i64);
        'search: for s in -100..=100 {
            for t in -100..=100 {
                if a * t - b * s == 1 {
                    (x, y) = (s, t);
                    break 'search;
                }
            }
        }
        prop_assume!(a * y - b * x == 1);
        let m = mat([[a, b], [x, y]]);
        prop_assert_eq!(m.det(), BigInt::from(1));
        prop_assert_eq!(eval_ab_naive(&sl2_to_ab(&m).unwrap()), m.clone());
        prop_assert_eq!(decompose_sln_z(&m).unwrap().evaluate(), m);
    }
}

use gtkit::freegrp::{
    commutator_generator, free_product_multiply, is_strictly_growing, ping_pong_sequence, reduce, sl2_ping_pong,
    CosetTable, Word,
};
use gtkit::perm::Permutation;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_raw(rng: &mut impl Rng, rank: usize, max_len: usize) -> Vec<(usize, i64)> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| (rng.gen_range(0..rank), rng.gen_range(-3..=3))).collect()
}

/// Applies elementary simplifications (drop a zero exponent, merge two
/// adjacent syllables on one letter) at random positions until none apply.
fn reduce_randomly(raw: &[(usize, i64)], rng: &mut impl Rng) -> Vec<(usize, i64)> {
    let mut w = raw.to_vec();
    loop {
        let mut sites = Vec::new();
        for i in 0..w.len() {
            if w[i].1 == 0 {
                sites.push((i, true));
            }
            if i + 1 < w.len() && w[i].0 == w[i + 1].0 {
                sites.push((i, false));
            }
        }
        let Some(&(i, drop)) = sites.choose(rng) else {
            return w;
        };
        if drop {
            w.remove(i);
        } else {
            w[i].1 += w[i + 1].1;
            w.remove(i + 1);
        }
    }
}

fn random_reduced(rng: &mut impl Rng, rank: usize, max_syllables: usize) -> Word {
    loop {
        let w = reduce(rank, &random_raw(rng, rank, max_syllables)).unwrap();
        if !w.is_identity() {
            return w;
        }
    }
}

#[test]
fn reduction_is_confluent() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10_000 {
        let rank = rng.gen_range(1..=4);
        let raw = random_raw(&mut rng, rank, 60);
        let w = reduce(rank, &raw).unwrap();
        assert_eq!(w.syllables(), reduce_randomly(&raw, &mut rng).as_slice(), "{raw:?}");
        assert_eq!(reduce(rank, w.syllables()).unwrap(), w);
    }
}

#[test]
fn group_laws_on_reduced_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..10_000 {
        let rank = rng.gen_range(1..=3);
        let [u, v, w] = [0; 3].map(|_| reduce(rank, &random_raw(&mut rng, rank, 12)).unwrap());
        let left = u.multiply(&v).unwrap().multiply(&w).unwrap();
        let right = u.multiply(&v.multiply(&w).unwrap()).unwrap();
        assert_eq!(left, right);
        assert!(u.multiply(&u.inverse()).unwrap().is_identity());
        assert!(u.inverse().multiply(&u).unwrap().is_identity());
        let k = rng.gen_range(-4..=4);
        assert_eq!(u.pow(k).inverse(), u.pow(-k));
    }
}

fn random_perm(rng: &mut impl Rng, m: usize) -> Permutation {
    let mut images: Vec<usize> = (0..m).collect();
    images.shuffle(rng);
    Permutation::from_images0(images).unwrap()
}

#[test]
fn kernels_have_schreier_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=5);
        let images: Vec<Permutation> = (0..n).map(|_| random_perm(&mut rng, m)).collect();
        let table = CosetTable::kernel(n, &images, 1000).unwrap();
        let j = table.index();
        assert_eq!(j, table.image_group().order());
        assert!(table.is_schreier());
        let gens = table.schreier_generators();
        assert_eq!(gens.len(), j * (n - 1) + 1, "n = {n}, images = {images:?}");
        for g in &gens.generators {
            assert!(!g.word.is_identity());
            assert!(table.contains(&g.word).unwrap());
            assert!(!gens.words().contains(&&g.word.inverse()));
        }

        // random products of generators rewrite back to themselves
        for _ in 0..5 {
            let raw: Vec<(usize, i64)> = (0..5)
                .map(|_| (rng.gen_range(0..gens.len()), if rng.gen() { 1 } else { -1 }))
                .collect();
            let h = gens.expand(n, &raw);
            let back = table.rewrite_in_generators(&gens, &h).unwrap();
            assert_eq!(gens.expand(n, &back), h);
            assert_eq!(back, reduce(gens.len(), &raw).unwrap().syllables());
        }
    }
}

#[test]
fn schreier_generators_are_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let s3 = [
        Permutation::parse("(1 2)", Some(3)).unwrap(),
        Permutation::parse("(1 2 3)", Some(3)).unwrap(),
    ];
    let tables = [
        CosetTable::kernel(2, &s3, 100).unwrap(),
        CosetTable::kernel(2, &[s3[0].clone(), s3[0].clone()], 100).unwrap(),
        CosetTable::new(2, &s3, &[s3[0].clone()], 100).unwrap(),
    ];
    for table in &tables {
        let gens = table.schreier_generators();
        for _ in 0..1000 {
            let gw = random_reduced(&mut rng, gens.len(), 8);
            let letters = gw.letters();
            let h = gens.expand(2, &letters);
            assert!(!h.is_identity(), "{gw:?} collapsed");
        }
    }
}

#[test]
fn small_kernel_examples() {
    let t = Permutation::parse("(1 2)", Some(2)).unwrap();
    let c2 = CosetTable::kernel(2, &[t.clone(), t.clone()], 10).unwrap();
    assert_eq!(c2.index(), 2);
    assert_eq!(c2.schreier_generators().len(), 3);
    let s3 = [
        Permutation::parse("(1 2)", Some(3)).unwrap(),
        Permutation::parse("(1 2 3)", Some(3)).unwrap(),
    ];
    assert_eq!(CosetTable::kernel(2, &s3, 10).unwrap().schreier_generators().len(), 7);
    let whole = CosetTable::new(2, &s3, &s3, 10).unwrap();
    assert_eq!(whole.index(), 1);
    // F_1 → C_5: kernel freely generated by x^5
    let c5 = Permutation::parse("(1 2 3 4 5)", Some(5)).unwrap();
    let k = CosetTable::kernel(1, &[c5], 10).unwrap().schreier_generators();
    assert_eq!(k.words(), vec![&Word::letter(1, 0, 5).unwrap()]);
}

/// Exact product in `i128` as an independent evaluator.
fn eval_i128(n: i64, w: &Word) -> [[i128; 2]; 2] {
    let mut m = [[1i128, 0], [0, 1]];
    for &(l, k) in w.syllables() {
        let t = (n * k) as i128;
        let f = if l == 0 { [[1, t], [0, 1]] } else { [[1, 0], [t, 1]] };
        m = [
            [m[0][0] * f[0][0] + m[0][1] * f[1][0], m[0][0] * f[0][1] + m[0][1] * f[1][1]],
            [m[1][0] * f[0][0] + m[1][1] * f[1][0], m[1][0] * f[0][1] + m[1][1] * f[1][1]],
        ];
    }
    m
}

#[test]
fn ping_pong_words_are_nontrivial() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for n in [2, 3] {
        let mut leading = 0;
        for _ in 0..10_000 {
            let w = random_reduced(&mut rng, 2, 10);
            let m = sl2_ping_pong(n, &w).unwrap();
            assert!(!m.is_identity(), "{w:?}");
            let e = eval_i128(n, &w);
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(m.get(i, j), &BigInt::from(e[i][j]));
                }
            }
            if let Some(a) = ping_pong_sequence(n, &w).unwrap() {
                leading += 1;
                assert!(is_strictly_growing(&a));
                // the first row of the product holds the last two terms
                let mut row = [BigInt::from(e[0][0]), BigInt::from(e[0][1])];
                let mut tail = [a[a.len() - 2].clone(), a[a.len() - 1].clone()];
                row.sort();
                tail.sort();
                assert_eq!(row, tail);
            }
        }
        assert!(leading > 3000);
    }
}

#[test]
fn free_product_cascade() {
    let c2 = gtkit::constructions::cyclic(2, 10).unwrap();
    let c3 = gtkit::constructions::cyclic(3, 10).unwrap();
    let factors = [c2, c3];
    // (s t)^k in C_2 ⋆ C_3 never collapses
    let st = vec![(0, 1), (1, 1)];
    let mut w = Vec::new();
    for k in 1..=10 {
        w = free_product_multiply(&factors, &w, &st).unwrap();
        assert_eq!(w.len(), 2 * k);
    }
    let inverse: Vec<(usize, usize)> = w
        .iter()
        .rev()
        .map(|&(f, x)| (f, factors[f].inv(x)))
        .collect();
    assert!(free_product_multiply(&factors, &w, &inverse).unwrap().is_empty());
}

proptest! {
    #[test]
    fn commutator_generators_lie_in_derived_subgroup(m in -20i64..20, k in -20i64..20) {
        let w = commutator_generator(m, k);
        prop_assert_eq!(w.exponent_sum(0), 0);
        prop_assert_eq!(w.exponent_sum(1), 0);
        prop_assert_eq!(w.is_identity(), m == 0);
    }

    #[test]
    fn reduction_is_idempotent(raw in prop::collection::vec((0usize..3, -4i64..=4), 0..40)) {
        let w = reduce(3, &raw).unwrap();
        prop_assert_eq!(reduce(3, w.syllables()).unwrap(), w.clone());
        for pair in w.syllables().windows(2) {
            prop_assert_ne!(pair[0].0, pair[1].0);
        }
        prop_assert!(w.syllables().iter().all(|s| s.1 != 0));
    }
}

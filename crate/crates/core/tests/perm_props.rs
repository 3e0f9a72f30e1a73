use gtkit::perm::{conjugacy_class_size, count_r_cycles, find_conjugator, CycleType, Permutation};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// All permutations of `0..n` as image lists, by recursive insertion.
fn all_images(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_images(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn perm_strategy(max_degree: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_degree)
        .prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::from_images0(v).unwrap())
}

fn pair_strategy(max_degree: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max_degree).prop_flat_map(|n| {
        let base: Vec<usize> = (0..n).collect();
        (Just(base.clone()).prop_shuffle(), Just(base).prop_shuffle()).prop_map(|(a, b)| {
            (
                Permutation::from_images0(a).unwrap(),
                Permutation::from_images0(b).unwrap(),
            )
        })
    })
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Smallest `k ≥ 1` with `p^k = e`, by repeated multiplication.
fn brute_order(p: &Permutation) -> usize {
    let mut q = p.clone();
    let mut k = 1;
    while !q.is_identity() {
        q = &q * p;
        k += 1;
    }
    k
}

#[test]
fn cycle_round_trip_exhaustive() {
    for n in 1..=6 {
        for images in all_images(n) {
            let p = Permutation::from_images0(images).unwrap();
            let back = Permutation::from_cycles(&p.cycle_decomposition(), n).unwrap();
            assert_eq!(back, p);
            let text = p.to_string();
            assert_eq!(Permutation::parse(&text, Some(n)).unwrap(), p);
        }
    }
}

#[test]
fn order_matches_brute_force_exhaustive() {
    for n in 1..=6 {
        let nf = factorial(n);
        for images in all_images(n) {
            let p = Permutation::from_images0(images).unwrap();
            let o = p.order();
            assert_eq!(o, BigUint::from(brute_order(&p)));
            assert_eq!(&nf % &o, BigUint::from(0u32));
        }
    }
}

#[test]
fn class_sizes_sum_to_factorial() {
    for n in 1..=8 {
        let total: BigUint = CycleType::all(n).iter().map(conjugacy_class_size).sum();
        assert_eq!(total, factorial(n), "n = {n}");
    }
}

#[test]
fn class_sizes_match_enumeration() {
    let n = 6;
    let mut counts = std::collections::HashMap::new();
    for images in all_images(n) {
        let p = Permutation::from_images0(images).unwrap();
        *counts.entry(p.cycle_type()).or_insert(0usize) += 1;
    }
    for (ct, c) in counts {
        assert_eq!(conjugacy_class_size(&ct), BigUint::from(c));
    }
    for r in 2..=n {
        let brute = all_images(n)
            .into_iter()
            .map(|v| Permutation::from_images0(v).unwrap())
            .filter(|p| {
                let ct = p.cycle_type();
                ct.multiplicity(r) == 1 && ct.multiplicity(1) == n - r
            })
            .count();
        assert_eq!(count_r_cycles(n, r).unwrap(), BigUint::from(brute));
    }
}

#[test]
fn sign_is_a_homomorphism_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..10_000 {
        let n = 1 + i % 12;
        let p = Permutation::random(n, &mut rng);
        let q = Permutation::random(n, &mut rng);
        assert_eq!((&p * &q).sign(), p.sign() * q.sign());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn round_trip_large_degree(p in perm_strategy(50)) {
        let back = Permutation::from_cycles(&p.cycle_decomposition(), p.degree()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn conjugation_preserves_cycle_type((g, p) in pair_strategy(20)) {
        let c = &(&g * &p) * &g.inverse();
        prop_assert_eq!(c.cycle_type(), p.cycle_type());
        let theta = find_conjugator(&p, &c).unwrap().unwrap();
        prop_assert_eq!(&(&theta * &p) * &theta.inverse(), c);
    }

    #[test]
    fn inverse_and_power_laws(p in perm_strategy(15), k in -20i64..20) {
        prop_assert!((&p * &p.inverse()).is_identity());
        prop_assert_eq!(p.pow(k).inverse(), p.pow(-k));
        prop_assert_eq!(&p.pow(k) * &p, p.pow(k + 1));
    }

    #[test]
    fn different_cycle_types_are_not_conjugate((p, q) in pair_strategy(8)) {
        let found = find_conjugator(&p, &q).unwrap();
        prop_assert_eq!(found.is_some(), p.cycle_type() == q.cycle_type());
    }
}

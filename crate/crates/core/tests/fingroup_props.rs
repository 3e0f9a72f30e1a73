mod common;

use common::{group, library, prime_factors};
use gtkit::fingroup::{FinGroup, Limits};
use gtkit::perm::Permutation;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_perm_group() -> impl Strategy<Value = FinGroup> {
    (2usize..=5, 1usize..=3)
        .prop_flat_map(|(n, k)| {
            let base: Vec<usize> = (0..n).collect();
            (Just(n), prop::collection::vec(Just(base).prop_shuffle(), k))
        })
        .prop_map(|(n, gens)| {
            let gens: Vec<Permutation> = gens
                .into_iter()
                .map(|v| Permutation::from_images0(v).unwrap())
                .collect();
            FinGroup::from_permutations(n, &gens, 200).unwrap().0
        })
}

#[test]
fn lagrange_on_every_subgroup() {
    let lim = Limits::default();
    for (name, g) in library(64) {
        for h in g.all_subgroups(&lim).unwrap() {
            assert_eq!(g.order() % h.order(), 0, "{name}");
            assert_eq!(g.order(), h.order() * g.index(&h), "{name}");
        }
    }
}

#[test]
fn class_equation_sums_to_order() {
    for (name, g) in library(200) {
        let ce = g.class_equation();
        assert!(ce.is_consistent(), "{name}");
        let total: usize = ce.center_size + ce.class_sizes().iter().sum::<usize>();
        assert_eq!(total, g.order(), "{name}");
    }
}

#[test]
fn cauchy_and_sylow_counts() {
    for (name, g) in library(200) {
        for p in prime_factors(g.order()) {
            assert!(g.elements().any(|x| g.element_order(x) == p), "{name}: no element of order {p}");
        }
        for row in g.sylow_table() {
            assert_eq!(row.count as u64 % row.p, 1, "{name}");
            assert_eq!(g.order() % row.count, 0, "{name}");
            assert_eq!(g.order() % row.subgroup_order, 0, "{name}");
            assert_ne!((g.order() / row.subgroup_order) as u64 % row.p, 0, "{name}");
        }
    }
}

#[test]
fn smallest_prime_index_is_normal() {
    let lim = Limits::default();
    for (name, g) in library(64) {
        let Some(&p) = prime_factors(g.order()).first() else {
            continue;
        };
        for h in g.all_subgroups(&lim).unwrap() {
            if g.index(&h) == p {
                assert!(g.is_normal(&h), "{name}: index-{p} subgroup not normal");
            }
        }
    }
}

#[test]
fn composition_factors_are_independent_of_choices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, g) in library(64) {
        let mut expected = g.jh_factors();
        expected.sort();
        for _ in 0..4 {
            let rep = g.composition_series_random(&mut rng);
            let mut fps: Vec<_> = g
                .series_factors(&rep.members)
                .iter()
                .map(FinGroup::fingerprint)
                .collect();
            fps.sort();
            assert_eq!(fps, expected, "{name}");
            assert!(g.series_factors(&rep.members).iter().all(FinGroup::is_simple), "{name}");
        }
    }
}

#[test]
fn central_series_lengths_agree() {
    for (name, g) in library(64) {
        let lower = g.lower_central_series();
        let upper = g.upper_central_series();
        assert_eq!(lower.complete, upper.complete, "{name}");
        if lower.complete {
            assert_eq!(lower.length(), upper.length(), "{name}");
        }
    }
}

/// `G` is the internal direct product of its Sylow subgroups: each is
/// normal and their orders multiply to `|G|` (normal subgroups of coprime
/// orders intersect trivially and commute).
fn is_product_of_sylows(g: &FinGroup) -> bool {
    g.sylow_table().iter().all(|row| row.count == 1)
}

#[test]
fn nilpotent_iff_product_of_sylows() {
    for (name, g) in library(64) {
        assert_eq!(g.is_nilpotent(), is_product_of_sylows(&g), "{name}");
        if g.is_nilpotent() && g.order() > 1 {
            // rebuild the product and compare up to isomorphism
            let parts: Vec<FinGroup> = g
                .sylow_table()
                .iter()
                .map(|row| g.subgroup_as_group(&g.sylow_subgroup(row.p).unwrap()).0)
                .collect();
            let refs: Vec<&FinGroup> = parts.iter().collect();
            let prod = gtkit::constructions::direct_product_many(&refs, 100).unwrap();
            assert!(prod.is_isomorphic(&g).unwrap(), "{name}");
        }
    }
}

#[test]
fn derived_subgroup_bound() {
    for (name, g) in library(200) {
        let n = (g.order() / g.center().order()) as u64;
        let base = n * n + 3 - 3 * n;
        let bound = BigUint::from(base).pow((n * base) as u32);
        assert!(BigUint::from(g.commutator_subgroup().order()) <= bound, "{name}");
    }
}

#[test]
fn cayley_embedding() {
    for (name, g) in library(64) {
        let perms = g.left_regular_permutations();
        let set: std::collections::HashSet<_> = perms.iter().collect();
        assert_eq!(set.len(), g.order(), "{name}");
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(&perms[a] * &perms[b], perms[g.mul(a, b)], "{name}");
            }
        }
    }
}

#[test]
fn a5_subgroup_orders() {
    let g = group("A5");
    assert!(g.is_simple());
    let orders: std::collections::BTreeSet<usize> = g
        .all_subgroups(&Limits::default())
        .unwrap()
        .iter()
        .map(|h| h.order())
        .collect();
    for missing in [15, 20, 30] {
        assert!(!orders.contains(&missing));
    }
    assert_eq!(orders.into_iter().collect::<Vec<_>>(), vec![1, 2, 3, 4, 5, 6, 10, 12, 60]);
}

#[test]
fn frattini_is_the_set_of_non_generators() {
    let lim = Limits::default();
    for (name, g) in library(32) {
        let phi = g.frattini(&lim).unwrap();
        assert_eq!(g.non_generators(&lim).unwrap(), phi.elements(), "{name}");
        assert!(g.is_normal(&phi), "{name}");
    }
}

/// `G` is cyclic exactly when `x^d = e` has at most `d` solutions for every
/// divisor `d` of `|G|`.
#[test]
fn cyclicity_criterion() {
    for (name, g) in library(200) {
        let n = g.order();
        let criterion = (1..=n).filter(|d| n % d == 0).all(|d| {
            g.elements().filter(|&x| g.pow(x, d as i64) == g.identity()).count() <= d
        });
        assert_eq!(criterion, g.is_cyclic(), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_permutation_groups(g in random_perm_group()) {
        let ce = g.class_equation();
        prop_assert!(ce.is_consistent());
        for row in g.sylow_table() {
            prop_assert_eq!(row.count as u64 % row.p, 1);
            let subs = g.sylow_subgroups(row.p).unwrap();
            let mut conj = g.conjugates_of(&subs[0]);
            conj.sort();
            prop_assert_eq!(conj, subs);
        }
        for h in g.all_subgroups(&Limits::default()).unwrap() {
            prop_assert_eq!(g.order() % h.order(), 0);
            let n = g.normalizer_of(&h);
            prop_assert!(h.is_subset(&n));
            prop_assert!(g.is_normal_in(&h, &n));
        }
        let comp = g.composition_series();
        prop_assert_eq!(comp.factor_orders().iter().product::<usize>(), g.order());
        prop_assert_eq!(g.is_solvable(), g.derived_series().complete);
    }

    #[test]
    fn quotients_have_the_right_order(g in random_perm_group()) {
        for n in g.normal_subgroups() {
            let q = g.quotient(&n).unwrap();
            prop_assert_eq!(q.group.order() * n.order(), g.order());
            for a in g.elements() {
                for b in g.elements() {
                    prop_assert_eq!(q.coset_of[g.mul(a, b)], q.group.mul(q.coset_of[a], q.coset_of[b]));
                }
            }
        }
    }

    #[test]
    fn product_set_formula(g in random_perm_group()) {
        let subs = g.all_subgroups(&Limits::default()).unwrap();
        for h in subs.iter().take(8) {
            for k in subs.iter().rev().take(8) {
                let hk = g.product_set_size(h, k);
                let i = g.intersection(h, k);
                prop_assert_eq!(hk * i.order(), h.order() * k.order());
            }
        }
    }
}

use origami_core::constructions::{
    cyclic, direct_product, klein_witness, q8_witness, semidirect_cyclic, two_group, TwoGroupFamily,
};
use origami_core::numtheory::{gcd, pow_mod, prime_divisors, SemidirectSpec};
use origami_core::{FiniteGroup, Perm};
use proptest::prelude::*;

fn valid_ds(m: u64, n: u64) -> Vec<u64> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|&d| gcd(d, m) == 1 && pow_mod(d, n, m) == 1).collect()
}

fn spec_strategy(max_m: u64, max_n: u64) -> impl Strategy<Value = SemidirectSpec> {
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        let ds = valid_ds(m, n);
        (0..ds.len()).prop_map(move |i| SemidirectSpec { m, n, d: ds[i] })
    })
}

fn check_subgroup_invariants(g: &FiniteGroup) {
    let derived = g.derived_subgroup();
    let center = g.center();
    assert_eq!(g.order() % derived.order(), 0);
    assert_eq!(g.order() % center.order(), 0);
    assert!(derived.is_normal_in(g));
    for &z in center.members() {
        for a in 0..g.order() {
            assert_eq!(g.mul(z, a), g.mul(a, z));
        }
    }
    for a in 0..g.order() {
        assert_eq!(g.order() as u64 % g.element_order(a), 0);
        for b in 0..g.order() {
            assert!(derived.contains(g.commutator(a, b)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn semidirect_products_are_groups(spec in spec_strategy(16, 8)) {
        let g = semidirect_cyclic(spec).unwrap();
        prop_assert!(g.check_axioms().is_ok());
        check_subgroup_invariants(&g);
        prop_assert_eq!(g.derived_subgroup().order() as u64, spec.m / gcd((spec.d + spec.m - 1) % spec.m.max(1), spec.m));
    }

    #[test]
    fn products_with_cyclic_are_groups(spec in spec_strategy(9, 4), k in 1u64..6) {
        let g = direct_product(&semidirect_cyclic(spec).unwrap(), &cyclic(k));
        prop_assert!(g.check_axioms().is_ok());
        prop_assert_eq!(g.derived_subgroup().order(), semidirect_cyclic(spec).unwrap().derived_subgroup().order());
    }

    #[test]
    fn table_conversion_preserves_structure(spec in spec_strategy(12, 6)) {
        let g = semidirect_cyclic(spec).unwrap();
        let t = g.to_table();
        prop_assert!(t.check_axioms().is_ok());
        prop_assert_eq!(t.order_spectrum(), g.order_spectrum());
        prop_assert!(g.is_isomorphic(&t, 720).unwrap());
    }

    #[test]
    fn perm_inverse_and_order(images in Just((0u32..9).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Perm::from_images(images).unwrap();
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        let lcm = p.cycle_type().iter().fold(1u64, |a, &l| a / gcd(a, l as u64) * l as u64);
        prop_assert_eq!(p.order(), lcm);
        prop_assert_eq!(p.cycle_type().iter().sum::<usize>(), 9);
    }
}

#[test]
fn derived_order_formula_exhaustive() {
    for k in 1..=60u64 {
        for l in 1..=12u64 {
            for d in valid_ds(k, l) {
                let g = semidirect_cyclic(SemidirectSpec { m: k, n: l, d }).unwrap();
                let expect = if k == 1 { 1 } else { k / gcd(d + k - 1, k) };
                assert_eq!(g.derived_subgroup().order() as u64, expect, "({k},{l},{d})");
            }
        }
    }
}

#[test]
fn derived_order_formula_up_to_720() {
    for m in 2..=360u64 {
        for n in 2..=720 / m {
            for d in valid_ds(m, n) {
                let g = semidirect_cyclic(SemidirectSpec { m, n, d }).unwrap();
                assert_eq!(g.derived_subgroup().order() as u64, m / gcd(d - 1, m), "({m},{n},{d})");
            }
        }
    }
}

#[test]
fn two_groups_up_to_64_are_groups() {
    for fam in TwoGroupFamily::ALL {
        for alpha in fam.min_alpha()..=6 {
            let g = two_group(fam, alpha).unwrap();
            assert_eq!(g.order(), 1 << alpha);
            assert!(g.check_axioms().is_ok(), "{fam} {alpha}");
            check_subgroup_invariants(&g);
            let cyclic_half = (0..g.order()).any(|a| g.element_order(a) >= 1 << (alpha - 1));
            assert!(cyclic_half, "{fam} {alpha} lacks a cyclic subgroup of index two");
        }
    }
}

/// Automorphism group orders of the 2-groups with a cyclic subgroup of
/// index two, counted independently of the backtracking search.
fn aut_closed_form(fam: TwoGroupFamily, alpha: u32) -> u64 {
    match (fam, alpha) {
        (TwoGroupFamily::Cyclic, a) => 1 << (a - 1),
        (TwoGroupFamily::CyclicTimesZ2, 2) => 6,
        (TwoGroupFamily::CyclicTimesZ2, a) => 1 << a,
        (TwoGroupFamily::Modular, a) => 1 << a,
        (TwoGroupFamily::Dihedral, a) => 1 << (2 * a - 3),
        (TwoGroupFamily::Dicyclic, 3) => 24,
        (TwoGroupFamily::Dicyclic, a) => 1 << (2 * a - 3),
        (TwoGroupFamily::SemiDihedral, a) => 1 << (2 * a - 4),
    }
}

/// Brute force: images of a two-element generating set that extend to a
/// bijective homomorphism.
fn aut_brute(g: &FiniteGroup) -> u64 {
    let gens = g.small_generating_set();
    let n = g.order();
    let words: Vec<(usize, Vec<usize>)> = {
        let mut seen = vec![None; n];
        seen[g.identity()] = Some(Vec::new());
        let mut queue = vec![g.identity()];
        let mut i = 0;
        while i < queue.len() {
            let a = queue[i];
            i += 1;
            for (j, &s) in gens.iter().enumerate() {
                let b = g.mul(a, s);
                if seen[b].is_none() {
                    let mut w = seen[a].clone().unwrap();
                    w.push(j);
                    seen[b] = Some(w);
                    queue.push(b);
                }
            }
        }
        queue.into_iter().map(|a| (a, seen[a].clone().unwrap())).collect()
    };
    let mut count = 0;
    let mut imgs = vec![0usize; gens.len()];
    let total = n.pow(gens.len() as u32);
    for code in 0..total {
        let mut c = code;
        for slot in imgs.iter_mut() {
            *slot = c % n;
            c /= n;
        }
        let mut map = vec![usize::MAX; n];
        for (a, w) in &words {
            map[*a] = w.iter().fold(g.identity(), |acc, &j| g.mul(acc, imgs[j]));
        }
        let mut hit = vec![false; n];
        if map.iter().any(|&b| std::mem::replace(&mut hit[b], true)) {
            continue;
        }
        let hom = (0..n).all(|a| (0..n).all(|b| map[g.mul(a, b)] == g.mul(map[a], map[b])));
        count += hom as u64;
    }
    count
}

#[test]
fn automorphism_counts_match_closed_forms() {
    for fam in TwoGroupFamily::ALL {
        for alpha in fam.min_alpha().max(2)..=6 {
            let g = two_group(fam, alpha).unwrap();
            assert_eq!(
                g.automorphism_count(64).unwrap(),
                aut_closed_form(fam, alpha),
                "{fam} {alpha}"
            );
        }
    }
}

#[test]
fn automorphism_counts_match_brute_force() {
    for fam in TwoGroupFamily::ALL {
        for alpha in fam.min_alpha().max(2)..=4 {
            let g = two_group(fam, alpha).unwrap();
            assert_eq!(g.automorphism_count(64).unwrap(), aut_brute(&g), "{fam} {alpha}");
        }
    }
    let v4 = direct_product(&cyclic(2), &cyclic(2));
    assert_eq!(aut_brute(&v4), 6);
    assert_eq!(v4.automorphism_count(64).unwrap(), 6);
}

#[test]
fn automorphism_count_bound() {
    let g = cyclic(128);
    assert!(g.automorphism_count(64).is_err());
}

#[test]
fn isomorphism_examples() {
    let z4 = cyclic(4);
    let v4 = direct_product(&cyclic(2), &cyclic(2));
    assert!(!z4.is_isomorphic(&v4, 64).unwrap());
    let d8 = two_group(TwoGroupFamily::Dihedral, 3).unwrap();
    let q8 = two_group(TwoGroupFamily::Dicyclic, 3).unwrap();
    assert!(!d8.is_isomorphic(&q8, 64).unwrap());
    let z6 = direct_product(&cyclic(2), &cyclic(3));
    assert!(cyclic(6).is_isomorphic(&z6, 64).unwrap());
    let q8_center = q8.center();
    assert_eq!(q8_center.order(), 2);
}

#[test]
fn element_order_examples() {
    let d10 = semidirect_cyclic(SemidirectSpec { m: 5, n: 2, d: 4 }).unwrap();
    assert_eq!(d10.element_order(d10.identity()), 1);
    assert_eq!(d10.element_order(2), 5);
    let g = direct_product(&cyclic(6), &cyclic(4));
    assert_eq!(g.element_order(4 + 1), 12);
    let m9 = semidirect_cyclic(SemidirectSpec { m: 9, n: 3, d: 4 }).unwrap();
    assert_eq!(m9.derived_subgroup().order(), 3);
}

#[test]
fn three_extension_witnesses() {
    let admissible = |l: u64| l % 2 == 1 && prime_divisors(l).iter().all(|p| p % 3 == 1);
    for lambda in (1..=49).filter(|&l| admissible(l)) {
        let (g, x, y) = klein_witness(lambda).unwrap();
        assert_eq!(g.order() as u64, 12 * lambda);
        assert_eq!(g.subgroup_generated(&[x, y]).order(), g.order());
        assert_eq!(g.element_order(g.commutator(x, y)), 2 * lambda);
        let (g, x, y) = q8_witness(lambda).unwrap();
        assert_eq!(g.order() as u64, 24 * lambda);
        assert_eq!(g.subgroup_generated(&[x, y]).order(), g.order());
        assert_eq!(g.element_order(g.commutator(x, y)), 4 * lambda);
        if lambda <= 7 {
            assert!(g.check_axioms().is_ok());
        }
    }
    assert!(klein_witness(5).is_err());
}

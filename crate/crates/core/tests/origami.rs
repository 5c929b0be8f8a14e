use origami_core::constructions::{cyclic, semidirect_cyclic};
use origami_core::descriptor::GroupDesc;
use origami_core::numtheory::{gcd, SemidirectSpec};
use origami_core::origami::{extend_by_cyclic, one_cylinder, regular_origami};
use origami_core::sl2::Mat2;
use origami_core::{Origami, Perm, Stratum};
use proptest::prelude::*;

#[test]
fn regular_examples() {
    let d6 = semidirect_cyclic(SemidirectSpec { m: 3, n: 2, d: 2 }).unwrap();
    let o = regular_origami(&d6, 2, 1).unwrap();
    assert_eq!(
        (o.degree(), o.stratum().to_string(), o.genus()),
        (6, "H(2^2)".into(), 3)
    );
    assert_eq!(o.translation_count(), 6);
    let z4 = cyclic(4);
    let o = regular_origami(&z4, 1, 1).unwrap();
    assert!(o.stratum().is_empty());
    assert_eq!(o.genus(), 1);
    assert!(regular_origami(&z4, 2, 2).is_err());
}

#[test]
fn non_regular_examples() {
    let torus = Origami::new(Perm::identity(1), Perm::identity(1)).unwrap();
    assert_eq!((torus.genus(), torus.stratum().is_empty()), (1, true));
    let h = Perm::from_images(vec![1, 0, 2]).unwrap();
    let v = Perm::from_images(vec![2, 1, 0]).unwrap();
    let l = Origami::new(h, v).unwrap();
    assert_eq!(l.translation_count(), 1);
    assert_eq!(l.stratum().to_string(), "H(2)");
}

#[test]
fn one_cylinder_family() {
    for g in 2..=50u64 {
        let o = one_cylinder(g).unwrap();
        assert_eq!(o.degree() as u64, 4 * g - 4);
        assert_eq!(o.stratum(), Stratum::uniform(1, 2 * g - 2).unwrap());
        assert_eq!(o.genus(), g);
        let t = o.translation_group();
        assert_eq!(t.order() as u64, 2 * g - 2);
        assert!(
            (0..t.order()).any(|a| t.element_order(a) == t.order() as u64),
            "g = {g}"
        );
    }
}

fn spec_strategy() -> impl Strategy<Value = SemidirectSpec> {
    (2u64..=24, 1u64..=6).prop_flat_map(|(m, n)| {
        let ds: Vec<u64> = (1..m)
            .filter(|&d| gcd(d, m) == 1 && origami_core::numtheory::pow_mod(d, n, m) == 1)
            .collect();
        (0..ds.len()).prop_map(move |i| SemidirectSpec { m, n, d: ds[i] })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn regular_origami_identities(spec in spec_strategy()) {
        let g = semidirect_cyclic(spec).unwrap();
        let (x, y) = (spec.n as usize, 1usize);
        prop_assume!(g.subgroup_generated(&[x, y]).order() == g.order());
        let o = regular_origami(&g, x, y).unwrap();
        let c = g.element_order(g.commutator(x, y));
        let n = g.order() as u64;
        prop_assert_eq!(o.translation_count() as u64, n);
        prop_assert!(o.is_regular());
        if c > 1 {
            prop_assert_eq!(o.stratum(), Stratum::uniform(c - 1, n / c).unwrap());
            // |G| = 2(m+1)/m · (g−1)
            prop_assert_eq!(n * (c - 1), 2 * c * (o.genus() - 1));
            prop_assert!(n <= 4 * (o.genus() - 1));
        }
        let total: u64 = o.stratum().zeros().iter().map(|(k, s)| k * s).sum();
        prop_assert_eq!(total, 2 * o.genus() - 2);
    }

    #[test]
    fn extension_scales_multiplicity(spec in spec_strategy(), k in 1u64..8) {
        let g = semidirect_cyclic(spec).unwrap();
        let (x, y) = (spec.n as usize, 1usize);
        prop_assume!(g.subgroup_generated(&[x, y]).order() == g.order());
        let ox = g.element_order(x);
        let oy = g.element_order(y);
        match extend_by_cyclic(&g, x, y, k) {
            Ok((h, a, b)) => {
                prop_assert!(gcd(k, gcd(ox, oy)) == 1);
                let base = regular_origami(&g, x, y).unwrap().stratum();
                let lifted = regular_origami(&h, a, b).unwrap().stratum();
                prop_assert_eq!(h.element_order(h.commutator(a, b)), g.element_order(g.commutator(x, y)));
                let scaled = Stratum::new(base.zeros().iter().map(|(&z, &s)| (z, s * k))).unwrap();
                prop_assert_eq!(lifted, scaled);
            }
            Err(_) => prop_assert!(gcd(k, gcd(ox, oy)) > 1),
        }
    }

    #[test]
    fn origami_round_trip(images_h in Just((0u32..7).collect::<Vec<_>>()).prop_shuffle(),
                          images_v in Just((0u32..7).collect::<Vec<_>>()).prop_shuffle()) {
        let h = Perm::from_images(images_h).unwrap();
        let v = Perm::from_images(images_v).unwrap();
        if let Ok(o) = Origami::new(h, v) {
            let back: Origami = o.to_string().parse().unwrap();
            prop_assert_eq!(&back, &o);
            prop_assert!(o.translation_count() >= 1);
            prop_assert_eq!(7 % o.translation_count(), 0);
        }
    }

    #[test]
    fn stratum_round_trip(pairs in proptest::collection::vec((1u64..40, 1u64..9), 1..5)) {
        if let Ok(s) = Stratum::new(pairs) {
            let back: Stratum = s.to_string().parse().unwrap();
            prop_assert_eq!(back, s);
        }
    }

    #[test]
    fn descriptor_round_trip(m in 2u64..30, t in 1u64..12) {
        let d = GroupDesc::dp(GroupDesc::sd(m, 2, m - 1), GroupDesc::Cyclic(t));
        let back: GroupDesc = d.to_string().parse().unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn matrix_round_trip(a in 0i64..13, b in 0i64..13, c in 0i64..13, d in 0i64..13) {
        let m = Mat2::new(13, a, b, c, d);
        let back: Mat2 = m.to_string().parse().unwrap();
        prop_assert_eq!(back, m);
    }
}

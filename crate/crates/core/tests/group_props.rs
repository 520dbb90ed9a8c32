use banakh::group::{
    certify_norm_at_least_one, dist_token, norm_equal, numeric_norm, sphere, DistToken, GroupElement, Lattice,
};
use banakh::rat::{frac, int};
use banakh::space::Distance;
use proptest::prelude::*;

fn integral() -> impl Strategy<Value = GroupElement> {
    prop::collection::btree_map(0u32..6, -4i64..=4, 0..=4).prop_map(|m| GroupElement::from_coeffs(m.into_iter().map(|(i, c)| (i, int(c)))))
}

fn rational() -> impl Strategy<Value = GroupElement> {
    prop::collection::btree_map(0u32..6, (-6i64..=6, 1i64..4), 0..=4)
        .prop_map(|m| GroupElement::from_coeffs(m.into_iter().map(|(i, (n, d))| (i, frac(n, d)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn equal_norms_mean_equal_up_to_sign(x in rational(), y in rational()) {
        prop_assert_eq!(norm_equal(&x, &y), x == y || x == y.neg());
        // independent check: two random weight draws agree with the symbolic verdict
        let close = |s: u64| (numeric_norm(&x, s) - numeric_norm(&y, s)).abs() < 1e-9;
        if norm_equal(&x, &y) {
            prop_assert!(close(1) && close(2));
        } else {
            prop_assert!(!(close(1) && close(2)));
        }
    }

    #[test]
    fn norms_are_integer_homogeneous(x in rational(), n in -7i64..=7, seed in 0u64..50) {
        let nx = x.scale(&int(n), Lattice::L).unwrap();
        prop_assert_eq!(dist_token(&nx, &GroupElement::zero()), DistToken::of(&x).scaled(&int(n.abs())));
        let (a, b) = (numeric_norm(&nx, seed), n.unsigned_abs() as f64 * numeric_norm(&x, seed));
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b));
    }

    #[test]
    fn no_two_torsion(x in rational()) {
        prop_assert_eq!(x.add(&x).is_zero(), x.is_zero());
    }

    #[test]
    fn integral_points_are_discrete(x in integral(), seed in 0u64..50) {
        prop_assume!(!x.is_zero());
        prop_assert!(certify_norm_at_least_one(&x));
        prop_assert!(numeric_norm(&x, seed) >= 1.0 - 1e-12);
    }

    #[test]
    fn spheres_have_two_antipodal_points(c in rational(), t in rational()) {
        let tok = DistToken::of(&t);
        let s = sphere(&c, &tok);
        prop_assert!(s.len() <= 2);
        for p in &s {
            prop_assert_eq!(dist_token(&c, p), tok.clone());
        }
        if s.len() == 2 {
            prop_assert_eq!(dist_token(&s[0], &s[1]), tok.scaled(&int(2)));
        } else {
            prop_assert!(t.is_zero());
        }
    }
}

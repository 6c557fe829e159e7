use acluster_core::ccmap::cc_variable;
use acluster_core::rep::fp::Matrix;
use acluster_core::rep::{build_homogeneous, simple, CountConfig, Counter, ModuleFamily, Representation};
use acluster_core::tube::{normal_form, RegularLabel, TubeContext};
use acluster_core::{LaurentPoly, Preset, Quiver};
use num_bigint::BigInt;
use proptest::prelude::*;

const P: u64 = 7;

fn poly(rank: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-3i32..=3, rank), -5i64..=5), 0..6)
        .prop_map(move |ts| LaurentPoly::from_terms(rank, ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))).unwrap())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(0..P, rows * cols).prop_map(move |data| Matrix { rows, cols, data })
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    matrix(n, n).prop_filter("singular", |m| m.inverse(P).is_some())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_round_trip(a in poly(2), b in poly(2)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn text_round_trip(a in poly(3)) {
        prop_assert_eq!(LaurentPoly::parse(&a.to_string(), 3).unwrap(), a);
    }

    #[test]
    fn counts_ignore_base_change(
        a in matrix(3, 2), b in matrix(3, 2), g1 in invertible(2), g2 in invertible(3),
    ) {
        let q = Quiver::from_preset(Preset::Kronecker).unwrap();
        let r = Representation::new(q, P, vec![2, 3], vec![a, b]).unwrap();
        let c = r.conjugate(&[g1, g2]).unwrap();
        let mut x = Counter::new(r);
        let mut y = Counter::new(c);
        for e in [[1, 1], [1, 2], [0, 2], [2, 3], [1, 3]] {
            prop_assert_eq!(x.count(&e, 1_000_000).unwrap(), y.count(&e, 1_000_000).unwrap());
        }
    }

    #[test]
    fn tube_products_commute(r in 1usize..=4, i in 1usize..=4, k in 0usize..=6, j in 1usize..=4, n in 0usize..=6) {
        let ctx = TubeContext::generic(r, 14).unwrap();
        let a = RegularLabel::new(i, k);
        let b = RegularLabel::new(j, n);
        let ab = normal_form(r, &[a, b]).unwrap().evaluate(&ctx).unwrap();
        let ba = normal_form(r, &[b, a]).unwrap().evaluate(&ctx).unwrap();
        prop_assert_eq!(&ab, &ba);
        prop_assert_eq!(ab, ctx.tube_variable(i, k).unwrap() * ctx.tube_variable(j, n).unwrap());
    }
}

fn kronecker_piece(k: u8) -> ModuleFamily {
    let q = Quiver::from_preset(Preset::Kronecker).unwrap();
    match k {
        0 => simple(&q, 0).unwrap(),
        1 => simple(&q, 1).unwrap(),
        2 => build_homogeneous(Preset::Kronecker, 1).unwrap(),
        _ => ModuleFamily::exceptional(q, vec![1, 2]).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cc_is_multiplicative(a in 0u8..4, b in 0u8..4) {
        let cfg = CountConfig::default();
        let x = kronecker_piece(a);
        let y = kronecker_piece(b);
        let lhs = cc_variable(&x.clone().direct_sum(y.clone()), &cfg).unwrap();
        prop_assert_eq!(lhs, &cc_variable(&x, &cfg).unwrap() * &cc_variable(&y, &cfg).unwrap());
    }
}

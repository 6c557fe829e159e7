use acluster_core::ccmap::cc_variable;
use acluster_core::rep::{build_regular, CountConfig};
use acluster_core::tube::{chebyshev_product, delta_variable, TubeContext};
use acluster_core::Preset;

#[test]
fn atilde_strings_follow_the_recursion() {
    let cfg = CountConfig::default();
    for preset in [Preset::ATilde(2), Preset::ATilde(3)] {
        for tube in 1..=2 {
            let ctx = TubeContext::from_preset(preset, tube, 6, &cfg).unwrap();
            for socle in 1..=ctx.rank() {
                for len in 1..=ctx.rank() + 1 {
                    let m = build_regular(preset, tube, socle, len).unwrap();
                    let direct = cc_variable(&m, &cfg).unwrap();
                    assert_eq!(&direct, ctx.tube_variable(socle, len).unwrap(), "{preset} tube {tube} E_{socle}[{len}]");
                }
            }
        }
    }
}

#[test]
fn d4_length_two() {
    let cfg = CountConfig::default();
    for tube in 1..=3 {
        let ctx = TubeContext::from_preset(Preset::DTilde4, tube, 4, &cfg).unwrap();
        for socle in 1..=2 {
            let m = build_regular(Preset::DTilde4, tube, socle, 2).unwrap();
            assert_eq!(&cc_variable(&m, &cfg).unwrap(), ctx.tube_variable(socle, 2).unwrap());
        }
    }
}

#[test]
fn homogeneous_tube_matches_counting() {
    let cfg = CountConfig::default();
    let ctx = TubeContext::homogeneous(Preset::Kronecker, 8, &cfg).unwrap();
    for n in 1..=3 {
        assert_eq!(&delta_variable(Preset::Kronecker, n, &cfg).unwrap(), ctx.tube_variable(1, n).unwrap());
    }
    for m in 0..=4 {
        for n in 0..=m {
            let lhs = ctx.tube_variable(1, m).unwrap() * ctx.tube_variable(1, n).unwrap();
            assert_eq!(chebyshev_product(m, n).evaluate(&ctx).unwrap(), lhs);
        }
    }
}

#[test]
fn d4_delta_recursion() {
    use acluster_core::tube::delta_variable_counted;
    let cfg = CountConfig::default();
    let ctx = TubeContext::from_preset(Preset::DTilde4, 1, 6, &cfg).unwrap();
    for n in 1..=3 {
        let lhs = ctx.tube_variable(1, 2 * n).unwrap();
        let rhs = &delta_variable(Preset::DTilde4, n, &cfg).unwrap() + &delta_variable(Preset::DTilde4, n - 1, &cfg).unwrap();
        assert_eq!(lhs, &rhs, "n={n}");
    }
    let counted = delta_variable_counted(Preset::DTilde4, 2, &cfg).unwrap();
    let hom = TubeContext::homogeneous(Preset::DTilde4, 2, &cfg).unwrap();
    assert_eq!(&counted, hom.tube_variable(1, 2).unwrap());
}

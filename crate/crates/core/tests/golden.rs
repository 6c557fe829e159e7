use acluster_core::ccmap::cc_variable;
use acluster_core::rep::{build_homogeneous, CountConfig};
use acluster_core::{LaurentPoly, Preset};

#[test]
fn d4_delta_variable_closed_form() {
    let f = build_homogeneous(Preset::DTilde4, 1).unwrap();
    let x = cc_variable(&f, &CountConfig::default()).unwrap();
    let expected = LaurentPoly::parse(
        "x1^-2*x2^-1*x3^-1*x4^-1*x5^-1 + 4*x1^-1*x2^-1*x3^-1*x4^-1*x5^-1 \
         + x1^2*x2^-1*x3^-1*x4^-1*x5^-1 + 4*x1*x2^-1*x3^-1*x4^-1*x5^-1 + 6*x2^-1*x3^-1*x4^-1*x5^-1 \
         + x1^-2*x2*x3*x4*x5 + 2*x1^-2 + 4*x1^-1",
        5,
    )
    .unwrap();
    assert_eq!(x, expected);
}

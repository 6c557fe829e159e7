use std::collections::BTreeSet;

use acluster_core::ccmap::cc_variable;
use acluster_core::frieze::knit;
use acluster_core::rep::{CountConfig, ModuleFamily};
use acluster_core::{Error, Preset, Quiver};

fn check(preset: Preset, window: usize) -> usize {
    let q = Quiver::from_preset(preset).unwrap();
    let t = knit(&q, window, window).unwrap();
    assert!(t.check_meshes());
    let cfg = CountConfig::default();
    let mut compared = 0;
    let mut seen = BTreeSet::new();
    for (c, e) in t.entries() {
        assert!(seen.insert(e.dim.clone()), "repeated dimension vector {:?}", e.dim);
        assert!(e.value.all_coefficients_positive());
        if c.slice == 0 {
            continue;
        }
        let defect = q.defect(&e.dim).unwrap();
        assert_eq!(defect.signum(), if c.slice > 0 { -1 } else { 1 }, "{c:?}");
        let m = ModuleFamily::exceptional(q.clone(), e.dim.iter().map(|&x| x as usize).collect()).unwrap();
        match cc_variable(&m, &cfg) {
            Ok(v) => {
                assert_eq!(v, e.value, "{preset} {c:?}");
                compared += 1;
            }
            Err(Error::BudgetExceeded { .. }) => {}
            Err(err) => panic!("{err}"),
        }
    }
    compared
}

#[test]
fn kronecker_frieze_matches_counting() {
    assert!(check(Preset::Kronecker, 3) >= 6);
}

#[test]
fn atilde_frieze_matches_counting() {
    assert!(check(Preset::ATilde(2), 2) >= 16);
}

#[test]
fn d4_frieze_matches_counting() {
    assert!(check(Preset::DTilde4, 2) >= 10);
}

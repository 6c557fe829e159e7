use acluster_core::basis::{expand, BasisTable, DimBox, Summand};
use acluster_core::quiver::lt;
use acluster_core::rep::{build_regular, hom_dim, CountConfig, ModuleFamily, Representation};
use acluster_core::{Preset, Quiver};
use num_traits::One;

const P: u64 = 5;

fn module(q: &Quiver, preset: Preset, s: Summand, dim: &[i64]) -> Option<Representation> {
    let family = match s {
        Summand::Shift(_) | Summand::Homogeneous(_) => return None,
        Summand::Regular { tube, socle, len } if len >= preset.tube_ranks()[tube - 1] => {
            build_regular(preset, tube, socle, len).ok()?
        }
        _ => ModuleFamily::exceptional(q.clone(), dim.iter().map(|&x| x as usize).collect()).unwrap(),
    };
    Some(family.instantiate(P, 2).unwrap())
}

fn ext_oracle(preset: Preset, upper: i64) {
    let t = BasisTable::build(preset, DimBox::cube(Quiver::from_preset(preset).unwrap().n(), -1, upper).unwrap(), &CountConfig::default())
        .unwrap();
    let q = t.quiver().clone();
    let ind: Vec<(Summand, Vec<i64>)> = t.indecomposables().map(|(s, d)| (s, d.clone())).collect();
    let reps: Vec<Option<Representation>> = ind.iter().map(|(s, d)| module(&q, preset, *s, d)).collect();
    let mut checked = 0;
    for a in 0..ind.len() {
        for b in 0..ind.len() {
            let (Some(x), Some(y)) = (&reps[a], &reps[b]) else { continue };
            let ext = |x: &Representation, y: &Representation, dx: &[i64], dy: &[i64]| {
                hom_dim(x, y) as i64 - q.euler_form(dx, dy).unwrap()
            };
            let oracle = ext(x, y, &ind[a].1, &ind[b].1) + ext(y, x, &ind[b].1, &ind[a].1);
            assert_eq!(t.cluster_ext(a, b), oracle, "{preset}: {} vs {}", ind[a].0, ind[b].0);
            checked += 1;
        }
    }
    assert!(checked > 100, "{checked}");
}

#[test]
fn ext_formulas_match_linear_algebra() {
    ext_oracle(Preset::ATilde(2), 2);
    ext_oracle(Preset::DTilde4, 2);
}

fn covered(preset: Preset, bounds: DimBox) -> BasisTable {
    let t = BasisTable::build(preset, bounds, &CountConfig::default()).unwrap();
    assert!(t.missing().is_empty(), "{preset}: {:?}", &t.missing()[..t.missing().len().min(10)]);
    for e in t.elements() {
        assert_eq!(e.value.denominator_vector().unwrap(), e.dim, "{}", e.description());
        assert!(e.value.numerator_constant_term().unwrap().is_one(), "{}", e.description());
    }
    t
}

#[test]
fn atilde22_box() {
    let sample = DimBox::cube(4, -2, 3).unwrap();
    let t = covered(Preset::ATilde(2), sample.extended_down(6));
    let els: Vec<_> = t.elements().filter(|e| sample.contains(&e.dim)).collect();
    for (i, a) in els.iter().enumerate().step_by(37) {
        for b in els.iter().skip(i).step_by(53) {
            let sum: Vec<i64> = a.dim.iter().zip(&b.dim).map(|(x, y)| x + y).collect();
            if !sample.contains(&sum) {
                continue;
            }
            let p = &a.value * &b.value;
            let e = expand(&p, &t).unwrap();
            assert_eq!(e.reconstruct(&t).unwrap(), p);
            assert_eq!(e.leading().unwrap(), &(One::one(), sum));
        }
    }
}

#[test]
fn d4_box_and_shadowed_pairs() {
    let t = covered(Preset::DTilde4, DimBox::new(vec![0; 5], vec![4, 2, 2, 2, 2]).unwrap());
    let delta = t.get(&[2, 1, 1, 1, 1]).unwrap();
    assert_eq!(delta.summands, vec![(Summand::Regular { tube: 1, socle: 1, len: 2 }, 1)]);
    assert!(!t.shadowed().is_empty());
    for s in t.shadowed() {
        let diff = &t.get(&s.dim).unwrap().value - &s.value;
        let e = expand(&diff, &t).unwrap();
        assert!(e.terms.iter().all(|(_, d)| lt(d, &s.dim).unwrap()), "{}: {:?}", s.description(), e);
    }
}

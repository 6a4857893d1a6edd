use foldlie::exactalg::ri;
use foldlie::rootsys::{build_root_system, DynkinType, FoldingDatum};
use foldlie::weyl::*;
use foldlie::Error;

fn t(s: &str) -> DynkinType {
    s.parse().unwrap()
}

fn q_int_product(degrees: &[u32]) -> Vec<u64> {
    // ∏ (1 + t + … + t^{d-1})
    let mut p = vec![1u64];
    for &d in degrees {
        let mut next = vec![0u64; p.len() + d as usize - 1];
        for (i, c) in p.iter().enumerate() {
            for k in 0..d as usize {
                next[i + k] += c;
            }
        }
        p = next;
    }
    p
}

#[test]
fn orders_match_closed_formula() {
    for name in ["A1", "A2", "A3", "B2", "C3", "B3", "G2", "D4", "F4", "A5"] {
        let ty = t(name);
        let g = generate_weyl(&build_root_system(ty).unwrap()).unwrap();
        assert_eq!(g.order() as u64, ty.weyl_order(), "{name}");
        assert!(g.permutes_roots(), "{name}");
        assert_eq!(g.poincare_polynomial(), q_int_product(&ty.degrees()), "{name}");
        let refl = g.reflections();
        assert_eq!(refl.len(), ty.root_count() / 2);
        assert!(refl.iter().all(|&r| g.is_reflection(r)));
    }
}

#[test]
fn budget_is_enforced() {
    let rs = build_root_system(t("A4")).unwrap();
    assert_eq!(WeylGroup::of_roots(&rs, 100).unwrap_err(), Error::BudgetExceeded(100));
}

#[test]
fn group_axioms_on_c2() {
    let g = generate_weyl(&build_root_system(t("C2")).unwrap()).unwrap();
    assert_eq!(g.order(), 8);
    for i in 0..8 {
        assert_eq!(g.mul(i, g.inverse(i)), g.identity());
        let w = g.word(i).iter().map(|&s| g.generator(s)).collect::<Vec<_>>();
        assert_eq!(g.product(&w), i);
    }
    let s = (g.generator(0), g.generator(1));
    assert_eq!(g.element_order(g.mul(s.0, s.1)), 4);
}

#[test]
fn commutant_sizes() {
    for (name, ord, expect) in
        [("A3", 2, 8), ("A5", 2, 48), ("D4", 2, 48), ("D4", 3, 12), ("D5", 2, 384), ("A7", 2, 384)]
    {
        let fd = FoldingDatum::standard(t(name), ord).unwrap();
        let wf = WeylFolding::new(&fd).unwrap();
        assert_eq!(wf.commutant.len(), expect, "{name}/{ord}");
        assert_eq!(wf.folded.order(), expect);
        let rep = wf.verify_isomorphism();
        assert!(rep.passed(), "{name}: {:?}", rep.failures.first());
        assert!(weyl_vector_check(&fd).unwrap());
    }
}

#[test]
fn folded_simple_reflection_is_orbit_product() {
    let fd = FoldingDatum::standard(t("A3"), 2).unwrap();
    let wf = WeylFolding::new(&fd).unwrap();
    let s13 = folded_reflection(&wf.homogeneous, &[0, 2]).unwrap();
    let idx = wf.homogeneous.find_rat(&s13.matrix).unwrap();
    assert_eq!(wf.embed(wf.folded.generator(0)), Some(idx));
    assert_eq!(wf.embed(wf.folded.generator(1)), Some(wf.homogeneous.generator(1)));
    // adjacent simple roots do not form an orthogonal orbit
    assert_eq!(folded_reflection(&wf.homogeneous, &[0, 1]).unwrap_err(), Error::OrbitNotOrthogonal);
}

#[test]
fn regular_membership() {
    let fd = FoldingDatum::standard(t("A3"), 2).unwrap();
    let wf = WeylFolding::new(&fd).unwrap();
    let wh = &wf.homogeneous;
    let s13 = wh.mul(wh.generator(0), wh.generator(2));

    let reg = vec![ri(2), ri(1), ri(2)];
    let m = orbit_regular_membership(&wf, &reg, s13).unwrap();
    assert!(m.same_orbit && m.regular);
    assert_eq!(m.restriction, Some(wf.folded.generator(0)));

    let sing = vec![ri(1), ri(0), ri(1)];
    let m = orbit_regular_membership(&wf, &sing, wh.generator(1)).unwrap();
    assert!(m.same_orbit && !m.regular);
    assert_eq!(m.restriction, None);

    assert!(orbit_regular_membership(&wf, &[ri(1), ri(0), ri(0)], 0).is_err());
}

#[test]
fn quotient_map_is_bijective_on_samples() {
    let rep = quotient_invariants_iso_check(&FoldingDatum::standard(t("A3"), 2).unwrap(), 100, 42).unwrap();
    assert!(rep.passed(), "{:?}", rep.failures.first());
    let rep = quotient_invariants_iso_check(&FoldingDatum::standard(t("D4"), 3).unwrap(), 50, 7).unwrap();
    assert!(rep.passed(), "{:?}", rep.failures.first());
}

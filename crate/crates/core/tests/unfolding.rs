use foldlie::exactalg::{ri, MultiPoly, Poly, Rat};
use foldlie::rootsys::DynkinType;
use foldlie::slodowy::{appendix_slice, unfolding_coordinates};
use foldlie::unfolding::*;
use proptest::prelude::*;

fn ty(s: &str) -> DynkinType {
    s.parse().unwrap()
}

fn basis_strings(t: &str, order: usize) -> Vec<String> {
    let s = QuasiHomogSing::of_type(ty(t), order).unwrap();
    jacobian_basis(&s).unwrap().iter().map(|m| m.to_string()).collect()
}

fn xyz() -> Vec<MultiPoly> {
    Poly::<Rat>::vars_of(&["x", "y", "z"])
}

#[test]
fn jacobian_bases_of_small_types() {
    assert_eq!(basis_strings("A3", 1), ["x^2", "x", "1"]);
    assert_eq!(basis_strings("D4", 3), ["x*y", "x", "y", "1"]);
    assert_eq!(basis_strings("A1", 1), ["1"]);
}

#[test]
fn basis_size_is_rank() {
    for (t, order) in [("A2", 1), ("A5", 1), ("D4", 2), ("D5", 1), ("D6", 1), ("E6", 1), ("E7", 1), ("E8", 1)] {
        let s = QuasiHomogSing::of_type(ty(t), order).unwrap();
        assert_eq!(jacobian_basis(&s).unwrap().len(), ty(t).rank, "{t}");
        assert_eq!(s.weight_excess(), 2, "{t}");
    }
}

#[test]
fn jacobian_basis_rejects_non_isolated() {
    // x² + y² has a line of singularities along z
    let v = xyz();
    let f = v[0].clone() * v[0].clone() + v[1].clone() * v[1].clone();
    let s = QuasiHomogSing::new(ty("A1"), f, [1, 1, 1], 2).unwrap();
    assert!(jacobian_basis(&s).is_err());
}

#[test]
fn base_weights_are_twice_the_degrees() {
    // weights deg f − deg g_j against the invariant degrees 2d_j
    let cases: [(&str, &[u32]); 5] = [
        ("A3", &[4, 6, 8]),
        ("D4", &[4, 8, 8, 12]),
        ("D5", &[4, 8, 10, 12, 16]),
        ("E6", &[4, 10, 12, 16, 18, 24]),
        ("E8", &[4, 16, 24, 28, 36, 40, 48, 60]),
    ];
    for (t, expect) in cases {
        let fam = folding_family(ty(t), 1).unwrap();
        let mut w = fam.base_weights.clone();
        w.sort_unstable();
        assert_eq!(w, expect, "{t}");
        assert!(fam.is_quasi_homogeneous().unwrap());
    }
}

#[test]
fn weight_conventions() {
    let d4 = weight_convention(ty("D4")).unwrap();
    assert_eq!((d4.coprime, d4.lie), ([2, 2, 3], [4, 4, 6]));
    let a2 = weight_convention(ty("A2")).unwrap();
    assert_eq!(a2.coprime, a2.lie);
    let a3 = weight_convention(ty("A3")).unwrap();
    assert_eq!((a3.coprime, a3.lie), ([1, 2, 2], [2, 4, 4]));
    assert!(weight_convention(ty("B3")).is_err());
}

#[test]
fn a3_family_with_swap() {
    let fam = folding_family(ty("A3"), 2).unwrap();
    assert_eq!(fam.folded_type, Some(ty("C2")));
    assert_eq!(fam.base_names, ["b2", "b3", "b4"]);
    assert_eq!(fam.action.describe(&fam.variables()), "(-x, z, y, b2, -b3, b4)");
    assert_eq!(fam.invariant_base(), vec![0, 2]);
    let vars = fam.variables();
    let v = Poly::<Rat>::vars_of(&vars);
    let x2 = v[0].clone() * v[0].clone();
    let expect = x2.clone() * x2.clone() - v[1].clone() * v[2].clone() + v[3].clone() * x2 + v[5].clone();
    assert_eq!(fam.invariant_polynomial().unwrap(), expect);
}

#[test]
fn trivial_action_keeps_full_base() {
    let fam = folding_family(ty("A3"), 1).unwrap();
    assert_eq!(fam.invariant_base().len(), 3);
    assert_eq!(fam.invariant_polynomial().unwrap(), fam.polynomial().unwrap());
}

#[test]
fn d4_family_with_triality() {
    let fam = folding_family(ty("D4"), 3).unwrap();
    assert_eq!(fam.folded_type, Some(ty("G2")));
    assert_eq!(fam.base_names, ["b2", "b4", "b4t", "b6"]);
    let inv: Vec<&str> = fam.invariant_base().iter().map(|&j| fam.base_names[j].as_str()).collect();
    assert_eq!(inv, ["b2", "b6"]);
    let vars = fam.variables();
    let v = Poly::<Rat>::vars_of(&vars);
    let cube = |p: &MultiPoly| p.pow(3);
    let expect = cube(&v[0]) + cube(&v[1]) + v[2].pow(2) + v[3].clone() * v[0].clone() * v[1].clone() + v[6].clone();
    assert_eq!(fam.invariant_polynomial().unwrap(), expect);
}

#[test]
fn folded_types_of_families() {
    for (t, order, folded) in [("A5", 2, "C3"), ("D5", 2, "B4"), ("E6", 2, "F4"), ("D4", 2, "B3")] {
        let fam = folding_family(ty(t), order).unwrap();
        assert_eq!(fam.folded_type, Some(ty(folded)), "{t}");
        assert!(fam.action.preserves(&fam.polynomial().unwrap()));
        assert_eq!(fam.invariant_base().len(), ty(folded).rank, "{t}");
    }
}

#[test]
fn action_must_preserve_f() {
    let s = QuasiHomogSing::of_type(ty("A3"), 1).unwrap();
    let bad = CyclicAction { order: 2, perm: vec![0, 1, 2], phases: vec![0, 1, 0] };
    assert!(semiuniversal_family(&s, &bad).is_err());
}

#[test]
fn threefold_twists_and_fixed_loci() {
    let c2 = ThreefoldFamily::new(folding_family(ty("A3"), 2).unwrap()).unwrap();
    assert_eq!(c2.coordinate_twists, [1, 2, 2]);
    let inv: Vec<u32> = c2.deformation.invariant_base().iter().map(|&j| c2.base_twists[j]).collect();
    assert_eq!(inv, [2, 4]);
    let fl = c2.fixed_locus().unwrap();
    assert_eq!(fl.coeffs, [0, 1, 1]);
    assert_eq!(fl.equation, "alpha^2 - b4 = 0");
    assert_eq!(fl.twist, 2);

    let g2 = ThreefoldFamily::new(folding_family(ty("D4"), 3).unwrap()).unwrap();
    assert_eq!(g2.coordinate_twists, [2, 2, 3]);
    let fl = g2.fixed_locus().unwrap();
    assert_eq!(fl.equation, "alpha^2 + b6 = 0");
    assert_eq!(fl.twist, 3);

    let plain = ThreefoldFamily::new(folding_family(ty("A3"), 1).unwrap()).unwrap();
    assert!(plain.fixed_locus().is_err());
    assert!(ThreefoldFamily::new(folding_family(ty("A2"), 1).unwrap()).is_err());
}

#[test]
fn fixed_locus_genera() {
    let c2 = ThreefoldFamily::new(folding_family(ty("A3"), 2).unwrap()).unwrap();
    let g2 = ThreefoldFamily::new(folding_family(ty("D4"), 3).unwrap()).unwrap();
    assert_eq!(c2.fixed_locus_genus(2).unwrap(), 7);
    assert_eq!(g2.fixed_locus_genus(2).unwrap(), 9);
    assert_eq!(c2.fixed_locus_genus(5).unwrap(), 25);
    assert!(c2.fixed_locus_genus(1).is_err());
}

#[test]
fn exceptional_divisor() {
    assert_eq!(exceptional_divisor_components(2).unwrap(), 1);
    assert_eq!(exceptional_divisor_components(3).unwrap(), 2);
    assert!(exceptional_divisor_components(4).is_err());
    let (rel, cubic) = order3_quotient_residuals(&folding_family(ty("D4"), 3).unwrap()).unwrap();
    assert!(rel.is_zero());
    assert!(cubic.is_zero());
}

#[test]
fn slice_coordinates_solve_the_a3_family() {
    // the unfolded slice point (x, y, z, b2, b3, b4) lies on x⁴ − yz + b2x² + b3x + b4 = 0
    let fam = folding_family(ty("A3"), 1).unwrap();
    let f = fam.polynomial().unwrap();
    let vars = fam.variables();
    let order: Vec<usize> =
        ["x", "y", "z", "b2", "b3", "b4"].iter().map(|n| vars.iter().position(|v| v == n).unwrap()).collect();
    let sh = appendix_slice().unwrap();
    for u in [[1, 2, 3, 4, 5], [-2, 0, 7, 1, -3], [0, 1, 0, 0, 0]] {
        let c = unfolding_coordinates(&sh, &u.map(ri)).unwrap();
        let mut pt = vec![ri(0); 6];
        for (k, &i) in order.iter().enumerate() {
            pt[i] = c[k].clone();
        }
        assert_eq!(f.eval(&pt).unwrap(), ri(0), "{u:?}");
    }
}

#[test]
fn summary_json() {
    let js = serde_json::to_value(folding_family(ty("A3"), 2).unwrap().summary().unwrap()).unwrap();
    assert_eq!(js["invariant_base"], serde_json::json!(["b2", "b4"]));
    assert_eq!(js["folded_type"], "C2");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn family_is_weighted_homogeneous(pt in prop::collection::vec(-4i64..4, 7), l in 1i64..4) {
        // f(λ^w p) = λ^deg f(p) at integer points, D4 with triality
        let fam = folding_family(ty("D4"), 3).unwrap();
        let f = fam.polynomial().unwrap();
        let w = fam.combined_weights();
        let p: Vec<Rat> = pt.iter().map(|&k| ri(k)).collect();
        let scaled: Vec<Rat> = p.iter().zip(&w).map(|(v, &k)| v * ri(l.pow(k))).collect();
        let lhs = f.eval(&scaled).unwrap();
        let rhs = f.eval(&p).unwrap() * ri(l.pow(fam.singularity.degree));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn swap_action_fixes_a3_family(pt in prop::collection::vec(-5i64..5, 6)) {
        let fam = folding_family(ty("A3"), 2).unwrap();
        let f = fam.polynomial().unwrap();
        let p: Vec<Rat> = pt.iter().map(|&k| ri(k)).collect();
        let a = &fam.action;
        let mut img = vec![ri(0); 6];
        for i in 0..6 {
            let sign = if a.phases[i] % 2 == 1 { ri(-1) } else { ri(1) };
            img[a.perm[i]] = &p[i] * sign;
        }
        prop_assert_eq!(f.eval(&p).unwrap(), f.eval(&img).unwrap());
    }

    #[test]
    fn fixed_genus_matches_closed_forms(g in 2u32..12) {
        let c2 = ThreefoldFamily::new(folding_family(ty("A3"), 2).unwrap()).unwrap();
        let g2 = ThreefoldFamily::new(folding_family(ty("D4"), 3).unwrap()).unwrap();
        prop_assert_eq!(c2.fixed_locus_genus(g).unwrap(), 6 * g as u64 - 5);
        prop_assert_eq!(g2.fixed_locus_genus(g).unwrap(), 8 * g as u64 - 7);
    }
}

use foldlie::hitchin::*;
use foldlie::rootsys::{build_root_system, DynkinType, FoldingDatum};
use foldlie::weyl::generate_weyl;
use proptest::prelude::*;

fn ty(s: &str) -> DynkinType {
    s.parse().unwrap()
}

fn fold(t: &str, order: usize) -> FoldingDatum {
    FoldingDatum::standard(ty(t), order).unwrap()
}

#[test]
fn base_dimensions() {
    let c2 = dim_base(ty("C2"), 2).unwrap();
    assert_eq!((c2.degrees.clone(), c2.summand_dims.clone(), c2.total()), (vec![2, 4], vec![3, 7], 10));
    assert_eq!(dim_base(ty("A3"), 2).unwrap().total(), 15);
    assert_eq!(dim_base(ty("G2"), 2).unwrap().total(), 14);
    assert!(dim_base(ty("C2"), 1).is_err());
    assert_eq!(fiber_dim(ty("C2"), 2).unwrap(), 10);
    assert_eq!(fiber_dim(ty("A3"), 2).unwrap(), 15);
}

#[test]
fn base_dimension_equals_group_dimension_times_g_minus_one() {
    // Σ (2d − 1) = dim 𝔤
    for (t, dim) in [("A3", 15), ("C3", 21), ("B4", 36), ("G2", 14), ("F4", 52), ("E6", 78), ("D5", 45)] {
        for g in 2..5 {
            assert_eq!(dim_base(ty(t), g).unwrap().total(), dim * (g as u64 - 1), "{t}");
        }
    }
}

#[test]
fn folded_bases() {
    for g in 2..=4 {
        let m = folded_base_match(&fold("A3", 2), g).unwrap();
        assert_eq!(m.surviving_degrees, vec![2, 4]);
        assert_eq!(m.homogeneous.total(), 15 * (g as u64 - 1));
        assert_eq!(m.invariant_part, 10 * (g as u64 - 1));
        assert!(m.matches() && !m.table_derived);
    }
    let m = folded_base_match(&fold("D4", 3), 2).unwrap();
    assert_eq!((m.surviving_degrees.clone(), m.invariant_part), (vec![2, 6], 14));
    assert!(m.matches());
    let m = folded_base_match(&fold("A3", 1), 2).unwrap();
    assert_eq!(m.invariant_part, m.homogeneous.total());
    for (t, order) in [("A5", 2), ("D4", 2), ("D5", 2), ("E6", 2)] {
        let m = folded_base_match(&fold(t, order), 3).unwrap();
        assert!(m.matches(), "{t}");
        assert_eq!(m.table_derived, t == "E6");
    }
}

#[test]
fn isogeny_examples() {
    let c2 = isogeny_dimensions(&fold("A3", 2), 2).unwrap();
    assert_eq!((c2.dim_base, c2.genus_fixed_locus, c2.dim_j2z, c2.h3), (10, 7, 17, 34));
    let g2 = isogeny_dimensions(&fold("D4", 3), 2).unwrap();
    assert_eq!((g2.dim_base, g2.genus_fixed_locus, g2.aut_order, g2.dim_j2z), (14, 9, 3, 32));
    let plain = isogeny_dimensions(&fold("A3", 1), 2).unwrap();
    assert_eq!(plain.dim_j2z, plain.dim_base);
    assert!(isogeny_dimensions(&fold("A5", 2), 2).is_err());
}

#[test]
fn degrees_from_enumerated_groups() {
    let types = ["A1", "A2", "A3", "B2", "C3", "B3", "G2", "D4"];
    let groups: Vec<_> = types.iter().map(|t| generate_weyl(&build_root_system(ty(t)).unwrap()).unwrap()).collect();
    let pairs: Vec<_> = types.iter().map(|t| ty(t)).zip(groups.iter()).collect();
    let rep = exponent_table_check(&pairs).unwrap();
    assert!(rep.passed(), "{:?}", rep.failures);
    assert_eq!(degrees_from_poincare(&groups[6]).unwrap(), vec![2, 6]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn riemann_roch_increasing(g in 2u32..30, d in 2u32..20) {
        let a = h0_canonical_power(d, g).unwrap();
        let b = h0_canonical_power(d + 1, g).unwrap();
        prop_assert!(a > 0 && b > a);
    }

    #[test]
    fn isogeny_exceeds_fiber(g in 2u32..8) {
        for (t, order) in [("A3", 2), ("D4", 3)] {
            let iso = isogeny_dimensions(&fold(t, order), g).unwrap();
            prop_assert!(iso.dim_j2z > iso.dim_base);
            prop_assert_eq!(iso.dim_base, fiber_dim(iso.folded_type.parse().unwrap(), g).unwrap());
        }
    }
}

#[test]
fn folded_group_is_named_by_coinvariants() {
    assert_eq!(folded_base_match(&fold("A3", 2), 2).unwrap().folded.group_type, "C2");
    assert_eq!(folded_base_match(&fold("D5", 2), 2).unwrap().folded.group_type, "B4");
    assert_eq!(isogeny_dimensions(&fold("A3", 2), 2).unwrap().folded_type, "C2");
}

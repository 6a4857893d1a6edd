use foldlie::exactalg::{ri, Rat, RatMatrix};
use foldlie::rootsys::*;

fn t(s: &str) -> DynkinType {
    s.parse().unwrap()
}

#[test]
fn root_counts_match_classical_formulas() {
    for s in ["A1", "A3", "A7", "B3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2"] {
        let rs = build_root_system(t(s)).unwrap();
        assert_eq!(rs.all_roots.len(), rs.kind.root_count(), "{s}");
        let pos = rs.positive_roots().len();
        assert_eq!(2 * pos, rs.all_roots.len(), "{s}");
    }
}

#[test]
fn g2_has_two_root_lengths_with_ratio_three() {
    let rs = build_root_system(t("G2")).unwrap();
    let mut lens: Vec<Rat> = rs.all_roots.iter().map(|r| rs.inner(r, r)).collect();
    lens.sort();
    lens.dedup();
    assert_eq!(lens, vec![ri(2), ri(6)]);
}

#[test]
fn a1_is_plus_minus_alpha() {
    let rs = build_root_system(t("A1")).unwrap();
    assert_eq!(rs.all_roots, vec![vec![ri(1)], vec![ri(-1)]]);
}

#[test]
fn folding_table() {
    let rows = [
        ("A3", 2, "C2", "B2"),
        ("A5", 2, "C3", "B3"),
        ("A7", 2, "C4", "B4"),
        ("D4", 2, "B3", "C3"),
        ("D5", 2, "B4", "C4"),
        ("D4", 3, "G2", "G2"),
        ("E6", 2, "F4", "F4"),
    ];
    for (h, ord, co, inv) in rows {
        let fd = FoldingDatum::standard(t(h), ord).unwrap();
        let c = fold_coinvariants(&fd).unwrap();
        let i = fold_invariants(&fd).unwrap();
        assert_eq!(c.kind, t(co), "{h}/{ord}");
        assert_eq!(i.kind, t(inv), "{h}/{ord}");
        assert_eq!(c.all_roots.len(), t(co).root_count());
        let rep = check_folding_duality(&fd).unwrap();
        assert!(rep.holds, "{h}/{ord}: {rep:?}");
        let d = dualize_root_system(&c);
        assert!(d.kind.isomorphic_to(&i.kind));
        let (chr, coch) = folded_lattices(&fd).unwrap();
        assert_eq!((chr.rank, coch.rank), (c.rank(), c.rank()));
    }
}

#[test]
fn trivial_folding_is_identity() {
    let fd = FoldingDatum::standard(t("A3"), 1).unwrap();
    assert_eq!(fold_coinvariants(&fd).unwrap().kind, t("A3"));
    assert_eq!(fold_invariants(&fd).unwrap().kind, t("A3"));
    let (a, b) = folded_lattices(&fd).unwrap();
    assert_eq!((a.rank, b.rank), (3, 3));
}

#[test]
fn a_even_reversal_is_not_a_graph_automorphism() {
    let rs = build_root_system(t("A4")).unwrap();
    let aut = GraphAut::new(vec![3, 2, 1, 0], 2, &rs).unwrap();
    assert!(matches!(FoldingDatum::new(rs, aut), Err(foldlie::Error::NotGraphAut(_))));
}

#[test]
fn duals() {
    for (a, b) in [("C3", "B3"), ("A3", "A3"), ("G2", "G2"), ("F4", "F4")] {
        let d = dualize_root_system(&build_root_system(t(a)).unwrap());
        assert_eq!(d.kind, t(b));
        let dd = dualize_root_system(&d);
        assert_eq!(dd.all_roots, build_root_system(t(a)).unwrap().all_roots);
    }
    let _ = RatMatrix::identity(1);
}

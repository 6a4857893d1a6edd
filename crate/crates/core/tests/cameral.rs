use foldlie::cameral::*;
use foldlie::report::rng_from_seed;
use foldlie::rootsys::{build_root_system, DynkinType, FoldingDatum};
use foldlie::weyl::{generate_weyl, WeylFolding, WeylGroup};
use proptest::prelude::*;

fn weyl(t: &str) -> WeylGroup {
    let t: DynkinType = t.parse().unwrap();
    generate_weyl(&build_root_system(t).unwrap()).unwrap()
}

fn a3_c2() -> WeylFolding {
    WeylFolding::new(&FoldingDatum::standard("A3".parse().unwrap(), 2).unwrap()).unwrap()
}

#[test]
fn riemann_hurwitz_engine() {
    assert_eq!(riemann_hurwitz_genus(8, 2, 0).unwrap(), 9);
    assert_eq!(riemann_hurwitz_genus(2, 2, 8).unwrap(), 7);
    assert_eq!(riemann_hurwitz_genus(1, 0, 0).unwrap(), 0);
    assert!(riemann_hurwitz_genus(2, 0, 1).is_err());
    assert!(riemann_hurwitz_genus(3, 0, 0).is_err());
}

#[test]
fn validation_examples() {
    let w = weyl("C2");
    let id = w.identity();
    assert!(validate_monodromy(&w, &CoverMonodromy::unramified(vec![(id, id), (id, id)])).is_ok());
    for &s in &w.reflections() {
        let cm = CoverMonodromy { base_genus: 0, handles: vec![], branches: vec![s, s] };
        assert!(validate_monodromy(&w, &cm).is_ok());
    }
    let (s0, s1) = (w.generator(0), w.generator(1));
    let bad = CoverMonodromy { base_genus: 0, handles: vec![], branches: vec![s0, s1] };
    match validate_monodromy(&w, &bad) {
        Err(foldlie::error::Error::RelationViolated(word)) => assert_eq!(word, w.word(w.mul(s0, s1)).to_vec()),
        other => panic!("{other:?}"),
    }
    let short = CoverMonodromy { base_genus: 2, handles: vec![(id, id)], branches: vec![] };
    assert!(validate_monodromy(&w, &short).is_err());
    let mut rng = rng_from_seed(3);
    let cm = random_transversal(&w, 2, 6, false, &mut rng).unwrap();
    assert!(validate_monodromy(&w, &cm).is_ok());
    assert!(cm.is_transversal(&w));
    assert!(random_transversal(&w, 2, 3, false, &mut rng).is_err());
}

#[test]
fn galois_cover_genera() {
    let w = weyl("C2");
    let mut rng = rng_from_seed(11);
    let cm = random_transversal(&w, 2, 0, true, &mut rng).unwrap();
    let geo = cover_geometry(&w, &cm).unwrap();
    assert_eq!((geo.component_count, geo.component_genera.clone()), (1, vec![9]));

    let id = w.identity();
    let geo = cover_geometry(&w, &CoverMonodromy::unramified(vec![(id, id), (id, id)])).unwrap();
    assert_eq!(geo.component_count, 8);
    assert!(geo.component_genera.iter().all(|&g| g == 2));

    let cm = random_transversal(&w, 2, 2, true, &mut rng).unwrap();
    let geo = cover_geometry(&w, &cm).unwrap();
    assert_eq!(geo.component_genera, vec![13]);
    // oracle: χ = |W|χ(Σ) − Σ(|W| − |W|/2)
    assert_eq!(geo.euler_characteristic, 8 * -2 - 2 * 4);
    assert_eq!(geo.ramification, vec![vec![2, 2, 2, 2]; 2]);
}

#[test]
fn induced_cover_has_index_many_copies() {
    let wf = a3_c2();
    let mut rng = rng_from_seed(5);
    let cm = random_transversal(&wf.folded, 2, 4, true, &mut rng).unwrap();
    let ic = induced_cover_report(&wf, &cm).unwrap();
    assert_eq!(ic.index, 3);
    assert_eq!(ic.geometry.component_count, 3);
    assert!(ic.components_match);
    assert_eq!(ic.geometry.component_genera, vec![ic.original.component_genera[0]; 3]);
    assert_eq!(ic.geometry.euler_characteristic, 3 * ic.original.euler_characteristic);
    assert!(induced_local_monodromy_check(&wf, &cm).unwrap().passed());

    let id = wf.folded.identity();
    let triv = CoverMonodromy::unramified(vec![(id, id), (id, id)]);
    let geo = cover_geometry(&wf.homogeneous, &induce_cover(&wf, &triv).unwrap()).unwrap();
    assert_eq!(geo.component_count, 24);
}

#[test]
fn induction_rejects_foreign_elements() {
    let wf = a3_c2();
    let bad = CoverMonodromy { base_genus: 0, handles: vec![], branches: vec![wf.folded.order(), 0] };
    assert!(induce_cover(&wf, &bad).is_err());
}

#[test]
fn induced_components_over_many_samples() {
    let rep = induced_component_check(&a3_c2(), &[2, 3], 4, 200, 42).unwrap();
    // one component check plus one local-monodromy check per branch point
    assert_eq!(rep.cases_run, 200 * (1 + 4));
    assert!(rep.passed(), "{:?}", rep.failures);
}

#[test]
fn pushforward_ranks() {
    let wf = a3_c2();
    let lat = LatticeAction::root_lattice(&wf.homogeneous);
    let generic = pushforward_fiber(&wf, &lat, &[]).unwrap();
    // W-equivariant maps W → Λ are determined by f(1): rank Λ_h
    assert_eq!((generic.rank_homogeneous, generic.rank_folded), (3, 3));
    assert!(generic.restriction_bijective);
    let s = wf.folded.generator(0);
    let ramified = pushforward_fiber(&wf, &lat, &[s]).unwrap();
    assert_eq!(ramified.rank_homogeneous, ramified.rank_folded);
    assert!(ramified.restriction_bijective);
    let zero = pushforward_fiber(&wf, &LatticeAction::zero(&wf.homogeneous), &[s]).unwrap();
    assert_eq!((zero.rank_homogeneous, zero.rank_folded), (0, 0));

    let mut rng = rng_from_seed(9);
    let cm = random_transversal(&wf.folded, 2, 4, true, &mut rng).unwrap();
    assert!(pushforward_sections_check(&wf, &cm, &lat).unwrap().passed());
}

#[test]
fn fiber_rank_matches_twice_base_dimension() {
    let wf = a3_c2();
    let w = &wf.folded;
    let mut rng = rng_from_seed(42);
    // |R|(2g − 2) reflection walls for g = 2
    let cm = random_transversal(w, 2, 16, true, &mut rng).unwrap();
    assert_eq!(hitchin_fiber_rank(w, &cm, &LatticeAction::root_lattice(w)).unwrap(), 20);
    assert_eq!(hitchin_fiber_rank(w, &cm, &LatticeAction::zero(w)).unwrap(), 0);
    let induced = induce_cover(&wf, &cm).unwrap();
    let inv = LatticeAction::invariant_sublattice(&wf).unwrap();
    assert_eq!(inv.rank, 2);
    assert_eq!(hitchin_fiber_rank(w, &cm, &inv).unwrap(), 20);
    // the whole homogeneous lattice sees the extra cubic direction
    let full = LatticeAction::root_lattice(&wf.homogeneous);
    assert_eq!(hitchin_fiber_rank(&wf.homogeneous, &induced, &full).unwrap(), 30);
}

#[test]
fn surviving_invariants_are_refused() {
    let w = weyl("C2");
    let id = w.identity();
    let cm = CoverMonodromy::unramified(vec![(id, id), (id, id)]);
    assert!(matches!(
        hitchin_fiber_rank(&w, &cm, &LatticeAction::root_lattice(&w)),
        Err(foldlie::error::Error::NonvanishingH0(2))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_covers_satisfy_riemann_hurwitz(seed in 0u64..1000, g in 0u32..4, half in 1usize..4) {
        let w = weyl("C2");
        let mut rng = rng_from_seed(seed);
        let cm = random_transversal(&w, g, 2 * half, false, &mut rng).unwrap();
        let geo = cover_geometry(&w, &cm).unwrap();
        // every branch point is a reflection: |W|/2 transpositions on the fibre
        let chi = 8 * (2 - 2 * g as i64) - (2 * half) as i64 * 4;
        prop_assert_eq!(geo.euler_characteristic, chi);
        let h = generated_subgroup(&w, &cm.images()).len();
        prop_assert_eq!(geo.component_count, 8 / h);
    }
}

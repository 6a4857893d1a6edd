//! End-to-end acceptance checks. Runs without the libtest harness so that
//! each criterion prints one line even when output capture is on.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use foldlie::cameral::{
    hitchin_fiber_rank, induce_cover, induced_component_check, pushforward_fiber, pushforward_sections_check,
    random_transversal, LatticeAction,
};
use foldlie::exactalg::{ri, MultiPoly, Rat};
use foldlie::hitchin::{dim_base, fiber_dim, folded_base_match, isogeny_dimensions};
use foldlie::liealg::{base_iso_check, build_algebra, fixed_subalgebra, lift_graph_aut, ChevalleyData, Family};
use foldlie::report::{random_nonzero_rat, random_rat, rng_from_seed};
use foldlie::rootsys::{fold_coinvariants, fold_invariants, DynkinType, FoldingDatum, GraphAut};
use foldlie::slodowy::{
    build_subregular_slice, cstar_action, slice_quotient, verify_appendix, verify_unfolding_coordinates,
};
use foldlie::unfolding::{folding_family, ThreefoldFamily};
use foldlie::weyl::WeylFolding;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ty(s: &str) -> DynkinType {
    s.parse().unwrap()
}

fn datum(t: &str, order: usize) -> FoldingDatum {
    FoldingDatum::standard(ty(t), order).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: foldlie::Error) -> String {
    e.to_string()
}

fn folding_table() -> Outcome {
    let rows = [
        ("A3", 2, "C2", "B2"),
        ("A5", 2, "C3", "B3"),
        ("A7", 2, "C4", "B4"),
        ("D4", 2, "B3", "C3"),
        ("D5", 2, "B4", "C4"),
        ("D4", 3, "G2", "G2"),
        ("E6", 2, "F4", "F4"),
    ];
    for (h, order, co, inv) in rows {
        let fd = datum(h, order);
        let c = fold_coinvariants(&fd).map_err(err)?.kind;
        let i = fold_invariants(&fd).map_err(err)?.kind;
        ensure(c == ty(co) && i == ty(inv), || format!("{h}/{order}: got {c}, {i}"))?;
    }
    Ok(format!("{} rows", rows.len()))
}

fn weyl_folding() -> Outcome {
    for (h, order, nh, n) in [("A3", 2, 24, 8), ("A5", 2, 720, 48), ("D4", 3, 192, 12), ("D5", 2, 1920, 384)] {
        let wf = WeylFolding::new(&datum(h, order)).map_err(err)?;
        let got = (wf.homogeneous.order(), wf.commutant.len(), wf.folded.order());
        ensure(got == (nh, n, n), || format!("{h}: {got:?}"))?;
        let rep = wf.verify_isomorphism();
        ensure(rep.passed(), || format!("{h}: {:?}", rep.failures))?;
    }
    Ok("4 foldings, restriction is an isomorphism".into())
}

fn invariant_ring() -> Outcome {
    let b = base_iso_check(&datum("A3", 2), 100, 42).map_err(err)?;
    ensure(b.report.passed(), || format!("{:?}", b.report.failures))?;
    ensure(b.restricted.vanishing == [1] && b.restricted.polys[1].is_zero(), || {
        format!("cubic restricts to {}", b.restricted.polys[1])
    })?;
    Ok(format!("{} cases, cubic invariant vanishes", b.report.cases_run))
}

fn fixed_subalgebras() -> Outcome {
    for (family, n, t, order, dim, roots) in [(Family::Sl, 4, "A3", 2, 10, 8), (Family::So, 8, "D4", 3, 14, 12)] {
        let cd = ChevalleyData::new(&build_algebra(family, n).map_err(err)?).map_err(err)?;
        let aut = lift_graph_aut(&cd, &GraphAut::standard(ty(t), order).map_err(err)?).map_err(err)?;
        let f = fixed_subalgebra(&cd, &aut).map_err(err)?;
        let got = (f.algebra.dimension(), f.rank(), f.root_functionals.len(), f.root_spaces_are_lines());
        ensure(got == (dim, 2, roots, true), || format!("{t}: {got:?}"))?;
    }
    Ok("sl4 fixed part 10 = 2 + 8, so8 triality part 14 = 2 + 12".into())
}

fn slice_quotient_sp4() -> Outcome {
    let s = build_subregular_slice(&build_algebra(Family::Sp, 4).map_err(err)?).map_err(err)?;
    let v = MultiPoly::vars_of(&s.names);
    let c = |k: i64| MultiPoly::constant(&s.names, ri(k));
    let sq = v[0].clone() * v[0].clone();
    let b2 = c(2) * sq.clone() - c(2) * v[3].clone();
    let b4 = sq.clone() * sq.clone() + c(2) * sq * v[3].clone() + v[3].clone() * v[3].clone()
        - v[1].clone() * v[1].clone()
        - v[2].clone() * v[2].clone();
    let polys = s.quotient_polys().map_err(err)?;
    ensure(polys == [b2, b4], || format!("got {}, {}", polys[0], polys[1]))?;
    let mut rng = rng_from_seed(42);
    for _ in 0..50 {
        let p: Vec<Rat> = (0..4).map(|_| random_rat(&mut rng)).collect();
        let l = random_nonzero_rat(&mut rng);
        let before = slice_quotient(&s, &p).map_err(err)?;
        let after = slice_quotient(&s, &cstar_action(&s, &l, &p).map_err(err)?).map_err(err)?;
        let expect = [&before[0] * num_traits::pow(l.clone(), 4), &before[1] * num_traits::pow(l.clone(), 8)];
        ensure(after == expect, || format!("equivariance fails at lambda={l}"))?;
    }
    Ok("closed form matches, 50 equivariance samples".into())
}

fn appendix() -> Outcome {
    let square = verify_appendix(100, 42).map_err(err)?;
    ensure(square.passed(), || format!("{:?}", square.failures))?;
    let unfold = verify_unfolding_coordinates(20, 42).map_err(err)?;
    ensure(unfold.passed(), || format!("{:?}", unfold.failures))?;
    Ok(format!("{} + {} cases", square.cases_run, unfold.cases_run))
}

fn a3_c2() -> Result<WeylFolding, String> {
    WeylFolding::new(&datum("A3", 2)).map_err(err)
}

fn cameral_folding() -> Outcome {
    let rep = induced_component_check(&a3_c2()?, &[2, 3], 4, 200, 42).map_err(err)?;
    ensure(rep.passed() && rep.cases_run >= 200, || format!("{:?}", rep.failures))?;
    Ok(format!("{} cases over 200 covers", rep.cases_run))
}

fn pushforward() -> Outcome {
    let wf = a3_c2()?;
    let lattice = LatticeAction::root_lattice(&wf.homogeneous);
    let mut fibres = 0;
    let mut stabilizers: Vec<Vec<usize>> = vec![vec![]];
    stabilizers.extend(wf.folded.reflections().into_iter().map(|s| vec![s]));
    stabilizers.push(vec![wf.folded.generator(0), wf.folded.generator(1)]);
    for stab in &stabilizers {
        let f = pushforward_fiber(&wf, &lattice, stab).map_err(err)?;
        ensure(f.rank_homogeneous == f.rank_folded && f.restriction_bijective, || format!("{stab:?}: {f:?}"))?;
        fibres += 1;
    }
    let mut rng = rng_from_seed(42);
    let mut cases = 0;
    for g in [2, 3] {
        let cm = random_transversal(&wf.folded, g, 6, true, &mut rng).map_err(err)?;
        let rep = pushforward_sections_check(&wf, &cm, &lattice).map_err(err)?;
        ensure(rep.passed(), || format!("{:?}", rep.failures))?;
        cases += rep.cases_run;
    }
    Ok(format!("{fibres} fibre types, {cases} cover fibres"))
}

fn genus_formulas() -> Outcome {
    let c2 = ThreefoldFamily::new(folding_family(ty("A3"), 2).map_err(err)?).map_err(err)?;
    let g2 = ThreefoldFamily::new(folding_family(ty("D4"), 3).map_err(err)?).map_err(err)?;
    for g in 2..=5u32 {
        let got = (c2.fixed_locus_genus(g).map_err(err)?, g2.fixed_locus_genus(g).map_err(err)?);
        let want = (6 * g as u64 - 5, 8 * g as u64 - 7);
        ensure(got == want, || format!("g={g}: {got:?} vs {want:?}"))?;
    }
    Ok("6g-5 and 8g-7 for g = 2..5".into())
}

fn dimensions() -> Outcome {
    for g in 2..=4u32 {
        let k = g as u64 - 1;
        let a3 = folded_base_match(&datum("A3", 2), g).map_err(err)?;
        let cubic = dim_base(ty("A3"), g).map_err(err)?.summand_dims[1];
        ensure(
            a3.folded.total() == 10 * k
                && a3.homogeneous.total() == 15 * k
                && cubic == 5 * k
                && a3.invariant_part == a3.homogeneous.total() - cubic,
            || format!("A3, g={g}: {a3:?}"),
        )?;
        let d4 = folded_base_match(&datum("D4", 3), g).map_err(err)?;
        ensure(d4.matches() && d4.folded.total() == 14 * k, || format!("D4, g={g}: {d4:?}"))?;
    }
    let c2 = isogeny_dimensions(&datum("A3", 2), 2).map_err(err)?.dim_j2z;
    let g2 = isogeny_dimensions(&datum("D4", 3), 2).map_err(err)?.dim_j2z;
    ensure((c2, g2) == (17, 32), || format!("{c2}, {g2}"))?;
    for (h, order) in [("A3", 2), ("D4", 3)] {
        for g in 2..=6 {
            let d = isogeny_dimensions(&datum(h, order), g).map_err(err)?;
            let fib = fiber_dim(ty(&d.folded_type), g).map_err(err)?;
            ensure(d.dim_j2z > fib, || format!("{h}, g={g}: {} <= {fib}", d.dim_j2z))?;
        }
    }
    Ok("bases match for g = 2..4, J2 dims 17 and 32".into())
}

fn fiber_rank() -> Outcome {
    let wf = a3_c2()?;
    let expect = 2 * dim_base(ty("C2"), 2).map_err(err)?.total();
    let folded_lattice = LatticeAction::root_lattice(&wf.folded);
    let invariant = LatticeAction::invariant_sublattice(&wf).map_err(err)?;
    let mut rng = rng_from_seed(42);
    for _ in 0..5 {
        // transversal sections meet the discriminant in |R|(2g - 2) = 16 points
        let cm = random_transversal(&wf.folded, 2, 16, true, &mut rng).map_err(err)?;
        induce_cover(&wf, &cm).map_err(err)?;
        let a = hitchin_fiber_rank(&wf.folded, &cm, &folded_lattice).map_err(err)?;
        let b = hitchin_fiber_rank(&wf.folded, &cm, &invariant).map_err(err)?;
        ensure(a == expect && b == expect, || format!("{a} / {b}, expected {expect}"))?;
    }
    Ok(format!("rank {expect} from C2 and from the folded A3 lattice"))
}

fn verify_all() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_foldlie");
    let run = || {
        Command::new(bin)
            .args(["--format", "json", "verify", "all"])
            .env_remove("FOLDLIE_ENABLE_E6")
            .output()
            .map_err(|e| e.to_string())
    };
    let start = Instant::now();
    let first = run()?;
    let elapsed = start.elapsed();
    let second = run()?;
    ensure(first.status.code() == Some(0), || String::from_utf8_lossy(&first.stderr).into_owned())?;
    ensure(first.stdout == second.stdout, || "reports differ between runs".into())?;
    ensure(elapsed < Duration::from_secs(90), || format!("took {elapsed:?}"))?;
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).map_err(|e| e.to_string())?;
    Ok(format!("{} cases, identical reports, {:.1} s", v["cases_run"], elapsed.as_secs_f64()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("folding table", 1, folding_table),
        ("Weyl folding", 10, weyl_folding),
        ("invariant ring identity", 5, invariant_ring),
        ("fixed subalgebras", 30, fixed_subalgebras),
        ("sp4 slice quotient", 5, slice_quotient_sp4),
        ("twisted sl4 slice", 10, appendix),
        ("cameral folding", 20, cameral_folding),
        ("pushforward sections", 10, pushforward),
        ("fixed-curve genera", 1, genus_formulas),
        ("dimension bookkeeping", 1, dimensions),
        ("fibre rank cross-check", 10, fiber_rank),
        ("verify all", 180, verify_all),
    ];
    let mut failed = 0;
    for (k, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        let result = result.and_then(|detail| {
            ensure(secs < *limit as f64, || format!("{secs:.2} s exceeds {limit} s"))?;
            Ok(detail)
        });
        let (tag, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name:<26} {secs:>6.2}s  {detail}", k + 1);
    }
    println!("acceptance: {} of {} passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

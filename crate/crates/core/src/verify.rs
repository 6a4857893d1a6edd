//! Seeded verification suites, one per module, as run by `foldlie verify`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cameral::{
    hitchin_fiber_rank, induce_cover, induced_component_check, pushforward_sections_check, random_transversal,
    LatticeAction,
};
use crate::error::{Error, Result};
use crate::exactalg::{ri, MultiPoly, Poly, Rat};
use crate::hitchin::{dim_base, exponent_table_check, fiber_dim, folded_base_match, isogeny_dimensions};
use crate::liealg::{
    base_iso_check, build_algebra, diagram_check, fixed_subalgebra, lift_graph_aut, ChevalleyData, Family,
};
use crate::report::{fmt_vec, random_nonzero_rat, random_rat, rng_from_seed, CheckReport, Failure};
use crate::rootsys::{
    build_root_system, check_folding_duality, fold_coinvariants, fold_invariants, DynkinType, FoldingDatum,
};
use crate::slodowy::{
    build_subregular_slice, cstar_action, inner_outer_check, slice_quotient, verify_appendix,
    verify_unfolding_coordinates, CxyGroup,
};
use crate::unfolding::{folding_family, ThreefoldFamily};
use crate::weyl::{generate_weyl, quotient_invariants_iso_check, weyl_vector_check, WeylFolding};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Rootsys,
    Weyl,
    Liealg,
    Slodowy,
    Appendix,
    Cameral,
    Dims,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] =
        [Suite::Rootsys, Suite::Weyl, Suite::Liealg, Suite::Slodowy, Suite::Appendix, Suite::Cameral, Suite::Dims];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rootsys => "rootsys",
            Suite::Weyl => "weyl",
            Suite::Liealg => "liealg",
            Suite::Slodowy => "slodowy",
            Suite::Appendix => "appendix",
            Suite::Cameral => "cameral",
            Suite::Dims => "dims",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite '{s}'")))
    }
}

/// Per-check counts inside a suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionSummary {
    pub check: String,
    pub cases_run: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub seed: u64,
    pub samples: usize,
    pub cases_run: usize,
    pub failures: Vec<Failure>,
    pub sections: Vec<SectionSummary>,
    /// Wall-clock time; left out unless asked for so that reports are
    /// reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn from_sections(suite: Suite, seed: u64, samples: usize, reports: Vec<CheckReport>) -> Self {
        let sections = reports
            .iter()
            .map(|r| SectionSummary { check: r.check.clone(), cases_run: r.cases_run, failures: r.failures.len() })
            .collect();
        let cases_run = reports.iter().map(|r| r.cases_run).sum();
        let failures = reports.into_iter().flat_map(|r| r.failures).collect();
        VerificationReport { suite, seed, samples, cases_run, failures, sections, elapsed_ms: None }
    }
}

fn ty(s: &str) -> DynkinType {
    s.parse().expect("valid type literal")
}

fn datum(t: &str, order: usize) -> Result<FoldingDatum> {
    FoldingDatum::standard(ty(t), order)
}

/// Folding pairs `(homogeneous, order, coinvariant type, invariant type)`.
pub const FOLDING_TABLE: [(&str, usize, &str, &str); 7] = [
    ("A3", 2, "C2", "B2"),
    ("A5", 2, "C3", "B3"),
    ("A7", 2, "C4", "B4"),
    ("D4", 2, "B3", "C3"),
    ("D5", 2, "B4", "C4"),
    ("D4", 3, "G2", "G2"),
    ("E6", 2, "F4", "F4"),
];

/// Weyl-group foldings checked by restriction, with `(|W_h|, |W|)`.
pub const WEYL_TABLE: [(&str, usize, usize, usize); 4] =
    [("A3", 2, 24, 8), ("A5", 2, 720, 48), ("D4", 3, 192, 12), ("D5", 2, 1920, 384)];

pub fn rootsys_suite() -> Result<Vec<CheckReport>> {
    let mut table = CheckReport::new("rootsys.folding_table");
    let mut duality = CheckReport::new("rootsys.duality");
    for (h, order, co, inv) in FOLDING_TABLE {
        let fd = datum(h, order)?;
        let c = fold_coinvariants(&fd)?;
        let i = fold_invariants(&fd)?;
        let input = format!("{h} order {order}");
        table.case(c.kind == ty(co), input.clone(), co, c.kind.to_string());
        table.case(i.kind == ty(inv), input.clone(), inv, i.kind.to_string());
        table.case(
            c.all_roots.len() == ty(co).root_count(),
            input.clone(),
            "root count",
            c.all_roots.len().to_string(),
        );
        let d = check_folding_duality(&fd)?;
        duality.case(d.holds && d.cartan_preserved, input, "dual under (.)^v", format!("{d:?}"));
    }
    Ok(vec![table, duality])
}

pub fn weyl_suite(samples: usize, seed: u64) -> Result<Vec<CheckReport>> {
    let mut orders = CheckReport::new("weyl.folded_orders");
    let mut iso = CheckReport::new("weyl.restriction_isomorphism");
    for (h, order, nh, n) in WEYL_TABLE {
        let fd = datum(h, order)?;
        let wf = WeylFolding::new(&fd)?;
        let input = format!("{h} order {order}");
        let got = (wf.homogeneous.order(), wf.commutant.len(), wf.folded.order());
        orders.case(got == (nh, n, n), input.clone(), format!("({nh}, {n}, {n})"), format!("{got:?}"));
        iso.absorb(wf.verify_isomorphism());
        iso.case(weyl_vector_check(&fd)?, input, "Weyl vectors agree", "differ");
    }
    let quotient = quotient_invariants_iso_check(&datum("A3", 2)?, samples, seed)?;
    Ok(vec![orders, iso, quotient])
}

pub fn liealg_suite(samples: usize, seed: u64) -> Result<Vec<CheckReport>> {
    let mut chev = CheckReport::new("liealg.chevalley");
    let mut fixed = CheckReport::new("liealg.fixed_subalgebra");
    for (family, n, t, order, dim, roots) in [(Family::Sl, 4, "A3", 2, 10, 8), (Family::So, 8, "D4", 3, 14, 12)] {
        let cd = ChevalleyData::new(&build_algebra(family, n)?)?;
        chev.absorb(cd.verify());
        let aut = lift_graph_aut(&cd, &crate::rootsys::GraphAut::standard(ty(t), order)?)?;
        chev.case(aut.preserves_bracket(&cd.algebra), format!("{t} lift"), "automorphism", "bracket not preserved");
        let f = fixed_subalgebra(&cd, &aut)?;
        let got =
            (f.algebra.dimension(), f.nullspace_dim, f.rank(), f.root_functionals.len(), f.root_spaces_are_lines());
        fixed.case(
            got == (dim, dim, 2, roots, true),
            format!("{t} order {order}"),
            format!("({dim}, {dim}, 2, {roots}, true)"),
            format!("{got:?}"),
        );
    }
    let a3 = datum("A3", 2)?;
    let base = base_iso_check(&a3, samples, seed)?;
    let mut base_rep = base.report;
    base_rep.case(
        base.restricted.vanishing == vec![1],
        "A3 order 2",
        "cubic invariant vanishes",
        format!("{:?}", base.restricted.vanishing),
    );
    let tri = base_iso_check(&datum("D4", 3)?, 0, seed)?;
    let diagram = diagram_check(&a3, samples, seed)?;
    Ok(vec![chev, fixed, base_rep, tri.report, diagram])
}

/// Closed form of the adjoint quotient on the `sp4` slice, in the slice
/// parameters `(v1m, v2m, v1p, v2p)`.
pub fn sp4_quotient_closed_form(names: &[String]) -> [MultiPoly; 2] {
    let v = Poly::<Rat>::vars_of(names);
    let c = |k: i64| Poly::constant(names, ri(k));
    let (v1m, v2m, v1p, v2p) = (&v[0], &v[1], &v[2], &v[3]);
    let sq = v1m.clone() * v1m.clone();
    let b2 = c(2) * sq.clone() - c(2) * v2p.clone();
    let b4 = sq.clone() * sq.clone() + c(2) * sq * v2p.clone() + v2p.clone() * v2p.clone()
        - v2m.clone() * v2m.clone()
        - v1p.clone() * v1p.clone();
    [b2, b4]
}

pub fn slodowy_suite(samples: usize, seed: u64) -> Result<Vec<CheckReport>> {
    let s = build_subregular_slice(&build_algebra(Family::Sp, 4)?)?;
    let mut quotient = CheckReport::new("slodowy.sp4_quotient");
    let polys = s.quotient_polys()?;
    let closed = sp4_quotient_closed_form(&s.names);
    for (k, (p, q)) in polys.iter().zip(&closed).enumerate() {
        quotient.case(p == q, format!("b{}", 2 * (k + 1)), q.to_string(), p.to_string());
    }
    let weights = s.quotient_weights();
    quotient.case(weights == [4, 8], "base weights", "[4, 8]", format!("{weights:?}"));
    let mut rng = rng_from_seed(seed);
    for _ in 0..samples {
        let p: Vec<Rat> = (0..4).map(|_| random_rat(&mut rng)).collect();
        let lambda = random_nonzero_rat(&mut rng);
        let before = slice_quotient(&s, &p)?;
        let after = slice_quotient(&s, &cstar_action(&s, &lambda, &p)?)?;
        let expect: Vec<Rat> =
            before.iter().zip(&weights).map(|(b, &w)| b * num_traits::pow(lambda.clone(), w as usize)).collect();
        quotient.case(after == expect, format!("lambda={lambda} p={}", fmt_vec(&p)), fmt_vec(&expect), fmt_vec(&after));
    }
    let mut out = vec![quotient, s.verify(samples, seed)?];
    for n in 3..=4 {
        out.push(build_subregular_slice(&build_algebra(Family::Sl, n)?)?.verify(samples.min(5), seed)?);
    }
    out.push(CxyGroup::block_orthogonal().verify(&s.triple, samples, seed)?);
    out.push(inner_outer_check()?);
    Ok(out)
}

pub fn appendix_suite(samples: usize, seed: u64) -> Result<Vec<CheckReport>> {
    Ok(vec![verify_appendix(samples, seed)?, verify_unfolding_coordinates(samples, seed)?])
}

/// Zeros of the discriminant, a section of `K^{|R|}`: `|R|(2g − 2)`.
pub fn forced_branch_count(t: DynkinType, g: u32) -> usize {
    t.root_count() * (2 * g as usize - 2)
}

pub fn cameral_suite(samples: usize, seed: u64) -> Result<Vec<CheckReport>> {
    let wf = WeylFolding::new(&datum("A3", 2)?)?;
    let components = induced_component_check(&wf, &[2, 3], 4, samples, seed)?;
    let mut rng = rng_from_seed(seed ^ 0x5eed);
    let lattice = LatticeAction::root_lattice(&wf.homogeneous);
    let mut push = CheckReport::new("cameral.pushforward_sections");
    let mut ranks = CheckReport::new("cameral.fiber_rank");
    let inv = LatticeAction::invariant_sublattice(&wf)?;
    let folded_lattice = LatticeAction::root_lattice(&wf.folded);
    let expect = 2 * dim_base(ty("C2"), 2)?.total();
    for _ in 0..samples.clamp(1, 5) {
        let cm = random_transversal(&wf.folded, 2, forced_branch_count(ty("C2"), 2), true, &mut rng)?;
        push.absorb(pushforward_sections_check(&wf, &cm, &lattice)?);
        let folded = hitchin_fiber_rank(&wf.folded, &cm, &folded_lattice)?;
        let unfolded = hitchin_fiber_rank(&wf.folded, &cm, &inv)?;
        induce_cover(&wf, &cm)?;
        ranks.case(
            folded == expect && unfolded == expect,
            "C2, g=2",
            format!("{expect} on both sides"),
            format!("{folded} / {unfolded}"),
        );
    }
    Ok(vec![components, push, ranks])
}

pub fn dims_suite() -> Result<Vec<CheckReport>> {
    let mut base = CheckReport::new("hitchin.dim_base");
    for (t, g, total) in [("C2", 2, 10), ("A3", 2, 15), ("G2", 2, 14)] {
        let got = dim_base(ty(t), g)?.total();
        base.case(got == total, format!("{t}, g={g}"), total.to_string(), got.to_string());
    }
    let mut folded = CheckReport::new("hitchin.folded_base_match");
    for (h, order) in [("A3", 2), ("A5", 2), ("D4", 2), ("D5", 2), ("D4", 3), ("E6", 2)] {
        for g in 2..=4 {
            let m = folded_base_match(&datum(h, order)?, g)?;
            folded.case(
                m.matches(),
                format!("{h} order {order}, g={g}"),
                m.folded.total().to_string(),
                m.invariant_part.to_string(),
            );
        }
    }
    let mut genus = CheckReport::new("unfolding.fixed_locus_genus");
    let c2 = ThreefoldFamily::new(folding_family(ty("A3"), 2)?)?;
    let g2 = ThreefoldFamily::new(folding_family(ty("D4"), 3)?)?;
    for g in 2..=5u32 {
        let (a, b) = (c2.fixed_locus_genus(g)?, g2.fixed_locus_genus(g)?);
        genus.case(a == 6 * g as u64 - 5, format!("C2, g={g}"), (6 * g - 5).to_string(), a.to_string());
        genus.case(b == 8 * g as u64 - 7, format!("G2, g={g}"), (8 * g - 7).to_string(), b.to_string());
    }
    let mut iso = CheckReport::new("hitchin.isogeny_dimensions");
    for (h, order, expect) in [("A3", 2, 17), ("D4", 3, 32)] {
        let d = isogeny_dimensions(&datum(h, order)?, 2)?;
        iso.case(d.dim_j2z == expect, format!("{h} order {order}, g=2"), expect.to_string(), d.dim_j2z.to_string());
        for g in 2..=4 {
            let d = isogeny_dimensions(&datum(h, order)?, g)?;
            let fib = fiber_dim(d.folded_type.parse()?, g)?;
            iso.case(d.dim_j2z > fib, format!("{h} order {order}, g={g}"), format!("> {fib}"), d.dim_j2z.to_string());
        }
    }
    let names = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"];
    let groups = names.iter().map(|t| generate_weyl(&build_root_system(ty(t))?)).collect::<Result<Vec<_>>>()?;
    let pairs: Vec<_> = names.iter().map(|t| ty(t)).zip(groups.iter()).collect();
    Ok(vec![base, folded, genus, iso, exponent_table_check(&pairs)?])
}

fn suite_reports(suite: Suite, samples: usize, seed: u64) -> Result<Vec<CheckReport>> {
    match suite {
        Suite::Rootsys => rootsys_suite(),
        Suite::Weyl => weyl_suite(samples, seed),
        Suite::Liealg => liealg_suite(samples, seed),
        Suite::Slodowy => slodowy_suite(samples, seed),
        Suite::Appendix => appendix_suite(samples, seed),
        Suite::Cameral => cameral_suite(samples, seed),
        Suite::Dims => dims_suite(),
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                out.extend(suite_reports(s, samples, seed)?);
            }
            Ok(out)
        }
    }
}

/// Runs a suite; the result depends only on `(suite, samples, seed)`.
pub fn run_suite(suite: Suite, samples: usize, seed: u64) -> Result<VerificationReport> {
    Ok(VerificationReport::from_sections(suite, seed, samples, suite_reports(suite, samples, seed)?))
}

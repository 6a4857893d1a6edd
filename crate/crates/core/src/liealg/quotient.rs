//! Restriction of adjoint-quotient generators to the fixed Cartan
//! subalgebra, and comparison with the folded algebra.

use super::{build_algebra, find_embedding, fixed_subalgebra, lift_graph_aut, matmul_generic, ChevalleyData, Family};
use super::{FoldedEmbedding, MatrixLieAlgebra};
use crate::error::{Error, Result};
use crate::exactalg::{det_generic, Echelon, MultiPoly, Rat, RatMatrix, Ring};
use crate::report::{fmt_vec, random_rat, rng_from_seed, CheckReport};
use crate::rootsys::{fold_coinvariants, fold_invariants, DynkinType, FoldingDatum, Series};
use crate::weyl::WeylGroup;
use num_traits::Zero;
use std::collections::BTreeSet;

/// Pfaffian of an alternating matrix by expansion along the first row.
pub fn pfaffian<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    let one = m.first().map(|r| r[0].one_like());
    if n == 0 {
        panic!("pfaffian of an empty matrix");
    }
    if n % 2 == 1 {
        return m[0][0].zero_like();
    }
    pf_rec(m, &(0..n).collect::<Vec<_>>(), one.unwrap())
}

fn pf_rec<R: Ring>(m: &[Vec<R>], idx: &[usize], one: R) -> R {
    if idx.is_empty() {
        return one;
    }
    let i = idx[0];
    let mut acc = one.zero_like();
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        if m[i][j].is_zero_elem() {
            continue;
        }
        let rest: Vec<usize> = idx.iter().copied().filter(|&k| k != i && k != j).collect();
        let t = m[i][j].clone() * pf_rec(m, &rest, one.clone());
        acc = if pos % 2 == 1 { acc + t } else { acc - t };
    }
    acc
}

/// Matrix model of the homogeneous (simply-laced) algebra of a type.
pub fn homogeneous_algebra(t: DynkinType) -> Result<MatrixLieAlgebra> {
    match t.series {
        Series::A => build_algebra(Family::Sl, t.rank + 1),
        Series::D => build_algebra(Family::So, 2 * t.rank),
        Series::B => build_algebra(Family::So, 2 * t.rank + 1),
        Series::C => build_algebra(Family::Sp, 2 * t.rank),
        _ => Err(Error::Unsupported(format!("no matrix model for {t}"))),
    }
}

/// Generators of `ℂ[𝔱_h]^{W_h}` restricted to `𝔱 = 𝔱_h^𝐂`, as polynomials
/// in the coordinates `u_O` of `Σ_O u_O Σ_{i∈O} α_i^∨`.
#[derive(Clone, Debug)]
pub struct RestrictedInvariants {
    pub vars: Vec<String>,
    pub polys: Vec<MultiPoly>,
    pub degrees: Vec<u32>,
    /// Generators restricting to zero.
    pub vanishing: Vec<usize>,
    /// Generators whose restriction is a polynomial in lower ones.
    pub dependent: Vec<usize>,
    pub surviving: Vec<usize>,
}

impl RestrictedInvariants {
    pub fn surviving_degrees(&self) -> Vec<u32> {
        self.surviving.iter().map(|&k| self.degrees[k]).collect()
    }
}

struct FoldContext {
    algebra: MatrixLieAlgebra,
    cd: ChevalleyData,
    /// `h_O = Σ_{i∈O} h_i`, one per orbit of simple roots.
    orbit_coroots: Vec<RatMatrix>,
}

fn fold_context(fd: &FoldingDatum) -> Result<FoldContext> {
    let algebra = homogeneous_algebra(fd.homogeneous.kind)?;
    let cd = ChevalleyData::new(&algebra)?;
    let orbit_coroots = fd
        .aut
        .orbits()
        .iter()
        .map(|o| o.iter().fold(RatMatrix::zeros(algebra.size, algebra.size), |acc, &i| &acc + &cd.coroot_vectors[i]))
        .collect();
    Ok(FoldContext { algebra, cd, orbit_coroots })
}

fn var_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("u{i}")).collect()
}

fn const_poly(vars: &[String], q: &Rat) -> MultiPoly {
    MultiPoly::constant(vars, q.clone())
}

/// `Σ_O u_O h_O` as a symbolic matrix.
fn symbolic_point(ctx: &FoldContext, vars: &[String]) -> Vec<Vec<MultiPoly>> {
    let n = ctx.algebra.size;
    let mut m = vec![vec![MultiPoly::zero(vars); n]; n];
    for (k, h) in ctx.orbit_coroots.iter().enumerate() {
        let u = MultiPoly::var(vars, k);
        for i in 0..n {
            for j in 0..n {
                if !h[(i, j)].is_zero() {
                    m[i][j] = m[i][j].clone() + u.scale(&h[(i, j)]);
                }
            }
        }
    }
    m
}

fn numeric_point(ctx: &FoldContext, u: &[Rat]) -> RatMatrix {
    let n = ctx.algebra.size;
    ctx.orbit_coroots.iter().zip(u).fold(RatMatrix::zeros(n, n), |acc, (h, x)| &acc + &h.scale(x))
}

/// Monomials `Π g_j^{e_j}` in the given polynomials of weighted degree `d`.
fn products_of_degree(gens: &[(MultiPoly, u32)], d: u32, vars: &[String]) -> Vec<MultiPoly> {
    fn rec(gens: &[(MultiPoly, u32)], d: u32, acc: MultiPoly, out: &mut Vec<MultiPoly>) {
        if d == 0 {
            out.push(acc);
            return;
        }
        let Some(((g, w), rest)) = gens.split_first() else { return };
        let mut cur = acc;
        let mut left = d;
        loop {
            rec(rest, left, cur.clone(), out);
            if left < *w {
                break;
            }
            left -= w;
            cur = cur * g.clone();
        }
    }
    let mut out = Vec::new();
    rec(gens, d, MultiPoly::constant(vars, Rat::from_integer(1.into())), &mut out);
    out
}

/// `p` lies in the linear span of `others`.
fn in_span(p: &MultiPoly, others: &[MultiPoly]) -> bool {
    let keys: BTreeSet<Vec<u32>> =
        others.iter().chain(std::iter::once(p)).flat_map(|q| q.terms().map(|(e, _)| e.clone())).collect();
    let keys: Vec<Vec<u32>> = keys.into_iter().collect();
    let vec_of = |q: &MultiPoly| keys.iter().map(|e| q.coeff(e)).collect::<Vec<Rat>>();
    let mut ech = Echelon::new();
    for q in others {
        ech.insert(&vec_of(q));
    }
    ech.contains(&vec_of(p))
}

fn restricted_invariants_in(ctx: &FoldContext, fd: &FoldingDatum) -> Result<RestrictedInvariants> {
    let vars = var_names(fd.aut.orbits().len());
    let point = symbolic_point(ctx, &vars);
    let polys = ctx.algebra.invariants_generic(&point, |q| const_poly(&vars, q))?;
    let degrees = ctx.algebra.invariant_degrees();
    let (mut vanishing, mut dependent, mut surviving) = (Vec::new(), Vec::new(), Vec::new());
    for k in 0..polys.len() {
        if polys[k].is_zero() {
            vanishing.push(k);
            continue;
        }
        let lower: Vec<(MultiPoly, u32)> = surviving.iter().map(|&j: &usize| (polys[j].clone(), degrees[j])).collect();
        if in_span(&polys[k], &products_of_degree(&lower, degrees[k], &vars)) {
            dependent.push(k);
        } else {
            surviving.push(k);
        }
    }
    Ok(RestrictedInvariants { vars, polys, degrees, vanishing, dependent, surviving })
}

/// Restricted generators for a folding datum with a matrix model.
pub fn restricted_invariants(fd: &FoldingDatum) -> Result<RestrictedInvariants> {
    restricted_invariants_in(&fold_context(fd)?, fd)
}

/// Degrees of the generators of `ℂ[𝔱_h]^{W_h}` that survive restriction.
pub fn surviving_degrees(fd: &FoldingDatum) -> Result<Vec<u32>> {
    Ok(restricted_invariants(fd)?.surviving_degrees())
}

/// Result of [`base_iso_check`].
#[derive(Clone, Debug)]
pub struct BaseIsoReport {
    pub report: CheckReport,
    pub restricted: RestrictedInvariants,
    pub folded_type: DynkinType,
}

fn embedding_for(ctx: &FoldContext, fd: &FoldingDatum) -> Result<Option<FoldedEmbedding>> {
    if fd.aut.is_trivial() {
        return Ok(Some(FoldedEmbedding::identity(&ctx.algebra)));
    }
    let aut = lift_graph_aut(&ctx.cd, &fd.aut)?;
    let fixed = fixed_subalgebra(&ctx.cd, &aut)?;
    match find_embedding(&fixed.algebra, ctx.algebra.defining_form.as_ref()) {
        Ok(e) => Ok(Some(e)),
        Err(Error::Unsupported(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Compare `𝔱/W` with `(𝔱_h/W_h)^𝐂` through the invariant generators.
///
/// Symbolically: generators restrict to zero, to polynomials in lower
/// ones, or survive; the surviving degrees must be those of the folded
/// type, and where the fixed algebra is realized as a classical algebra the
/// surviving restrictions must equal that algebra's generators at the image
/// point. Numerically: the same comparison at `samples` random points.
pub fn base_iso_check(fd: &FoldingDatum, samples: usize, seed: u64) -> Result<BaseIsoReport> {
    let ctx = fold_context(fd)?;
    let restricted = restricted_invariants_in(&ctx, fd)?;
    let folded_type = fold_coinvariants(fd)?.kind;
    let mut rep = CheckReport::new(format!("base isomorphism for {} -> {}", fd.homogeneous.kind, folded_type));

    let surv = restricted.surviving_degrees();
    rep.case(
        surv == folded_type.degrees(),
        "surviving degrees",
        format!("{:?}", folded_type.degrees()),
        format!("{surv:?}"),
    );

    let vars = &restricted.vars;
    let emb = embedding_for(&ctx, fd)?;
    if let Some(emb) = &emb {
        let point = symbolic_point(&ctx, vars);
        let lift = |m: &RatMatrix| -> Vec<Vec<MultiPoly>> {
            (0..m.rows()).map(|i| (0..m.cols()).map(|j| const_poly(vars, &m[(i, j)])).collect()).collect()
        };
        let image = matmul_generic(&matmul_generic(&lift(&emb.left), &point), &lift(&emb.right));
        let folded = emb.target.invariants_generic(&image, |q| const_poly(vars, q))?;
        let lhs: Vec<&MultiPoly> = restricted.surviving.iter().map(|&k| &restricted.polys[k]).collect();
        let ok = lhs.len() == folded.len() && lhs.iter().zip(&folded).all(|(a, b)| *a == b);
        rep.case(
            ok,
            "symbolic restriction",
            folded.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "),
            lhs.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "),
        );
    } else {
        // no classical model of the folded algebra: check W-invariance and
        // algebraic independence of the surviving restrictions instead
        let w = WeylGroup::of_roots(&fold_invariants(fd)?, crate::weyl::budget_from_env())?;
        for g in w.generators() {
            let images: Vec<MultiPoly> = (0..vars.len())
                .map(|q| {
                    (0..vars.len())
                        .fold(MultiPoly::zero(vars), |acc, o| acc + MultiPoly::var(vars, o).scale(&g[(q, o)]))
                })
                .collect();
            for &k in &restricted.surviving {
                let moved = restricted.polys[k].substitute(&images)?;
                rep.case(
                    moved == restricted.polys[k],
                    format!("generator {k} under {g:?}"),
                    "invariant",
                    moved.to_string(),
                );
            }
        }
        let jac: Vec<Vec<MultiPoly>> = restricted
            .surviving
            .iter()
            .map(|&k| (0..vars.len()).map(|i| restricted.polys[k].derivative(i)).collect())
            .collect();
        let square = jac.len() == vars.len();
        let det_nonzero = square && !det_generic(&jac).is_zero();
        rep.case(det_nonzero, "Jacobian of surviving generators", "nonzero", format!("{det_nonzero}"));
    }

    let mut rng = rng_from_seed(seed);
    for _ in 0..samples {
        let u: Vec<Rat> = (0..vars.len()).map(|_| random_rat(&mut rng)).collect();
        let t = numeric_point(&ctx, &u);
        let vals = ctx.algebra.adjoint_quotient(&t)?.values;
        let zero_ok = restricted.vanishing.iter().all(|&k| vals[k].is_zero());
        rep.case(zero_ok, format!("u={}", fmt_vec(&u)), "vanishing generators are 0", fmt_vec(&vals));
        let sym: Vec<Rat> = restricted.polys.iter().map(|p| p.eval(&u)).collect::<Result<_>>()?;
        rep.case(sym == vals, format!("u={}", fmt_vec(&u)), fmt_vec(&vals), fmt_vec(&sym));
        if let Some(emb) = &emb {
            let folded = emb.target.adjoint_quotient(&emb.map(&t))?.values;
            let surv: Vec<Rat> = restricted.surviving.iter().map(|&k| vals[k].clone()).collect();
            rep.case(surv == folded, format!("u={}", fmt_vec(&u)), fmt_vec(&folded), fmt_vec(&surv));
        }
    }
    Ok(BaseIsoReport { report: rep, restricted, folded_type })
}

/// The square `𝔤 → 𝔤_h → 𝔱_h/W_h` versus `𝔤 → 𝔱/W → 𝔱_h/W_h` at random
/// elements of the fixed algebra.
pub fn diagram_check(fd: &FoldingDatum, samples: usize, seed: u64) -> Result<CheckReport> {
    let ctx = fold_context(fd)?;
    let restricted = restricted_invariants_in(&ctx, fd)?;
    let aut =
        if fd.aut.is_trivial() { super::LieAut::identity(&ctx.algebra) } else { lift_graph_aut(&ctx.cd, &fd.aut)? };
    let fixed = fixed_subalgebra(&ctx.cd, &aut)?;
    let emb = embedding_for(&ctx, fd)?
        .ok_or_else(|| Error::Unsupported(format!("no classical model for the folding of {}", fd.homogeneous.kind)))?;
    let mut rep = CheckReport::new(format!("adjoint quotient square for {}", fd.homogeneous.kind));
    let mut rng = rng_from_seed(seed);
    for _ in 0..samples {
        let c: Vec<Rat> = (0..fixed.algebra.dimension()).map(|_| random_rat(&mut rng)).collect();
        let g = fixed.algebra.from_coords(&c);
        let vals = ctx.algebra.adjoint_quotient(&g)?.values;
        let folded = emb.target.adjoint_quotient(&emb.map(&g))?.values;
        let surv: Vec<Rat> = restricted.surviving.iter().map(|&k| vals[k].clone()).collect();
        let zero_ok = restricted.vanishing.iter().all(|&k| vals[k].is_zero());
        rep.case(surv == folded && zero_ok, format!("coords={}", fmt_vec(&c)), fmt_vec(&folded), fmt_vec(&vals));
    }
    Ok(rep)
}

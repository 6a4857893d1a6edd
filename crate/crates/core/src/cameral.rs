//! Cameral covers described by monodromy alone.
//!
//! A Galois `W`-cover of a genus-`g` curve branched over `k` points is a
//! tuple `(a_1, b_1, …, a_g, b_g, c_1, …, c_k)` in `W` with
//! `∏[a_i, b_i] ∏ c_k = 1`. The fibre is `W` with the monodromy acting by
//! left translation; components are orbits of the monodromy group and
//! their genera follow from Riemann–Hurwitz.
//!
//! Folding enters through [`induce_cover`], which views a `W`-cover as a
//! `W_h`-cover along the embedding `W ≅ W_h^𝐂 ⊂ W_h`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Rat, RatMatrix};
use crate::report::{rng_from_seed, CheckReport};
use crate::weyl::{WeylFolding, WeylGroup};

/// Genus of a degree-`sheets` cover of a genus-`base_genus` curve with total
/// ramification `Σ (e_p − 1)`.
pub fn riemann_hurwitz_genus(sheets: u64, base_genus: u64, ramification: u64) -> Result<u64> {
    // 2g̃ − 2 = n(2g − 2) + R
    let twice = sheets as i128 * (2 * base_genus as i128 - 2) + ramification as i128 + 2;
    if sheets == 0 || twice < 0 || twice % 2 != 0 {
        return Err(Error::Precondition(format!(
            "no cover of degree {sheets} over genus {base_genus} with ramification {ramification}"
        )));
    }
    Ok((twice / 2) as u64)
}

/// Monodromy data of a `W`-cover; entries are element indices of a
/// [`WeylGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverMonodromy {
    pub base_genus: u32,
    /// `(a_i, b_i)` for each handle.
    pub handles: Vec<(usize, usize)>,
    /// Local monodromy `c_k` at each branch point.
    pub branches: Vec<usize>,
}

impl CoverMonodromy {
    pub fn unramified(handles: Vec<(usize, usize)>) -> Self {
        CoverMonodromy { base_genus: handles.len() as u32, handles, branches: Vec::new() }
    }

    /// All monodromy images.
    pub fn images(&self) -> Vec<usize> {
        self.handles.iter().flat_map(|&(a, b)| [a, b]).chain(self.branches.iter().copied()).collect()
    }

    /// `∏[a_i, b_i] ∏ c_k`.
    pub fn relation_product(&self, w: &WeylGroup) -> usize {
        let mut acc = w.identity();
        for &(a, b) in &self.handles {
            let comm = w.product(&[a, b, w.inverse(a), w.inverse(b)]);
            acc = w.mul(acc, comm);
        }
        self.branches.iter().fold(acc, |acc, &c| w.mul(acc, c))
    }

    /// Every branch image is a reflection.
    pub fn is_transversal(&self, w: &WeylGroup) -> bool {
        self.branches.iter().all(|&c| w.is_reflection(c))
    }
}

/// Checks the handle count and the surface-group relation.
pub fn validate_monodromy(w: &WeylGroup, cm: &CoverMonodromy) -> Result<()> {
    if cm.handles.len() != cm.base_genus as usize {
        return Err(Error::DimensionMismatch { expected: cm.base_genus as usize, got: cm.handles.len() });
    }
    if let Some(&bad) = cm.images().iter().find(|&&i| i >= w.order()) {
        return Err(Error::OutOfRange { k: bad, n: w.order() });
    }
    let r = cm.relation_product(w);
    if r != w.identity() {
        return Err(Error::RelationViolated(w.word(r).to_vec()));
    }
    Ok(())
}

/// Subgroup generated by `gens`, as a sorted list of indices.
pub fn generated_subgroup(w: &WeylGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen: HashSet<usize> = HashSet::from([w.identity()]);
    let mut queue = VecDeque::from([w.identity()]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = w.mul(g, x);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<usize> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Component data of a cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverGeometry {
    pub sheets: usize,
    pub component_count: usize,
    pub component_genera: Vec<u64>,
    pub euler_characteristic: i64,
    /// Cycle lengths of each branch monodromy on the whole fibre.
    pub ramification: Vec<Vec<usize>>,
}

impl CoverGeometry {
    /// `1 − χ/2`: the genus when connected.
    pub fn total_genus(&self) -> i64 {
        1 - self.euler_characteristic / 2
    }
}

fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut j = s;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Geometry of a cover with fibre `0..n` and monodromy permutations
/// (handles first, then branch points).
pub fn permutation_cover_geometry(
    base_genus: u32,
    n: usize,
    handle_perms: &[Vec<usize>],
    branch_perms: &[Vec<usize>],
) -> Result<CoverGeometry> {
    // orbits of the monodromy group
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([s]);
        comp[s] = count;
        while let Some(x) = queue.pop_front() {
            for p in handle_perms.iter().chain(branch_perms) {
                let y = p[x];
                if comp[y] == usize::MAX {
                    comp[y] = count;
                    queue.push_back(y);
                }
            }
        }
        count += 1;
    }
    let mut genera = Vec::with_capacity(count);
    for c in 0..count {
        let members: Vec<usize> = (0..n).filter(|&x| comp[x] == c).collect();
        let d = members.len() as u64;
        let ram: u64 = branch_perms
            .iter()
            .map(|p| {
                let restricted: Vec<usize> =
                    members.iter().map(|&x| members.binary_search(&p[x]).expect("orbit is closed")).collect();
                d - cycle_type(&restricted).len() as u64
            })
            .sum();
        genera.push(riemann_hurwitz_genus(d, base_genus as u64, ram)?);
    }
    let chi = genera.iter().map(|&g| 2 - 2 * g as i64).sum();
    Ok(CoverGeometry {
        sheets: n,
        component_count: count,
        component_genera: genera,
        euler_characteristic: chi,
        ramification: branch_perms.iter().map(|p| cycle_type(p)).collect(),
    })
}

fn left_translation(w: &WeylGroup, g: usize) -> Vec<usize> {
    (0..w.order()).map(|x| w.mul(g, x)).collect()
}

/// Geometry of the Galois cover with fibre `W`.
pub fn cover_geometry(w: &WeylGroup, cm: &CoverMonodromy) -> Result<CoverGeometry> {
    validate_monodromy(w, cm)?;
    let hp: Vec<Vec<usize>> =
        cm.handles.iter().flat_map(|&(a, b)| [left_translation(w, a), left_translation(w, b)]).collect();
    let bp: Vec<Vec<usize>> = cm.branches.iter().map(|&c| left_translation(w, c)).collect();
    permutation_cover_geometry(cm.base_genus, w.order(), &hp, &bp)
}

/// Random transversal monodromy with `branch_count` reflections, the last
/// one solving the relation. With `surjective`, retries until the images
/// generate `W`.
pub fn random_transversal<R: Rng>(
    w: &WeylGroup,
    genus: u32,
    branch_count: usize,
    surjective: bool,
    rng: &mut R,
) -> Result<CoverMonodromy> {
    if branch_count % 2 == 1 {
        return Err(Error::Precondition("an odd number of reflections cannot satisfy the relation".into()));
    }
    let refl = w.reflections();
    for _ in 0..10_000 {
        let handles: Vec<(usize, usize)> =
            (0..genus).map(|_| (rng.gen_range(0..w.order()), rng.gen_range(0..w.order()))).collect();
        let mut cm = CoverMonodromy { base_genus: genus, handles, branches: Vec::with_capacity(branch_count) };
        if branch_count > 0 {
            for _ in 0..branch_count - 1 {
                cm.branches.push(*refl.choose(rng).expect("W has reflections"));
            }
            let last = w.inverse(cm.relation_product(w));
            if !w.is_reflection(last) {
                continue;
            }
            cm.branches.push(last);
        } else if cm.relation_product(w) != w.identity() {
            continue;
        }
        if surjective && generated_subgroup(w, &cm.images()).len() != w.order() {
            continue;
        }
        return Ok(cm);
    }
    Err(Error::Precondition("no transversal monodromy found".into()))
}

/// The same monodromy viewed in `W_h`.
pub fn induce_cover(wf: &WeylFolding, cm: &CoverMonodromy) -> Result<CoverMonodromy> {
    validate_monodromy(&wf.folded, cm)?;
    let emb = |x: usize| wf.embed(x).ok_or_else(|| Error::Precondition(format!("element {x} has no lift")));
    let handles = cm.handles.iter().map(|&(a, b)| Ok((emb(a)?, emb(b)?))).collect::<Result<_>>()?;
    let branches = cm.branches.iter().map(|&c| emb(c)).collect::<Result<_>>()?;
    let out = CoverMonodromy { base_genus: cm.base_genus, handles, branches };
    validate_monodromy(&wf.homogeneous, &out)?;
    Ok(out)
}

/// Homogeneous roots whose orbit sum is `beta`, as one orbit.
fn orbit_over(wf: &WeylFolding, beta: &[Rat]) -> Option<Vec<Vec<Rat>>> {
    let fd = &wf.datum;
    fd.homogeneous.all_roots.iter().find(|g| fd.orbit_sum(g) == beta).map(|g| fd.orbit(g))
}

/// Local monodromies of the induced cover are the products `∏_{γ∈O} s_γ`
/// over the orbit lying over the folded root; the reflections in each
/// product commute.
pub fn induced_local_monodromy_check(wf: &WeylFolding, cm: &CoverMonodromy) -> Result<CheckReport> {
    let mut rep = CheckReport::new("cameral.induced_local_monodromy");
    let induced = induce_cover(wf, cm)?;
    let wh = &wf.homogeneous;
    for (&c, &ch) in cm.branches.iter().zip(&induced.branches) {
        let beta = wf
            .folded
            .roots
            .all_roots
            .iter()
            .find(|b| wf.folded.reflection(b) == Some(c))
            .ok_or_else(|| Error::Precondition(format!("branch image {c} is not a reflection")))?;
        let orbit = orbit_over(wf, beta).ok_or_else(|| Error::Precondition("no orbit over a folded root".into()))?;
        let refl: Vec<usize> = orbit.iter().map(|g| wh.reflection(g).expect("homogeneous root")).collect();
        let commute = refl.iter().all(|&x| refl.iter().all(|&y| wh.mul(x, y) == wh.mul(y, x)));
        let prod = wh.product(&refl);
        rep.case(prod == ch && commute, format!("branch {c}"), format!("{ch}"), format!("{prod}, commuting={commute}"));
    }
    Ok(rep)
}

/// Components of the induced cover, and the check that each one is
/// isomorphic to the component of the original through the identity,
/// via `h ↦ ι(h)·r` for an orbit representative `r`.
#[derive(Clone, Debug, Serialize)]
pub struct InducedCover {
    pub geometry: CoverGeometry,
    pub original: CoverGeometry,
    pub index: usize,
    pub components_match: bool,
}

pub fn induced_cover_report(wf: &WeylFolding, cm: &CoverMonodromy) -> Result<InducedCover> {
    let induced = induce_cover(wf, cm)?;
    let wh = &wf.homogeneous;
    let geometry = cover_geometry(wh, &induced)?;
    let original = cover_geometry(&wf.folded, cm)?;
    let h = generated_subgroup(&wf.folded, &cm.images());
    let h_emb: Vec<usize> = h.iter().map(|&x| wf.embed(x).expect("lift")).collect();
    let gens = induced.images();
    let mut covered: HashSet<usize> = HashSet::new();
    let mut ok = true;
    for r in 0..wh.order() {
        if covered.contains(&r) {
            continue;
        }
        let image: Vec<usize> = h_emb.iter().map(|&x| wh.mul(x, r)).collect();
        let distinct: BTreeSet<usize> = image.iter().copied().collect();
        ok &= distinct.len() == h.len();
        // equivariance: g·(ι(x)·r) = ι(g x)·r on every generator
        for (&gi, &g) in gens.iter().zip(&cm.images()) {
            for (k, &x) in h.iter().enumerate() {
                let gx = wf.folded.mul(g, x);
                let pos = h.binary_search(&gx).expect("subgroup is closed");
                ok &= wh.mul(gi, image[k]) == image[pos];
            }
        }
        covered.extend(distinct);
    }
    ok &= geometry.component_genera.iter().all(|g| original.component_genera.contains(g));
    Ok(InducedCover { index: wh.order() / wf.folded.order(), geometry, original, components_match: ok })
}

/// Integer matrices of a group acting on a lattice `ℤ^r`, indexed like the
/// group elements.
#[derive(Clone, Debug)]
pub struct LatticeAction {
    pub rank: usize,
    pub matrices: Vec<RatMatrix>,
}

impl LatticeAction {
    /// The root lattice in simple-root coordinates.
    pub fn root_lattice(w: &WeylGroup) -> Self {
        LatticeAction { rank: w.rank(), matrices: (0..w.order()).map(|i| w.matrix(i)).collect() }
    }

    pub fn zero(w: &WeylGroup) -> Self {
        LatticeAction { rank: 0, matrices: vec![RatMatrix::zeros(0, 0); w.order()] }
    }

    /// `Λ_h^𝐂` (orbit sums of simple roots) with `W` acting through its
    /// lift to `W_h`.
    pub fn invariant_sublattice(wf: &WeylFolding) -> Result<Self> {
        let orbits = wf.datum.aut.orbits();
        let n = wf.homogeneous.rank();
        let basis: Vec<Vec<Rat>> = orbits
            .iter()
            .map(|o| (0..n).map(|i| if o.contains(&i) { Rat::from_integer(1.into()) } else { Rat::zero() }).collect())
            .collect();
        let b = RatMatrix::from_columns(&basis);
        let mut matrices = Vec::with_capacity(wf.folded.order());
        for x in 0..wf.folded.order() {
            let m = wf.homogeneous.matrix(wf.embed(x).ok_or_else(|| Error::Precondition("missing lift".into()))?);
            let cols: Vec<Vec<Rat>> = basis
                .iter()
                .map(|v| b.solve(&m.mul_vec(v)).ok_or_else(|| Error::Precondition("sublattice not preserved".into())))
                .collect::<Result<_>>()?;
            matrices.push(RatMatrix::from_columns(&cols));
        }
        Ok(LatticeAction { rank: orbits.len(), matrices })
    }

    /// Rank of the sublattice fixed by every element of `gens`.
    pub fn invariant_rank(&self, gens: &[usize]) -> usize {
        if self.rank == 0 {
            return 0;
        }
        let id = RatMatrix::identity(self.rank);
        let rows: Vec<Vec<Rat>> = gens
            .iter()
            .flat_map(|&g| {
                let d = &self.matrices[g] - &id;
                (0..self.rank).map(move |i| d.row(i))
            })
            .collect();
        if rows.is_empty() {
            return self.rank;
        }
        self.rank - RatMatrix::from_rows(rows).rank()
    }
}

/// `rank H¹(Σ, (p_*Λ)^W)` by Euler characteristic:
/// `−[(2 − 2g)·r₀ − Σ_k (r₀ − r_k)]` with `r₀ = rank Λ` and `r_k` the rank
/// fixed by `c_k`. Refuses when global invariants survive.
pub fn hitchin_fiber_rank(w: &WeylGroup, cm: &CoverMonodromy, lattice: &LatticeAction) -> Result<u64> {
    validate_monodromy(w, cm)?;
    let h0 = lattice.invariant_rank(&cm.images());
    if h0 != 0 {
        return Err(Error::NonvanishingH0(h0));
    }
    let r0 = lattice.rank as i64;
    let drop: i64 = cm.branches.iter().map(|&c| r0 - lattice.invariant_rank(&[c]) as i64).sum();
    let chi = (2 - 2 * cm.base_genus as i64) * r0 - drop;
    Ok((-chi) as u64)
}

/// Ranks on both sides of `p_{h*}Λ^{W_h} ≅ p_*Λ^W` at one fibre.
#[derive(Clone, Debug, Serialize)]
pub struct PushforwardFiber {
    pub stabilizer: Vec<usize>,
    pub rank_homogeneous: usize,
    pub rank_folded: usize,
    pub restriction_bijective: bool,
}

/// Equivariant maps `F → Λ` from a `G`-set given by permutations of the
/// generators, as a basis of the solution space (length `|F|·rank`).
fn equivariant_maps(points: usize, gen_perms: &[Vec<usize>], gen_mats: &[RatMatrix], rank: usize) -> Vec<Vec<Rat>> {
    if rank == 0 {
        return Vec::new();
    }
    let cols = points * rank;
    let mut rows = Vec::new();
    // f(g·p) − g·f(p) = 0
    for (perm, m) in gen_perms.iter().zip(gen_mats) {
        for p in 0..points {
            for i in 0..rank {
                let mut row = vec![Rat::zero(); cols];
                row[perm[p] * rank + i] += Rat::from_integer(1.into());
                for j in 0..rank {
                    row[p * rank + j] -= &m[(i, j)];
                }
                rows.push(row);
            }
        }
    }
    RatMatrix::from_rows(rows).kernel()
}

/// Checks, at fibres with stabilizer generated by `stabilizer_gens`
/// (empty for a generic fibre), that `W_h`-equivariant maps `W_h/S → Λ_h`
/// and `W`-equivariant maps `W/S → Λ_h` have the same rank and that
/// restriction along `W/S ⊂ W_h/S` is a bijection between them.
pub fn pushforward_fiber(
    wf: &WeylFolding,
    lattice: &LatticeAction,
    stabilizer_gens: &[usize],
) -> Result<PushforwardFiber> {
    let w = &wf.folded;
    let wh = &wf.homogeneous;
    let s = generated_subgroup(w, stabilizer_gens);
    let s_h: Vec<usize> = s.iter().map(|&x| wf.embed(x).expect("lift")).collect();
    // cosets g·S, labelled by their smallest index
    let cosets = |grp: &WeylGroup, sub: &[usize]| -> (Vec<usize>, Vec<usize>) {
        let mut label = vec![usize::MAX; grp.order()];
        let mut reps = Vec::new();
        for g in 0..grp.order() {
            if label[g] == usize::MAX {
                for &x in sub {
                    label[grp.mul(g, x)] = reps.len();
                }
                reps.push(g);
            }
        }
        (label, reps)
    };
    let (label_h, reps_h) = cosets(wh, &s_h);
    let (label, reps) = cosets(w, &s);
    let gens_h: Vec<usize> = (0..wh.rank()).map(|i| wh.generator(i)).collect();
    let perms_h: Vec<Vec<usize>> =
        gens_h.iter().map(|&g| reps_h.iter().map(|&r| label_h[wh.mul(g, r)]).collect()).collect();
    let mats_h: Vec<RatMatrix> = gens_h.iter().map(|&g| lattice.matrices[g].clone()).collect();
    let sols_h = equivariant_maps(reps_h.len(), &perms_h, &mats_h, lattice.rank);
    let gens: Vec<usize> = (0..w.rank()).map(|i| w.generator(i)).collect();
    let perms: Vec<Vec<usize>> = gens.iter().map(|&g| reps.iter().map(|&r| label[w.mul(g, r)]).collect()).collect();
    let mats: Vec<RatMatrix> = gens.iter().map(|&g| lattice.matrices[wf.embed(g).expect("lift")].clone()).collect();
    let sols = equivariant_maps(reps.len(), &perms, &mats, lattice.rank);
    // restriction: point xS of W/S sits at ι(x)S in W_h/S
    let r = lattice.rank;
    let restricted: Vec<Vec<Rat>> = sols_h
        .iter()
        .map(|f| {
            reps.iter()
                .flat_map(|&x| {
                    let p = label_h[wf.embed(x).expect("lift")];
                    f[p * r..(p + 1) * r].to_vec()
                })
                .collect()
        })
        .collect();
    let bijective = {
        let rank_img = if restricted.is_empty() { 0 } else { RatMatrix::from_rows(restricted.clone()).rank() };
        let inside = restricted.iter().all(|v| {
            let mut rows = sols.clone();
            rows.push(v.clone());
            RatMatrix::from_rows(rows).rank() == sols.len()
        });
        rank_img == sols_h.len() && rank_img == sols.len() && inside
    };
    Ok(PushforwardFiber {
        stabilizer: s,
        rank_homogeneous: sols_h.len(),
        rank_folded: sols.len(),
        restriction_bijective: bijective,
    })
}

/// [`pushforward_fiber`] at the generic fibre and at one fibre per
/// distinct branch monodromy of `cm`.
pub fn pushforward_sections_check(
    wf: &WeylFolding,
    cm: &CoverMonodromy,
    lattice: &LatticeAction,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("cameral.pushforward_sections");
    let mut stabs: Vec<Vec<usize>> = vec![Vec::new()];
    for &c in &cm.branches {
        if !stabs.contains(&vec![c]) {
            stabs.push(vec![c]);
        }
    }
    for s in stabs {
        let f = pushforward_fiber(wf, lattice, &s)?;
        rep.case(
            f.rank_homogeneous == f.rank_folded && f.restriction_bijective,
            format!("stabilizer generated by {s:?}"),
            format!("equal ranks ({})", f.rank_folded),
            format!("{} vs {}, bijective={}", f.rank_homogeneous, f.rank_folded, f.restriction_bijective),
        );
    }
    Ok(rep)
}

/// Sampled check that induced covers of random connected transversal
/// covers always have `[W_h : W]` components, each a copy of the original,
/// with the expected local monodromy.
pub fn induced_component_check(
    wf: &WeylFolding,
    genera: &[u32],
    branch_count: usize,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("cameral.induced_components");
    let mut rng = rng_from_seed(seed);
    let index = wf.homogeneous.order() / wf.folded.order();
    for k in 0..samples {
        let g = genera[k % genera.len()];
        let cm = random_transversal(&wf.folded, g, branch_count, true, &mut rng)?;
        let ic = induced_cover_report(wf, &cm)?;
        rep.absorb(induced_local_monodromy_check(wf, &cm)?);
        let chi_ok = ic.geometry.euler_characteristic == index as i64 * ic.original.euler_characteristic;
        rep.case(
            ic.geometry.component_count == index && ic.components_match && chi_ok,
            format!("sample {k}, g={g}"),
            format!("{index} matching components"),
            format!("{} components, match={}, chi ok={chi_ok}", ic.geometry.component_count, ic.components_match),
        );
    }
    Ok(rep)
}

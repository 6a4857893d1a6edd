//! Weyl groups as fully enumerated matrix groups, and the folding
//! isomorphism `W_h^C ≅ W`.
//!
//! A group is generated by the simple reflections of a root system acting on
//! the span of its roots, written in the basis of simple roots. In that basis
//! every element is an integer matrix, so enumeration works with `i64`
//! entries and converts to [`RatMatrix`] only on request.

use crate::error::{Error, Result};
use crate::exactalg::{ri, Rat, RatMatrix};
use crate::report::{fmt_vec, random_rat, rng_from_seed, CheckReport};
use crate::rootsys::{dualize_root_system, fold_invariants, vadd, FoldingDatum, RootSystem};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use std::collections::{HashMap, HashSet, VecDeque};

/// Largest group enumerated without the opt-in for big groups.
pub const DEFAULT_BUDGET: usize = 50_000;
/// Budget once `FOLDLIE_ENABLE_E6=1` is set (covers |W(E6)| = 51840).
pub const LARGE_BUDGET: usize = 60_000;

/// Enumeration budget honoring the `FOLDLIE_ENABLE_E6` switch.
pub fn budget_from_env() -> usize {
    match std::env::var("FOLDLIE_ENABLE_E6") {
        Ok(v) if v == "1" => LARGE_BUDGET,
        _ => DEFAULT_BUDGET,
    }
}

type IMat = Vec<i64>;

/// An element together with a shortest word in the simple reflections.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylElement {
    pub matrix: RatMatrix,
    pub word: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    /// The root system whose simple reflections generate the group.
    pub roots: RootSystem,
    rank: usize,
    gens: Vec<IMat>,
    elems: Vec<IMat>,
    words: Vec<Vec<usize>>,
    index: HashMap<IMat, usize>,
    /// Roots in simple-root coordinates, for the permutation check.
    root_coords: Vec<Vec<i64>>,
}

fn imul(n: usize, a: &[i64], b: &[i64]) -> IMat {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x != 0 {
                for j in 0..n {
                    out[i * n + j] += x * b[k * n + j];
                }
            }
        }
    }
    out
}

fn ident(n: usize) -> IMat {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn to_int(q: &Rat) -> Option<i64> {
    q.is_integer().then(|| q.to_integer().to_i64()).flatten()
}

impl WeylGroup {
    /// The group generated by the simple reflections of `rs`, acting on
    /// the root span in simple-root coordinates.
    pub fn of_roots(rs: &RootSystem, budget: usize) -> Result<Self> {
        let n = rs.rank();
        let a = rs.cartan_matrix();
        // s_i(α_j) = α_j − ⟨α_j, α_i^∨⟩ α_i ; column j of S_i
        let gens: Vec<IMat> = (0..n)
            .map(|i| {
                let mut m = ident(n);
                for j in 0..n {
                    m[i * n + j] -= to_int(&a[(j, i)]).expect("Cartan integers are integers");
                }
                m
            })
            .collect();
        let root_coords = rs
            .all_roots
            .iter()
            .map(|r| {
                let c = rs.simple_coords(r).expect("root in span");
                c.iter().map(|x| to_int(x).expect("integral root coordinates")).collect()
            })
            .collect();
        let mut g = WeylGroup {
            roots: rs.clone(),
            rank: n,
            gens,
            elems: vec![ident(n)],
            words: vec![Vec::new()],
            index: HashMap::new(),
            root_coords,
        };
        g.index.insert(ident(n), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for (gi, s) in g.gens.clone().iter().enumerate() {
                let m = imul(n, s, &g.elems[k]);
                if g.index.contains_key(&m) {
                    continue;
                }
                if g.elems.len() >= budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                let mut w = vec![gi];
                w.extend_from_slice(&g.words[k]);
                g.index.insert(m.clone(), g.elems.len());
                g.elems.push(m);
                g.words.push(w);
                queue.push_back(g.elems.len() - 1);
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generator(&self, i: usize) -> usize {
        self.index[&self.gens[i]]
    }

    pub fn generators(&self) -> Vec<RatMatrix> {
        self.gens.iter().map(|g| self.to_rat(g)).collect()
    }

    fn to_rat(&self, m: &[i64]) -> RatMatrix {
        RatMatrix::from_flat(self.rank, self.rank, m.iter().map(|&x| ri(x)).collect())
    }

    pub fn int_matrix(&self, i: usize) -> &[i64] {
        &self.elems[i]
    }

    pub fn matrix(&self, i: usize) -> RatMatrix {
        self.to_rat(&self.elems[i])
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn element(&self, i: usize) -> WeylElement {
        WeylElement { matrix: self.matrix(i), word: self.words[i].clone() }
    }

    pub fn length(&self, i: usize) -> usize {
        self.words[i].len()
    }

    pub fn find(&self, m: &[i64]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn find_rat(&self, m: &RatMatrix) -> Option<usize> {
        let v: Option<IMat> = m.entries().iter().map(to_int).collect();
        self.find(&v?)
    }

    /// Index of `elements[i] · elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&imul(self.rank, &self.elems[i], &self.elems[j])]
    }

    pub fn inverse(&self, i: usize) -> usize {
        let w = &self.words[i];
        w.iter().rev().fold(0, |acc, &g| self.mul(acc, self.generator(g)))
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != 0 {
            cur = self.mul(cur, i);
            k += 1;
        }
        k
    }

    /// Act on a vector written in simple-root coordinates.
    pub fn act(&self, i: usize, v: &[Rat]) -> Vec<Rat> {
        let m = &self.elems[i];
        let n = self.rank;
        (0..n).map(|r| (0..n).map(|c| ri(m[r * n + c]) * &v[c]).sum()).collect()
    }

    /// Index of the reflection `s_β` for a root `β` of the generating system.
    pub fn reflection(&self, beta: &[Rat]) -> Option<usize> {
        let rs = &self.roots;
        let cols: Vec<Vec<Rat>> =
            rs.simple_roots.iter().map(|a| rs.simple_coords(&rs.reflect(beta, a)).expect("span")).collect();
        self.find_rat(&RatMatrix::from_columns(&cols))
    }

    /// All reflections `s_β`, one per positive root.
    pub fn reflections(&self) -> Vec<usize> {
        self.roots.positive_roots().iter().map(|b| self.reflection(b).expect("reflection lies in the group")).collect()
    }

    pub fn is_reflection(&self, i: usize) -> bool {
        i != 0 && self.element_order(i) == 2 && {
            let m = self.matrix(i);
            (&m - &RatMatrix::identity(self.rank)).rank() == 1
        }
    }

    /// Every element maps the root set onto itself.
    pub fn permutes_roots(&self) -> bool {
        let set: HashSet<&Vec<i64>> = self.root_coords.iter().collect();
        let n = self.rank;
        self.elems.iter().all(|m| {
            self.root_coords.iter().all(|r| {
                let img: Vec<i64> = (0..n).map(|i| (0..n).map(|j| m[i * n + j] * r[j]).sum()).collect();
                set.contains(&img)
            })
        })
    }

    /// Coefficients of `Σ_w t^{ℓ(w)}`, from the BFS word lengths.
    pub fn poincare_polynomial(&self) -> Vec<u64> {
        let top = self.words.iter().map(Vec::len).max().unwrap_or(0);
        let mut p = vec![0u64; top + 1];
        for w in &self.words {
            p[w.len()] += 1;
        }
        p
    }

    /// Map a point into the closed fundamental chamber; returns the
    /// dominant representative of its orbit.
    pub fn dominant(&self, v: &[Rat]) -> Vec<Rat> {
        let rs = &self.roots;
        let n = self.rank;
        let mut cur = v.to_vec();
        loop {
            let mut moved = false;
            for i in 0..n {
                let amb = (0..n).fold(vec![Rat::zero(); rs.ambient_dim], |acc, j| {
                    vadd(&acc, &crate::rootsys::vscale(&rs.simple_roots[j], &cur[j]))
                });
                if rs.inner(&rs.simple_roots[i], &amb).is_negative() {
                    cur = self.act(self.generator(i), &cur);
                    moved = true;
                }
            }
            if !moved {
                return cur;
            }
        }
    }

    pub fn orbit(&self, v: &[Rat]) -> HashSet<Vec<Rat>> {
        (0..self.order()).map(|i| self.act(i, v)).collect()
    }
}

/// Weyl group acting on the coroot space `V*` of `r`.
pub fn generate_weyl(r: &RootSystem) -> Result<WeylGroup> {
    WeylGroup::of_roots(&dualize_root_system(r), budget_from_env())
}

/// The folding isomorphism `W_h^C → W` made concrete.
#[derive(Clone, Debug)]
pub struct WeylFolding {
    pub datum: FoldingDatum,
    /// `W_h` on `V_h^*` (simple-coroot coordinates).
    pub homogeneous: WeylGroup,
    /// `W = W(R^∨)` on `V^* = (V_h^*)^C`, basis = orbit sums of simple coroots.
    pub folded: WeylGroup,
    /// Indices in `homogeneous` of the elements commuting with `a`.
    pub commutant: Vec<usize>,
    /// `restriction[k]` = index in `folded` of `commutant[k]` restricted to `V^*`.
    pub restriction: Vec<usize>,
    embed_map: HashMap<usize, usize>,
}

/// Elements of `wh` commuting with the permutation matrix of `a`.
pub fn commutant_fixed_subgroup(wh: &WeylGroup, fd: &FoldingDatum) -> Result<Vec<usize>> {
    let n = wh.rank();
    let p = &fd.aut.perm;
    let mut a = vec![0i64; n * n];
    for i in 0..n {
        a[p[i] * n + i] = 1;
    }
    let mut ainv = vec![0i64; n * n];
    for i in 0..n {
        ainv[i * n + p[i]] = 1;
    }
    for i in 0..n {
        let conj = imul(n, &imul(n, &a, &wh.gens[i]), &ainv);
        if wh.find(&conj).is_none() {
            return Err(Error::NotNormalizing);
        }
    }
    Ok((0..wh.order()).filter(|&k| imul(n, &a, &wh.elems[k]) == imul(n, &wh.elems[k], &a)).collect())
}

impl WeylFolding {
    pub fn new(fd: &FoldingDatum) -> Result<Self> {
        Self::with_budget(fd, budget_from_env())
    }

    pub fn with_budget(fd: &FoldingDatum, budget: usize) -> Result<Self> {
        let homogeneous = WeylGroup::of_roots(&fd.homogeneous, budget)?;
        let folded = WeylGroup::of_roots(&fold_invariants(fd)?, budget)?;
        let commutant = commutant_fixed_subgroup(&homogeneous, fd)?;
        let orbits = fd.aut.orbits();
        let mut restriction = Vec::with_capacity(commutant.len());
        for &k in &commutant {
            let r = restrict(&homogeneous, k, &orbits)?;
            let idx = folded
                .find(&r)
                .ok_or_else(|| Error::Precondition("restriction lies outside the folded Weyl group".into()))?;
            restriction.push(idx);
        }
        let embed_map: HashMap<usize, usize> = restriction.iter().zip(&commutant).map(|(&r, &c)| (r, c)).collect();
        Ok(WeylFolding { datum: fd.clone(), homogeneous, folded, commutant, restriction, embed_map })
    }

    /// Index in `W_h` of the unique commuting lift of a folded element.
    pub fn embed(&self, w: usize) -> Option<usize> {
        self.embed_map.get(&w).copied()
    }

    /// Restriction of a commuting element of `W_h`, as an index in `W`.
    pub fn restrict_index(&self, wh: usize) -> Option<usize> {
        let r = restrict(&self.homogeneous, wh, &self.datum.aut.orbits()).ok()?;
        self.folded.find(&r)
    }

    /// Bijectivity and multiplicativity of the restriction map.
    pub fn verify_isomorphism(&self) -> CheckReport {
        let mut rep = CheckReport::new("restriction W_h^C -> W is an isomorphism");
        let distinct: HashSet<usize> = self.restriction.iter().copied().collect();
        rep.case(
            distinct.len() == self.commutant.len() && self.commutant.len() == self.folded.order(),
            format!("{}", self.datum.homogeneous.kind),
            format!("bijection onto {} elements", self.folded.order()),
            format!("{} commuting elements, {} distinct images", self.commutant.len(), distinct.len()),
        );
        let pos: HashMap<usize, usize> = self.commutant.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        // multiplicativity on generator pairs suffices together with bijectivity
        let gens: Vec<usize> = (0..self.folded.rank()).filter_map(|i| self.embed(self.folded.generator(i))).collect();
        for &g in &gens {
            for (k, &c) in self.commutant.iter().enumerate() {
                let prod = self.homogeneous.mul(g, c);
                let lhs = pos.get(&prod).map(|&p| self.restriction[p]);
                let rhs = self.folded.mul(self.restriction[pos[&g]], self.restriction[k]);
                rep.case(lhs == Some(rhs), format!("g={g}, w={c}"), format!("{rhs}"), format!("{lhs:?}"));
            }
        }
        rep
    }
}

/// Restrict a commuting element to `(V_h^*)^C` in the orbit-sum basis.
fn restrict(wh: &WeylGroup, k: usize, orbits: &[Vec<usize>]) -> Result<IMat> {
    let n = wh.rank();
    let m = &wh.elems[k];
    let r = orbits.len();
    let mut out = vec![0i64; r * r];
    for (j, oj) in orbits.iter().enumerate() {
        let img: Vec<i64> = (0..n).map(|i| oj.iter().map(|&c| m[i * n + c]).sum()).collect();
        for (q, oq) in orbits.iter().enumerate() {
            let v = img[oq[0]];
            if oq.iter().any(|&i| img[i] != v) {
                return Err(Error::Precondition("element does not preserve the fixed space".into()));
            }
            out[q * r + j] = v;
        }
    }
    Ok(out)
}

/// `s̃_β = ∏_{α'∈O} s_{α'}` for an orbit of pairwise orthogonal simple roots.
pub fn folded_reflection(wh: &WeylGroup, orbit: &[usize]) -> Result<WeylElement> {
    let rs = &wh.roots;
    for (x, &i) in orbit.iter().enumerate() {
        for &j in &orbit[x + 1..] {
            if !rs.inner(&rs.simple_roots[i], &rs.simple_roots[j]).is_zero() {
                return Err(Error::OrbitNotOrthogonal);
            }
        }
    }
    let idx = wh.product(&orbit.iter().map(|&i| wh.generator(i)).collect::<Vec<_>>());
    Ok(wh.element(idx))
}

/// Outcome of [`orbit_regular_membership`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularMembership {
    /// `W(w·t) = W(t)`.
    pub same_orbit: bool,
    pub regular: bool,
    /// For regular `t`: the index in `W` of the restriction of `w`.
    pub restriction: Option<usize>,
}

/// Test the regular-action property at one point: `t ∈ 𝔱` and `w·t ∈ 𝔱`.
pub fn orbit_regular_membership(wf: &WeylFolding, t: &[Rat], w: usize) -> Result<RegularMembership> {
    let fd = &wf.datum;
    let wh = &wf.homogeneous;
    let fixed = |v: &[Rat]| fd.act_pow(v, 1) == v;
    let wt = wh.act(w, t);
    if !fixed(t) || !fixed(&wt) {
        return Err(Error::Precondition("t and w·t must lie in the fixed Cartan".into()));
    }
    let orbit: HashSet<Vec<Rat>> = wf.commutant.iter().map(|&k| wh.act(k, t)).collect();
    let same_orbit = orbit.contains(&wt);
    let h = &fd.homogeneous;
    let regular = h.all_roots.iter().all(|a| !h.inner(a, t).is_zero());
    let restriction = if regular && !t.iter().all(Zero::is_zero) { wf.restrict_index(w) } else { None };
    Ok(RegularMembership { same_orbit, regular, restriction })
}

/// Random point of `𝔱 = (V_h^*)^C` in `V_h` coordinates.
pub fn random_fixed_point<R: Rng>(fd: &FoldingDatum, rng: &mut R) -> Vec<Rat> {
    let n = fd.homogeneous.rank();
    let mut v = vec![Rat::zero(); n];
    for o in fd.aut.orbits() {
        let c = random_rat(rng);
        for i in o {
            v[i] = c.clone();
        }
    }
    v
}

/// Injectivity and surjectivity of `𝔱/W → (𝔱_h/W_h)^C` at sampled points.
pub fn quotient_invariants_iso_check(fd: &FoldingDatum, samples: usize, seed: u64) -> Result<CheckReport> {
    let wf = WeylFolding::new(fd)?;
    let wh = &wf.homogeneous;
    let mut rng = rng_from_seed(seed);
    let mut rep = CheckReport::new(format!("t/W -> (t_h/W_h)^C for {}", fd.homogeneous.kind));
    let fixed = |v: &[Rat]| fd.act_pow(v, 1) == v;
    for _ in 0..samples {
        let t = random_fixed_point(fd, &mut rng);
        let orbit_h = wh.orbit(&t);
        let orbit_w: HashSet<Vec<Rat>> = wf.commutant.iter().map(|&k| wh.act(k, &t)).collect();
        let t2 = if rng.gen_bool(0.5) {
            let cands: Vec<&Vec<Rat>> = orbit_h.iter().filter(|v| fixed(v)).collect();
            let mut cands = cands;
            cands.sort();
            cands[rng.gen_range(0..cands.len())].clone()
        } else {
            random_fixed_point(fd, &mut rng)
        };
        let in_h = orbit_h.contains(&t2);
        let in_w = orbit_w.contains(&t2);
        rep.case(in_h == in_w, format!("t={}, t'={}", fmt_vec(&t), fmt_vec(&t2)), format!("{in_h}"), format!("{in_w}"));

        // surjectivity: a C-fixed class has a representative in 𝔱
        let t0 = random_fixed_point(fd, &mut rng);
        let w = rng.gen_range(0..wh.order());
        let s = wh.act(w, &t0);
        let class_fixed = wh.orbit(&s).contains(&fd.act_pow(&s, 1));
        let dom = wh.dominant(&s);
        rep.case(
            class_fixed && fixed(&dom) && wh.orbit(&dom).contains(&s),
            format!("t={}", fmt_vec(&s)),
            "dominant representative fixed by a".to_string(),
            format!("dominant={}", fmt_vec(&dom)),
        );
    }
    Ok(rep)
}

/// `Σ` of positive coroots of `R^∨` equals that of `R_h^∨`.
pub fn weyl_vector_check(fd: &FoldingDatum) -> Result<bool> {
    let inv = fold_invariants(fd)?;
    let h = &fd.homogeneous;
    let zero = vec![Rat::zero(); h.ambient_dim];
    let s1 = inv.positive_roots().iter().fold(zero.clone(), |a, r| vadd(&a, r));
    let s2 = h.positive_roots().iter().fold(zero, |a, r| vadd(&a, &h.coroot(r)));
    Ok(s1 == s2)
}

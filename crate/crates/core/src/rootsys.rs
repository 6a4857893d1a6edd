//! Root systems, Dynkin graph automorphisms and the two folding constructions.
//!
//! Root systems built from a Dynkin type live in simple-root coordinates, so
//! the ambient space is `V = ℚ^rank` and the Gram matrix is the symmetrized
//! Cartan matrix. Folded systems keep the ambient space of the homogeneous
//! system they came from: the quotient `V_h/(1−a)V_h` is realized as the
//! orthogonal complement of `(1−a)V_h`, which is the fixed space `V_h^a`.
//! Both the coinvariant and the invariant folding therefore land in the same
//! space and can be compared vector by vector.

use crate::error::{Error, Result};
use crate::exactalg::{rat_to_string, ri, Rat, RatMatrix};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// An irreducible Dynkin type such as `A5` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    pub series: Series,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(DynkinType { series, rank })
        } else {
            Err(Error::InadmissibleType(format!("{series:?}{rank}")))
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.series, Series::A | Series::D | Series::E)
    }

    /// Half the squared length of each simple root (Bourbaki numbering).
    fn half_lengths(&self) -> Vec<i64> {
        let n = self.rank;
        match self.series {
            Series::A | Series::D | Series::E => vec![1; n],
            Series::B => (0..n).map(|i| if i + 1 < n { 2 } else { 1 }).collect(),
            Series::C => (0..n).map(|i| if i + 1 < n { 1 } else { 2 }).collect(),
            Series::F => vec![2, 2, 1, 1],
            Series::G => vec![1, 3],
        }
    }

    /// Edges of the Dynkin diagram, 0-based Bourbaki labels.
    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        let chain = |k: usize| (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self.series {
            Series::A | Series::B | Series::C | Series::F | Series::G => chain(n),
            Series::D => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1));
                e
            }
            Series::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// Gram matrix of the simple roots; short roots have squared length 2.
    pub fn gram(&self) -> RatMatrix {
        let d = self.half_lengths();
        let n = self.rank;
        let mut g = RatMatrix::zeros(n, n);
        for i in 0..n {
            g[(i, i)] = ri(2 * d[i]);
        }
        for (i, j) in self.edges() {
            let v = ri(-d[i].max(d[j]));
            g[(i, j)] = v.clone();
            g[(j, i)] = v;
        }
        g
    }

    /// Cartan matrix `a_ij = 2(α_i, α_j)/(α_j, α_j)`.
    pub fn cartan_matrix(&self) -> RatMatrix {
        cartan_from_gram(&self.gram())
    }

    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1),
            Series::B | Series::C => 2 * n * n,
            Series::D => 2 * n * (n - 1),
            Series::E => [72, 126, 240][n - 6],
            Series::F => 48,
            Series::G => 12,
        }
    }

    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.series {
            Series::A => fact(n + 1),
            Series::B | Series::C => (1 << n) * fact(n),
            Series::D => (1 << (n - 1)) * fact(n),
            Series::E => [51_840, 2_903_040, 696_729_600][n as usize - 6],
            Series::F => 1152,
            Series::G => 12,
        }
    }

    /// Degrees of the fundamental invariants (exponents plus one).
    pub fn degrees(&self) -> Vec<u32> {
        let n = self.rank as u32;
        match self.series {
            Series::A => (2..=n + 1).collect(),
            Series::B | Series::C => (1..=n).map(|k| 2 * k).collect(),
            Series::D => {
                let mut d: Vec<u32> = (1..n).map(|k| 2 * k).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            Series::E => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Series::F => vec![2, 6, 8, 12],
            Series::G => vec![2, 6],
        }
    }

    /// The Langlands dual type.
    pub fn dual(&self) -> DynkinType {
        let series = match self.series {
            Series::B => Series::C,
            Series::C => Series::B,
            s => s,
        };
        DynkinType { series, rank: self.rank }
    }

    /// True for pairs that are the same abstract root system (B2 and C2).
    pub fn isomorphic_to(&self, other: &DynkinType) -> bool {
        self == other
            || (self.rank == 2
                && other.rank == 2
                && matches!(self.series, Series::B | Series::C)
                && matches!(other.series, Series::B | Series::C))
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(Error::Parse(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::Parse(s.to_string()))?;
        DynkinType::new(series, rank).map_err(|_| Error::InadmissibleType(s.to_string()))
    }
}

impl Serialize for DynkinType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub(crate) fn cartan_from_gram(g: &RatMatrix) -> RatMatrix {
    let n = g.rows();
    let mut a = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = ri(2) * &g[(i, j)] / &g[(j, j)];
        }
    }
    a
}

pub(crate) fn vadd(u: &[Rat], v: &[Rat]) -> Vec<Rat> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub(crate) fn vsub(u: &[Rat], v: &[Rat]) -> Vec<Rat> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub(crate) fn vscale(u: &[Rat], s: &Rat) -> Vec<Rat> {
    u.iter().map(|a| a * s).collect()
}

pub(crate) fn unit_vec(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// A finite reduced root system in a rational inner-product space.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSystem {
    pub ambient_dim: usize,
    pub gram: RatMatrix,
    pub simple_roots: Vec<Vec<Rat>>,
    /// Positive roots (by height, then coordinates) followed by their negatives.
    pub all_roots: Vec<Vec<Rat>>,
    pub kind: DynkinType,
}

impl RootSystem {
    /// Build from a simple system: all roots are the Weyl orbit of the
    /// simple roots. Checks that the simple roots realize `kind`.
    pub fn from_simple(gram: RatMatrix, simple_roots: Vec<Vec<Rat>>, kind: DynkinType) -> Result<Self> {
        let ambient_dim = gram.rows();
        let mut rs = RootSystem { ambient_dim, gram, simple_roots, all_roots: Vec::new(), kind };
        if !rs.cartan_matches(&kind) {
            return Err(Error::Precondition(format!("simple roots do not realize {kind}")));
        }
        rs.all_roots = rs.reflection_closure();
        if rs.all_roots.len() != kind.root_count() {
            return Err(Error::Precondition(format!(
                "{kind} should have {} roots, closure produced {}",
                kind.root_count(),
                rs.all_roots.len()
            )));
        }
        Ok(rs)
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn inner(&self, u: &[Rat], v: &[Rat]) -> Rat {
        let gv = self.gram.mul_vec(v);
        u.iter().zip(&gv).map(|(a, b)| a * b).sum()
    }

    pub fn coroot(&self, alpha: &[Rat]) -> Vec<Rat> {
        vscale(alpha, &(ri(2) / self.inner(alpha, alpha)))
    }

    /// Reflection of `v` in the hyperplane orthogonal to `alpha`.
    pub fn reflect(&self, alpha: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let c = ri(2) * self.inner(alpha, v) / self.inner(alpha, alpha);
        vsub(v, &vscale(alpha, &c))
    }

    /// Cartan matrix of the stored simple roots.
    pub fn cartan_matrix(&self) -> RatMatrix {
        let n = self.rank();
        let mut a = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let (ai, aj) = (&self.simple_roots[i], &self.simple_roots[j]);
                a[(i, j)] = ri(2) * self.inner(ai, aj) / self.inner(aj, aj);
            }
        }
        a
    }

    fn cartan_matches(&self, kind: &DynkinType) -> bool {
        self.rank() == kind.rank && self.cartan_matrix() == kind.cartan_matrix()
    }

    /// Coordinates of `v` (assumed in the span) with respect to the simple roots.
    pub fn simple_coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let s = RatMatrix::from_columns(&self.simple_roots);
        let lhs = &(&s.transpose() * &self.gram) * &s;
        let rhs = (&s.transpose() * &self.gram).mul_vec(v);
        let c = lhs.solve(&rhs)?;
        (s.mul_vec(&c) == v).then_some(c)
    }

    pub fn is_positive(&self, v: &[Rat]) -> bool {
        self.simple_coords(v).is_some_and(|c| c.iter().all(|x| !x.is_negative()))
    }

    pub fn positive_roots(&self) -> Vec<Vec<Rat>> {
        self.all_roots.iter().filter(|r| self.is_positive(r)).cloned().collect()
    }

    pub fn contains_root(&self, v: &[Rat]) -> bool {
        self.all_roots.iter().any(|r| r == v)
    }

    fn reflection_closure(&self) -> Vec<Vec<Rat>> {
        let mut seen: HashSet<Vec<Rat>> = self.simple_roots.iter().cloned().collect();
        let mut frontier: Vec<Vec<Rat>> = self.simple_roots.clone();
        while let Some(v) = frontier.pop() {
            for s in &self.simple_roots {
                let w = self.reflect(s, &v);
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        let mut keyed: Vec<(bool, Rat, Vec<Rat>, Vec<Rat>)> = seen
            .into_iter()
            .map(|r| {
                let c = self.simple_coords(&r).expect("root outside the span of the simple roots");
                let neg = c.iter().any(Signed::is_negative);
                let height: Rat = c.iter().map(|x| x.abs()).sum();
                (neg, height, c.iter().map(|x| x.abs()).collect(), r)
            })
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1, &a.2).cmp(&(b.0, &b.1, &b.2)));
        keyed.into_iter().map(|k| k.3).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vecs = |vs: &[Vec<Rat>]| -> Vec<Vec<String>> {
            vs.iter().map(|v| v.iter().map(rat_to_string).collect()).collect()
        };
        let gram: Vec<Vec<String>> =
            (0..self.gram.rows()).map(|i| self.gram.row(i).iter().map(rat_to_string).collect()).collect();
        serde_json::json!({
            "type": self.kind.to_string(),
            "ambient_dim": self.ambient_dim,
            "gram": gram,
            "simple_roots": vecs(&self.simple_roots),
            "all_roots": vecs(&self.all_roots),
        })
    }
}

/// Standard root system of the given type, in simple-root coordinates.
pub fn build_root_system(t: DynkinType) -> Result<RootSystem> {
    let t = DynkinType::new(t.series, t.rank)?;
    let n = t.rank;
    RootSystem::from_simple(t.gram(), (0..n).map(|i| unit_vec(n, i)).collect(), t)
}

/// Candidate types with the same Cartan matrix as `rs` up to relabeling,
/// together with the relabeling that realizes each.
pub fn identify_type(rs: &RootSystem) -> Vec<(DynkinType, Vec<usize>)> {
    let a = rs.cartan_matrix();
    let n = rs.rank();
    let series = [Series::A, Series::B, Series::C, Series::D, Series::E, Series::F, Series::G];
    let mut out = Vec::new();
    for s in series {
        let Ok(t) = DynkinType::new(s, n) else { continue };
        if let Some(p) = match_cartan(&a, &t.cartan_matrix()) {
            out.push((t, p));
        }
    }
    out
}

/// Find `p` with `a[p(i)][p(j)] == b[i][j]`, by backtracking.
pub fn match_cartan(a: &RatMatrix, b: &RatMatrix) -> Option<Vec<usize>> {
    let n = a.rows();
    if n != b.rows() {
        return None;
    }
    fn go(a: &RatMatrix, b: &RatMatrix, p: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = p.len();
        let n = a.rows();
        if k == n {
            return true;
        }
        for c in 0..n {
            if used[c] {
                continue;
            }
            let consistent =
                (0..k).all(|j| a[(c, p[j])] == b[(k, j)] && a[(p[j], c)] == b[(j, k)]) && a[(c, c)] == b[(k, k)];
            if consistent {
                p.push(c);
                used[c] = true;
                if go(a, b, p, used) {
                    return true;
                }
                p.pop();
                used[c] = false;
            }
        }
        false
    }
    let mut p = Vec::new();
    let mut used = vec![false; n];
    go(a, b, &mut p, &mut used).then_some(p)
}

/// Permutation of the simple roots preserving the Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphAut {
    pub perm: Vec<usize>,
    pub order: usize,
}

impl GraphAut {
    pub fn identity(rank: usize) -> Self {
        GraphAut { perm: (0..rank).collect(), order: 1 }
    }

    /// Checks that `perm` is a permutation of the right order that
    /// preserves the Cartan matrix of `rs`.
    pub fn new(perm: Vec<usize>, order: usize, rs: &RootSystem) -> Result<Self> {
        let n = rs.rank();
        let distinct: BTreeSet<usize> = perm.iter().copied().collect();
        if perm.len() != n || distinct.len() != n || perm.iter().any(|&i| i >= n) {
            return Err(Error::NotGraphAut(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        let a = rs.cartan_matrix();
        for i in 0..n {
            for j in 0..n {
                if a[(perm[i], perm[j])] != a[(i, j)] {
                    return Err(Error::NotGraphAut(format!("{perm:?} does not preserve the Cartan matrix")));
                }
            }
        }
        let aut = GraphAut { perm, order };
        let actual = aut.computed_order();
        if actual != order {
            return Err(Error::NotGraphAut(format!("declared order {order}, actual order {actual}")));
        }
        Ok(aut)
    }

    /// The standard non-trivial automorphism of the given order.
    pub fn standard(t: DynkinType, order: usize) -> Result<Self> {
        let n = t.rank;
        let perm: Vec<usize> = match (t.series, order) {
            (_, 1) => (0..n).collect(),
            (Series::A, 2) => (0..n).rev().collect(),
            (Series::D, 2) => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(n - 2, n - 1);
                p
            }
            (Series::D, 3) if n == 4 => vec![2, 1, 3, 0],
            (Series::E, 2) if n == 6 => vec![5, 1, 4, 3, 2, 0],
            _ => return Err(Error::Unsupported(format!("no diagram automorphism of order {order} on {t}"))),
        };
        Ok(GraphAut { perm, order })
    }

    fn computed_order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.perm.clone();
        while cur.iter().enumerate().any(|(i, &j)| i != j) {
            cur = cur.iter().map(|&j| self.perm[j]).collect();
            k += 1;
        }
        k
    }

    /// Orbits on the simple roots, each sorted, ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut orb = vec![i];
            seen[i] = true;
            let mut j = self.perm[i];
            while j != i {
                orb.push(j);
                seen[j] = true;
                j = self.perm[j];
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    /// Matrix of `a` on simple-root coordinates: `e_i ↦ e_{perm(i)}`.
    pub fn matrix(&self) -> RatMatrix {
        let n = self.perm.len();
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(self.perm[i], i)] = Rat::one();
        }
        m
    }

    /// Action on a vector of `rs`'s ambient space lying in the root span.
    pub fn act(&self, rs: &RootSystem, v: &[Rat]) -> Vec<Rat> {
        let c = rs.simple_coords(v).expect("vector outside the root span");
        let mut out = vec![Rat::zero(); rs.ambient_dim];
        for (i, ci) in c.iter().enumerate() {
            out = vadd(&out, &vscale(&rs.simple_roots[self.perm[i]], ci));
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

/// A simply-laced root system with a Dynkin graph automorphism.
#[derive(Clone, Debug)]
pub struct FoldingDatum {
    pub homogeneous: RootSystem,
    pub aut: GraphAut,
}

impl FoldingDatum {
    pub fn new(homogeneous: RootSystem, aut: GraphAut) -> Result<Self> {
        let t = homogeneous.kind;
        if !t.is_simply_laced() {
            return Err(Error::Precondition(format!("{t} is not simply laced")));
        }
        check_graph_aut_condition(&homogeneous, &aut)?;
        Ok(FoldingDatum { homogeneous, aut })
    }

    /// The standard datum of type `t` with the automorphism of the given order.
    pub fn standard(t: DynkinType, order: usize) -> Result<Self> {
        let rs = build_root_system(t)?;
        let aut = GraphAut::standard(t, order)?;
        let aut = GraphAut::new(aut.perm, order, &rs)?;
        Self::new(rs, aut)
    }

    /// `|a|`, the order of the cyclic group.
    pub fn order(&self) -> usize {
        self.aut.order
    }

    /// `a^k` applied to a vector of `V_h`.
    pub fn act_pow(&self, v: &[Rat], k: usize) -> Vec<Rat> {
        let mut w = v.to_vec();
        for _ in 0..k {
            w = self.aut.act(&self.homogeneous, &w);
        }
        w
    }

    /// The orbit `O(α)` as a set (no multiplicity), in order of appearance.
    pub fn orbit(&self, v: &[Rat]) -> Vec<Vec<Rat>> {
        let mut out: Vec<Vec<Rat>> = Vec::new();
        for k in 0..self.order() {
            let w = self.act_pow(v, k);
            if !out.contains(&w) {
                out.push(w);
            }
        }
        out
    }

    /// Orbit sum `α^O`.
    pub fn orbit_sum(&self, v: &[Rat]) -> Vec<Rat> {
        self.orbit(v).iter().fold(vec![Rat::zero(); v.len()], |acc, w| vadd(&acc, w))
    }

    /// Orthogonal projection onto `V_h^a`, i.e. the average over `⟨a⟩`.
    pub fn project(&self, v: &[Rat]) -> Vec<Rat> {
        let sum = (0..self.order()).fold(vec![Rat::zero(); v.len()], |acc, k| vadd(&acc, &self.act_pow(v, k)));
        vscale(&sum, &(Rat::one() / ri(self.order() as i64)))
    }
}

/// `(a(α), α) ∈ {0, 2}` for every root.
fn check_graph_aut_condition(rs: &RootSystem, aut: &GraphAut) -> Result<()> {
    for r in &rs.all_roots {
        let ip = rs.inner(&aut.act(rs, r), r);
        if ip != ri(0) && ip != ri(2) {
            return Err(Error::NotGraphAut(format!("(a(α), α) = {} for a root α", rat_to_string(&ip))));
        }
    }
    Ok(())
}

/// Pick a label among the types isomorphic to `rs`. Only B2 and C2 can
/// both match; `prefer` breaks that tie.
fn label(rs: &RootSystem, prefer: Series) -> Result<DynkinType> {
    let cands = identify_type(rs);
    cands
        .iter()
        .find(|(t, _)| t.series == prefer)
        .or_else(|| cands.first())
        .map(|(t, _)| *t)
        .ok_or_else(|| Error::Precondition("folded roots do not form an irreducible root system".into()))
}

fn folded_system(
    fd: &FoldingDatum,
    simple: Vec<Vec<Rat>>,
    expected: BTreeSet<Vec<Rat>>,
    prefer: Series,
) -> Result<RootSystem> {
    let h = &fd.homogeneous;
    let mut rs = RootSystem {
        ambient_dim: h.ambient_dim,
        gram: h.gram.clone(),
        simple_roots: simple,
        all_roots: Vec::new(),
        kind: h.kind,
    };
    rs.kind = label(&rs, prefer)?;
    rs.all_roots = rs.reflection_closure();
    let closure: BTreeSet<Vec<Rat>> = rs.all_roots.iter().cloned().collect();
    if closure != expected {
        return Err(Error::Precondition("folded roots are not closed under folded reflections".into()));
    }
    if rs.all_roots.len() != rs.kind.root_count() {
        return Err(Error::Precondition(format!("root count mismatch for {}", rs.kind)));
    }
    Ok(rs)
}

/// `R_{h,C}`: images of the roots in `V_h/(1−a)V_h`, realized in `V_h^a`.
pub fn fold_coinvariants(fd: &FoldingDatum) -> Result<RootSystem> {
    check_graph_aut_condition(&fd.homogeneous, &fd.aut)?;
    let h = &fd.homogeneous;
    let simple = fd.aut.orbits().iter().map(|o| fd.project(&h.simple_roots[o[0]])).collect();
    let expected = h.all_roots.iter().map(|r| fd.project(r)).collect();
    folded_system(fd, simple, expected, Series::C)
}

/// `R_h^C = {α^O}`, orbit sums without multiplicity.
pub fn fold_invariants(fd: &FoldingDatum) -> Result<RootSystem> {
    check_graph_aut_condition(&fd.homogeneous, &fd.aut)?;
    let h = &fd.homogeneous;
    let simple = fd.aut.orbits().iter().map(|o| fd.orbit_sum(&h.simple_roots[o[0]])).collect();
    let expected = h.all_roots.iter().map(|r| fd.orbit_sum(r)).collect();
    folded_system(fd, simple, expected, Series::B)
}

/// Coroot system `{2α/(α,α)}` in the same ambient space.
pub fn dualize_root_system(r: &RootSystem) -> RootSystem {
    let mut d = RootSystem {
        ambient_dim: r.ambient_dim,
        gram: r.gram.clone(),
        simple_roots: r.simple_roots.iter().map(|a| r.coroot(a)).collect(),
        all_roots: r.all_roots.iter().map(|a| r.coroot(a)).collect(),
        kind: r.kind.dual(),
    };
    // keep the "positive first" ordering of the source
    let prefer = d.kind.series;
    d.kind = label(&d, prefer).unwrap_or(d.kind);
    d
}

/// Outcome of comparing `(R_{h,C})^∨` with `(R_h^∨)^C`.
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub holds: bool,
    pub coinvariant_type: DynkinType,
    pub invariant_type: DynkinType,
    /// Number of matched pairs `(α_O)^∨ ↔ (α^∨)^O`.
    pub pairs: usize,
    pub cartan_preserved: bool,
}

pub fn check_folding_duality(fd: &FoldingDatum) -> Result<DualityReport> {
    let h = &fd.homogeneous;
    let co = fold_coinvariants(fd)?;
    let inv = fold_invariants(fd)?;
    let mut holds = true;
    let mut images: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for alpha in &h.all_roots {
        let lhs = co.coroot(&fd.project(alpha));
        let rhs = fd.orbit_sum(&h.coroot(alpha));
        holds &= lhs == rhs && inv.contains_root(&rhs);
        images.insert(lhs);
    }
    let pairs = images.len();
    holds &= pairs == inv.all_roots.len() && pairs == co.all_roots.len();
    let dual = dualize_root_system(&co);
    let cartan_preserved = dual.cartan_matrix() == inv.cartan_matrix();
    Ok(DualityReport {
        holds: holds && cartan_preserved,
        coinvariant_type: co.kind,
        invariant_type: inv.kind,
        pairs,
        cartan_preserved,
    })
}

/// A full-rank sublattice of a rational vector space, by a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    pub rank: usize,
    pub basis: Vec<Vec<Rat>>,
}

impl Lattice {
    pub fn new(basis: Vec<Vec<Rat>>) -> Result<Self> {
        let rank = basis.len();
        if rank > 0 && RatMatrix::from_rows(basis.clone()).rank() != rank {
            return Err(Error::Precondition("lattice basis is linearly dependent".into()));
        }
        Ok(Lattice { rank, basis })
    }

    pub fn zero() -> Self {
        Lattice { rank: 0, basis: Vec::new() }
    }
}

/// Character lattice (coinvariants of the root lattice) and cocharacter
/// lattice (invariants of the coweight lattice) of the folded adjoint group.
pub fn folded_lattices(fd: &FoldingDatum) -> Result<(Lattice, Lattice)> {
    let h = &fd.homogeneous;
    let orbits = fd.aut.orbits();
    let character: Vec<Vec<Rat>> = orbits.iter().map(|o| fd.project(&h.simple_roots[o[0]])).collect();
    let ginv = h.gram.inverse().ok_or_else(|| Error::Precondition("degenerate Gram matrix".into()))?;
    let coweights: Vec<Vec<Rat>> = (0..h.rank()).map(|i| ginv.col(i)).collect();
    let cocharacter: Vec<Vec<Rat>> = orbits
        .iter()
        .map(|o| o.iter().fold(vec![Rat::zero(); h.ambient_dim], |acc, &i| vadd(&acc, &coweights[i])))
        .collect();
    Ok((Lattice::new(character)?, Lattice::new(cocharacter)?))
}

/// Coweight lattice `{v : (α, v) ∈ ℤ for all roots α}` of a system whose
/// simple roots span the ambient space.
pub fn coweight_lattice(rs: &RootSystem) -> Result<Lattice> {
    let s = RatMatrix::from_columns(&rs.simple_roots);
    let m = (&s.transpose() * &rs.gram)
        .inverse()
        .ok_or_else(|| Error::Precondition("simple roots do not span the ambient space".into()))?;
    Lattice::new((0..rs.rank()).map(|i| m.col(i)).collect())
}

use super::{antidiagonal_form, build_algebra, combine, symplectic_form, Coordinates, Family, MatrixLieAlgebra};
use crate::error::{Error, Result};
use crate::exactalg::{ri, Echelon, Rat, RatMatrix};
use crate::report::CheckReport;
use crate::rootsys::{build_root_system, DynkinType, GraphAut};
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Chevalley basis of a classical matrix algebra in its standard form.
#[derive(Clone, Debug)]
pub struct ChevalleyData {
    pub algebra: MatrixLieAlgebra,
    pub kind: DynkinType,
    /// Roots in simple-root coordinates: positive roots by height (the
    /// simple roots first, in order), then their negatives in the same order.
    pub roots: Vec<Vec<i64>>,
    /// `root_vectors[k]` spans the root space of `roots[k]`.
    pub root_vectors: Vec<RatMatrix>,
    /// Simple coroots `h_i = [e_i, f_i]`.
    pub coroot_vectors: Vec<RatMatrix>,
    index: HashMap<Vec<i64>, usize>,
}

fn simple_generators(family: Family, n: usize) -> Vec<RatMatrix> {
    let u = |i: usize, j: usize| RatMatrix::unit(n, i, j);
    // mirror index for the anti-diagonal form
    let bar = |i: usize| n - 1 - i;
    match family {
        Family::Sl => {
            (0..n - 1).map(|i| if 2 * (i + 1) > n { u(i, i + 1).scale(&-Rat::one()) } else { u(i, i + 1) }).collect()
        }
        Family::Sp => {
            let m = n / 2;
            let mut v: Vec<RatMatrix> = (0..m - 1).map(|i| &u(i, i + 1) - &u(m + i + 1, m + i)).collect();
            v.push(u(m - 1, n - 1));
            v
        }
        Family::So => {
            let m = n / 2;
            let mut v: Vec<RatMatrix> = (0..m - 1).map(|i| &u(i, i + 1) - &u(bar(i + 1), bar(i))).collect();
            if n.is_multiple_of(2) {
                v.push(&u(m - 2, bar(m - 1)) - &u(m - 1, bar(m - 2)));
            } else {
                v.push(&u(m - 1, m) - &u(m, bar(m - 1)));
            }
            v
        }
        Family::Subalgebra => Vec::new(),
    }
}

fn first_nonzero(m: &RatMatrix) -> Option<(usize, usize)> {
    let n = m.cols();
    m.entries().iter().position(|x| !x.is_zero()).map(|p| (p / n, p % n))
}

/// `c` with `a = c·b`, if `a` is a multiple of the nonzero matrix `b`.
fn ratio(a: &RatMatrix, b: &RatMatrix) -> Option<Rat> {
    let (i, j) = first_nonzero(b)?;
    let c = &a[(i, j)] / &b[(i, j)];
    (b.scale(&c) == *a).then_some(c)
}

impl ChevalleyData {
    pub fn new(alg: &MatrixLieAlgebra) -> Result<Self> {
        let kind = alg.dynkin_type().ok_or_else(|| Error::Unsupported("Chevalley basis of a subalgebra".into()))?;
        let standard = match alg.family {
            Family::Sl => true,
            Family::Sp => alg.defining_form.as_ref() == Some(&symplectic_form(alg.size)),
            Family::So => alg.defining_form.as_ref() == Some(&antidiagonal_form(alg.size)),
            Family::Subalgebra => false,
        };
        if !standard {
            return Err(Error::Unsupported("Chevalley basis for a non-standard form".into()));
        }
        let n = alg.size;
        let es = simple_generators(alg.family, n);
        let r = es.len();
        let mut fs = Vec::with_capacity(r);
        let mut hs = Vec::with_capacity(r);
        for e in &es {
            let (p, q) = first_nonzero(e).expect("generator is nonzero");
            let h = e.bracket(&e.transpose());
            let c = ri(2) / (&h[(p, p)] - &h[(q, q)]);
            let f = e.transpose().scale(&c);
            hs.push(e.bracket(&f));
            fs.push(f);
        }

        let rs = build_root_system(kind)?;
        let mut pos: Vec<Vec<i64>> = rs
            .positive_roots()
            .iter()
            .map(|v| {
                rs.simple_coords(v)
                    .expect("root in span")
                    .iter()
                    .map(|x| x.to_integer().try_into().expect("small coordinates"))
                    .collect()
            })
            .collect();
        pos.sort_by(|a: &Vec<i64>, b| a.iter().sum::<i64>().cmp(&b.iter().sum()).then(b.cmp(a)));
        let all: std::collections::HashSet<Vec<i64>> =
            pos.iter().cloned().chain(pos.iter().map(|v| v.iter().map(|x| -x).collect())).collect();

        let mut vecs: HashMap<Vec<i64>, RatMatrix> = HashMap::new();
        for beta in &pos {
            let height: i64 = beta.iter().sum();
            let m = if height == 1 {
                es[beta.iter().position(|&x| x == 1).unwrap()].clone()
            } else {
                let (i, gamma) = (0..r)
                    .find_map(|i| {
                        let mut g = beta.clone();
                        g[i] -= 1;
                        vecs.contains_key(&g).then_some((i, g))
                    })
                    .expect("every non-simple positive root has a predecessor");
                let mut p = 0;
                loop {
                    let mut g = gamma.clone();
                    g[i] -= p + 1;
                    if !all.contains(&g) {
                        break;
                    }
                    p += 1;
                }
                es[i].bracket(&vecs[&gamma]).scale(&Rat::new(1.into(), (p + 1).into()))
            };
            vecs.insert(beta.clone(), m);
        }

        let mut gens = es.clone();
        gens.extend(fs.iter().cloned());
        let mut images: Vec<RatMatrix> = fs.iter().map(|f| -f).collect();
        images.extend(es.iter().map(|e| -e));
        let omega = extend_from_generators(alg, &gens, &images)?;

        let mut roots = pos.clone();
        let mut root_vectors: Vec<RatMatrix> = pos.iter().map(|b| vecs[b].clone()).collect();
        for b in &pos {
            roots.push(b.iter().map(|x| -x).collect());
            root_vectors.push(-&omega.apply(alg, &vecs[b])?);
        }
        let index = roots.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
        Ok(ChevalleyData { algebra: alg.clone(), kind, roots, root_vectors, coroot_vectors: hs, index })
    }

    pub fn rank(&self) -> usize {
        self.coroot_vectors.len()
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn e(&self, root: &[i64]) -> Option<&RatMatrix> {
        self.root_index(root).map(|k| &self.root_vectors[k])
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    /// Index of `−α`.
    pub fn negative(&self, k: usize) -> usize {
        let p = self.num_positive();
        if k < p {
            k + p
        } else {
            k - p
        }
    }

    /// `h_α = [e_α, e_{−α}]`.
    pub fn h_alpha(&self, k: usize) -> RatMatrix {
        self.root_vectors[k].bracket(&self.root_vectors[self.negative(k)])
    }

    /// `α(h)` for a diagonal `h`, read off from `[h, e_α]`.
    pub fn root_value(&self, k: usize, h: &RatMatrix) -> Rat {
        let (p, q) = first_nonzero(&self.root_vectors[k]).expect("root vectors are nonzero");
        &h[(p, p)] - &h[(q, q)]
    }

    /// Weight of a root vector against the simple coroots, `None` if `x`
    /// is not an eigenvector of every `h_i`.
    pub fn weight_key(&self, x: &RatMatrix) -> Option<Vec<Rat>> {
        let (p, q) = first_nonzero(x)?;
        let key: Vec<Rat> = self.coroot_vectors.iter().map(|h| &h[(p, p)] - &h[(q, q)]).collect();
        let ok = self.coroot_vectors.iter().zip(&key).all(|(h, v)| h.bracket(x) == x.scale(v));
        ok.then_some(key)
    }

    /// `N` with `[e_α, e_β] = N·e_{α+β}`, when `α + β` is a root.
    pub fn structure_constant(&self, a: usize, b: usize) -> Option<Rat> {
        let sum: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
        let c = self.root_index(&sum)?;
        ratio(&self.root_vectors[a].bracket(&self.root_vectors[b]), &self.root_vectors[c])
    }

    /// Normalization, eigenvector property and integrality of the basis.
    pub fn verify(&self) -> CheckReport {
        let mut rep = CheckReport::new(format!("Chevalley basis of {}", self.kind));
        let cartan = self.algebra.cartan_basis();
        for k in 0..self.roots.len() {
            let h = self.h_alpha(k);
            let v = self.root_value(k, &h);
            rep.case(v == ri(2), format!("root {:?}", self.roots[k]), "alpha(h_alpha) = 2", v.to_string());
            let eigen = cartan
                .iter()
                .all(|d| d.bracket(&self.root_vectors[k]) == self.root_vectors[k].scale(&self.root_value(k, d)));
            rep.case(eigen, format!("root {:?}", self.roots[k]), "root vector is a weight vector", format!("{eigen}"));
        }
        for a in 0..self.roots.len() {
            for b in 0..self.roots.len() {
                let sum: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
                if sum.iter().all(|&x| x == 0) {
                    continue;
                }
                let input = format!("({:?}, {:?})", self.roots[a], self.roots[b]);
                if self.root_index(&sum).is_none() {
                    let z = self.root_vectors[a].bracket(&self.root_vectors[b]).is_zero();
                    rep.case(z, input, "bracket 0", format!("zero: {z}"));
                    continue;
                }
                let c = self.structure_constant(a, b);
                let c_neg = self.structure_constant(self.negative(a), self.negative(b));
                let ok = matches!((&c, &c_neg), (Some(x), Some(y)) if x.is_integer() && *y == -x.clone());
                rep.case(ok, input, "integer N with N(-a,-b) = -N(a,b)", format!("{c:?}, {c_neg:?}"));
            }
        }
        rep
    }
}

/// A Lie algebra automorphism, stored as its matrix on the basis
/// coordinates of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAut {
    pub matrix: RatMatrix,
    pub order: usize,
}

impl LieAut {
    pub fn identity(alg: &MatrixLieAlgebra) -> Self {
        LieAut { matrix: RatMatrix::identity(alg.dimension()), order: 1 }
    }

    pub fn apply(&self, alg: &MatrixLieAlgebra, x: &RatMatrix) -> Result<RatMatrix> {
        let c = alg.coords(x).ok_or(Error::NotInAlgebra)?;
        Ok(alg.from_coords(&self.matrix.mul_vec(&c)))
    }

    pub fn pow(&self, k: usize) -> LieAut {
        LieAut { matrix: self.matrix.pow(k as u32), order: self.order }
    }

    /// `φ([b_i, b_j]) = [φ(b_i), φ(b_j)]` on every pair of basis elements.
    pub fn preserves_bracket(&self, alg: &MatrixLieAlgebra) -> bool {
        let d = alg.dimension();
        let imgs: Vec<RatMatrix> = (0..d).map(|k| alg.from_coords(&self.matrix.col(k))).collect();
        (0..d).all(|i| {
            (i + 1..d).all(|j| {
                let lhs = self.apply(alg, &alg.basis[i].bracket(&alg.basis[j]));
                lhs.is_ok_and(|l| l == imgs[i].bracket(&imgs[j]))
            })
        })
    }
}

fn order_of(m: &RatMatrix) -> Option<usize> {
    let id = RatMatrix::identity(m.rows());
    let mut cur = m.clone();
    for k in 1..=24 {
        if cur == id {
            return Some(k);
        }
        cur = &cur * m;
    }
    None
}

/// The automorphism determined by the images of a generating set.
///
/// A spanning set of iterated brackets of the generators is built together
/// with the corresponding brackets of the images; the map is then read off
/// by linear algebra. Well-definedness is not assumed: call
/// [`LieAut::preserves_bracket`] on the result.
pub fn extend_from_generators(alg: &MatrixLieAlgebra, gens: &[RatMatrix], images: &[RatMatrix]) -> Result<LieAut> {
    let d = alg.dimension();
    let mut ech = Echelon::new();
    let mut span = Vec::new();
    let mut imgs = Vec::new();
    for (g, im) in gens.iter().zip(images) {
        if ech.insert(&g.to_vec()) {
            span.push(g.clone());
            imgs.push(im.clone());
        }
    }
    let mut k = 0;
    while k < span.len() && span.len() < d {
        for (g, im) in gens.iter().zip(images) {
            let z = g.bracket(&span[k]);
            if ech.insert(&z.to_vec()) {
                let zi = im.bracket(&imgs[k]);
                span.push(z);
                imgs.push(zi);
            }
        }
        k += 1;
    }
    if span.len() != d {
        return Err(Error::Precondition("generators do not generate the algebra".into()));
    }
    let co = Coordinates::new(&span)?;
    let mut cols = Vec::with_capacity(d);
    for b in &alg.basis {
        let c = co.solve(&span, b).ok_or(Error::NotInAlgebra)?;
        let img = combine(&imgs, &c, alg.size);
        cols.push(alg.coords(&img).ok_or(Error::NotInAlgebra)?);
    }
    let matrix = RatMatrix::from_columns(&cols);
    let order = order_of(&matrix).ok_or(Error::NoFiniteAction)?;
    Ok(LieAut { matrix, order })
}

/// Lift of a diagram automorphism: `e_i ↦ e_{a(i)}`, `f_i ↦ f_{a(i)}`.
/// On the whole root basis it then sends `e_α` to `±e_{a·α}`; use
/// [`ChevalleyData::adapted`] to make all signs `+`.
pub fn lift_graph_aut(cd: &ChevalleyData, a: &GraphAut) -> Result<LieAut> {
    if !cd.kind.is_simply_laced() {
        return Err(Error::NotGraphAut(format!("{} is not simply laced", cd.kind)));
    }
    let r = cd.rank();
    if a.perm.len() != r {
        return Err(Error::DimensionMismatch { expected: r, got: a.perm.len() });
    }
    let p = cd.num_positive();
    let gens: Vec<RatMatrix> =
        (0..r).map(|i| cd.root_vectors[i].clone()).chain((0..r).map(|i| cd.root_vectors[p + i].clone())).collect();
    let images: Vec<RatMatrix> = (0..r)
        .map(|i| cd.root_vectors[a.perm[i]].clone())
        .chain((0..r).map(|i| cd.root_vectors[p + a.perm[i]].clone()))
        .collect();
    let aut = extend_from_generators(&cd.algebra, &gens, &images)?;
    for (k, root) in cd.roots.iter().enumerate() {
        let mut moved = vec![0; r];
        for i in 0..r {
            moved[a.perm[i]] = root[i];
        }
        let j = cd.root_index(&moved).ok_or_else(|| Error::NotGraphAut("image is not a root".into()))?;
        let img = aut.apply(&cd.algebra, &cd.root_vectors[k])?;
        match ratio(&img, &cd.root_vectors[j]) {
            Some(c) if c == Rat::one() || c == -Rat::one() => {}
            _ => return Err(Error::NotGraphAut(format!("e_{root:?} is not sent to ±e_{moved:?}"))),
        }
    }
    if aut.order != a.order {
        return Err(Error::NotGraphAut(format!("lift has order {}, expected {}", aut.order, a.order)));
    }
    Ok(aut)
}

/// `φ(e_α) = s·e_{π(α)}` for every root.
fn root_permutation(cd: &ChevalleyData, aut: &LieAut) -> Result<Vec<(usize, Rat)>> {
    let keys: HashMap<Vec<Rat>, usize> =
        (0..cd.roots.len()).map(|k| (cd.weight_key(&cd.root_vectors[k]).expect("root vector"), k)).collect();
    cd.root_vectors
        .iter()
        .map(|e| {
            let img = aut.apply(&cd.algebra, e)?;
            let j = cd.weight_key(&img).and_then(|key| keys.get(&key).copied()).ok_or(Error::ActionNotPreserving)?;
            let s = ratio(&img, &cd.root_vectors[j]).ok_or(Error::ActionNotPreserving)?;
            Ok((j, s))
        })
        .collect()
}

impl ChevalleyData {
    /// Re-sign root vectors along each orbit so that `φ(e_α) = e_{φ·α}`.
    pub fn adapted(&self, aut: &LieAut) -> Result<ChevalleyData> {
        let perm = root_permutation(self, aut)?;
        let mut out = self.clone();
        let mut done = vec![false; self.roots.len()];
        for start in 0..self.roots.len() {
            if done[start] {
                continue;
            }
            let mut cur = start;
            let mut v = self.root_vectors[start].clone();
            loop {
                done[cur] = true;
                out.root_vectors[cur] = v.clone();
                v = aut.apply(&self.algebra, &v)?;
                cur = perm[cur].0;
                if cur == start {
                    break;
                }
            }
            if v != self.root_vectors[start] {
                return Err(Error::NotGraphAut(format!("orbit of root {:?} picks up a sign", self.roots[start])));
            }
        }
        Ok(out)
    }
}

/// `(1/|φ|) Σ_k φ^k(ξ)`.
pub fn averaging_projection(alg: &MatrixLieAlgebra, aut: &LieAut, xi: &RatMatrix) -> Result<RatMatrix> {
    let mut c = alg.coords(xi).ok_or(Error::NotInAlgebra)?;
    let mut acc = vec![Rat::zero(); c.len()];
    for _ in 0..aut.order {
        for (a, x) in acc.iter_mut().zip(&c) {
            *a += x;
        }
        c = aut.matrix.mul_vec(&c);
    }
    let k = ri(aut.order as i64);
    Ok(alg.from_coords(&acc.iter().map(|x| x / &k).collect::<Vec<_>>()))
}

/// `A ↦ D·A^{T̃}·(−D)` with `D = diag(1, …, 1, −1, …, −1)` and `A^{T̃}` the
/// reflection of `A` in the anti-diagonal. On `sl_4` this is the lift of
/// the diagram swap for the standard generators.
pub fn clift(a: &RatMatrix) -> RatMatrix {
    let n = a.rows();
    let d: Vec<Rat> = (0..n).map(|i| if i < n / 2 { Rat::one() } else { -Rat::one() }).collect();
    let dm = RatMatrix::diag(&d);
    &(&dm * &a.anti_transpose()) * &(-&dm)
}

/// The fixed-point subalgebra `𝔤_h^𝐂` with its root-space decomposition.
#[derive(Clone, Debug)]
pub struct FixedSubalgebra {
    /// Basis: orbit sums of simple coroots, then projected root vectors.
    pub algebra: MatrixLieAlgebra,
    /// Orbits of roots of the ambient algebra (indices into `cd.roots`).
    pub root_orbits: Vec<Vec<usize>>,
    /// Value of each orbit's restricted root on the Cartan basis.
    pub root_functionals: Vec<Vec<Rat>>,
    /// Dimension of `ker(φ − 1)`, computed independently of the basis.
    pub nullspace_dim: usize,
}

impl FixedSubalgebra {
    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    /// Restricted roots are nonzero and pairwise distinct, i.e. each root
    /// space of the fixed algebra is one-dimensional.
    pub fn root_spaces_are_lines(&self) -> bool {
        let set: std::collections::HashSet<&Vec<Rat>> = self.root_functionals.iter().collect();
        set.len() == self.root_functionals.len() && self.root_functionals.iter().all(|f| f.iter().any(|x| !x.is_zero()))
    }

    /// Trace form restricted to the fixed algebra is non-degenerate.
    pub fn trace_form_nondegenerate(&self) -> bool {
        super::trace_form_gram(&self.algebra).det().is_ok_and(|d| !d.is_zero())
    }
}

pub fn fixed_subalgebra(cd: &ChevalleyData, aut: &LieAut) -> Result<FixedSubalgebra> {
    let alg = &cd.algebra;
    let d = alg.dimension();
    let nullspace_dim = (&aut.matrix - &RatMatrix::identity(d)).kernel().len();
    let perm = root_permutation(cd, aut)?;
    let r = cd.rank();

    let mut cartan = Vec::new();
    let mut seen = vec![false; r];
    for i in 0..r {
        if seen[i] {
            continue;
        }
        let mut h = RatMatrix::zeros(alg.size, alg.size);
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            h = &h + &cd.coroot_vectors[j];
            j = perm[j].0;
        }
        cartan.push(h);
    }

    let mut root_orbits = Vec::new();
    let mut vectors = Vec::new();
    let mut seen = vec![false; cd.roots.len()];
    for k in 0..cd.roots.len() {
        if seen[k] {
            continue;
        }
        let mut orb = Vec::new();
        let mut j = k;
        while !seen[j] {
            seen[j] = true;
            orb.push(j);
            j = perm[j].0;
        }
        let p = averaging_projection(alg, aut, &cd.root_vectors[k])?;
        if p.is_zero() {
            return Err(Error::NotGraphAut(format!("root space of {:?} averages to zero", cd.roots[k])));
        }
        root_orbits.push(orb);
        vectors.push(p);
    }

    let mut root_functionals = Vec::new();
    for v in &vectors {
        let mut f = Vec::with_capacity(cartan.len());
        for s in &cartan {
            let br = s.bracket(v);
            f.push(if br.is_zero() { Rat::zero() } else { ratio(&br, v).ok_or(Error::ActionNotPreserving)? });
        }
        root_functionals.push(f);
    }

    let mut basis = cartan;
    basis.extend(vectors);
    for b in &basis {
        if aut.apply(alg, b)? != *b {
            return Err(Error::ActionNotPreserving);
        }
    }
    let algebra = MatrixLieAlgebra::subalgebra(alg.size, basis)?;
    Ok(FixedSubalgebra { algebra, root_orbits, root_functionals, nullspace_dim })
}

/// An explicit isomorphism of a fixed subalgebra onto a classical algebra,
/// `X ↦ left·X·right`.
#[derive(Clone, Debug)]
pub struct FoldedEmbedding {
    pub target: MatrixLieAlgebra,
    pub left: RatMatrix,
    pub right: RatMatrix,
}

impl FoldedEmbedding {
    pub fn identity(alg: &MatrixLieAlgebra) -> Self {
        let id = RatMatrix::identity(alg.size);
        FoldedEmbedding { target: alg.clone(), left: id.clone(), right: id }
    }

    pub fn map(&self, x: &RatMatrix) -> RatMatrix {
        &(&self.left * x) * &self.right
    }
}

/// Realize `fixed` as a classical algebra.
///
/// With no common kernel vector the fixed algebra preserves a bilinear form,
/// found by solving `XᵀB + BX = 0`; an alternating monomial form is brought
/// to the standard symplectic one. With a one-dimensional common kernel `v`
/// (the `D_n` swap) the algebra acts on the `parent_form`-orthogonal
/// complement of `v`, and the target is `so` of the induced form.
pub fn find_embedding(fixed: &MatrixLieAlgebra, parent_form: Option<&RatMatrix>) -> Result<FoldedEmbedding> {
    let n = fixed.size;
    let stacked: Vec<Vec<Rat>> = fixed.basis.iter().flat_map(|b| (0..n).map(move |i| b.row(i))).collect();
    let common = RatMatrix::from_rows(stacked).kernel();
    let emb = match common.len() {
        0 => {
            let b = invariant_form(fixed)?;
            if b.transpose() == -&b {
                symplectic_embedding(&b)?
            } else {
                let id = RatMatrix::identity(n);
                FoldedEmbedding { target: MatrixLieAlgebra::with_form(Family::So, b)?, left: id.clone(), right: id }
            }
        }
        1 => {
            let k = parent_form.ok_or_else(|| Error::Precondition("parent form needed".into()))?;
            let v = &common[0];
            let vk: Vec<Rat> = (0..n).map(|j| (0..n).map(|i| &v[i] * &k[(i, j)]).sum()).collect();
            let t = RatMatrix::from_columns(&RatMatrix::from_rows(vec![vk]).kernel());
            let tt = t.transpose();
            let left = &(&tt * &t).inverse().expect("full column rank") * &tt;
            let form = &(&tt * k) * &t;
            FoldedEmbedding { target: MatrixLieAlgebra::with_form(Family::So, form)?, left, right: t }
        }
        _ => return Err(Error::Unsupported("fixed algebra has a large common kernel".into())),
    };
    for b in &fixed.basis {
        if !emb.target.contains(&emb.map(b)) {
            return Err(Error::NotInAlgebra);
        }
    }
    if emb.target.dimension() != fixed.dimension() {
        return Err(Error::Unsupported(format!(
            "fixed algebra of dimension {} is not all of the classical algebra of dimension {}",
            fixed.dimension(),
            emb.target.dimension()
        )));
    }
    Ok(emb)
}

/// The (unique up to scale) form with `XᵀB + BX = 0` on the whole basis.
fn invariant_form(alg: &MatrixLieAlgebra) -> Result<RatMatrix> {
    let n = alg.size;
    let mut ech = Echelon::new();
    let mut rows = Vec::new();
    for x in &alg.basis {
        for i in 0..n {
            for j in 0..n {
                // coefficient of B_{r,s} in (XᵀB + BX)_{ij}
                let mut row = vec![Rat::zero(); n * n];
                for r in 0..n {
                    row[r * n + j] += &x[(r, i)];
                    row[i * n + r] += &x[(r, j)];
                }
                if ech.insert(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let ker = RatMatrix::from_rows(rows).kernel();
    if ker.len() != 1 {
        return Err(Error::Unsupported(format!("{} independent invariant forms", ker.len())));
    }
    Ok(RatMatrix::from_flat(n, n, ker[0].clone()))
}

fn symplectic_embedding(b: &RatMatrix) -> Result<FoldedEmbedding> {
    let n = b.rows();
    let m = n / 2;
    let mut pairs = Vec::new();
    for p in 0..n {
        let nz: Vec<usize> = (0..n).filter(|&q| !b[(p, q)].is_zero()).collect();
        if nz.len() != 1 {
            return Err(Error::Unsupported("invariant form is not monomial".into()));
        }
        if p < nz[0] {
            pairs.push((p, nz[0]));
        }
    }
    if pairs.len() != m {
        return Err(Error::Unsupported("invariant form is not monomial".into()));
    }
    let mut t = RatMatrix::zeros(n, n);
    for (k, &(p, q)) in pairs.iter().enumerate() {
        t[(p, k)] = Rat::one();
        t[(q, m + k)] = b[(p, q)].recip();
    }
    let target = build_algebra(Family::Sp, n)?;
    debug_assert_eq!(&(&t.transpose() * b) * &t, symplectic_form(n));
    let left = t.inverse().expect("monomial change of basis");
    Ok(FoldedEmbedding { target, left, right: t })
}

//! Slodowy slices `S = x + ker ad_y` through subregular nilpotents.
//!
//! A slice is stored as a base point plus a basis of `ker ad_y`, one
//! parameter per basis direction. Every direction is an `ad_h`-eigenvector,
//! so the ℂ*-action `λ·v = λ² Ad_{exp(−th)}(v)` (with `λ = e^t`) rescales the
//! parameters by `λ^{2−μ}`, `μ` the eigenvalue. The finite-group action is a
//! [`SliceAut`]: conjugation, optionally twisted by `A ↦ −A^{T̃}`.
//!
//! Two slices are hard-wired because their parameters have names elsewhere:
//! the four-parameter slice in `sp4` ([`build_subregular_slice`]) and the
//! five-parameter slice in `sl4` built from a triple that is stable under
//! the twisted automorphism ([`appendix_slice`]). The map [`appendix_phi`]
//! identifies the first with the fixed part of the second over the common
//! base.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{rat, ri, MultiPoly, Poly, Rat, RatMatrix, Ring, Scalar, Tower};
use crate::liealg::{build_algebra, Family, MatrixLieAlgebra};
use crate::report::{fmt_vec, random_nonzero_rat, random_rat, rng_from_seed, CheckReport};

/// Matrix of `ad_x` on `alg` in its own basis.
pub fn ad_matrix(alg: &MatrixLieAlgebra, x: &RatMatrix) -> Result<RatMatrix> {
    let mut cols = Vec::with_capacity(alg.dimension());
    for b in &alg.basis {
        cols.push(alg.coords(&x.bracket(b)).ok_or(Error::NotInAlgebra)?);
    }
    Ok(RatMatrix::from_columns(&cols))
}

/// Basis of the centralizer of `x` in `alg`.
pub fn centralizer(alg: &MatrixLieAlgebra, x: &RatMatrix) -> Result<Vec<RatMatrix>> {
    Ok(ad_matrix(alg, x)?.kernel().iter().map(|c| alg.from_coords(c)).collect())
}

fn is_nilpotent(x: &RatMatrix) -> bool {
    x.pow(x.rows() as u32).is_zero()
}

/// An `sl2`-triple `[h,x] = 2x`, `[h,y] = −2y`, `[x,y] = h` inside a matrix
/// Lie algebra.
#[derive(Clone, Debug)]
pub struct Sl2Triple {
    pub algebra: MatrixLieAlgebra,
    pub x: RatMatrix,
    pub y: RatMatrix,
    pub h: RatMatrix,
}

impl Sl2Triple {
    pub fn new(algebra: MatrixLieAlgebra, x: RatMatrix, y: RatMatrix, h: RatMatrix) -> Result<Self> {
        for m in [&x, &y, &h] {
            if !algebra.contains(m) {
                return Err(Error::NotInAlgebra);
            }
        }
        if h.bracket(&x) != x.scale(&ri(2)) || h.bracket(&y) != y.scale(&ri(-2)) || x.bracket(&y) != h {
            return Err(Error::Precondition("sl2 relations fail".into()));
        }
        if x.is_zero() || !is_nilpotent(&x) {
            return Err(Error::Precondition("x must be a non-zero nilpotent".into()));
        }
        Ok(Sl2Triple { algebra, x, y, h })
    }

    /// `dim ker ad_x`; equals `rank + 2` exactly for subregular `x`.
    pub fn centralizer_dim(&self) -> Result<usize> {
        Ok(self.algebra.dimension() - ad_matrix(&self.algebra, &self.x)?.rank())
    }

    pub fn is_subregular(&self) -> Result<bool> {
        Ok(self.centralizer_dim()? == self.algebra.rank() + 2)
    }
}

/// An automorphism `A ↦ g·τ(A)·g⁻¹` of a matrix algebra, where `τ` is the
/// identity or, when `twisted`, `A ↦ −A^{T̃}` (negative anti-transpose).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceAut {
    pub conj: RatMatrix,
    pub twisted: bool,
}

impl SliceAut {
    pub fn conjugation(g: RatMatrix) -> Self {
        SliceAut { conj: g, twisted: false }
    }

    /// `A ↦ −A^{T̃}`.
    pub fn neg_anti_transpose(n: usize) -> Self {
        SliceAut { conj: RatMatrix::identity(n), twisted: true }
    }

    pub fn apply(&self, a: &RatMatrix) -> RatMatrix {
        let t = if self.twisted { -&a.anti_transpose() } else { a.clone() };
        let inv = self.conj.inverse().expect("conjugating matrix is invertible");
        &(&self.conj * &t) * &inv
    }

    pub fn compose(&self, other: &SliceAut) -> SliceAut {
        // anti-transposition reverses products, so the twist moves g' across
        // as (g'^{-1})^{T̃}
        let inner =
            if self.twisted { other.conj.inverse().expect("invertible").anti_transpose() } else { other.conj.clone() };
        SliceAut { conj: &self.conj * &inner, twisted: self.twisted != other.twisted }
    }

    pub fn fixes(&self, m: &RatMatrix) -> bool {
        self.apply(m) == *m
    }
}

/// A subregular slice with named parameters.
#[derive(Clone, Debug)]
pub struct SlodowySlice {
    pub triple: Sl2Triple,
    pub names: Vec<String>,
    pub directions: Vec<RatMatrix>,
    /// ℂ*-weight `2 − μ` of each direction, `μ` its `ad_h`-eigenvalue.
    pub cstar_weights: Vec<u32>,
    pub caction: Option<SliceAut>,
}

/// Serializable summary of a slice.
#[derive(Clone, Debug, Serialize)]
pub struct SliceSummary {
    pub dimension: usize,
    pub parameters: Vec<String>,
    pub cstar_weights: Vec<u32>,
    pub quotient_weights: Vec<u32>,
    pub base_point: Vec<Vec<String>>,
    pub directions: Vec<Vec<Vec<String>>>,
    pub has_finite_action: bool,
}

fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(crate::exactalg::rat_to_string).collect()).collect()
}

fn ad_eigenvalue(h: &RatMatrix, d: &RatMatrix) -> Option<Rat> {
    let hd = h.bracket(d);
    let (k, pivot) = d.entries().iter().enumerate().find(|(_, q)| !q.is_zero())?;
    let mu = &hd.entries()[k] / pivot;
    (hd == d.scale(&mu)).then_some(mu)
}

impl SlodowySlice {
    /// Assemble a slice from a triple and an explicit basis of `ker ad_y`,
    /// checking that the basis really is one and that each direction is an
    /// `ad_h`-eigenvector.
    pub fn from_directions(
        triple: Sl2Triple,
        names: Vec<String>,
        directions: Vec<RatMatrix>,
        caction: Option<SliceAut>,
    ) -> Result<Self> {
        if names.len() != directions.len() {
            return Err(Error::DimensionMismatch { expected: directions.len(), got: names.len() });
        }
        let kernel_dim = centralizer(&triple.algebra, &triple.y)?.len();
        if kernel_dim != directions.len() {
            return Err(Error::DimensionMismatch { expected: kernel_dim, got: directions.len() });
        }
        let flat: Vec<Vec<Rat>> = directions.iter().map(|d| d.to_vec()).collect();
        if RatMatrix::from_rows(flat).rank() != directions.len() {
            return Err(Error::Precondition("slice directions are dependent".into()));
        }
        let mut weights = Vec::with_capacity(directions.len());
        for d in &directions {
            if !triple.algebra.contains(d) || !triple.y.bracket(d).is_zero() {
                return Err(Error::Precondition("direction outside ker ad_y".into()));
            }
            let mu = ad_eigenvalue(&triple.h, d)
                .ok_or_else(|| Error::Precondition("direction is not an ad_h eigenvector".into()))?;
            let w = ri(2) - mu;
            if !w.is_integer() || w < Rat::zero() {
                return Err(Error::Precondition("non-integral C* weight".into()));
            }
            weights.push(w.to_integer().try_into().expect("small weight"));
        }
        Ok(SlodowySlice { triple, names, directions, cstar_weights: weights, caction })
    }

    /// Slice through `triple` with the eigenbasis of `ker ad_y` computed
    /// from scratch, sorted by weight.
    pub fn from_triple(triple: Sl2Triple) -> Result<Self> {
        let kernel = centralizer(&triple.algebra, &triple.y)?;
        let n = triple.x.rows();
        // distinct ad_h eigenvalues on the kernel are lowest weights, so ≤ 0
        let mut mus: Vec<Rat> = Vec::new();
        if !is_diagonal(&triple.h) {
            return Err(Error::Unsupported("slice eigenbasis needs a diagonal h".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let mu = &triple.h[(i, i)] - &triple.h[(j, j)];
                if mu <= Rat::zero() && !mus.contains(&mu) {
                    mus.push(mu);
                }
            }
        }
        mus.sort_by(|a, b| b.cmp(a));
        let mut directions = Vec::new();
        for mu in &mus {
            // coefficient vectors c with [h, Σ c_k v_k] = μ Σ c_k v_k
            let cols: Vec<Vec<Rat>> = kernel.iter().map(|v| (&triple.h.bracket(v) - &v.scale(mu)).to_vec()).collect();
            let sys = RatMatrix::from_columns(&cols);
            for c in sys.kernel() {
                let mut d = RatMatrix::zeros(n, n);
                for (v, ck) in kernel.iter().zip(&c) {
                    d = &d + &v.scale(ck);
                }
                directions.push(d);
            }
        }
        let names = (1..=directions.len()).map(|k| format!("s{k}")).collect();
        SlodowySlice::from_directions(triple, names, directions, None)
    }

    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    pub fn base_point(&self) -> &RatMatrix {
        &self.triple.x
    }

    /// `x + Σ p_k D_k`.
    pub fn point(&self, params: &[Rat]) -> Result<RatMatrix> {
        self.check_len(params.len())?;
        let mut m = self.triple.x.clone();
        for (d, p) in self.directions.iter().zip(params) {
            if !p.is_zero() {
                m = &m + &d.scale(p);
            }
        }
        Ok(m)
    }

    /// The same point with parameters in any ring containing ℚ.
    pub fn point_generic<R: Ring>(&self, params: &[R], lift: impl Fn(&Rat) -> R) -> Result<Vec<Vec<R>>> {
        self.check_len(params.len())?;
        let n = self.triple.x.rows();
        let mut out: Vec<Vec<R>> = (0..n).map(|i| (0..n).map(|j| lift(&self.triple.x[(i, j)])).collect()).collect();
        for (d, p) in self.directions.iter().zip(params) {
            for (i, row) in out.iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate() {
                    if !d[(i, j)].is_zero() {
                        *e = e.clone() + lift(&d[(i, j)]) * p.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Parameters of a matrix lying on the slice, `None` otherwise.
    pub fn params_of(&self, m: &RatMatrix) -> Option<Vec<Rat>> {
        let diff = m - &self.triple.x;
        let cols: Vec<Vec<Rat>> = self.directions.iter().map(|d| d.to_vec()).collect();
        let p = RatMatrix::from_columns(&cols).solve(&diff.to_vec())?;
        (self.point(&p).ok()? == *m).then_some(p)
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), got });
        }
        Ok(())
    }

    /// Fundamental invariants of the slice point, as a polynomial map in
    /// the parameters.
    pub fn quotient_polys(&self) -> Result<Vec<MultiPoly>> {
        let vars = Poly::<Rat>::vars_of(&self.names);
        let m = self.point_generic(&vars, |q| Poly::constant(&self.names, q.clone()))?;
        self.triple.algebra.invariants_generic(&m, |q| Poly::constant(&self.names, q.clone()))
    }

    pub fn quotient_weights(&self) -> Vec<u32> {
        self.triple.algebra.invariant_degrees().iter().map(|d| 2 * d).collect()
    }

    /// Parameters after applying the finite-group action.
    pub fn finite_action(&self) -> Result<&SliceAut> {
        self.caction.as_ref().ok_or(Error::NoFiniteAction)
    }

    /// Sign pattern of the finite action on the parameters, if it acts
    /// diagonally by ±1 on the directions.
    pub fn action_signs(&self) -> Result<Vec<i8>> {
        let aut = self.finite_action()?;
        if !aut.fixes(&self.triple.x) {
            return Err(Error::Precondition("finite action moves the base point".into()));
        }
        self.directions
            .iter()
            .map(|d| {
                let img = aut.apply(d);
                if img == *d {
                    Ok(1)
                } else if img == -d {
                    Ok(-1)
                } else {
                    Err(Error::Precondition("finite action is not diagonal on the slice".into()))
                }
            })
            .collect()
    }

    pub fn summary(&self) -> SliceSummary {
        SliceSummary {
            dimension: self.dimension(),
            parameters: self.names.clone(),
            cstar_weights: self.cstar_weights.clone(),
            quotient_weights: self.quotient_weights(),
            base_point: matrix_strings(&self.triple.x),
            directions: self.directions.iter().map(matrix_strings).collect(),
            has_finite_action: self.caction.is_some(),
        }
    }

    /// Structural checks: relations, subregularity, slice dimension, the
    /// ℂ*-action against its matrix form and, when present, the finite
    /// action preserving the slice and commuting with ℂ*.
    pub fn verify(&self, samples: usize, seed: u64) -> Result<CheckReport> {
        let mut rep = CheckReport::new("slodowy.slice");
        let rank = self.triple.algebra.rank();
        let cdim = self.triple.centralizer_dim()?;
        rep.case(cdim == rank + 2, "dim ker ad_x", (rank + 2).to_string(), cdim.to_string());
        rep.case(self.dimension() == rank + 2, "dim S", (rank + 2).to_string(), self.dimension().to_string());
        let mut rng = rng_from_seed(seed);
        for _ in 0..samples {
            let p: Vec<Rat> = (0..self.dimension()).map(|_| random_rat(&mut rng)).collect();
            let lambda = random_nonzero_rat(&mut rng);
            let by_params = self.point(&cstar_action(self, &lambda, &p)?)?;
            let by_matrix = cstar_matrix_action(self, &lambda, &self.point(&p)?)?;
            rep.case(by_params == by_matrix, format!("lambda={lambda} p={}", fmt_vec(&p)), "equal", "differ");
            if self.caction.is_some() {
                let a = cstar_action(self, &lambda, &c_action_on_slice(self, &p)?)?;
                let b = c_action_on_slice(self, &cstar_action(self, &lambda, &p)?)?;
                rep.case(a == b, format!("commute at p={}", fmt_vec(&p)), fmt_vec(&a), fmt_vec(&b));
            }
        }
        Ok(rep)
    }
}

fn is_diagonal(m: &RatMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m[(i, j)].is_zero()))
}

fn unit_combo(n: usize, entries: &[(usize, usize, i64)]) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    for &(i, j, c) in entries {
        m[(i, j)] = &m[(i, j)] + ri(c);
    }
    m
}

/// `Q = [[0,1],[1,0]]` doubled along the diagonal.
pub fn sp4_flip() -> RatMatrix {
    unit_combo(4, &[(0, 1, 1), (1, 0, 1), (2, 3, 1), (3, 2, 1)])
}

fn sp4_slice() -> Result<SlodowySlice> {
    let alg = build_algebra(Family::Sp, 4)?;
    let x = unit_combo(4, &[(0, 2, 1), (1, 3, 1)]);
    let y = x.transpose();
    let h = RatMatrix::diag_i64(&[1, 1, -1, -1]);
    let triple = Sl2Triple::new(alg, x, y, h)?;
    let directions = vec![
        unit_combo(4, &[(0, 1, 1), (1, 0, -1), (2, 3, 1), (3, 2, -1)]),
        unit_combo(4, &[(2, 0, 1), (3, 1, -1)]),
        unit_combo(4, &[(2, 1, 1), (3, 0, 1)]),
        unit_combo(4, &[(2, 0, 1), (3, 1, 1)]),
    ];
    let names = ["v1m", "v2m", "v1p", "v2p"].map(String::from).to_vec();
    SlodowySlice::from_directions(triple, names, directions, Some(SliceAut::conjugation(sp4_flip())))
}

/// `sl_n`-triple for the nilpotent of Jordan type `(n−1, 1)`.
pub fn subregular_sl_triple(n: usize) -> Result<Sl2Triple> {
    if n < 3 {
        return Err(Error::Unsupported(format!("sl{n} has no subregular nilpotent distinct from zero")));
    }
    let alg = build_algebra(Family::Sl, n)?;
    let m = n - 1;
    let mut x = RatMatrix::zeros(n, n);
    let mut y = RatMatrix::zeros(n, n);
    let mut h = RatMatrix::zeros(n, n);
    for i in 0..m {
        h[(i, i)] = ri(m as i64 - 1 - 2 * i as i64);
        if i + 1 < m {
            x[(i, i + 1)] = Rat::one();
            y[(i + 1, i)] = ri(((i + 1) * (m - 1 - i)) as i64);
        }
    }
    Sl2Triple::new(alg, x, y, h)
}

/// Subregular slice of a classical algebra: the fixed four-parameter slice
/// for `sp4`, Jordan type `(n−1, 1)` for `sl_n`.
pub fn build_subregular_slice(alg: &MatrixLieAlgebra) -> Result<SlodowySlice> {
    let slice = match (alg.family, alg.size) {
        (Family::Sp, 4) => sp4_slice()?,
        (Family::Sl, n) => SlodowySlice::from_triple(subregular_sl_triple(n)?)?,
        (f, n) => return Err(Error::Unsupported(format!("no subregular triple implemented for {f:?} of size {n}"))),
    };
    if !slice.triple.is_subregular()? {
        return Err(Error::Precondition("constructed nilpotent is not subregular".into()));
    }
    Ok(slice)
}

/// Five-parameter slice in `sl4` through `x_h = E12 + E13 − E24 − E34`,
/// stable under `A ↦ −A^{T̃}`. Parameters are `(u1m, u2m, u3m, u1p, u2p)`.
pub fn appendix_slice() -> Result<SlodowySlice> {
    let alg = build_algebra(Family::Sl, 4)?;
    let x = unit_combo(4, &[(0, 1, 1), (0, 2, 1), (1, 3, -1), (2, 3, -1)]);
    let y = x.transpose();
    let h = RatMatrix::diag_i64(&[2, 0, 0, -2]);
    let triple = Sl2Triple::new(alg, x, y, h)?;
    let directions = vec![
        unit_combo(4, &[(0, 0, 1), (1, 1, -1), (1, 2, 2), (2, 1, 2), (2, 2, -1), (3, 3, 1)]),
        unit_combo(4, &[(1, 0, -1), (2, 0, 1), (3, 1, 1), (3, 2, -1)]),
        unit_combo(4, &[(3, 0, 1)]),
        unit_combo(4, &[(1, 0, 1), (3, 2, -1)]),
        unit_combo(4, &[(2, 0, 1), (3, 1, -1)]),
    ];
    let names = ["u1m", "u2m", "u3m", "u1p", "u2p"].map(String::from).to_vec();
    SlodowySlice::from_directions(triple, names, directions, Some(SliceAut::neg_anti_transpose(4)))
}

/// `ξ∘χ` at the slice point with the given parameters.
pub fn slice_quotient(sl: &SlodowySlice, params: &[Rat]) -> Result<Vec<Rat>> {
    let m = sl.point(params)?;
    Ok(sl.triple.algebra.adjoint_quotient(&m)?.values)
}

/// `λ·p`: each parameter scaled by `λ` to its weight.
pub fn cstar_action(sl: &SlodowySlice, lambda: &Rat, params: &[Rat]) -> Result<Vec<Rat>> {
    if lambda.is_zero() {
        return Err(Error::ZeroScalar);
    }
    sl.check_len(params.len())?;
    Ok(params.iter().zip(&sl.cstar_weights).map(|(p, &w)| p * num_traits::pow(lambda.clone(), w as usize)).collect())
}

/// `λ² Ad_{exp(−th)}(m)` for diagonal `h`, with `λ = e^t`.
pub fn cstar_matrix_action(sl: &SlodowySlice, lambda: &Rat, m: &RatMatrix) -> Result<RatMatrix> {
    if lambda.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let h = &sl.triple.h;
    if !is_diagonal(h) {
        return Err(Error::Unsupported("matrix C* action needs a diagonal h".into()));
    }
    let n = m.rows();
    let mut out = m.clone();
    for i in 0..n {
        for j in 0..n {
            let e = ri(2) - (&h[(i, i)] - &h[(j, j)]);
            let e: i64 = e.to_integer().try_into().expect("small exponent");
            let f = if e >= 0 {
                num_traits::pow(lambda.clone(), e as usize)
            } else {
                num_traits::pow(lambda.clone(), (-e) as usize).recip()
            };
            out[(i, j)] = &m[(i, j)] * f;
        }
    }
    Ok(out)
}

/// Finite-group action on parameters, computed by acting on the matrix and
/// reading the parameters back.
pub fn c_action_on_slice(sl: &SlodowySlice, params: &[Rat]) -> Result<Vec<Rat>> {
    let aut = sl.finite_action()?;
    let img = aut.apply(&sl.point(params)?);
    sl.params_of(&img).ok_or_else(|| Error::Precondition("finite action leaves the slice".into()))
}

/// Parameters fixed by the finite action (those with sign `+1`).
pub fn fixed_parameters(sl: &SlodowySlice) -> Result<Vec<usize>> {
    Ok(sl.action_signs()?.iter().enumerate().filter(|(_, &s)| s == 1).map(|(k, _)| k).collect())
}

/// Component group data for the centralizer of `(x, y)`.
#[derive(Clone, Debug)]
pub enum CxyFamily {
    /// `{diag(K, K) : K Kᵀ = 1}` in `Sp4`.
    BlockOrthogonal,
    /// `{Ad_{M_m}, Ad_{M_m}∘φ_a}` on `sl4`, `φ_a = −(·)^{T̃}`.
    TwistedSl4,
}

#[derive(Clone, Debug)]
pub struct CxyGroup {
    pub family: CxyFamily,
    /// One element per connected component, identity component first.
    pub representatives: Vec<SliceAut>,
}

impl CxyGroup {
    pub fn block_orthogonal() -> Self {
        let reps = vec![SliceAut::conjugation(RatMatrix::identity(4)), SliceAut::conjugation(sp4_flip())];
        CxyGroup { family: CxyFamily::BlockOrthogonal, representatives: reps }
    }

    pub fn twisted_sl4() -> Self {
        let reps = vec![SliceAut::conjugation(RatMatrix::identity(4)), SliceAut::neg_anti_transpose(4)];
        CxyGroup { family: CxyFamily::TwistedSl4, representatives: reps }
    }

    /// A rational point of the given component. For the block group `t`
    /// parametrizes the rotation `((1−t²)/(1+t²), 2t/(1+t²))`; for the
    /// twisted group `t` is `m ≠ 0`.
    pub fn element(&self, t: &Rat, component: usize) -> Result<SliceAut> {
        if component >= self.representatives.len() {
            return Err(Error::OutOfRange { k: component, n: self.representatives.len() });
        }
        let base = match self.family {
            CxyFamily::BlockOrthogonal => {
                let d = Rat::one() + t * t;
                let c = (Rat::one() - t * t) / &d;
                let s = (ri(2) * t) / &d;
                let mut g = RatMatrix::zeros(4, 4);
                for b in [0, 2] {
                    g[(b, b)] = c.clone();
                    g[(b, b + 1)] = -s.clone();
                    g[(b + 1, b)] = s.clone();
                    g[(b + 1, b + 1)] = c.clone();
                }
                SliceAut::conjugation(g)
            }
            CxyFamily::TwistedSl4 => {
                if t.is_zero() {
                    return Err(Error::ZeroScalar);
                }
                let m3 = num_traits::pow(t.recip(), 3);
                let a = (t + &m3) / ri(2);
                let b = (t - &m3) / ri(2);
                let mut g = RatMatrix::diag(&[t.clone(), a.clone(), a, t.clone()]);
                g[(1, 2)] = b.clone();
                g[(2, 1)] = b;
                SliceAut::conjugation(g)
            }
        };
        Ok(base.compose(&self.representatives[component]))
    }

    /// Every representative and `samples` random elements per component
    /// fix `x` and `y`; the block group also satisfies `K Kᵀ = 1`.
    pub fn verify(&self, triple: &Sl2Triple, samples: usize, seed: u64) -> Result<CheckReport> {
        let mut rep = CheckReport::new("slodowy.cxy");
        let mut rng = rng_from_seed(seed);
        let mut elems: Vec<SliceAut> = self.representatives.clone();
        for comp in 0..self.representatives.len() {
            for _ in 0..samples {
                elems.push(self.element(&random_nonzero_rat(&mut rng), comp)?);
            }
        }
        for g in &elems {
            rep.case(g.fixes(&triple.x) && g.fixes(&triple.y), format!("{:?}", g.conj), "fixes x, y", "moves");
            if let CxyFamily::BlockOrthogonal = self.family {
                let k =
                    RatMatrix::from_rows((0..2).map(|i| (0..2).map(|j| g.conj[(i, j)].clone()).collect()).collect());
                rep.case(&k * &k.transpose() == RatMatrix::identity(2), "K K^T", "1", format!("{:?}", k));
            }
        }
        Ok(rep)
    }
}

/// Whether an automorphism is inner, decided from explicit certificates:
/// untwisted conjugations are inner; a twisted one is shown outer by an
/// element whose invariants it changes. `None` when no certificate is found.
pub fn is_inner(alg: &MatrixLieAlgebra, aut: &SliceAut) -> Result<Option<bool>> {
    if !aut.twisted {
        return Ok(Some(true));
    }
    let mut acc = RatMatrix::zeros(alg.size, alg.size);
    for (k, b) in alg.basis.iter().enumerate() {
        acc = &acc + &b.scale(&ri(k as i64 + 1));
        for m in [b, &acc] {
            if alg.adjoint_quotient(m)?.values != alg.adjoint_quotient(&aut.apply(m))?.values {
                return Ok(Some(false));
            }
        }
    }
    Ok(None)
}

/// Inner/outer comparison of the two finite actions: the `sp4` action is
/// `Ad_M`, the twisted `sl4` action is outer and differs from every listed
/// inner representative.
pub fn inner_outer_check() -> Result<CheckReport> {
    let mut rep = CheckReport::new("slodowy.inner_outer");
    let s = build_subregular_slice(&build_algebra(Family::Sp, 4)?)?;
    let aut = s.finite_action()?;
    rep.case(is_inner(&s.triple.algebra, aut)? == Some(true), "sp4 action", "inner", "not inner");
    let m = sp4_flip();
    let by_ad = s.directions.iter().all(|d| aut.apply(d) == SliceAut::conjugation(m.clone()).apply(d));
    rep.case(by_ad, "sp4 action = Ad_M", "true", by_ad.to_string());
    let sh = appendix_slice()?;
    let phi = sh.finite_action()?;
    rep.case(is_inner(&sh.triple.algebra, phi)? == Some(false), "phi_a", "outer", "not certified outer");
    let group = CxyGroup::twisted_sl4();
    for (k, m) in [ri(1), ri(2), rat(1, 3), ri(-1)].iter().enumerate() {
        let g = group.element(m, 0)?;
        let same = sh.triple.algebra.basis.iter().all(|b| g.apply(b) == phi.apply(b));
        rep.case(!same, format!("phi_a vs Ad_M[{k}]"), "differ", "agree");
    }
    Ok(rep)
}

/// Upper bound for the size of the generic fibre of `ξ∘χ` restricted to the
/// fixed locus `S^𝐂`, obtained by triangular elimination: every parameter
/// must be solved linearly or be a root of a polynomial with constant
/// leading coefficient over the base coordinates. `None` if elimination
/// stalls.
pub fn fixed_locus_fiber_bound(sl: &SlodowySlice) -> Result<Option<usize>> {
    let fixed = fixed_parameters(sl)?;
    let quotient = sl.quotient_polys()?;
    let r = quotient.len();
    // variables: the fixed parameters, then base coordinates b1..br
    let mut vars: Vec<String> = fixed.iter().map(|&k| sl.names[k].clone()).collect();
    vars.extend((1..=r).map(|j| format!("b{j}")));
    let mut images: Vec<MultiPoly> = vec![Poly::zero(&vars); sl.dimension()];
    for (pos, &k) in fixed.iter().enumerate() {
        images[k] = Poly::var(&vars, pos);
    }
    let mut eqs: Vec<MultiPoly> = Vec::with_capacity(r);
    for (j, q) in quotient.iter().enumerate() {
        eqs.push(q.substitute(&images)? - Poly::var(&vars, fixed.len() + j));
    }
    let mut remaining: Vec<usize> = (0..fixed.len()).collect();
    let mut bound = 1usize;
    while !remaining.is_empty() {
        let mut progress = false;
        for idx in 0..remaining.len() {
            let v = remaining[idx];
            let found = eqs.iter().enumerate().find_map(|(e, p)| {
                let cs = coeffs_in(p, v);
                let top = cs.len().checked_sub(1)?;
                if top == 0 {
                    return None;
                }
                let lead = &cs[top];
                (lead.degree() == Some(0)).then_some((e, top, cs))
            });
            if let Some((e, top, cs)) = found {
                if top == 1 {
                    // v = −c0 / c1, substitute everywhere
                    let c1 = cs[1].coeff(&vec![0; vars.len()]);
                    let sol = cs[0].scale(&(-c1.recip()));
                    let mut sub = Poly::vars_of(&vars);
                    sub[v] = sol;
                    eqs.remove(e);
                    eqs = eqs.iter().map(|p| p.substitute(&sub)).collect::<Result<_>>()?;
                } else {
                    bound *= top;
                    eqs.remove(e);
                }
                remaining.remove(idx);
                progress = true;
                break;
            }
        }
        if !progress {
            return Ok(None);
        }
    }
    Ok(Some(bound))
}

/// Coefficients of `p` as a polynomial in variable `v`, lowest first.
fn coeffs_in(p: &MultiPoly, v: usize) -> Vec<MultiPoly> {
    let vars = p.variables().to_vec();
    let mut out: Vec<MultiPoly> = Vec::new();
    for (e, c) in p.terms() {
        let k = e[v] as usize;
        while out.len() <= k {
            out.push(Poly::zero(&vars));
        }
        let mut e2 = e.clone();
        e2[v] = 0;
        out[k].add_term(e2, c.clone());
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// `u3m` on the locus where the odd coefficient of `ξ_h` vanishes.
fn u3m_on_fixed_base<R: Ring>(u1m: &R, u1p: &R, u2p: &R, two: &R, four: &R) -> R {
    let u1m3 = u1m.clone() * u1m.clone() * u1m.clone();
    two.clone() * u1m.clone() * (u1p.clone() + u2p.clone()) - four.clone() * u1m3
}

/// The isomorphism from the `sp4` slice onto the fixed-base part of the
/// appendix slice, on parameters `(v1m, v2m, v1p, v2p) ↦ (u1m, u2m, u1p, u2p)`:
/// `u1m = r·v1m` with `r² = 2/3`, `u2m = (3i/2)·v2m`,
/// `u1p = v1m²/2 + 3(v1p − v2p)/2`, `u2p = v1m²/2 − 3(v1p + v2p)/2`.
pub fn appendix_phi<R: Ring>(v: &[R; 4], lift: impl Fn(Tower) -> R) -> [R; 4] {
    let half = lift(Tower::from_rat(rat(1, 2)));
    let three_half = lift(Tower::from_rat(rat(3, 2)));
    let sq = v[0].clone() * v[0].clone();
    [
        lift(Tower::r()) * v[0].clone(),
        lift(Tower::i() * Tower::from_rat(rat(3, 2))) * v[1].clone(),
        half.clone() * sq.clone() + three_half.clone() * (v[2].clone() - v[3].clone()),
        half * sq - three_half * (v[2].clone() + v[3].clone()),
    ]
}

/// Full appendix-slice parameters `(u1m, u2m, u3m, u1p, u2p)` of a point
/// `(u1m, u2m, u1p, u2p)` over the fixed base.
pub fn restricted_point<R: Ring>(u: &[R; 4], lift: impl Fn(Tower) -> R) -> [R; 5] {
    let u3 = u3m_on_fixed_base(&u[0], &u[2], &u[3], &lift(Tower::from_rat(ri(2))), &lift(Tower::from_rat(ri(4))));
    [u[0].clone(), u[1].clone(), u3, u[2].clone(), u[3].clone()]
}

/// `ξ̃∘ξ⁻¹(b2, b4) = (b2/2, 9(b4 − b2²/4))` on the `sp4` base.
pub fn rescale_base<R: Ring>(b: &[R], lift: impl Fn(Rat) -> R) -> Vec<R> {
    vec![lift(rat(1, 2)) * b[0].clone(), lift(ri(9)) * (b[1].clone() - lift(rat(1, 4)) * b[0].clone() * b[0].clone())]
}

/// `ξ̃_h∘ξ_h⁻¹(b2, 0, b4) = (−b2/6, −b4)` on the fixed part of the `sl4` base.
pub fn rescale_base_h<R: Ring>(b: &[R], lift: impl Fn(Rat) -> R) -> Vec<R> {
    vec![lift(rat(-1, 6)) * b[0].clone(), -b[2].clone()]
}

/// Both composites of the square at a point of the `sp4` slice, plus the
/// odd coefficient of `ξ_h` (which must vanish): `(ξ̃_h∘χ_h∘Φ, ξ̃∘χ, b3)`.
pub fn appendix_square<R: Ring>(
    s: &SlodowySlice,
    sh: &SlodowySlice,
    v: &[R; 4],
    lift: impl Fn(Tower) -> R + Copy,
) -> Result<(Vec<R>, Vec<R>, R)> {
    let from_rat = |q: &Rat| lift(Tower::from_rat(q.clone()));
    let u = restricted_point(&appendix_phi(v, lift), lift);
    let mh = sh.point_generic(&u, from_rat)?;
    let bh = sh.triple.algebra.invariants_generic(&mh, from_rat)?;
    let m = s.point_generic(v, from_rat)?;
    let b = s.triple.algebra.invariants_generic(&m, from_rat)?;
    let left = rescale_base_h(&bh, |q| from_rat(&q));
    let right = rescale_base(&b, |q| from_rat(&q));
    Ok((left, right, bh[1].clone()))
}

/// Sampled and symbolic checks of the square, of `Φ` landing on the
/// slice over the fixed base, and of its equivariance.
pub fn verify_appendix(samples: usize, seed: u64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("slodowy.appendix");
    let s = build_subregular_slice(&build_algebra(Family::Sp, 4)?)?;
    let sh = appendix_slice()?;

    // symbolic: both composites as polynomials over ℚ(r, i)
    let names = &s.names;
    let vars: Vec<Poly<Tower>> = Poly::vars_of(names);
    let v: [Poly<Tower>; 4] = [vars[0].clone(), vars[1].clone(), vars[2].clone(), vars[3].clone()];
    let (left, right, b3) = appendix_square(&s, &sh, &v, |t| Poly::constant(names, t))?;
    rep.case(b3.is_zero(), "b3 on Phi(S)", "0", format!("{b3}"));
    for (k, (l, r)) in left.iter().zip(&right).enumerate() {
        let diff = l.clone() - r.clone();
        rep.case(diff.is_zero(), format!("square, coordinate {}", k + 1), "0", format!("{diff}"));
        let rational = l.try_map_coeffs(|t| t.rational_part()).is_some();
        rep.case(rational, format!("rational coefficients, coordinate {}", k + 1), "true", rational.to_string());
    }

    let mut rng = rng_from_seed(seed);
    let lift = |t: Tower| t;
    for _ in 0..samples {
        let p: [Rat; 4] = std::array::from_fn(|_| random_rat(&mut rng));
        let vt: [Tower; 4] = p.clone().map(Tower::from_rat);
        let (l, r, _) = appendix_square(&s, &sh, &vt, lift)?;
        rep.case(l == r, format!("square at {}", fmt_vec(&p)), format!("{r:?}"), format!("{l:?}"));

        // 𝐂-equivariance: flipping v⁻ flips u⁻
        let flipped = [-vt[0].clone(), -vt[1].clone(), vt[2].clone(), vt[3].clone()];
        let a = appendix_phi(&flipped, lift);
        let b = appendix_phi(&vt, lift);
        let ok = a == [-b[0].clone(), -b[1].clone(), b[2].clone(), b[3].clone()];
        rep.case(ok, format!("C-equivariance at {}", fmt_vec(&p)), "equal", "differ");

        // ℂ*-equivariance with the weights of both slices
        let lambda = random_nonzero_rat(&mut rng);
        let scaled: Vec<Rat> = cstar_action(&s, &lambda, &p)?;
        let sv: [Tower; 4] = std::array::from_fn(|k| Tower::from_rat(scaled[k].clone()));
        let a = restricted_point(&appendix_phi(&sv, lift), lift);
        let b = restricted_point(&appendix_phi(&vt, lift), lift);
        let ok = a
            .iter()
            .zip(&b)
            .zip(&sh.cstar_weights)
            .all(|((x, y), &w)| *x == y.clone() * Tower::from_rat(num_traits::pow(lambda.clone(), w as usize)));
        rep.case(ok, format!("C*-equivariance at {} lambda={lambda}", fmt_vec(&p)), "equal", "differ");
    }
    Ok(rep)
}

/// Coordinates `(x, y, z, b2, b3, b4)` putting the appendix slice in the form
/// `b4 = −x⁴ − b2 x² − b3 x + yz`.
pub fn unfolding_coordinates(sh: &SlodowySlice, u: &[Rat]) -> Result<[Rat; 6]> {
    let b = slice_quotient(sh, u)?;
    let (u1m, u2m, u1p, u2p) = (&u[0], &u[1], &u[3], &u[4]);
    let x = ri(3) * u1m;
    let y = u1p - u2p + ri(2) * u2m;
    let z = u1p - u2p - ri(2) * u2m;
    Ok([x, y, z, b[0].clone(), b[1].clone(), b[2].clone()])
}

/// The same coordinates as polynomials in the slice parameters.
pub fn unfolding_polys(sh: &SlodowySlice) -> Result<[MultiPoly; 6]> {
    let b = sh.quotient_polys()?;
    let n = &sh.names;
    let v = Poly::<Rat>::vars_of(n);
    let c = |q: i64| Poly::constant(n, ri(q));
    let x = c(3) * v[0].clone();
    let y = v[3].clone() - v[4].clone() + c(2) * v[1].clone();
    let z = v[3].clone() - v[4].clone() - c(2) * v[1].clone();
    Ok([x, y, z, b[0].clone(), b[1].clone(), b[2].clone()])
}

/// `b4 + x⁴ + b2 x² + b3 x − yz` as a polynomial in the slice parameters.
pub fn unfolding_residual(sh: &SlodowySlice) -> Result<MultiPoly> {
    let [x, y, z, b2, b3, b4] = unfolding_polys(sh)?;
    let x2 = x.clone() * x.clone();
    Ok(b4 + x2.clone() * x2.clone() + b2 * x2 + b3 * x - y * z)
}

/// Symbolic identity plus equivariance of the unfolding coordinates:
/// `𝐂` acts as `(−x, z, y, b2, −b3, b4)`, ℂ* with weights `(2, 4, 4, 4, 6, 8)`.
pub fn verify_unfolding_coordinates(samples: usize, seed: u64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("slodowy.unfolding_coordinates");
    let sh = appendix_slice()?;
    let res = unfolding_residual(&sh)?;
    rep.case(res.is_zero(), "b4 + x^4 + b2 x^2 + b3 x - yz", "0", format!("{res}"));
    let weights = [2u32, 4, 4, 4, 6, 8];
    let mut rng = rng_from_seed(seed);
    for _ in 0..samples {
        let u: Vec<Rat> = (0..5).map(|_| random_rat(&mut rng)).collect();
        let c = unfolding_coordinates(&sh, &u)?;
        let cu = unfolding_coordinates(&sh, &c_action_on_slice(&sh, &u)?)?;
        let expect = [-c[0].clone(), c[2].clone(), c[1].clone(), c[3].clone(), -c[4].clone(), c[5].clone()];
        rep.case(cu == expect, format!("C at {}", fmt_vec(&u)), fmt_vec(&expect), fmt_vec(&cu));
        let lambda = random_nonzero_rat(&mut rng);
        let cl = unfolding_coordinates(&sh, &cstar_action(&sh, &lambda, &u)?)?;
        let expect: Vec<Rat> =
            c.iter().zip(weights).map(|(q, w)| q * num_traits::pow(lambda.clone(), w as usize)).collect();
        rep.case(
            cl.to_vec() == expect,
            format!("C* at {} lambda={lambda}", fmt_vec(&u)),
            fmt_vec(&expect),
            fmt_vec(&cl),
        );
    }
    Ok(rep)
}

//! Classical Lie algebras as explicit matrix algebras, with Chevalley bases,
//! lifted diagram automorphisms and adjoint quotients.
//!
//! All three families are written so that the Cartan subalgebra is diagonal:
//! `sl_n` is traceless matrices, `sp_2n` preserves `J = [[0, 1], [−1, 0]]`
//! (so elements are `[[A, B], [C, −Aᵀ]]` with `B`, `C` symmetric) and `so_n`
//! preserves the anti-diagonal form `K_{i, n+1−i} = 1`.

mod chevalley;
mod quotient;

pub use chevalley::{
    averaging_projection, clift, extend_from_generators, find_embedding, fixed_subalgebra, lift_graph_aut,
    ChevalleyData, FixedSubalgebra, FoldedEmbedding, LieAut,
};
pub use quotient::{
    base_iso_check, diagram_check, homogeneous_algebra, pfaffian, surviving_degrees, BaseIsoReport,
    RestrictedInvariants,
};

use crate::error::{Error, Result};
use crate::exactalg::{lift_matrix, principal_minor_sum, Echelon, Rat, RatMatrix, Ring};
use crate::rootsys::{DynkinType, Series};
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Sl,
    Sp,
    So,
    /// A subalgebra cut out by other means, e.g. a fixed-point algebra.
    Subalgebra,
}

/// Linear coordinates with respect to a basis of matrices.
///
/// A set of matrix positions on which the basis is independent is chosen
/// once; coordinates are then one small matrix-vector product plus a
/// reconstruction check.
#[derive(Clone, Debug)]
pub(crate) struct Coordinates {
    positions: Vec<usize>,
    inv: RatMatrix,
}

impl Coordinates {
    pub(crate) fn new(basis: &[RatMatrix]) -> Result<Self> {
        let rows: Vec<Vec<Rat>> = basis.iter().map(|b| b.to_vec()).collect();
        if rows.is_empty() {
            return Ok(Coordinates { positions: Vec::new(), inv: RatMatrix::zeros(0, 0) });
        }
        let (_, pivots) = RatMatrix::from_rows(rows.clone()).rref();
        if pivots.len() != basis.len() {
            return Err(Error::Precondition("basis matrices are linearly dependent".into()));
        }
        let d = basis.len();
        let sub = RatMatrix::from_rows((0..d).map(|p| (0..d).map(|k| rows[k][pivots[p]].clone()).collect()).collect());
        let inv = sub.inverse().expect("pivot submatrix is invertible");
        Ok(Coordinates { positions: pivots, inv })
    }

    pub(crate) fn solve(&self, basis: &[RatMatrix], x: &RatMatrix) -> Option<Vec<Rat>> {
        let e = x.entries();
        let xp: Vec<Rat> = self.positions.iter().map(|&p| e[p].clone()).collect();
        let c = self.inv.mul_vec(&xp);
        (combine(basis, &c, x.rows()) == *x).then_some(c)
    }
}

pub(crate) fn combine(basis: &[RatMatrix], c: &[Rat], n: usize) -> RatMatrix {
    let mut out = RatMatrix::zeros(n, n);
    for (b, ci) in basis.iter().zip(c) {
        if !ci.is_zero() {
            out = &out + &b.scale(ci);
        }
    }
    out
}

/// A Lie algebra of `size × size` matrices given by an explicit basis.
#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    pub family: Family,
    pub size: usize,
    pub defining_form: Option<RatMatrix>,
    pub basis: Vec<RatMatrix>,
    pub cartan_indices: Vec<usize>,
    coords: Coordinates,
}

/// Standard symplectic form `[[0, 1], [−1, 0]]` of size `2m`.
pub fn symplectic_form(n: usize) -> RatMatrix {
    let m = n / 2;
    let mut j = RatMatrix::zeros(n, n);
    for i in 0..m {
        j[(i, m + i)] = Rat::one();
        j[(m + i, i)] = -Rat::one();
    }
    j
}

/// Anti-diagonal symmetric form with ones.
pub fn antidiagonal_form(n: usize) -> RatMatrix {
    let mut k = RatMatrix::zeros(n, n);
    for i in 0..n {
        k[(i, n - 1 - i)] = Rat::one();
    }
    k
}

/// `sl_n` (n ≥ 2), `sp_n` (n even, n ≥ 4) or `so_n` (n = 5 or n ≥ 7), `n`
/// being the matrix size.
pub fn build_algebra(family: Family, n: usize) -> Result<MatrixLieAlgebra> {
    match family {
        Family::Sl if n >= 2 => {
            let mut basis = Vec::with_capacity(n * n - 1);
            for i in 0..n - 1 {
                basis.push(&RatMatrix::unit(n, i, i) - &RatMatrix::unit(n, i + 1, i + 1));
            }
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        basis.push(RatMatrix::unit(n, i, j));
                    }
                }
            }
            MatrixLieAlgebra::from_basis(Family::Sl, n, None, basis)
        }
        Family::Sp if n >= 4 && n.is_multiple_of(2) => MatrixLieAlgebra::with_form(Family::Sp, symplectic_form(n)),
        Family::So if n == 5 || n >= 7 => MatrixLieAlgebra::with_form(Family::So, antidiagonal_form(n)),
        _ => Err(Error::InadmissibleType(format!("{family:?} with matrix size {n}"))),
    }
}

impl MatrixLieAlgebra {
    fn from_basis(family: Family, size: usize, form: Option<RatMatrix>, basis: Vec<RatMatrix>) -> Result<Self> {
        let coords = Coordinates::new(&basis)?;
        let cartan_indices = (0..basis.len()).filter(|&k| is_diagonal(&basis[k])).collect();
        Ok(MatrixLieAlgebra { family, size, defining_form: form, basis, cartan_indices, coords })
    }

    /// The algebra `{X : XᵀF + FX = 0}` of a non-degenerate form `F`,
    /// symmetric for `So` and alternating for `Sp`.
    pub fn with_form(family: Family, form: RatMatrix) -> Result<Self> {
        let n = form.rows();
        let sign = match family {
            Family::So => Rat::one(),
            Family::Sp => -Rat::one(),
            _ => return Err(Error::Precondition("only so and sp are defined by a form".into())),
        };
        if !form.is_square() || form.transpose() != form.scale(&sign) {
            return Err(Error::Precondition("form has the wrong symmetry".into()));
        }
        let finv = form.inverse().ok_or_else(|| Error::Precondition("form is degenerate".into()))?;
        // X ↦ ½(X − F⁻¹XᵀF) projects gl_n onto the algebra
        let sigma = |x: &RatMatrix| &(&finv * &x.transpose()) * &form;
        let mut cands: Vec<RatMatrix> = (0..n).map(|i| RatMatrix::unit(n, i, i)).collect();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    cands.push(RatMatrix::unit(n, i, j));
                }
            }
        }
        let mut ech = Echelon::new();
        let mut basis = Vec::new();
        for c in cands {
            let x = &c - &sigma(&c);
            if !x.is_zero() && ech.insert(&x.to_vec()) {
                basis.push(x);
            }
        }
        MatrixLieAlgebra::from_basis(family, n, Some(form), basis)
    }

    /// A subalgebra spanned by `basis`; closure is checked.
    pub fn subalgebra(size: usize, basis: Vec<RatMatrix>) -> Result<Self> {
        let alg = MatrixLieAlgebra::from_basis(Family::Subalgebra, size, None, basis)?;
        if !alg.is_closed() {
            return Err(Error::Precondition("span is not closed under the bracket".into()));
        }
        Ok(alg)
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Dimension predicted by the classical formulas.
    pub fn classical_dimension(&self) -> Option<usize> {
        let n = self.size;
        match self.family {
            Family::Sl => Some(n * n - 1),
            Family::Sp => Some(n * (n + 1) / 2),
            Family::So => Some(n * (n - 1) / 2),
            Family::Subalgebra => None,
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan_indices.len()
    }

    pub fn dynkin_type(&self) -> Option<DynkinType> {
        let n = self.size;
        let (s, r) = match self.family {
            Family::Sl => (Series::A, n - 1),
            Family::Sp => (Series::C, n / 2),
            Family::So if n % 2 == 1 => (Series::B, n / 2),
            Family::So => (Series::D, n / 2),
            Family::Subalgebra => return None,
        };
        DynkinType::new(s, r).ok()
    }

    pub fn coords(&self, x: &RatMatrix) -> Option<Vec<Rat>> {
        if x.rows() != self.size || x.cols() != self.size {
            return None;
        }
        self.coords.solve(&self.basis, x)
    }

    pub fn from_coords(&self, c: &[Rat]) -> RatMatrix {
        combine(&self.basis, c, self.size)
    }

    pub fn contains(&self, x: &RatMatrix) -> bool {
        self.coords(x).is_some()
    }

    pub fn cartan_basis(&self) -> Vec<RatMatrix> {
        self.cartan_indices.iter().map(|&k| self.basis[k].clone()).collect()
    }

    /// Every bracket of basis elements lies in the span.
    pub fn is_closed(&self) -> bool {
        let d = self.dimension();
        (0..d).all(|i| (i + 1..d).all(|j| self.contains(&self.basis[i].bracket(&self.basis[j]))))
    }

    /// `[b_i, b_j] = Σ_k c^k_{ij} b_k` for all `i < j`.
    pub fn structure_constants(&self) -> Result<Vec<(usize, usize, Vec<Rat>)>> {
        let d = self.dimension();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let c = self.coords(&self.basis[i].bracket(&self.basis[j])).ok_or(Error::NotInAlgebra)?;
                out.push((i, j, c));
            }
        }
        Ok(out)
    }

    /// Degrees of the generators returned by [`Self::adjoint_quotient`].
    pub fn invariant_degrees(&self) -> Vec<u32> {
        invariant_kinds(self.family, self.size).iter().map(|k| k.degree()).collect()
    }

    /// `ξ∘χ(m)`: the fundamental invariants of `m`, ordered by degree.
    pub fn adjoint_quotient(&self, m: &RatMatrix) -> Result<AdjointQuotient> {
        if !self.contains(m) {
            return Err(Error::NotInAlgebra);
        }
        let values = self.invariants_generic(&lift_matrix::<Rat>(m), |q| q.clone())?;
        Ok(AdjointQuotient { values, degrees: self.invariant_degrees() })
    }

    /// The same invariants over any coefficient ring, for symbolic matrices.
    /// `lift` embeds rational constants (entries of the defining form).
    pub fn invariants_generic<R: Ring>(&self, m: &[Vec<R>], lift: impl Fn(&Rat) -> R) -> Result<Vec<R>> {
        let kinds = invariant_kinds(self.family, self.size);
        if kinds.is_empty() {
            return Err(Error::Unsupported("adjoint quotient of a generic subalgebra".into()));
        }
        Ok(kinds
            .iter()
            .map(|k| match *k {
                Invariant::Exterior(j) => principal_minor_sum(m, j as usize),
                Invariant::Pfaffian(_) => {
                    let form = self.defining_form.as_ref().expect("so has a form");
                    let f: Vec<Vec<R>> =
                        (0..self.size).map(|i| (0..self.size).map(|j| lift(&form[(i, j)])).collect()).collect();
                    pfaffian(&matmul_generic(&f, m))
                }
            })
            .collect())
    }
}

fn is_diagonal(m: &RatMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m[(i, j)].is_zero()))
}

pub(crate) fn matmul_generic<R: Ring>(a: &[Vec<R>], b: &[Vec<R>]) -> Vec<Vec<R>> {
    let n = a.len();
    let zero = a[0][0].zero_like();
    (0..n)
        .map(|i| {
            (0..b[0].len())
                .map(|j| {
                    (0..b.len()).fold(zero.clone(), |acc, k| {
                        if a[i][k].is_zero_elem() || b[k][j].is_zero_elem() {
                            acc
                        } else {
                            acc + a[i][k].clone() * b[k][j].clone()
                        }
                    })
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Invariant {
    Exterior(u32),
    Pfaffian(u32),
}

impl Invariant {
    fn degree(self) -> u32 {
        match self {
            Invariant::Exterior(d) | Invariant::Pfaffian(d) => d,
        }
    }
}

fn invariant_kinds(family: Family, n: usize) -> Vec<Invariant> {
    let n = n as u32;
    match family {
        Family::Sl => (2..=n).map(Invariant::Exterior).collect(),
        Family::Sp => (1..=n / 2).map(|k| Invariant::Exterior(2 * k)).collect(),
        Family::So if n % 2 == 1 => (1..=n / 2).map(|k| Invariant::Exterior(2 * k)).collect(),
        Family::So => {
            let m = n / 2;
            let mut v: Vec<Invariant> = (1..m).map(|k| Invariant::Exterior(2 * k)).collect();
            v.push(Invariant::Pfaffian(m));
            // stable: the Pfaffian follows an exterior trace of equal degree
            v.sort_by_key(|k| k.degree());
            v
        }
        Family::Subalgebra => Vec::new(),
    }
}

/// Values of the fundamental invariants with their degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointQuotient {
    pub values: Vec<Rat>,
    pub degrees: Vec<u32>,
}

impl AdjointQuotient {
    /// ℂ*-weights `2d_j` of the coordinates.
    pub fn cstar_weights(&self) -> Vec<u32> {
        self.degrees.iter().map(|d| 2 * d).collect()
    }
}

/// Trace form `(X, Y) ↦ tr(XY)`, used in place of the Killing form; the
/// two are proportional on a simple algebra.
pub fn trace_form(x: &RatMatrix, y: &RatMatrix) -> Rat {
    (x * y).trace()
}

/// Gram matrix of the trace form on the basis of `alg`.
pub fn trace_form_gram(alg: &MatrixLieAlgebra) -> RatMatrix {
    let d = alg.dimension();
    let mut g = RatMatrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let v = trace_form(&alg.basis[i], &alg.basis[j]);
            g[(i, j)] = v.clone();
            g[(j, i)] = v;
        }
    }
    g
}

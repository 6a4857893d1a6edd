use super::poly::MultiPoly;
use super::ring::{ri, Rat, Ring, Scalar};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| ri(x)).collect()).collect())
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols);
        RatMatrix { rows, cols, data }
    }

    pub fn diag(entries: &[Rat]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn diag_i64(entries: &[i64]) -> Self {
        Self::diag(&entries.iter().map(|&x| ri(x)).collect::<Vec<_>>())
    }

    /// Matrix unit `E_{ij}` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = Rat::one();
        m
    }

    pub fn column(v: &[Rat]) -> Self {
        RatMatrix { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Reflection in the anti-diagonal: entry (i, j) moves to (n−1−j, n−1−i).
    pub fn anti_transpose(&self) -> Self {
        let (r, c) = (self.rows, self.cols);
        let mut t = Self::zeros(c, r);
        for i in 0..r {
            for j in 0..c {
                t[(c - 1 - j, r - 1 - i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rat) -> Self {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// `[self, other] = self·other − other·self`.
    pub fn bracket(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum()).collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(i, j)] - &f * &m[(r, j)];
                        m[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel as plain vectors.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else { return Ok(Rat::zero()) };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if !m[(i, c)].is_zero() {
                    let f = &m[(i, c)] / &piv;
                    for j in c..n {
                        let v = &m[(i, j)] - &f * &m[(c, j)];
                        m[(i, j)] = v;
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Some solution of `self · x = b`, if one exists.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &p) in piv.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Stack `vectors` as the columns of a matrix.
    pub fn from_columns(vectors: &[Vec<Rat>]) -> Self {
        let rows = vectors.first().map_or(0, |v| v.len());
        let mut m = Self::zeros(rows, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            for i in 0..rows {
                m[(i, j)] = v[i].clone();
            }
        }
        m
    }

    /// Flatten to a vector (row-major), used when matrices are treated as
    /// points of a vector space.
    pub fn to_vec(&self) -> Vec<Rat> {
        self.data.clone()
    }
}

/// Incrementally maintained echelon basis of a subspace of ℚ^n.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after clearing every stored pivot.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Add `v` if it is independent of the stored vectors.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = r[p].recip();
        let r: Vec<Rat> = r.iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

/// Kernel basis of `m`, returned as column matrices.
pub fn nullspace(m: &RatMatrix) -> Vec<RatMatrix> {
    m.kernel().iter().map(|v| RatMatrix::column(v)).collect()
}

/// Characteristic polynomial `det(x·1 − m)` in the single variable `x`,
/// by the Faddeev–LeVerrier recursion (exact over ℚ).
pub fn char_poly(m: &RatMatrix) -> Result<MultiPoly> {
    let coeffs = char_coeffs(m)?;
    let mut p = MultiPoly::zero(&["x"]);
    for (k, c) in coeffs.into_iter().enumerate() {
        p.add_term(vec![k as u32], c);
    }
    Ok(p)
}

/// Coefficients `c_0, …, c_n` of the characteristic polynomial.
fn char_coeffs(m: &RatMatrix) -> Result<Vec<Rat>> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let mut c = vec![Rat::zero(); n + 1];
    c[n] = Rat::one();
    let mut mk = RatMatrix::zeros(n, n);
    let id = RatMatrix::identity(n);
    for k in 1..=n {
        mk = &(m * &mk) + &id.scale(&c[n - k + 1]);
        let t = (m * &mk).trace();
        c[n - k] = -t / ri(k as i64);
    }
    Ok(c)
}

/// `tr Λ^k m`, the k-th elementary symmetric function of the eigenvalues.
pub fn exterior_trace(m: &RatMatrix, k: usize) -> Result<Rat> {
    let n = m.rows;
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    if k == 0 || k > n {
        return Err(Error::OutOfRange { k, n });
    }
    let c = char_coeffs(m)?;
    let v = c[n - k].clone();
    Ok(if k % 2 == 1 { -v } else { v })
}

/// Determinant over an arbitrary commutative ring by cofactor expansion.
/// Meant for the small symbolic matrices (size ≤ 5) of the slice modules.
pub fn det_generic<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n));
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = m[0][0].zero_like();
    for j in 0..n {
        if m[0][j].is_zero_elem() {
            continue;
        }
        let minor: Vec<Vec<R>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = m[0][j].clone() * det_generic(&minor);
        acc = if j % 2 == 0 { acc + t } else { acc - t };
    }
    acc
}

/// Sum of the k×k principal minors: `tr Λ^k` over any commutative ring.
pub fn principal_minor_sum<R: Ring>(m: &[Vec<R>], k: usize) -> R {
    let n = m.len();
    let mut acc = m[0][0].zero_like();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let sub: Vec<Vec<R>> = idx.iter().map(|&i| idx.iter().map(|&j| m[i][j].clone()).collect()).collect();
        acc = acc + det_generic(&sub);
        // next k-subset in lexicographic order
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return acc;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Lift a rational matrix to a matrix over another scalar ring.
pub fn lift_matrix<R: Scalar>(m: &RatMatrix) -> Vec<Vec<R>> {
    (0..m.rows).map(|i| (0..m.cols).map(|j| R::from_rat(m[(i, j)].clone())).collect()).collect()
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn mul(self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = RatMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn add(self, o: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sum");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn sub(self, o: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in difference");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        self.scale(&ri(-1))
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(super::rat_to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

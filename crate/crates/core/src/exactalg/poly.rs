use super::ring::{Rat, Ring, Scalar};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Sparse multivariate polynomial over a coefficient ring `R`.
///
/// The variable list is fixed at construction and is part of the value:
/// combining polynomials over different lists is refused rather than merged.
/// The arithmetic operators panic on a mismatch; use the `checked_*`
/// methods when the lists come from user input.
#[derive(Clone, PartialEq)]
pub struct Poly<R> {
    vars: Arc<[String]>,
    terms: BTreeMap<Vec<u32>, R>,
}

/// Polynomials with rational coefficients.
pub type MultiPoly = Poly<Rat>;

impl<R: Scalar> Poly<R> {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        Poly { vars: vars.iter().map(|s| s.as_ref().to_string()).collect(), terms: BTreeMap::new() }
    }

    fn zero_on(vars: &Arc<[String]>) -> Self {
        Poly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: R) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    /// The `i`-th variable as a polynomial.
    pub fn var<S: AsRef<str>>(vars: &[S], i: usize) -> Self {
        let mut p = Self::zero(vars);
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        p.add_term(e, R::one_val());
        p
    }

    /// All variables, in order.
    pub fn vars_of<S: AsRef<str>>(vars: &[S]) -> Vec<Self> {
        (0..vars.len()).map(|i| Self::var(vars, i)).collect()
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: &[u32], c: R) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent length must match variable count");
        let mut p = Self::zero(vars);
        p.add_term(exps.to_vec(), c);
        p
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> R {
        self.terms.get(exps).cloned().unwrap_or_else(R::zero_val)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: R) {
        debug_assert_eq!(exps.len(), self.vars.len());
        if c.is_zero_elem() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let s = old.clone() + c;
                if s.is_zero_elem() {
                    self.terms.remove(&exps);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    fn same_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch { left: self.vars.to_vec(), right: other.vars.to_vec() })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.clone().neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = Self::zero_on(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero_on(&self.vars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(&self.vars, R::one_val());
        for _ in 0..n {
            out = out * self.clone();
        }
        out
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree of each term under integer weights on the variables.
    pub fn weighted_degrees(&self, weights: &[u32]) -> Vec<u32> {
        self.terms.keys().map(|e| e.iter().zip(weights).map(|(a, w)| a * w).sum()).collect()
    }

    /// True when every term has weighted degree `deg`.
    pub fn is_quasi_homogeneous(&self, weights: &[u32], deg: u32) -> bool {
        weights.len() == self.vars.len() && self.weighted_degrees(weights).iter().all(|&d| d == deg)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero_on(&self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            let mut k = c.clone();
            for _ in 1..e[i] {
                k = k + c.clone();
            }
            out.add_term(ne, k);
        }
        out
    }

    /// Evaluate at a point given positionally.
    pub fn eval(&self, point: &[R]) -> Result<R> {
        if point.len() != self.vars.len() {
            return Err(Error::DimensionMismatch { expected: self.vars.len(), got: point.len() });
        }
        let mut acc = R::zero_val();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Replace variable `i` by `images[i]`; the result lives on the common
    /// variable list of the images.
    pub fn substitute(&self, images: &[Poly<R>]) -> Result<Poly<R>> {
        if images.len() != self.vars.len() {
            return Err(Error::DimensionMismatch { expected: self.vars.len(), got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => self.vars.clone(),
        };
        for im in images {
            if im.vars != target {
                return Err(Error::VariableMismatch { left: target.to_vec(), right: im.vars.to_vec() });
            }
        }
        let mut out = Self::zero_on(&target);
        // cache powers of each image
        let mut powers: Vec<Vec<Poly<R>>> = vec![vec![Self::constant(&target, R::one_val())]; images.len()];
        for (e, c) in &self.terms {
            let mut t = Self::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().clone() * images[i].clone();
                    powers[i].push(next);
                }
                t = t * powers[i][k as usize].clone();
            }
            out = out + t;
        }
        Ok(out)
    }

    /// Re-express over a different variable list that contains every
    /// variable actually used.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self> {
        let new: Arc<[String]> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        let mut pos = Vec::with_capacity(self.vars.len());
        for v in self.vars.iter() {
            pos.push(new.iter().position(|w| w == v));
        }
        let mut out = Self::zero_on(&new);
        for (e, c) in &self.terms {
            let mut ne = vec![0; new.len()];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    match pos[i] {
                        Some(j) => ne[j] = k,
                        None => return Err(Error::MissingVariable(self.vars[i].clone())),
                    }
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    pub fn map_coeffs<S: Scalar>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        let mut out = Poly::<S>::zero_on(&self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Try to pull every coefficient back along `f`; `None` if some
    /// coefficient has no preimage.
    pub fn try_map_coeffs<S: Scalar>(&self, f: impl Fn(&R) -> Option<S>) -> Option<Poly<S>> {
        let mut out = Poly::<S>::zero_on(&self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Some(out)
    }
}

impl MultiPoly {
    /// Evaluate with named values; every variable of `self` must be bound.
    pub fn eval_named(&self, point: &[(&str, Rat)]) -> Result<Rat> {
        let mut vals = Vec::with_capacity(self.vars.len());
        for v in self.vars.iter() {
            match point.iter().find(|(n, _)| n == v) {
                Some((_, q)) => vals.push(q.clone()),
                None => return Err(Error::MissingVariable(v.clone())),
            }
        }
        self.eval(&vals)
    }
}

/// Exact evaluation of a rational polynomial at a named point.
pub fn poly_eval(p: &MultiPoly, point: &[(&str, Rat)]) -> Result<Rat> {
    p.eval_named(point)
}

impl<R: Scalar> Add for Poly<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("polynomial variable lists differ")
    }
}

impl<R: Scalar> Sub for Poly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("polynomial variable lists differ")
    }
}

impl<R: Scalar> Mul for Poly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("polynomial variable lists differ")
    }
}

impl<R: Scalar> Neg for Poly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        let mut out = self;
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }
}

impl<R: Scalar> Ring for Poly<R> {
    fn zero_like(&self) -> Self {
        Self::zero_on(&self.vars)
    }
    fn one_like(&self) -> Self {
        Self::constant(&self.vars, R::one_val())
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Scalar + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first reads more naturally
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], k) })
                .collect();
            let cs = c.to_string();
            let (sign, body) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => ("-", rest.to_string()),
                _ => ("+", cs.clone()),
            };
            let coeff = if body.contains(['+', '-', ' ']) { format!("({body})") } else { body };
            if n == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<R: fmt::Debug> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poly").field("vars", &self.vars).field("terms", &self.terms).finish()
    }
}

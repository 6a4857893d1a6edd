//! Quasi-homogeneous ADE surface singularities and their semi-universal
//! ℂ*-deformations, with cyclic group actions and the threefolds they
//! define over a curve.
//!
//! A Jacobian ring `ℂ[x,y,z]/(∂f)` is graded, so it is computed degree by
//! degree with exact linear algebra: in weighted degree `k` the ideal is
//! spanned by monomial multiples of the partials, and the standard
//! monomials (non-pivots in lex order `x > y > z`) give the basis.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::cameral::riemann_hurwitz_genus;
use crate::error::{Error, Result};
use crate::exactalg::{ri, MultiPoly, Poly, Rat, RatMatrix};
use crate::rootsys::{fold_coinvariants, DynkinType, FoldingDatum, Series};

const XYZ: [&str; 3] = ["x", "y", "z"];

/// `f(x, y, z)` with weights making it quasi-homogeneous of `degree`.
#[derive(Clone, Debug)]
pub struct QuasiHomogSing {
    pub kind: DynkinType,
    pub poly: MultiPoly,
    pub weights: [u32; 3],
    pub degree: u32,
}

/// Coprime and Lie-compatible weights of a simple singularity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightConvention {
    pub coprime: [u32; 3],
    pub coprime_degree: u32,
    /// Doubled, except for `A_{2k}`, so that base weights are `2 d_j`.
    pub lie: [u32; 3],
    pub lie_degree: u32,
}

fn mono(exps: [u32; 3], c: i64) -> MultiPoly {
    Poly::monomial(&XYZ, &exps, ri(c))
}

/// Normal form, coprime weights and degree, by type. `D4` has two shapes:
/// `x³ + y³ + z²` (with the order-3 symmetry) and `x³ + xy² + z²` (order 2).
fn equation(t: DynkinType, order: usize) -> Result<(MultiPoly, [u32; 3], u32)> {
    let n = t.rank as u32;
    Ok(match t.series {
        Series::A => {
            let f = mono([n + 1, 0, 0], 1) - mono([0, 1, 1], 1);
            if n % 2 == 1 {
                (f, [1, n.div_ceil(2), n.div_ceil(2)], n + 1)
            } else {
                (f, [2, n + 1, n + 1], 2 * (n + 1))
            }
        }
        Series::D if n == 4 && order != 2 => {
            (mono([3, 0, 0], 1) + mono([0, 3, 0], 1) + mono([0, 0, 2], 1), [2, 2, 3], 6)
        }
        Series::D => (mono([n - 1, 0, 0], 1) + mono([1, 2, 0], 1) + mono([0, 0, 2], 1), [2, n - 2, n - 1], 2 * (n - 1)),
        Series::E => match n {
            6 => (mono([4, 0, 0], 1) + mono([0, 3, 0], 1) + mono([0, 0, 2], 1), [3, 4, 6], 12),
            7 => (mono([3, 1, 0], 1) + mono([0, 3, 0], 1) + mono([0, 0, 2], 1), [4, 6, 9], 18),
            _ => (mono([5, 0, 0], 1) + mono([0, 3, 0], 1) + mono([0, 0, 2], 1), [6, 10, 15], 30),
        },
        _ => return Err(Error::Unsupported(format!("{t} is not simply laced"))),
    })
}

/// Weights for type `t`; see [`WeightConvention`].
pub fn weight_convention(t: DynkinType) -> Result<WeightConvention> {
    let (_, w, d) = equation(t, 1)?;
    let doubled = !(t.series == Series::A && t.rank.is_multiple_of(2));
    let k = if doubled { 2 } else { 1 };
    Ok(WeightConvention { coprime: w, coprime_degree: d, lie: w.map(|x| k * x), lie_degree: k * d })
}

impl QuasiHomogSing {
    /// The simple singularity of type `t` in the shape used with a
    /// symmetry of the given order (1 for none).
    pub fn of_type(t: DynkinType, order: usize) -> Result<Self> {
        let (poly, _, _) = equation(t, order)?;
        let wc = weight_convention(t)?;
        QuasiHomogSing::new(t, poly, wc.lie, wc.lie_degree)
    }

    pub fn new(kind: DynkinType, poly: MultiPoly, weights: [u32; 3], degree: u32) -> Result<Self> {
        if poly.variables().len() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: poly.variables().len() });
        }
        if !poly.is_quasi_homogeneous(&weights, degree) {
            return Err(Error::Precondition(format!("{poly} is not quasi-homogeneous of degree {degree}")));
        }
        Ok(QuasiHomogSing { kind, poly, weights, degree })
    }

    /// `Σ w_i − deg f`. For the Lie-compatible weights this is always 2.
    pub fn weight_excess(&self) -> i64 {
        self.weights.iter().map(|&w| w as i64).sum::<i64>() - self.degree as i64
    }

    fn weight_of(&self, e: &[u32]) -> u32 {
        e.iter().zip(self.weights).map(|(a, w)| a * w).sum()
    }
}

fn monomials_of_weight(weights: [u32; 3], k: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=k / weights[0] {
        let ra = k - a * weights[0];
        for b in 0..=ra / weights[1] {
            let rb = ra - b * weights[1];
            if rb.is_multiple_of(weights[2]) {
                out.push([a, b, rb / weights[2]]);
            }
        }
    }
    // lex order x > y > z, largest first
    out.sort_by(|p, q| q.cmp(p));
    out
}

/// Monomials representing a basis of the Jacobian ring, highest weight
/// first. Fails if the ring is not finite-dimensional within the socle
/// bound `Σ (deg − 2 w_i)`.
pub fn jacobian_basis(s: &QuasiHomogSing) -> Result<Vec<MultiPoly>> {
    let partials: Vec<MultiPoly> = (0..3).map(|i| s.poly.derivative(i)).collect();
    let socle: i64 = s.weights.iter().map(|&w| s.degree as i64 - 2 * w as i64).sum();
    if socle < 0 {
        return Err(Error::Precondition("negative socle degree".into()));
    }
    let mut basis: Vec<[u32; 3]> = Vec::new();
    for k in 0..=(socle as u32 + s.weights.iter().max().copied().unwrap_or(1)) {
        let mons = monomials_of_weight(s.weights, k);
        if mons.is_empty() {
            continue;
        }
        let index: BTreeMap<[u32; 3], usize> = mons.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for (i, p) in partials.iter().enumerate() {
            let dp = s.degree - s.weights[i];
            if dp > k || p.is_zero() {
                continue;
            }
            for m in monomials_of_weight(s.weights, k - dp) {
                let mut row = vec![Rat::zero(); mons.len()];
                for (e, c) in p.terms() {
                    let key = [e[0] + m[0], e[1] + m[1], e[2] + m[2]];
                    row[index[&key]] += c;
                }
                rows.push(row);
            }
        }
        let pivots = if rows.is_empty() { Vec::new() } else { RatMatrix::from_rows(rows).rref().1 };
        let standard: Vec<[u32; 3]> =
            mons.iter().enumerate().filter(|(i, _)| !pivots.contains(i)).map(|(_, m)| *m).collect();
        if k as i64 > socle && !standard.is_empty() {
            return Err(Error::Precondition(format!("Jacobian ring of {} is not finite", s.poly)));
        }
        basis.extend(standard);
    }
    basis.sort_by(|p, q| s.weight_of(q).cmp(&s.weight_of(p)).then(q.cmp(p)));
    Ok(basis.into_iter().map(|e| mono(e, 1)).collect())
}

/// A cyclic action `v_i ↦ ζ^{e_i} v_{π(i)}` on a list of variables, `ζ` a
/// primitive `order`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicAction {
    pub order: u32,
    pub perm: Vec<usize>,
    pub phases: Vec<u32>,
}

impl CyclicAction {
    pub fn trivial(n: usize) -> Self {
        CyclicAction { order: 1, perm: (0..n).collect(), phases: vec![0; n] }
    }

    /// The action used for folding type `t` by an automorphism of `order`.
    pub fn standard(t: DynkinType, order: usize) -> Result<Self> {
        let (perm, phases, n) = match (t.series, order) {
            (_, 1) => (vec![0, 1, 2], vec![0, 0, 0], 1),
            (Series::A, 2) if t.rank % 2 == 1 => (vec![0, 2, 1], vec![1, 0, 0], 2),
            (Series::D, 2) => (vec![0, 1, 2], vec![0, 1, 0], 2),
            (Series::D, 3) if t.rank == 4 => (vec![0, 1, 2], vec![1, 2, 0], 3),
            (Series::E, 2) if t.rank == 6 => (vec![0, 1, 2], vec![1, 0, 0], 2),
            _ => return Err(Error::Unsupported(format!("no order-{order} action on the {t} singularity"))),
        };
        Ok(CyclicAction { order: n, perm, phases })
    }

    /// `ζ^k` when it is rational.
    fn root_value(&self, k: u32) -> Option<Rat> {
        let k = k % self.order;
        if k == 0 {
            Some(ri(1))
        } else if 2 * k == self.order {
            Some(ri(-1))
        } else {
            None
        }
    }

    /// Phase and image exponent vector of a monomial.
    fn on_monomial(&self, e: &[u32]) -> (u32, Vec<u32>) {
        let mut img = vec![0; e.len()];
        let mut phase = 0;
        for (i, &k) in e.iter().enumerate() {
            img[self.perm[i]] += k;
            phase = (phase + k * self.phases[i]) % self.order.max(1);
        }
        (phase, img)
    }

    /// Whether the action fixes `p` exactly. Every monomial goes to a
    /// single monomial, so this is a term-by-term comparison.
    pub fn preserves(&self, p: &MultiPoly) -> bool {
        p.terms().all(|(e, c)| {
            let (phase, img) = self.on_monomial(e);
            match self.root_value(phase) {
                Some(r) => p.coeff(&img) == c * r,
                None => false,
            }
        })
    }

    fn extend(&self, extra_phases: &[u32]) -> CyclicAction {
        let mut perm = self.perm.clone();
        let mut phases = self.phases.clone();
        for (k, &ph) in extra_phases.iter().enumerate() {
            perm.push(self.perm.len() + k);
            phases.push(ph);
        }
        CyclicAction { order: self.order, perm, phases }
    }

    /// Human-readable images, e.g. `(-x, z, y)` or `(mu x, mu^2 y, z)`.
    pub fn describe(&self, vars: &[String]) -> String {
        let parts: Vec<String> = (0..vars.len())
            .map(|j| {
                let i = self.perm.iter().position(|&p| p == j).expect("permutation");
                let v = &vars[i];
                match (self.root_value(self.phases[i]), self.phases[i] % self.order.max(1)) {
                    (_, 0) => v.clone(),
                    (Some(_), _) => format!("-{v}"),
                    (None, 1) => format!("mu {v}"),
                    (None, k) => format!("mu^{k} {v}"),
                }
            })
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// `f + Σ b_j g_j` with weights and the extended group action.
#[derive(Clone, Debug)]
pub struct DeformationFamily {
    pub singularity: QuasiHomogSing,
    pub basis_monomials: Vec<MultiPoly>,
    pub base_names: Vec<String>,
    pub base_weights: Vec<u32>,
    /// Action on `(x, y, z, b_1, …)`.
    pub action: CyclicAction,
    pub folded_type: Option<DynkinType>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilySummary {
    pub singularity: String,
    pub equation: String,
    pub weights: [u32; 3],
    pub degree: u32,
    pub jacobian_basis: Vec<String>,
    pub base: Vec<String>,
    pub base_weights: Vec<u32>,
    pub action: String,
    pub invariant_base: Vec<String>,
    pub invariant_equation: String,
    pub folded_type: Option<String>,
}

fn base_names(weights: &[u32]) -> Vec<String> {
    let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
    weights
        .iter()
        .map(|&w| {
            let k = seen.entry(w).or_insert(0);
            *k += 1;
            let base = format!("b{}", w / 2);
            if *k == 1 {
                base
            } else {
                format!("{base}{}", "t".repeat(*k - 1))
            }
        })
        .collect()
}

/// Semi-universal deformation of `s` with the action extended to the base
/// so that the family polynomial is invariant.
pub fn semiuniversal_family(s: &QuasiHomogSing, action: &CyclicAction) -> Result<DeformationFamily> {
    if action.perm.len() != 3 || !action.preserves(&s.poly) {
        return Err(Error::ActionNotPreserving);
    }
    let basis = jacobian_basis(s)?;
    let mut weights = Vec::with_capacity(basis.len());
    let mut phases = Vec::with_capacity(basis.len());
    for g in &basis {
        let (e, _) = g.terms().next().expect("monomial");
        let (phase, img) = action.on_monomial(e);
        if img != *e {
            return Err(Error::Unsupported(format!("action moves the basis monomial {g}")));
        }
        weights.push(s.degree - s.weight_of(e));
        // b_j g_j is invariant when b_j picks up the inverse phase
        phases.push((action.order - phase % action.order) % action.order);
    }
    let names = base_names(&weights);
    let full = action.extend(&phases);
    let fam = DeformationFamily {
        singularity: s.clone(),
        basis_monomials: basis,
        base_names: names,
        base_weights: weights,
        action: full,
        folded_type: None,
    };
    if !fam.action.preserves(&fam.polynomial()?) {
        return Err(Error::ActionNotPreserving);
    }
    Ok(fam)
}

/// The family for folding type `t` by its automorphism of `order`, tagged
/// with the folded type read off the coinvariant root system.
pub fn folding_family(t: DynkinType, order: usize) -> Result<DeformationFamily> {
    let s = QuasiHomogSing::of_type(t, order)?;
    let action = CyclicAction::standard(t, order)?;
    let mut fam = semiuniversal_family(&s, &action)?;
    fam.folded_type = Some(if order == 1 { t } else { fold_coinvariants(&FoldingDatum::standard(t, order)?)?.kind });
    Ok(fam)
}

impl DeformationFamily {
    pub fn variables(&self) -> Vec<String> {
        XYZ.iter().map(|s| s.to_string()).chain(self.base_names.iter().cloned()).collect()
    }

    pub fn rank(&self) -> usize {
        self.basis_monomials.len()
    }

    /// `f + Σ b_j g_j` in `(x, y, z, b…)`.
    pub fn polynomial(&self) -> Result<MultiPoly> {
        let vars = self.variables();
        let mut f = self.singularity.poly.with_vars(&vars)?;
        for (j, g) in self.basis_monomials.iter().enumerate() {
            f = f + Poly::var(&vars, 3 + j) * g.with_vars(&vars)?;
        }
        Ok(f)
    }

    pub fn combined_weights(&self) -> Vec<u32> {
        self.singularity.weights.iter().copied().chain(self.base_weights.iter().copied()).collect()
    }

    /// Indices of the base coordinates fixed by the action.
    pub fn invariant_base(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&j| self.action.phases[3 + j].is_multiple_of(self.action.order)).collect()
    }

    /// The family restricted to the fixed base: other `b_j` set to zero.
    pub fn invariant_polynomial(&self) -> Result<MultiPoly> {
        let vars = self.variables();
        let keep = self.invariant_base();
        let images: Vec<MultiPoly> = (0..vars.len())
            .map(|i| if i < 3 || keep.contains(&(i - 3)) { Poly::var(&vars, i) } else { Poly::zero(&vars) })
            .collect();
        self.polynomial()?.substitute(&images)
    }

    /// The family polynomial is quasi-homogeneous of `deg f` for the
    /// combined weights.
    pub fn is_quasi_homogeneous(&self) -> Result<bool> {
        Ok(self.polynomial()?.is_quasi_homogeneous(&self.combined_weights(), self.singularity.degree))
    }

    pub fn summary(&self) -> Result<FamilySummary> {
        let inv = self.invariant_base();
        Ok(FamilySummary {
            singularity: self.singularity.kind.to_string(),
            equation: format!("{} = 0", self.polynomial()?),
            weights: self.singularity.weights,
            degree: self.singularity.degree,
            jacobian_basis: self.basis_monomials.iter().map(|g| g.to_string()).collect(),
            base: self.base_names.clone(),
            base_weights: self.base_weights.clone(),
            action: self.action.describe(&self.variables()),
            invariant_base: inv.iter().map(|&j| self.base_names[j].clone()).collect(),
            invariant_equation: format!("{} = 0", self.invariant_polynomial()?),
            folded_type: self.folded_type.map(|t| t.to_string()),
        })
    }
}

/// The family twisted over a curve: each coordinate and base parameter is
/// a section of `K^{w/2}` for its Lie-compatible weight `w`.
#[derive(Clone, Debug)]
pub struct ThreefoldFamily {
    pub deformation: DeformationFamily,
    pub coordinate_twists: [u32; 3],
    pub base_twists: Vec<u32>,
}

/// Fixed curve `α² = c·b` of the action inside the threefold, with `α` a
/// section of `K^m` and `b` a base parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedLocus {
    /// Fixed line parametrized by `α`: coordinate `i` is `coeffs[i]·α`.
    pub coeffs: [i64; 3],
    pub equation: String,
    pub twist: u32,
    pub section_degree: u32,
}

impl ThreefoldFamily {
    pub fn new(deformation: DeformationFamily) -> Result<Self> {
        let s = &deformation.singularity;
        let all: Vec<u32> = s.weights.iter().chain(&deformation.base_weights).copied().collect();
        if all.iter().any(|w| w % 2 != 0) {
            return Err(Error::Unsupported("odd weights need a square root of K".into()));
        }
        Ok(ThreefoldFamily {
            coordinate_twists: s.weights.map(|w| w / 2),
            base_twists: deformation.base_weights.iter().map(|w| w / 2).collect(),
            deformation,
        })
    }

    pub fn equation(&self) -> Result<String> {
        Ok(format!("{} = 0", self.deformation.invariant_polynomial()?))
    }

    /// The fixed line of the coordinate action, substituted into the
    /// invariant family. Supported when the fixed set of `(x, y, z)` is a
    /// line whose defining coefficients are rational.
    pub fn fixed_locus(&self) -> Result<FixedLocus> {
        let act = &self.deformation.action;
        if act.order == 1 {
            return Err(Error::NoFiniteAction);
        }
        // each cycle of the permutation contributes a line when the phases
        // around it are trivial
        let mut coeffs = [0i64; 3];
        let mut lines = 0;
        let mut seen = [false; 3];
        for start in 0..3 {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut j = act.perm[start];
            while j != start {
                cyc.push(j);
                seen[j] = true;
                j = act.perm[j];
            }
            if cyc.iter().all(|&i| act.phases[i].is_multiple_of(act.order)) {
                for &i in &cyc {
                    coeffs[i] = 1;
                }
                lines += 1;
            }
        }
        if lines != 1 {
            return Err(Error::Unsupported(format!("fixed set of dimension {lines}")));
        }
        let f = self.deformation.invariant_polynomial()?;
        let vars = self.deformation.variables();
        let mut names = vec!["alpha".to_string()];
        names.extend(vars[3..].iter().cloned());
        let alpha = Poly::var(&names, 0);
        let images: Vec<MultiPoly> = (0..vars.len())
            .map(|i| if i < 3 { alpha.scale(&ri(coeffs[i])) } else { Poly::var(&names, i - 2) })
            .collect();
        let mut g = f.substitute(&images)?;
        if g.coeff(&[2].iter().copied().chain(std::iter::repeat_n(0, vars.len() - 3)).collect::<Vec<_>>()) < Rat::zero()
        {
            g = -g;
        }
        let i = coeffs.iter().position(|&c| c != 0).expect("one line");
        let twist = self.coordinate_twists[i];
        Ok(FixedLocus { coeffs, equation: format!("{g} = 0"), twist, section_degree: 2 * twist })
    }

    /// Genus of the fixed curve, a double cover of a genus-`g` curve
    /// branched at the zeros of a section of `K^{2m}`.
    pub fn fixed_locus_genus(&self, g: u32) -> Result<u64> {
        if g < 2 {
            return Err(Error::GenusTooSmall(g));
        }
        let fl = self.fixed_locus()?;
        let branch = fl.section_degree as u64 * (2 * g as u64 - 2);
        riemann_hurwitz_genus(2, g as u64, branch)
    }
}

/// Components of the exceptional divisor of the blown-up quotient: `|a| − 1`
/// lines over each fixed point.
pub fn exceptional_divisor_components(order: u32) -> Result<u32> {
    match order {
        2 | 3 => Ok(order - 1),
        _ => Err(Error::Unsupported(format!("exceptional divisor for order {order}"))),
    }
}

/// For the order-3 family, the quotient coordinates `ν = (α1³, α2³, α1α2, α3)`
/// satisfy the family equation and `ν3³ − ν1ν2 = 0`. Returns the two
/// residuals (family relation minus the family polynomial, and the cubic).
pub fn order3_quotient_residuals(fam: &DeformationFamily) -> Result<(MultiPoly, MultiPoly)> {
    let vars = fam.variables();
    let f = fam.invariant_polynomial()?;
    let v = Poly::<Rat>::vars_of(&vars);
    let nu = [
        v[0].clone() * v[0].clone() * v[0].clone(),
        v[1].clone() * v[1].clone() * v[1].clone(),
        v[0].clone() * v[1].clone(),
        v[2].clone(),
    ];
    let inv = fam.invariant_base();
    let (b2, b6) = match inv.as_slice() {
        [i, j] => (v[3 + i].clone(), v[3 + j].clone()),
        _ => return Err(Error::Unsupported("expected a two-parameter invariant base".into())),
    };
    let relation = nu[0].clone() + nu[1].clone() + nu[3].clone() * nu[3].clone() + b2 * nu[2].clone() + b6;
    let cubic = nu[2].clone() * nu[2].clone() * nu[2].clone() - nu[0].clone() * nu[1].clone();
    Ok((relation - f, cubic))
}

impl fmt::Display for DeformationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.polynomial() {
            Ok(p) => write!(f, "{p} = 0"),
            Err(_) => write!(f, "<invalid family>"),
        }
    }
}

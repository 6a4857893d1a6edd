//! Dimension bookkeeping for Hitchin bases, fibres and the intermediate
//! Jacobian of the folded threefolds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::surviving_degrees;
use crate::report::CheckReport;
use crate::rootsys::{fold_coinvariants, DynkinType, FoldingDatum, Series};
use crate::unfolding::{folding_family, ThreefoldFamily};
use crate::weyl::WeylGroup;

/// `h⁰(Σ, K^d)` on a curve of genus `g ≥ 2` (Riemann–Roch; `K^d` is
/// non-special for `d ≥ 2`).
pub fn h0_canonical_power(d: u32, g: u32) -> Result<u64> {
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    Ok(match d {
        0 => 1,
        1 => g as u64,
        _ => (2 * d as u64 - 1) * (g as u64 - 1),
    })
}

/// `𝐁 = ⊕_j H⁰(Σ, K^{d_j})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HitchinBase {
    pub group_type: String,
    pub genus: u32,
    pub degrees: Vec<u32>,
    pub summand_dims: Vec<u64>,
}

impl HitchinBase {
    pub fn total(&self) -> u64 {
        self.summand_dims.iter().sum()
    }
}

fn base_from_degrees(name: String, degrees: Vec<u32>, g: u32) -> Result<HitchinBase> {
    let summand_dims = degrees.iter().map(|&d| h0_canonical_power(d, g)).collect::<Result<_>>()?;
    Ok(HitchinBase { group_type: name, genus: g, degrees, summand_dims })
}

pub fn dim_base(t: DynkinType, g: u32) -> Result<HitchinBase> {
    base_from_degrees(t.to_string(), t.degrees(), g)
}

/// Fibres of the Hitchin map are abelian varieties of the base dimension.
pub fn fiber_dim(t: DynkinType, g: u32) -> Result<u64> {
    Ok(dim_base(t, g)?.total())
}

#[derive(Clone, Debug, Serialize)]
pub struct FoldedBaseMatch {
    pub homogeneous: HitchinBase,
    pub folded: HitchinBase,
    pub surviving_degrees: Vec<u32>,
    pub invariant_part: u64,
    /// Surviving degrees read from the exponent tables rather than from
    /// restricting invariant polynomials.
    pub table_derived: bool,
}

impl FoldedBaseMatch {
    pub fn matches(&self) -> bool {
        self.invariant_part == self.folded.total()
    }
}

/// `dim 𝐁` of the folded group against the part of `𝐁_h` in the degrees
/// whose invariants survive on the fixed Cartan.
pub fn folded_base_match(fd: &FoldingDatum, g: u32) -> Result<FoldedBaseMatch> {
    let h = fd.homogeneous.kind;
    let homogeneous = dim_base(h, g)?;
    let folded_type = if fd.order() == 1 { h } else { fold_coinvariants(fd)?.kind };
    let folded = dim_base(folded_type, g)?;
    let (mut surviving, table_derived) = if fd.order() == 1 {
        (h.degrees(), false)
    } else if h.series == Series::E {
        // symbolic restriction of the E6 invariants is out of reach; the
        // folded degrees are those of F4
        (folded_type.degrees(), true)
    } else {
        (surviving_degrees(fd)?, false)
    };
    surviving.sort_unstable();
    // a multiset: D4 has two invariants of degree 4 and only one survives
    let invariant_part = surviving.iter().map(|&d| h0_canonical_power(d, g)).sum::<Result<u64>>()?;
    Ok(FoldedBaseMatch { homogeneous, folded, surviving_degrees: surviving, invariant_part, table_derived })
}

/// Dimension of the intermediate Jacobian `J²(Z)` of the folded threefold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsogenyDims {
    pub folded_type: String,
    pub genus: u32,
    pub dim_base: u64,
    pub genus_fixed_locus: u64,
    pub aut_order: u32,
    pub dim_j2z: u64,
    /// `b₃(Z) = 2 dim J²(Z)`.
    pub h3: u64,
}

/// `dim J²(Z) = dim 𝐁 + (|a| − 1)·g(X^𝐂)`.
pub fn isogeny_dimensions(fd: &FoldingDatum, g: u32) -> Result<IsogenyDims> {
    let h = fd.homogeneous.kind;
    let order = fd.order();
    let supported = order == 1 || matches!((h.series, h.rank, order), (Series::A, 3, 2) | (Series::D, 4, 3));
    if !supported {
        return Err(Error::Unsupported(format!("no fixed-locus data for {h} with an order-{order} symmetry")));
    }
    let folded_type = if order == 1 { h } else { fold_coinvariants(fd)?.kind };
    let dim_b = dim_base(folded_type, g)?.total();
    let genus_fixed_locus =
        if order == 1 { 0 } else { ThreefoldFamily::new(folding_family(h, order)?)?.fixed_locus_genus(g)? };
    let dim_j2z = dim_b + (order as u64 - 1) * genus_fixed_locus;
    Ok(IsogenyDims {
        folded_type: folded_type.to_string(),
        genus: g,
        dim_base: dim_b,
        genus_fixed_locus,
        aut_order: order as u32,
        dim_j2z,
        h3: 2 * dim_j2z,
    })
}

/// Degrees of the basic invariants recovered from the Poincaré polynomial
/// `Σ t^{ℓ(w)} = ∏ (1 + t + … + t^{d−1})`.
pub fn degrees_from_poincare(w: &WeylGroup) -> Result<Vec<u32>> {
    // multiply by (1 − t)^n to get ∏ (1 − t^{d_i}), then peel factors off
    // from the lowest degree upwards
    let mut q: Vec<i128> = w.poincare_polynomial().iter().map(|&c| c as i128).collect();
    for _ in 0..w.rank() {
        let mut next = vec![0i128; q.len() + 1];
        for (k, &c) in q.iter().enumerate() {
            next[k] += c;
            next[k + 1] -= c;
        }
        q = next;
    }
    let mut degrees = Vec::new();
    loop {
        while q.last() == Some(&0) {
            q.pop();
        }
        let Some(k) = (1..q.len()).find(|&k| q[k] != 0) else { break };
        if q[k] >= 0 {
            return Err(Error::Precondition("not a product of cyclotomic factors".into()));
        }
        // divide by (1 − t^k)
        for j in k..q.len() {
            q[j] += q[j - k];
        }
        degrees.push(k as u32);
    }
    if q != [1] || degrees.len() != w.rank() {
        return Err(Error::Precondition("Poincaré polynomial did not factor".into()));
    }
    Ok(degrees)
}

/// Compares the stored degree table with the Poincaré polynomial of the
/// enumerated group.
pub fn exponent_table_check(groups: &[(DynkinType, &WeylGroup)]) -> Result<CheckReport> {
    let mut rep = CheckReport::new("hitchin.exponent_table");
    for (t, w) in groups {
        let got = degrees_from_poincare(w)?;
        rep.case(got == t.degrees(), t.to_string(), format!("{:?}", t.degrees()), format!("{got:?}"));
    }
    Ok(rep)
}

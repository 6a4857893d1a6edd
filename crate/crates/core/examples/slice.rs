//! Subregular slice in sp4 and the adjoint quotient restricted to it.

use foldlie::exactalg::{rat, rat_to_string, Rat};
use foldlie::liealg::{build_algebra, Family};
use foldlie::slodowy::{build_subregular_slice, cstar_action, slice_quotient};

fn main() -> foldlie::Result<()> {
    let s = build_subregular_slice(&build_algebra(Family::Sp, 4)?)?;
    println!("slice parameters {:?}, weights {:?}", s.names, s.summary().cstar_weights);
    for (p, w) in s.quotient_polys()?.iter().zip(s.quotient_weights()) {
        println!("  weight {w}: {p}");
    }
    let point = [rat(1, 2), rat(-1, 1), rat(3, 1), rat(2, 5)];
    let lambda = rat(2, 1);
    let show = |v: Vec<Rat>| v.iter().map(rat_to_string).collect::<Vec<_>>().join(", ");
    println!("chi(p)     = ({})", show(slice_quotient(&s, &point)?));
    println!("chi(2 . p) = ({})", show(slice_quotient(&s, &cstar_action(&s, &lambda, &point)?)?));
    Ok(())
}

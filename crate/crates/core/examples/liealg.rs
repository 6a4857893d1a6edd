//! The fixed subalgebra of sl4 under the outer automorphism, and the
//! restriction of the invariant polynomials to its Cartan.

use foldlie::liealg::{base_iso_check, build_algebra, fixed_subalgebra, lift_graph_aut, ChevalleyData, Family};
use foldlie::rootsys::{FoldingDatum, GraphAut};

fn main() -> foldlie::Result<()> {
    let cd = ChevalleyData::new(&build_algebra(Family::Sl, 4)?)?;
    let aut = lift_graph_aut(&cd, &GraphAut::standard("A3".parse()?, 2)?)?;
    let fixed = fixed_subalgebra(&cd, &aut)?;
    println!(
        "sl4: dim {}, fixed part dim {}, rank {}, {} root lines",
        cd.algebra.dimension(),
        fixed.algebra.dimension(),
        fixed.rank(),
        fixed.root_functionals.len()
    );

    let b = base_iso_check(&FoldingDatum::standard("A3".parse()?, 2)?, 20, 42)?;
    for (k, p) in b.restricted.polys.iter().enumerate() {
        println!("  sigma_{} restricted: {}", b.restricted.degrees[k], p);
    }
    println!("folded type {}, checks passed: {}", b.folded_type, b.report.passed());
    Ok(())
}

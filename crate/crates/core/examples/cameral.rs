//! A random transversal W(C2)-cover of a genus-2 curve, induced up to W(A3).

use foldlie::cameral::{hitchin_fiber_rank, induced_cover_report, random_transversal, LatticeAction};
use foldlie::report::rng_from_seed;
use foldlie::rootsys::FoldingDatum;
use foldlie::weyl::WeylFolding;

fn main() -> foldlie::Result<()> {
    let wf = WeylFolding::new(&FoldingDatum::standard("A3".parse()?, 2)?)?;
    let mut rng = rng_from_seed(42);
    let cm = random_transversal(&wf.folded, 2, 16, true, &mut rng)?;
    let ic = induced_cover_report(&wf, &cm)?;
    println!("W(C2)-cover: genus {:?}", ic.original.component_genera);
    println!(
        "induced W(A3)-cover: {} components of genus {:?}, copies of the original: {}",
        ic.geometry.component_count, ic.geometry.component_genera, ic.components_match
    );
    let rank = hitchin_fiber_rank(&wf.folded, &cm, &LatticeAction::root_lattice(&wf.folded))?;
    println!("rank of the invariant cocharacter cohomology: {rank}");
    Ok(())
}

//! Folds every simply-laced type that has a diagram automorphism and prints
//! the two non-simply-laced types that come out.
//!
//!     cargo run --example fold

use foldlie::rootsys::{fold_coinvariants, fold_invariants, folded_lattices, FoldingDatum};

fn main() -> foldlie::Result<()> {
    for (t, order) in [("A3", 2), ("A5", 2), ("A7", 2), ("D4", 2), ("D5", 2), ("D4", 3), ("E6", 2)] {
        let fd = FoldingDatum::standard(t.parse()?, order)?;
        let co = fold_coinvariants(&fd)?;
        let inv = fold_invariants(&fd)?;
        let (lat, _) = folded_lattices(&fd)?;
        println!(
            "{t} / a^{order}: coinvariants {} ({} roots), invariants {}, lattice rank {}, orbits {:?}",
            co.kind,
            co.all_roots.len(),
            inv.kind,
            lat.rank,
            fd.aut.orbits()
        );
    }
    Ok(())
}

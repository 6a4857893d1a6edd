//! Hitchin base dimensions and intermediate-Jacobian dimensions.

use foldlie::hitchin::{dim_base, isogeny_dimensions};
use foldlie::rootsys::FoldingDatum;

fn main() -> foldlie::Result<()> {
    for g in 2..=4 {
        let a3 = dim_base("A3".parse()?, g)?;
        let c2 = dim_base("C2".parse()?, g)?;
        println!("g={g}: A3 {:?} = {}, C2 {:?} = {}", a3.summand_dims, a3.total(), c2.summand_dims, c2.total());
    }
    for (t, order) in [("A3", 2), ("D4", 3)] {
        let d = isogeny_dimensions(&FoldingDatum::standard(t.parse()?, order)?, 2)?;
        println!(
            "{}: dim B = {}, fixed curve genus {}, dim J2 = {}",
            d.folded_type, d.dim_base, d.genus_fixed_locus, d.dim_j2z
        );
    }
    Ok(())
}

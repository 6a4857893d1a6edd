//! Fixed curves of the folded threefolds over curves of genus 2..5.

use foldlie::unfolding::{exceptional_divisor_components, folding_family, ThreefoldFamily};

fn main() -> foldlie::Result<()> {
    for (name, t, order) in [("C2", "A3", 2), ("G2", "D4", 3)] {
        let tf = ThreefoldFamily::new(folding_family(t.parse()?, order)?)?;
        let fl = tf.fixed_locus()?;
        let genera = (2..=5).map(|g| tf.fixed_locus_genus(g)).collect::<foldlie::Result<Vec<_>>>()?;
        println!(
            "{name}: fixed curve {}, genera for g = 2..5: {genera:?}, exceptional components {}",
            fl.equation,
            exceptional_divisor_components(order as u32)?
        );
    }
    Ok(())
}

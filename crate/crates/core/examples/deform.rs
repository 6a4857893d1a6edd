//! Semi-universal deformations of A3 and D4 with their folding symmetries.

use foldlie::unfolding::folding_family;

fn main() -> foldlie::Result<()> {
    for (t, order) in [("A3", 2), ("D4", 3)] {
        let fam = folding_family(t.parse()?, order)?;
        let s = fam.summary()?;
        println!("{t}: {}", s.equation);
        println!("   symmetry {} of order {order}", s.action);
        println!("   invariant family {}", s.invariant_equation);
    }
    Ok(())
}

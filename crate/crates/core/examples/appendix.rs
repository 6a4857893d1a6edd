//! Compares the twisted slice in sl4 with the sp4 slice through the explicit
//! isomorphism, exactly over Q(sqrt(2/3), i).

use foldlie::slodowy::{appendix_slice, verify_appendix, verify_unfolding_coordinates};

fn main() -> foldlie::Result<()> {
    let sh = appendix_slice()?;
    println!("twisted slice: parameters {:?}", sh.names);
    let square = verify_appendix(25, 7)?;
    println!("{}: {} cases, {} failures", square.check, square.cases_run, square.failures.len());
    let unfold = verify_unfolding_coordinates(25, 7)?;
    println!("{}: {} cases, {} failures", unfold.check, unfold.cases_run, unfold.failures.len());
    Ok(())
}

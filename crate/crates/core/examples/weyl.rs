//! Enumerates W(D4), restricts its triality-commutant to the fixed Cartan and
//! checks the result is W(G2).

use foldlie::hitchin::degrees_from_poincare;
use foldlie::rootsys::FoldingDatum;
use foldlie::weyl::WeylFolding;

fn main() -> foldlie::Result<()> {
    let wf = WeylFolding::new(&FoldingDatum::standard("D4".parse()?, 3)?)?;
    let w = &wf.homogeneous;
    println!("|W(D4)| = {}, Poincaré polynomial {:?}", w.order(), w.poincare_polynomial());
    println!("degrees from the Poincaré polynomial: {:?}", degrees_from_poincare(w)?);
    println!("commutant of triality: {} elements", wf.commutant.len());
    println!("folded group: {} elements, degrees {:?}", wf.folded.order(), degrees_from_poincare(&wf.folded)?);
    let rep = wf.verify_isomorphism();
    println!("restriction is an isomorphism: {} ({} cases)", rep.passed(), rep.cases_run);
    Ok(())
}

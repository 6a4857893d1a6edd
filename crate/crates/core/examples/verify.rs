//! Runs every verification suite and prints per-section counts.

use foldlie::verify::{run_suite, Suite};

fn main() -> foldlie::Result<()> {
    let rep = run_suite(Suite::All, 5, 42)?;
    for s in &rep.sections {
        println!("{:<40} {:>5} cases  {} failures", s.check, s.cases_run, s.failures);
    }
    println!("total {} cases, passed: {}", rep.cases_run, rep.passed());
    Ok(())
}

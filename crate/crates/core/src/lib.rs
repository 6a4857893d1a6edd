pub mod cameral;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod hitchin;
pub mod liealg;
pub mod report;
pub mod rootsys;
pub mod slodowy;
pub mod unfolding;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};

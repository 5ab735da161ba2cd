pub mod algebra;
pub mod error;
pub mod lax;
pub mod pade;
pub mod qkernel;
pub mod qrt;
pub mod report;
pub mod suite;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};

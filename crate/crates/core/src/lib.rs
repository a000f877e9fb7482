pub mod bijections;
pub mod cli;
pub mod error;
pub mod lattice_paths;
pub mod partitions;
pub mod posets;
pub mod qseries;
pub mod sign;
pub mod verify;

pub use error::{Error, Result};
pub use sign::Sign;

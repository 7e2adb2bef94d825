pub mod algebra;
pub mod cli;
pub mod error;
pub mod kazhdan;
pub mod reptheory;
pub mod spectral;
pub mod symgroup;
pub mod verify;

pub use error::{Error, Result};

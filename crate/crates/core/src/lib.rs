pub mod canonical;
pub mod cli;
pub mod error;
pub mod fp;
pub mod hall;
pub mod ic;
pub mod laurent;
pub mod repquiver;
pub mod verify;

pub use error::{Error, Result};

//! V-monotone independence: labeled non-crossing partitions, mixed moments,
//! discrete Fock-space models, and the central-limit moment sequence.

pub mod error;
pub mod fock;
pub mod json;
pub mod labelings;
pub mod mgf;
pub mod moments;
pub mod partitions;
pub mod polyengine;
pub mod verify;

pub use error::{Error, Result};

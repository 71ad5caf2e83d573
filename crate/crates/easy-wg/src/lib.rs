//! Exact partition calculus, categories of partitions, Weingarten
//! integration and free-probability moment machinery for the easy
//! orthogonal groups and their liberations.

pub mod category;
pub mod cli;
pub mod error;
pub mod freeprob;
pub mod linalg;
pub mod mc;
pub mod oracle;
pub mod partition;
pub mod tensor;
pub mod tpoly;
pub mod verify;
pub mod weingarten;

pub use category::{CategoryId, Family};
pub use error::{Error, Result};
pub use partition::{Direction, Partition};

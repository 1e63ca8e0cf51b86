pub mod bell;
pub mod charlier;
pub mod check;
pub mod cli;
pub mod error;
pub mod poisson;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod stirling;
pub mod tables;
pub mod verify;

#[cfg(test)]
mod testing;

pub use error::{Error, Result};
pub use poly::Poly;
pub use scalar::Scalar;
pub use series::Series;
pub use stirling::{StirlingKind, StirlingTable, Triangle};

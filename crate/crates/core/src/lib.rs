pub mod brauer;
pub mod burnside;
pub mod cli;
pub mod config;
pub mod error;
pub mod finabelian;
pub mod groupcoh;
pub mod report;

pub use error::{Error, Result};
pub use finabelian::{CyclicSum, FinAbGroup, IntMatrixHom, Subgroup};

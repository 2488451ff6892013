pub mod algebra;
pub mod assembly;
pub mod cli;
pub mod delta;
pub mod duality;
pub mod error;
pub mod fixtures;
pub mod functor;
pub mod subdivision;
pub mod total;

pub use error::{Error, Result};

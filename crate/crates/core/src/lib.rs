pub mod cli;
pub mod codec;
pub mod engine;
pub mod error;
pub mod numeric;
pub mod systems;

pub use error::{Error, Result};

pub mod algebra;
pub mod cli;
pub mod error;
pub mod family;
pub mod fsing;
pub mod groebner;
pub mod qdiv;

pub use error::{Error, Result};

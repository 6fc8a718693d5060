pub mod bits;
pub mod diagram;
pub mod error;
pub mod faces;

pub use error::{Error, Result};
pub mod coloring;
pub mod splice;
pub mod engine;
pub mod gf2;
pub mod cert;
pub mod poly;
pub mod build;
pub mod codes;
pub mod solver;

pub mod cli;
pub mod codes;
pub mod error;
pub mod exterior;
pub mod gf;
pub mod grassmann;
pub mod linalg;
pub mod qcombin;
pub mod report;

pub use error::{Error, Result};

pub mod apcomplex;
pub mod cli;
pub mod confrac;
pub mod cps;
pub mod equivalence;
pub mod error;
pub mod exactnum;
pub mod hull;
pub mod render;
pub mod substitution;
pub mod verify;
pub mod words;

pub use error::{Error, Result};

pub mod diagrams;
pub mod envelope;
pub mod error;
pub mod foxcalc;
pub mod groupring;
pub mod intersect;
pub mod johnson;
pub mod liefree;
pub mod selftest;
pub mod words;

pub use error::{Error, Result};

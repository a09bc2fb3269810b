pub mod action;
pub mod cactus;
pub mod complex;
pub mod dirichlet;
pub mod error;
pub mod geometry;
pub mod grouptheory;
pub mod report;
pub mod rewrite;
pub mod verify;
pub mod words;

pub use error::{Error, Result};

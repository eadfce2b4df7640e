pub mod error;
pub mod geometry;
pub mod groups;
pub mod classifier;
pub mod cohomology;
pub mod lattice;
pub mod links;
pub mod obstruction;
pub mod linalg;

pub use error::{Error, Result};

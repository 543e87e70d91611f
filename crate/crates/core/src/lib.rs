//! Modules of logarithmic derivations of central hyperplane arrangements,
//! computed with exact rational linear algebra instead of Groebner bases.

pub mod arrangement;
pub mod cli;
pub mod constraints;
pub mod error;
pub mod exact;
pub mod logderiv;
pub mod syzygy;
pub mod ziegler;

pub use error::{Error, Result};

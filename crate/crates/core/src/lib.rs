#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod analysis;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod operators;
pub mod spectra;

pub use error::{Error, Result};

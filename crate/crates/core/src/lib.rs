//! Exact support uncertainty relations for the standard complete set of
//! mutually unbiased bases in prime dimension.

pub mod error;
pub mod exactfield;
pub mod mub;
pub mod search;
pub mod support;

pub use error::{Error, Result};

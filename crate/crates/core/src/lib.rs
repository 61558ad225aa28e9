// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod numeric;
pub mod strategies;
pub mod trajectory;
pub mod worstcase;

pub use error::{EvacError, Result};

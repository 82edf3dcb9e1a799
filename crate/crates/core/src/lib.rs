//! Exact traces, characters and filtration jumps for tame base change of
//! curves with SNC reduction.

pub mod arith;
pub mod catalog;
pub mod error;
pub mod exactalg;
pub mod fiber;
pub mod jumps;
pub mod resolution;
pub mod singtrace;

pub use error::{Error, Result};

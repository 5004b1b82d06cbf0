//! Core algorithms for CSS stabilizer codes and topological defects.
//!
//! Everything in this crate is exact arithmetic over GF(2): bit-packed
//! vectors and matrices, exhaustive minimum-weight searches, gauge fixing
//! of erasable regions, defect construction by promoting a stabilizer
//! generator to a logical operator, and entanglement entropies of
//! stabilizer states computed from group ranks.
//!
//! The crate is `no_std` (with `alloc`). IO, file formats, and thread
//! orchestration live in the companion `qdefect` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod css;
pub mod defect;
pub mod entropy;
mod error;
pub mod f2;
pub mod families;
pub mod tanner;

pub use error::{Error, Result, Side};

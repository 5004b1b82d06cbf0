//! Dense linear algebra over GF(2).
//!
//! Vectors are bit-packed into `u64` words; a matrix is a list of rows.
//! Sizes here are "desk scale" (hundreds of columns), so per-row heap
//! storage and full re-elimination are cheap. The one hot path is
//! [`search`]: Gray-code enumeration of cosets where each step is a
//! single row XOR plus a popcount.

mod bitmatrix;
mod bitvec;
mod region;
pub mod search;

pub use bitmatrix::{embed_vec, BitMatrix, Echelon};
pub(crate) use bitmatrix::puncture_vec;
pub use bitvec::BitVector;
pub use region::Region;

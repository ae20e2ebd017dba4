//! Exact classification of quadratic rational maps on the projective line
//! up to conjugacy over `Q` and over prime fields `F_p` with `p > 3`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod census;
pub mod error;
pub mod exactnum;
pub mod linalg;
pub mod moduli;
pub mod normalform;
pub mod parser;
pub mod poly;
pub mod ratmap;
pub mod sampling;

pub use error::{Error, Result};

//! Exact computation of component groups, the matrix pairing on them, the
//! vertical decomposition of local pairings, and a p-adic valuation oracle
//! for local intersection multiplicities on the projective line.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod exact;
pub mod fiber;
pub mod group;
pub mod oracle;
pub mod pairing;

pub use error::{Error, Result};

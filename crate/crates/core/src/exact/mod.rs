//! Exact integer and rational linear algebra.

mod matrix;
mod qmodz;
mod snf;
mod solve;

pub use matrix::{dot, int_vec, rat_dot, IntMatrix};
pub use qmodz::{qmodz_reduce, QmodZ};
pub use snf::{snf, SnfDecomposition};
pub use solve::{rank, rational_solve, RationalSolution};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Rational vector with entries in lowest terms.
pub type RatVector = Vec<BigRational>;

pub fn to_rat(v: &[BigInt]) -> RatVector {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

//! Exact matrix arithmetic over the integers and over prime fields.

mod fp;
mod int;

pub use fp::{fp_kernel_basis, inv_mod, is_prime, FpMatrix, FpVector, Rref};
pub use int::{IntMatrix, IntVector, SnfResult};

use num_bigint::BigInt;

use crate::error::Result;

pub fn snf(a: &IntMatrix) -> SnfResult {
    a.snf()
}

pub fn solve_int(a: &IntMatrix, b: &[BigInt]) -> Result<Option<IntVector>> {
    a.solve_int(b)
}

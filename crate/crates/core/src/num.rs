//! Scalar abstraction for the exact kernels.
//!
//! Everything in this crate computes over a totally ordered, signed,
//! exactly comparable scalar. `num_traits::Signed` supplies the ring
//! operations and `Ord` supplies exact tie detection; floating-point
//! types are excluded because they are not `Ord`.

use std::fmt::{Debug, Display};

use num_traits::{NumAssignOps, Signed};

/// A scalar with exact arithmetic and a total order.
///
/// Instantiated at [`crate::Rat`] (arbitrary-precision rationals) for the
/// public type aliases; `i64` also satisfies the bound and is handy in
/// tests and benchmarks with integer data.
pub trait ExactScalar: Clone + Ord + Signed + NumAssignOps + Debug + Display {}

impl<T> ExactScalar for T where T: Clone + Ord + Signed + NumAssignOps + Debug + Display {}

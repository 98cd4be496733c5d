//! Exact tropical (min-plus) linear algebra, Puiseux-series valuations,
//! and Kapranov-rank bounds.
//!
//! Everything is computed over exact scalars; there is no floating point
//! anywhere in the crate, because tropical singularity is a question of
//! exact ties ("is the assignment minimum attained twice?") and the
//! valuation laws are exact identities.
//!
//! The crate has four layers:
//!
//! * [`trop`] — tropical matrices: permanents with their full set of
//!   minimizing permutations, tropical singularity, and tropical rank,
//!   with [`assignment`] providing the fast value-only path.
//! * [`puiseux`] — finite Puiseux series with rational coefficients and
//!   exponents, the valuation `deg`, and exact determinants/rank over the
//!   series ring.
//! * [`lifts`] — lifts of tropical matrices into the series field,
//!   Kapranov-rank bounding, a seeded random-lift generator, and the
//!   built-in 6x6 matrix whose tropical rank (4) and Kapranov rank (5)
//!   differ, together with the rank-5 certificate engine.
//! * [`parse`] — text formats for rationals, series, and both matrix
//!   kinds.
//!
//! The core types are generic over [`ExactScalar`]; the crate-root
//! aliases fix the scalar to arbitrary-precision rationals, which is what
//! the CLI and the shipped data files use.
//!
//! ```
//! use tropkap::{lifts, trop};
//!
//! let a = lifts::example_matrix_a();
//! let (rank, _witness) = trop::tropical_rank(&a).unwrap();
//! assert_eq!(rank, 4);
//!
//! // one explicit lift bounds the Kapranov rank from above ...
//! let m0 = lifts::example_lift_m0();
//! assert_eq!(lifts::kapranov_upper_bound(&a, &m0).unwrap(), 5);
//! // ... and the certificate pins it from below, so the ranks differ
//! assert_eq!(lifts::certify_rank5(&m0).unwrap().rank_lower_bound, 5);
//! ```

pub mod assignment;
pub mod comb;
pub mod lifts;
pub mod num;
pub mod parse;
pub mod puiseux;
pub mod rng;
pub mod trop;

pub use comb::{Permutation, SubmatrixSelector};
pub use num::ExactScalar;
pub use puiseux::{PuiseuxMatrix, PuiseuxSeries, Valuation};
pub use trop::{PermanentCertificate, TropicalMatrix};

/// Arbitrary-precision rational, the concrete scalar of this crate.
pub type Rat = num_rational::BigRational;

/// Tropical matrix over [`Rat`].
pub type TropMat = TropicalMatrix<Rat>;

/// Puiseux series with [`Rat`] coefficients and exponents.
pub type Series = PuiseuxSeries<Rat>;

/// Matrix of [`Series`].
pub type SeriesMat = PuiseuxMatrix<Rat>;

/// Valuation value over [`Rat`]: a finite exponent or infinity.
pub type Val = Valuation<Rat>;

/// The integer `n` as a [`Rat`].
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// The fraction `num/den` as a [`Rat`] in lowest terms. Panics if `den`
/// is zero.
pub fn ratio(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(num.into(), den.into())
}

//! Construction and arithmetic of the rank-one elliptic curves
//! `E_{2N}: y^2 = x^3 - 2Nx` with `N = rD` for a semiprime `D = pq`,
//! and recovery of the factorization of `D` from a non-torsion point.
//!
//! The pipeline, end to end:
//!
//! 1. [`params`] classifies `(p, q)` into one of five congruence cases and
//!    searches for the smallest auxiliary parameter `r` whose curve has
//!    2-Selmer data forcing rank at most one.
//! 2. [`selmer`] enumerates the square classes supported on the bad places,
//!    decides everywhere-local solvability of the attached homogeneous
//!    spaces by two independent methods, and assembles the two Selmer
//!    groups together with the rank upper bound.
//! 3. [`rootnumber`] evaluates the Birch–Stephens global root number,
//!    which is -1 for these curves, so conditionally on the parity
//!    conjecture the rank is exactly one.
//! 4. [`points`] finds a non-torsion rational point by descent through the
//!    homogeneous spaces and by direct search, reduces it by halving, and
//!    computes canonical heights two ways.
//! 5. [`factor`] verifies the valuation laws satisfied by multiples of the
//!    generator and extracts a factor of `D` as a gcd with the numerator
//!    or denominator of an x-coordinate.
//!
//! All algebraic identities are checked in exact rational arithmetic;
//! floating point appears only in height computations, with stated
//! tolerances.

pub mod arith;
pub mod certificate;
pub mod curve;
pub mod factor;
pub mod params;
pub mod points;
pub mod rootnumber;
pub mod selmer;

pub use arith::Rat;
pub use curve::{CurveE, CurvePoint};
pub use factor::{end_to_end, FactorCertificate, SearchCaps};
pub use params::{classify, find_min_r, CurveParams, RCertificate};
pub use rootnumber::{conjectural_rank, root_number, RankConclusion};
pub use selmer::{rank_upper_bound, selmer_group, SelmerGroup, Side};

//! Automatic prover for mixed logarithmic-trigonometric polynomial
//! inequalities on sub-intervals of (0, pi/2), with independently checkable
//! proof certificates.
//!
//! All arithmetic is exact: arbitrary-precision rationals, polynomials in
//! pi, and rational interval enclosures. A proof is a tree of reduction
//! steps whose leaves are sign certificates replayable by a checker that
//! shares no search code with the prover.

pub mod exact;
pub mod highprec;

pub use exact::{Budget, ConstExpr, Enclosure, ExactError, PiPoly, PiQuot, Rational, Sign};

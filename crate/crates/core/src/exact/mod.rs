//! Exact arithmetic: arbitrary-precision rationals, polynomials and rational
//! functions in pi, rational interval enclosures, and a sign oracle for
//! constants built from pi, rationals and ln.

mod constexpr;
mod enclosure;
mod pi;
mod pipoly;

pub use constexpr::ConstExpr;
pub use enclosure::Enclosure;
pub use pi::{max_pi_depth, pi_enclosure, PI_DECIMAL_50};
pub use pipoly::{PiPoly, PiQuot};

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Arbitrary-precision rational, always reduced, denominator > 0.
pub type Rational = num::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Parse "n/d" or "n" into a rational.
pub fn rat_from_str(s: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::BadNumber(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(Rational::from(n))
        }
    }
}

/// Canonical "n/d" rendering used in certificates.
pub fn rat_to_str(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Sign of an exactly known quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn product(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    pub fn is_nonnegative(self) -> bool {
        matches!(self, Sign::Zero | Sign::Positive)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Negative => write!(f, "negative"),
            Sign::Zero => write!(f, "zero"),
            Sign::Positive => write!(f, "positive"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("malformed number literal: {0}")]
    BadNumber(String),
    #[error("sign undecidable at requested depth: {0}")]
    UndecidableAtDepth(String),
    #[error("sign undecidable within budget: {0}")]
    UndecidableAtBudget(String),
    #[error("division requires a denominator certified nonzero")]
    DivisionByUncertified,
    #[error("ln argument not certified positive")]
    LnNotPositive,
}

/// Refinement budget for enclosure evaluation and sign decisions.
///
/// Sign queries start at (`pi_depth`, `ln_terms`) and double both up to
/// `rounds` times before giving up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub pi_depth: usize,
    pub ln_terms: usize,
    pub rounds: usize,
}

pub const DEFAULT_PI_DEPTH: usize = 8;
pub const DEFAULT_LN_TERMS: usize = 32;
pub const DEFAULT_ROUNDS: usize = 4;

impl Default for Budget {
    fn default() -> Self {
        Budget {
            pi_depth: DEFAULT_PI_DEPTH,
            ln_terms: DEFAULT_LN_TERMS,
            rounds: DEFAULT_ROUNDS,
        }
    }
}

/// gcd of the absolute values, as a nonnegative BigInt.
pub(crate) fn bigint_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    num::Integer::gcd(a, b)
}

/// Positive rational content gcd: gcd(n1/d1, n2/d2) = gcd(n1,n2)/lcm(d1,d2).
pub(crate) fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let n = bigint_gcd(a.numer(), b.numer());
    let d = num::Integer::lcm(a.denom(), b.denom());
    Rational::new(n, d)
}

pub(crate) fn rational_lcm_of_denoms<'a, I: IntoIterator<Item = &'a Rational>>(it: I) -> BigInt {
    let mut acc = BigInt::one();
    for r in it {
        acc = num::Integer::lcm(&acc, r.denom());
    }
    acc
}

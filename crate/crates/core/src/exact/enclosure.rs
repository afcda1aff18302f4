//! Rational interval enclosures with outward-only arithmetic.

use super::{rat_int, ExactError, Rational, Sign};
use num::bigint::BigInt;
use num::{Integer, Signed, Zero};
use std::fmt;

/// A closed rational interval certified to contain an exact real value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
}

impl Enclosure {
    pub fn new(lo: Rational, hi: Rational) -> Enclosure {
        assert!(lo <= hi, "enclosure endpoints out of order");
        Enclosure { lo, hi }
    }

    pub fn point(v: Rational) -> Enclosure {
        Enclosure { lo: v.clone(), hi: v }
    }

    pub fn zero() -> Enclosure {
        Enclosure::point(Rational::zero())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_enclosure(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Sign of every value in the interval, if uniform and nonzero,
    /// or `Zero` for the point interval [0, 0].
    pub fn uniform_sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Enclosure { lo, hi }
    }

    pub fn scale(&self, r: &Rational) -> Enclosure {
        if r.is_negative() {
            Enclosure {
                lo: &self.hi * r,
                hi: &self.lo * r,
            }
        } else {
            Enclosure {
                lo: &self.lo * r,
                hi: &self.hi * r,
            }
        }
    }

    pub fn recip(&self) -> Result<Enclosure, ExactError> {
        if self.contains(&Rational::zero()) {
            return Err(ExactError::DivisionByUncertified);
        }
        Ok(Enclosure {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, other: &Enclosure) -> Result<Enclosure, ExactError> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn powi(&self, n: u32) -> Enclosure {
        if n == 0 {
            return Enclosure::point(rat_int(1));
        }
        let mut acc = self.clone();
        // even powers of sign-mixed intervals clamp at zero
        if n % 2 == 0 && self.uniform_sign().is_none() {
            let m = self.lo.abs().max(self.hi.abs());
            let mut hi = rat_int(1);
            for _ in 0..n {
                hi *= &m;
            }
            return Enclosure {
                lo: Rational::zero(),
                hi,
            };
        }
        for _ in 1..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Widen outward so both endpoints have denominator at most 2^bits.
    /// Keeps long enclosure chains from accumulating huge exact endpoints.
    pub fn round_out(&self, bits: u32) -> Enclosure {
        Enclosure {
            lo: round_down(&self.lo, bits),
            hi: round_up(&self.hi, bits),
        }
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }
}

fn round_down(r: &Rational, bits: u32) -> Rational {
    let den = BigInt::from(1u32) << bits;
    if r.denom() <= &den {
        return r.clone();
    }
    let scaled = (r.numer() * &den).div_floor(r.denom());
    Rational::new(scaled, den)
}

fn round_up(r: &Rational, bits: u32) -> Rational {
    let den = BigInt::from(1u32) << bits;
    if r.denom() <= &den {
        return r.clone();
    }
    let scaled = (r.numer() * &den).div_ceil(r.denom());
    Rational::new(scaled, den)
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn interval_products_cover_all_sign_cases() {
        let a = Enclosure::new(rat(-2, 1), rat(3, 1));
        let b = Enclosure::new(rat(-5, 1), rat(-1, 1));
        let p = a.mul(&b);
        assert_eq!(p.lo(), &rat(-15, 1));
        assert_eq!(p.hi(), &rat(10, 1));
    }

    #[test]
    fn even_powers_clamp_at_zero() {
        let a = Enclosure::new(rat(-2, 1), rat(1, 1));
        let p = a.powi(2);
        assert_eq!(p.lo(), &rat(0, 1));
        assert_eq!(p.hi(), &rat(4, 1));
    }

    #[test]
    fn rounding_widens_only() {
        let x = Enclosure::new(rat(1, 3), rat(2, 3));
        let r = x.round_out(8);
        assert!(r.contains_enclosure(&x));
        assert!(r.lo().denom() <= &BigInt::from(256));
    }

    #[test]
    fn division_by_mixed_interval_fails() {
        let a = Enclosure::new(rat(1, 1), rat(2, 1));
        let b = Enclosure::new(rat(-1, 1), rat(1, 1));
        assert!(a.div(&b).is_err());
    }
}

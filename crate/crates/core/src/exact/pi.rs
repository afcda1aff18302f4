//! Enclosures of pi from continued-fraction convergents.
//!
//! Consecutive convergents of the continued fraction of pi bracket it:
//! c0 < c2 < c4 < ... < pi < ... < c5 < c3 < c1. The expansion is derived
//! from a compiled-in 50-digit decimal; only the terms on which the lower
//! and upper decimal bounds agree are kept, so every convergent used is a
//! genuine convergent of pi.

use super::{Enclosure, Rational};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::sync::OnceLock;

/// First 50 decimals of pi (truncated, so the value lies strictly between
/// this and the same decimal with the last digit bumped by one).
pub const PI_DECIMAL_50: &str = "3.14159265358979323846264338327950288419716939937510";

fn decimal_bounds() -> (Rational, Rational) {
    let digits: String = PI_DECIMAL_50.chars().filter(|c| c.is_ascii_digit()).collect();
    let scale = BigInt::from(10u32).pow((digits.len() - 1) as u32);
    let num: BigInt = digits.parse().expect("compiled-in pi digits");
    let lo = Rational::new(num.clone(), scale.clone());
    let hi = Rational::new(num + BigInt::one(), scale);
    (lo, hi)
}

fn continued_fraction_terms(x: &Rational) -> Vec<BigInt> {
    let mut terms = Vec::new();
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    while !den.is_zero() {
        let (q, r) = num::Integer::div_rem(&num, &den);
        terms.push(q);
        num = den;
        den = r;
    }
    terms
}

fn convergents() -> &'static Vec<Rational> {
    static CONV: OnceLock<Vec<Rational>> = OnceLock::new();
    CONV.get_or_init(|| {
        let (lo, hi) = decimal_bounds();
        let tl = continued_fraction_terms(&lo);
        let th = continued_fraction_terms(&hi);
        let mut common: Vec<BigInt> = tl
            .iter()
            .zip(th.iter())
            .take_while(|(a, b)| a == b)
            .map(|(a, _)| a.clone())
            .collect();
        // the last agreeing term can still be an artifact of truncation
        common.pop();
        assert!(common.len() >= 12, "pi decimal too short for convergents");
        let mut out = Vec::with_capacity(common.len());
        let (mut p_prev, mut p) = (BigInt::one(), common[0].clone());
        let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
        out.push(Rational::new(p.clone(), q.clone()));
        for a in &common[1..] {
            let p_next = a * &p + &p_prev;
            let q_next = a * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, p_next);
            q_prev = std::mem::replace(&mut q, q_next);
            out.push(Rational::new(p.clone(), q.clone()));
        }
        out
    })
}

/// Largest depth d for which pi_enclosure(d) still refines.
pub fn max_pi_depth() -> usize {
    (convergents().len() - 2) / 2
}

/// The enclosure [c_{2d}, c_{2d+1}] of pi; requests past the compiled-in
/// precision are clamped to the deepest available pair.
pub fn pi_enclosure(depth: usize) -> Enclosure {
    let conv = convergents();
    let d = depth.min(max_pi_depth());
    Enclosure::new(conv[2 * d].clone(), conv[2 * d + 1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn first_convergent_pairs_match_known_values() {
        assert_eq!(pi_enclosure(0), Enclosure::new(rat(3, 1), rat(22, 7)));
        assert_eq!(
            pi_enclosure(1),
            Enclosure::new(rat(333, 106), rat(355, 113))
        );
        let d2 = pi_enclosure(2);
        assert_eq!(d2.lo(), &rat(103993, 33102));
        assert_eq!(d2.hi(), &rat(104348, 33215));
    }

    #[test]
    fn enclosures_nest_strictly() {
        for d in 0..max_pi_depth() {
            let outer = pi_enclosure(d);
            let inner = pi_enclosure(d + 1);
            assert!(outer.lo() < inner.lo(), "lower bounds increase");
            assert!(inner.hi() < outer.hi(), "upper bounds decrease");
        }
    }

    #[test]
    fn width_small_by_depth_five() {
        let w = pi_enclosure(5).width();
        assert!(w < rat(1, 10_000_000_000));
    }

    #[test]
    fn enclosures_contain_the_decimal_value() {
        // the truncated decimal lower bound sits within 1e-50 of pi, far
        // inside every convergent pair up to depth 15 (widths >= ~1e-40)
        let (lo, _) = super::decimal_bounds();
        for d in 0..=max_pi_depth().min(15) {
            assert!(pi_enclosure(d).contains(&lo), "depth {d}");
        }
    }
}

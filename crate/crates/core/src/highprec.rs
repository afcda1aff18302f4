//! Plain high-precision rational evaluation, independent of the enclosure
//! machinery. Used as a numerical oracle by the test suites: values are
//! accurate to well below 1e-48, which is far tighter than any tolerance
//! asserted against them.

use crate::exact::{rat_int, Rational, PI_DECIMAL_50};
use num::bigint::BigInt;
use num::{Signed, Zero};
use std::sync::OnceLock;

/// Working grid: results are rounded to multiples of 10^-60.
const WORK_DIGITS: u32 = 60;

fn grid() -> &'static BigInt {
    static G: OnceLock<BigInt> = OnceLock::new();
    G.get_or_init(|| BigInt::from(10u32).pow(WORK_DIGITS))
}

/// Round to the working grid (nearest, ties toward zero is fine here).
pub fn round(x: &Rational) -> Rational {
    let g = grid();
    if x.denom() <= g {
        return x.clone();
    }
    let scaled = num::Integer::div_floor(&(x.numer() * g), x.denom());
    Rational::new(scaled, g.clone())
}

/// Pi to 50 decimals.
pub fn pi() -> &'static Rational {
    static PI: OnceLock<Rational> = OnceLock::new();
    PI.get_or_init(|| {
        let digits: String = PI_DECIMAL_50
            .chars()
            .filter(|c| c.is_ascii_digit())
            .collect();
        let scale = BigInt::from(10u32).pow((digits.len() - 1) as u32);
        Rational::new(digits.parse().expect("pi digits"), scale)
    })
}

fn tiny() -> Rational {
    Rational::new(BigInt::from(1u32), grid().clone() * BigInt::from(100u32))
}

/// Maclaurin sine; intended for |x| < 4.
pub fn sin(x: &Rational) -> Rational {
    let x = round(x);
    let eps = tiny();
    let x2 = round(&(&x * &x));
    let mut term = x.clone();
    let mut sum = x.clone();
    let mut k: i64 = 1;
    while term.abs() > eps {
        term = round(&(-term * &x2 / rat_int((2 * k) * (2 * k + 1))));
        sum += &term;
        k += 1;
    }
    round(&sum)
}

/// Maclaurin cosine; intended for |x| < 4.
pub fn cos(x: &Rational) -> Rational {
    let x = round(x);
    let eps = tiny();
    let x2 = round(&(&x * &x));
    let mut term = rat_int(1);
    let mut sum = rat_int(1);
    let mut k: i64 = 1;
    while term.abs() > eps {
        term = round(&(-term * &x2 / rat_int((2 * k - 1) * (2 * k))));
        sum += &term;
        k += 1;
    }
    round(&sum)
}

/// Natural log of a positive rational via the atanh series
/// ln x = 2 * sum u^(2k+1)/(2k+1), u = (x-1)/(x+1), after scaling x into
/// [2/3, 4/3] by powers of two.
pub fn ln(x: &Rational) -> Rational {
    assert!(x.is_positive(), "oracle ln of nonpositive value");
    let mut m = round(x);
    let mut k: i64 = 0;
    let hi = Rational::new(BigInt::from(4u32), BigInt::from(3u32));
    let lo = Rational::new(BigInt::from(2u32), BigInt::from(3u32));
    while m > hi {
        m /= rat_int(2);
        k += 1;
    }
    while m < lo {
        m *= rat_int(2);
        k -= 1;
    }
    let val = atanh_series(&((&m - rat_int(1)) / (&m + rat_int(1))));
    let two_ln = round(&(val * rat_int(2)));
    if k == 0 {
        two_ln
    } else {
        round(&(two_ln + ln2() * rat_int(k)))
    }
}

fn ln2() -> &'static Rational {
    static LN2: OnceLock<Rational> = OnceLock::new();
    // ln 2 = 2 * atanh(1/3)
    LN2.get_or_init(|| round(&(atanh_series(&Rational::new(1.into(), 3.into())) * rat_int(2))))
}

fn atanh_series(u: &Rational) -> Rational {
    let u = round(u);
    let eps = tiny();
    let u2 = round(&(&u * &u));
    let mut pow = u.clone();
    let mut sum = Rational::zero();
    let mut k: i64 = 0;
    loop {
        let term = round(&(&pow / rat_int(2 * k + 1)));
        if term.abs() <= eps {
            break;
        }
        sum += &term;
        pow = round(&(pow * &u2));
        k += 1;
    }
    round(&sum)
}

/// x^n for small n.
pub fn powi(x: &Rational, n: u32) -> Rational {
    let mut acc = rat_int(1);
    for _ in 0..n {
        acc = round(&(acc * x));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn sin_cos_ln_reference_points() {
        // sin(1) = 0.84147098480789650665250232163029899962...
        let s1 = sin(&rat_int(1));
        let want = Rational::new(
            "84147098480789650665250232163029899962".parse::<BigInt>().unwrap(),
            BigInt::from(10u32).pow(38),
        );
        assert!((s1 - want).abs() < rat(1, 1_000_000_000_000_000_000));

        let c1 = cos(&rat_int(1));
        let want = Rational::new(
            "54030230586813971740093660744297660373".parse::<BigInt>().unwrap(),
            BigInt::from(10u32).pow(38),
        );
        assert!((c1 - want).abs() < rat(1, 1_000_000_000_000_000_000));

        let l2 = ln(&rat_int(2));
        let want = Rational::new(
            "69314718055994530941723212145817656807".parse::<BigInt>().unwrap(),
            BigInt::from(10u32).pow(38),
        );
        assert!((l2 - want).abs() < rat(1, 1_000_000_000_000_000_000));
    }

    #[test]
    fn pythagorean_identity_to_fifty_digits() {
        let x = rat(7, 5);
        let s = sin(&x);
        let c = cos(&x);
        let r = s.clone() * s + c.clone() * c - rat_int(1);
        assert!(r.abs() < Rational::new(BigInt::from(1u32), BigInt::from(10u32).pow(55)));
    }

    #[test]
    fn ln_multiplicativity() {
        let a = rat(22, 7);
        let b = rat(3, 11);
        let lhs = ln(&(a.clone() * b.clone()));
        let rhs = ln(&a) + ln(&b);
        assert!((lhs - rhs).abs() < Rational::new(BigInt::from(1u32), BigInt::from(10u32).pow(55)));
    }
}

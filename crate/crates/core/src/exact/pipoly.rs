//! Polynomials and reduced rational functions in pi over the rationals.

use super::{rat_int, rational_gcd, Enclosure, Rational, Sign};
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Polynomial in pi with rational coefficients, index = power of pi.
/// The coefficient list never ends in a zero (the zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiPoly {
    coeffs: Vec<Rational>,
}

impl PiPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> PiPoly {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        PiPoly { coeffs }
    }

    pub fn zero() -> PiPoly {
        PiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> PiPoly {
        PiPoly::constant(rat_int(1))
    }

    pub fn constant(c: Rational) -> PiPoly {
        PiPoly::new(vec![c])
    }

    /// pi^k with rational coefficient.
    pub fn pi_pow(coeff: Rational, k: usize) -> PiPoly {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = coeff;
        PiPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree with the convention that the zero polynomial has degree -1.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &PiPoly) -> PiPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            v[i] += c;
        }
        PiPoly::new(v)
    }

    pub fn neg(&self) -> PiPoly {
        PiPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &PiPoly) -> PiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PiPoly) -> PiPoly {
        if self.is_zero() || other.is_zero() {
            return PiPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        PiPoly::new(v)
    }

    pub fn scale(&self, r: &Rational) -> PiPoly {
        if r.is_zero() {
            return PiPoly::zero();
        }
        PiPoly {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> PiPoly {
        let mut acc = PiPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horner evaluation over an enclosure of pi.
    pub fn eval(&self, pi: &Enclosure) -> Enclosure {
        let mut acc = Enclosure::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(pi).add(&Enclosure::point(c.clone()));
        }
        acc
    }

    /// Exact evaluation at a rational point (used by the high-precision oracle).
    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn div_rem(&self, div: &PiPoly) -> (PiPoly, PiPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = div.coeffs.len();
        if rem.len() < dd {
            return (PiPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); rem.len() - dd + 1];
        let lead = div.coeffs.last().unwrap();
        for k in (0..q.len()).rev() {
            let c = &rem[k + dd - 1] / lead;
            if !c.is_zero() {
                for (j, dc) in div.coeffs.iter().enumerate() {
                    let t = dc * &c;
                    rem[k + j] -= t;
                }
            }
            q[k] = c;
        }
        (PiPoly::new(q), PiPoly::new(rem))
    }

    /// Positive rational content: gcd of numerators over lcm of denominators.
    pub fn content(&self) -> Rational {
        let mut acc = Rational::zero();
        for c in &self.coeffs {
            acc = rational_gcd(&acc, c);
        }
        acc
    }

    /// Primitive part with positive leading coefficient; returns the scale s
    /// with self = s * primitive.
    pub fn primitive(&self) -> (PiPoly, Rational) {
        if self.is_zero() {
            return (PiPoly::zero(), Rational::one());
        }
        let mut s = self.content();
        if self.leading().unwrap().is_negative() {
            s = -s;
        }
        (self.scale(&s.recip()), s)
    }

    /// Polynomial gcd over Q[pi], returned primitive with positive leading
    /// coefficient. gcd(0, p) = primitive(p).
    pub fn gcd(&self, other: &PiPoly) -> PiPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            // keep remainders primitive so coefficient sizes stay tame
            let (_, mut r) = a.div_rem(&b);
            if !r.is_zero() {
                r = r.primitive().0;
            }
            a = b;
            b = r;
        }
        if a.is_zero() {
            PiPoly::zero()
        } else {
            a.primitive().0
        }
    }

    /// Structural order: by degree, then coefficients from the top down.
    /// Used only to orient ln arguments canonically.
    pub fn cmp_structural(&self, other: &PiPoly) -> Ordering {
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                    if k == 1 {
                        write!(f, "pi")?;
                    } else {
                        write!(f, "pi^{}", k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Reduced quotient of two pi-polynomials. Canonical form: gcd(num, den) = 1,
/// den primitive with positive leading coefficient; zero is 0/1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiQuot {
    num: PiPoly,
    den: PiPoly,
}

impl PiQuot {
    pub fn new(num: PiPoly, den: PiPoly) -> PiQuot {
        assert!(!den.is_zero(), "pi-quotient with zero denominator");
        if num.is_zero() {
            return PiQuot {
                num: PiPoly::zero(),
                den: PiPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() > 0 {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        let (den_prim, s) = den.primitive();
        let num = num.scale(&s.recip());
        PiQuot {
            num,
            den: den_prim,
        }
    }

    pub fn from_poly(p: PiPoly) -> PiQuot {
        PiQuot {
            num: p,
            den: PiPoly::one(),
        }
    }

    pub fn from_rational(r: Rational) -> PiQuot {
        PiQuot::from_poly(PiPoly::constant(r))
    }

    pub fn zero() -> PiQuot {
        PiQuot::from_poly(PiPoly::zero())
    }

    pub fn one() -> PiQuot {
        PiQuot::from_poly(PiPoly::one())
    }

    pub fn pi() -> PiQuot {
        PiQuot::from_poly(PiPoly::pi_pow(rat_int(1), 1))
    }

    pub fn num(&self) -> &PiPoly {
        &self.num
    }

    pub fn den(&self) -> &PiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == PiPoly::one() && self.den == PiPoly::one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn add(&self, other: &PiQuot) -> PiQuot {
        PiQuot::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &PiQuot) -> PiQuot {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PiQuot {
        PiQuot {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &PiQuot) -> PiQuot {
        PiQuot::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn recip(&self) -> Option<PiQuot> {
        if self.is_zero() {
            return None;
        }
        Some(PiQuot::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &PiQuot) -> Option<PiQuot> {
        Some(self.mul(&other.recip()?))
    }

    pub fn pow(&self, n: u32) -> PiQuot {
        let mut acc = PiQuot::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Interval evaluation. The denominator enclosure must exclude zero at
    /// the given pi enclosure; callers refine depth on failure.
    pub fn eval(&self, pi: &Enclosure) -> Result<Enclosure, super::ExactError> {
        let n = self.num.eval(pi);
        let d = self.den.eval(pi);
        n.div(&d)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let n = self.num.eval_rational(x);
        let d = self.den.eval_rational(x);
        n / d
    }

    /// Exact sign when the value is known symbolically to be zero,
    /// i.e. the numerator is the zero polynomial. Nonzero quotients of a
    /// transcendental argument need interval refinement instead.
    pub fn exact_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn cmp_structural(&self, other: &PiQuot) -> Ordering {
        match self.num.cmp_structural(&other.num) {
            Ordering::Equal => self.den.cmp_structural(&other.den),
            ord => ord,
        }
    }
}

impl fmt::Display for PiQuot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == PiPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Sign evaluation helper shared by the oracle: refine the pi enclosure by
/// doubling depth until zero is excluded, or fall back to the exact-zero test.
pub(crate) fn piquot_sign_refine(
    q: &PiQuot,
    budget: super::Budget,
) -> Result<Sign, super::ExactError> {
    if q.exact_zero() {
        return Ok(Sign::Zero);
    }
    let mut depth = budget.pi_depth.max(1);
    for _ in 0..=budget.rounds {
        let pi = super::pi_enclosure(depth);
        let n = q.num().eval(&pi);
        let d = q.den().eval(&pi);
        if let (Some(sn), Some(sd)) = (n.uniform_sign(), d.uniform_sign()) {
            return Ok(sn.product(sd));
        }
        depth *= 2;
    }
    Err(super::ExactError::UndecidableAtBudget(format!(
        "pi-quotient sign at pi depth {}",
        depth / 2
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{pi_enclosure, rat, Budget};

    fn p(coeffs: &[(i64, i64)]) -> PiPoly {
        PiPoly::new(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn division_round_trips() {
        let a = p(&[(2, 1), (0, 1), (3, 1), (1, 1)]);
        let b = p(&[(1, 1), (1, 1)]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_finds_common_factor() {
        let f = p(&[(1, 1), (1, 1)]); // 1 + pi
        let g = p(&[(-2, 1), (1, 1)]); // pi - 2
        let a = f.mul(&g);
        let b = f.mul(&p(&[(5, 1)]));
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn quotient_reduces_to_lowest_terms() {
        let f = p(&[(1, 1), (1, 1)]);
        let g = p(&[(-2, 1), (1, 1)]);
        let q = PiQuot::new(f.mul(&g), g.mul(&p(&[(2, 1)])));
        assert_eq!(q, PiQuot::new(f, p(&[(2, 1)])));
    }

    #[test]
    fn sign_of_paper_cubics() {
        // pi^3 - 24 pi + 48 is positive, pi^3 - 60 pi + 120 is negative
        let pos = PiQuot::from_poly(p(&[(48, 1), (-24, 1), (0, 1), (1, 1)]));
        let neg = PiQuot::from_poly(p(&[(120, 1), (-60, 1), (0, 1), (1, 1)]));
        let b = Budget::default();
        assert_eq!(piquot_sign_refine(&pos, b).unwrap(), Sign::Positive);
        assert_eq!(piquot_sign_refine(&neg, b).unwrap(), Sign::Negative);
    }

    #[test]
    fn eval_brackets_value() {
        let f = p(&[(48, 1), (-24, 1), (0, 1), (1, 1)]);
        let e = f.eval(&pi_enclosure(3));
        // ~3.6080
        assert!(e.lo() < &rat(37, 10) && e.hi() > &rat(35, 10));
    }
}

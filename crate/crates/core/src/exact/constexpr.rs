//! Constant expressions over {rationals, pi, +, -, *, /, ln} with a sign
//! oracle.
//!
//! Expressions are normalized eagerly into the linear form
//!     q0 + sum_i c_i * ln(a_i)
//! with q0, c_i, a_i reduced quotients of pi-polynomials and every ln
//! argument canonically oriented (ln(1/a) is stored as -ln(a)). Exact zero
//! is decided symbolically: a vanishing linear form is zero, and ln-free
//! expressions reduce to a single pi-quotient whose zero numerator proves
//! zero. Anything that escapes the linear form (a product of two
//! ln-containing values, say) falls back to an interval-evaluated node and
//! can never be certified zero, only nonzero.

use super::pipoly::piquot_sign_refine;
use super::{
    pi_enclosure, rat, rat_int, Budget, Enclosure, ExactError, PiQuot, Rational, Sign,
};
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Canonically oriented ln argument: a reduced pi-quotient, certified
/// positive at construction, stored so that the structurally larger side is
/// the numerator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LnArg(PiQuot);

impl LnArg {
    pub fn quotient(&self) -> &PiQuot {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct LinForm {
    q0: PiQuot,
    logs: BTreeMap<LnArg, PiQuot>,
}

impl LinForm {
    fn from_quot(q0: PiQuot) -> LinForm {
        LinForm {
            q0,
            logs: BTreeMap::new(),
        }
    }

    fn insert_log(&mut self, arg: LnArg, coeff: PiQuot) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.logs.entry(arg);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&coeff);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn add(&self, other: &LinForm) -> LinForm {
        let mut out = LinForm {
            q0: self.q0.add(&other.q0),
            logs: self.logs.clone(),
        };
        for (a, c) in &other.logs {
            out.insert_log(a.clone(), c.clone());
        }
        out
    }

    fn neg(&self) -> LinForm {
        LinForm {
            q0: self.q0.neg(),
            logs: self.logs.iter().map(|(a, c)| (a.clone(), c.neg())).collect(),
        }
    }

    fn scale(&self, s: &PiQuot) -> LinForm {
        if s.is_zero() {
            return LinForm::from_quot(PiQuot::zero());
        }
        LinForm {
            q0: self.q0.mul(s),
            logs: self
                .logs
                .iter()
                .map(|(a, c)| (a.clone(), c.mul(s)))
                .collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.q0.is_zero() && self.logs.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Add(ConstExpr, ConstExpr),
    Mul(ConstExpr, ConstExpr),
    Div(ConstExpr, ConstExpr),
    Ln(ConstExpr),
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Lin(LinForm),
    Node(Arc<Node>),
}

/// Immutable constant expression with exact arithmetic and a refining sign
/// oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstExpr {
    repr: Repr,
}

impl ConstExpr {
    pub fn zero() -> ConstExpr {
        ConstExpr::from_piquot(PiQuot::zero())
    }

    pub fn one() -> ConstExpr {
        ConstExpr::from_piquot(PiQuot::one())
    }

    pub fn pi() -> ConstExpr {
        ConstExpr::from_piquot(PiQuot::pi())
    }

    pub fn from_rational(r: Rational) -> ConstExpr {
        ConstExpr::from_piquot(PiQuot::from_rational(r))
    }

    pub fn integer(n: i64) -> ConstExpr {
        ConstExpr::from_rational(rat_int(n))
    }

    pub fn rational(num: i64, den: i64) -> ConstExpr {
        ConstExpr::from_rational(rat(num, den))
    }

    pub fn from_piquot(q: PiQuot) -> ConstExpr {
        ConstExpr {
            repr: Repr::Lin(LinForm::from_quot(q)),
        }
    }

    /// The underlying pi-quotient when the expression is ln-free.
    pub fn to_piquot(&self) -> Option<PiQuot> {
        match &self.repr {
            Repr::Lin(l) if l.logs.is_empty() => Some(l.q0.clone()),
            _ => None,
        }
    }

    /// Linear-form view: (q0, [(arg, coeff)]) when no opaque node is present.
    pub fn linear_parts(&self) -> Option<(PiQuot, Vec<(LnArg, PiQuot)>)> {
        match &self.repr {
            Repr::Lin(l) => Some((
                l.q0.clone(),
                l.logs.iter().map(|(a, c)| (a.clone(), c.clone())).collect(),
            )),
            Repr::Node(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Lin(l) => l.is_zero(),
            Repr::Node(_) => false,
        }
    }

    pub fn add(&self, other: &ConstExpr) -> ConstExpr {
        match (&self.repr, &other.repr) {
            (Repr::Lin(a), Repr::Lin(b)) => ConstExpr {
                repr: Repr::Lin(a.add(b)),
            },
            _ => {
                if self.is_zero() {
                    return other.clone();
                }
                if other.is_zero() {
                    return self.clone();
                }
                ConstExpr {
                    repr: Repr::Node(Arc::new(Node::Add(self.clone(), other.clone()))),
                }
            }
        }
    }

    pub fn neg(&self) -> ConstExpr {
        match &self.repr {
            Repr::Lin(l) => ConstExpr {
                repr: Repr::Lin(l.neg()),
            },
            Repr::Node(_) => self.mul(&ConstExpr::integer(-1)),
        }
    }

    pub fn sub(&self, other: &ConstExpr) -> ConstExpr {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ConstExpr) -> ConstExpr {
        match (&self.repr, &other.repr) {
            (Repr::Lin(a), Repr::Lin(b)) => {
                if a.logs.is_empty() {
                    ConstExpr {
                        repr: Repr::Lin(b.scale(&a.q0)),
                    }
                } else if b.logs.is_empty() {
                    ConstExpr {
                        repr: Repr::Lin(a.scale(&b.q0)),
                    }
                } else {
                    ConstExpr {
                        repr: Repr::Node(Arc::new(Node::Mul(self.clone(), other.clone()))),
                    }
                }
            }
            _ => {
                if self.is_zero() || other.is_zero() {
                    return ConstExpr::zero();
                }
                ConstExpr {
                    repr: Repr::Node(Arc::new(Node::Mul(self.clone(), other.clone()))),
                }
            }
        }
    }

    /// Division; the divisor must be certifiably nonzero. Ln-free divisors
    /// are decided symbolically, anything else by enclosure refinement.
    pub fn div(&self, other: &ConstExpr) -> Result<ConstExpr, ExactError> {
        if let Some(q) = other.to_piquot() {
            let r = q.recip().ok_or(ExactError::DivisionByUncertified)?;
            Ok(self.mul(&ConstExpr::from_piquot(r)))
        } else {
            match other.sign(Budget::default())? {
                Sign::Zero => Err(ExactError::DivisionByUncertified),
                _ => Ok(ConstExpr {
                    repr: Repr::Node(Arc::new(Node::Div(self.clone(), other.clone()))),
                }),
            }
        }
    }

    pub fn pow(&self, n: u32) -> ConstExpr {
        let mut acc = ConstExpr::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Natural logarithm. The argument must certify positive within the
    /// budget; pi-quotient arguments join the linear form with canonical
    /// orientation, everything else becomes an opaque node.
    pub fn ln(arg: &ConstExpr, budget: Budget) -> Result<ConstExpr, ExactError> {
        if let Some(q) = arg.to_piquot() {
            match piquot_sign_refine(&q, budget)? {
                Sign::Positive => {}
                _ => return Err(ExactError::LnNotPositive),
            }
            let (canon, flipped) = match q.num().cmp_structural(q.den()) {
                Ordering::Greater => (q, false),
                Ordering::Less => (q.recip().expect("positive quotient"), true),
                Ordering::Equal => return Ok(ConstExpr::zero()),
            };
            let mut l = LinForm::from_quot(PiQuot::zero());
            let coeff = if flipped {
                PiQuot::from_rational(rat_int(-1))
            } else {
                PiQuot::one()
            };
            l.insert_log(LnArg(canon), coeff);
            Ok(ConstExpr { repr: Repr::Lin(l) })
        } else {
            match arg.sign(budget)? {
                Sign::Positive => Ok(ConstExpr {
                    repr: Repr::Node(Arc::new(Node::Ln(arg.clone()))),
                }),
                _ => Err(ExactError::LnNotPositive),
            }
        }
    }

    pub fn ln_default(arg: &ConstExpr) -> Result<ConstExpr, ExactError> {
        ConstExpr::ln(arg, Budget::default())
    }

    /// Interval enclosure of the exact value at the given precision knobs.
    /// Pure-rational expressions come back as point intervals.
    pub fn enclose(&self, pi_depth: usize, ln_terms: usize) -> Result<Enclosure, ExactError> {
        let bits = round_bits(ln_terms);
        match &self.repr {
            Repr::Lin(l) => {
                let pi = pi_enclosure(pi_depth);
                let mut acc = l.q0.eval(&pi).map_err(depth_err)?;
                for (arg, coeff) in &l.logs {
                    let a = arg.0.eval(&pi).map_err(depth_err)?;
                    if !a.lo().is_positive() {
                        return Err(ExactError::UndecidableAtDepth(
                            "ln argument enclosure touches zero".into(),
                        ));
                    }
                    let la = ln_interval(&a.round_out(bits), ln_terms)?;
                    let c = coeff.eval(&pi).map_err(depth_err)?;
                    acc = acc.add(&c.mul(&la));
                }
                if l.logs.is_empty() {
                    Ok(acc)
                } else {
                    Ok(acc.round_out(bits))
                }
            }
            Repr::Node(n) => {
                let e = match n.as_ref() {
                    Node::Add(a, b) => a
                        .enclose(pi_depth, ln_terms)?
                        .add(&b.enclose(pi_depth, ln_terms)?),
                    Node::Mul(a, b) => a
                        .enclose(pi_depth, ln_terms)?
                        .mul(&b.enclose(pi_depth, ln_terms)?),
                    Node::Div(a, b) => a
                        .enclose(pi_depth, ln_terms)?
                        .div(&b.enclose(pi_depth, ln_terms)?)
                        .map_err(depth_err)?,
                    Node::Ln(a) => {
                        let ea = a.enclose(pi_depth, ln_terms)?;
                        if !ea.lo().is_positive() {
                            return Err(ExactError::UndecidableAtDepth(
                                "ln argument enclosure touches zero".into(),
                            ));
                        }
                        ln_interval(&ea.round_out(bits), ln_terms)?
                    }
                };
                Ok(e.round_out(bits))
            }
        }
    }

    /// Sign decision: symbolic zero detection first, then enclosure
    /// refinement with doubling budgets. Never wrong; may give up.
    pub fn sign(&self, budget: Budget) -> Result<Sign, ExactError> {
        match &self.repr {
            Repr::Lin(l) if l.logs.is_empty() => piquot_sign_refine(&l.q0, budget),
            _ => {
                if self.is_zero() {
                    return Ok(Sign::Zero);
                }
                let mut depth = budget.pi_depth.max(1);
                let mut terms = budget.ln_terms.max(4);
                for _ in 0..=budget.rounds {
                    match self.enclose(depth, terms) {
                        Ok(e) => {
                            if let Some(s) = e.uniform_sign() {
                                if s != Sign::Zero {
                                    return Ok(s);
                                }
                            }
                        }
                        Err(ExactError::UndecidableAtDepth(_)) => {}
                        Err(e) => return Err(e),
                    }
                    depth *= 2;
                    terms *= 2;
                }
                Err(ExactError::UndecidableAtBudget(format!(
                    "constant sign after {} refinement rounds",
                    budget.rounds
                )))
            }
        }
    }

    pub fn sign_default(&self) -> Result<Sign, ExactError> {
        self.sign(Budget::default())
    }

    /// Convenience: sqrt-free rational upper/lower bounds with denominators
    /// clamped, used for interval endpoint brackets.
    pub fn rational_upper(&self, budget: Budget) -> Result<Rational, ExactError> {
        let e = self.enclose(budget.pi_depth, budget.ln_terms)?;
        Ok(clamp_denominator_up(e.hi()))
    }

    pub fn rational_lower(&self, budget: Budget) -> Result<Rational, ExactError> {
        let e = self.enclose(budget.pi_depth, budget.ln_terms)?;
        Ok(clamp_denominator_down(e.lo()))
    }

    pub(crate) fn node_kind(&self) -> Option<(&'static str, Vec<&ConstExpr>)> {
        match &self.repr {
            Repr::Lin(_) => None,
            Repr::Node(n) => Some(match n.as_ref() {
                Node::Add(a, b) => ("add", vec![a, b]),
                Node::Mul(a, b) => ("mul", vec![a, b]),
                Node::Div(a, b) => ("div", vec![a, b]),
                Node::Ln(a) => ("ln", vec![a]),
            }),
        }
    }

    pub(crate) fn from_node_kind(
        kind: &str,
        mut args: Vec<ConstExpr>,
    ) -> Result<ConstExpr, ExactError> {
        let make = |n: Node| ConstExpr {
            repr: Repr::Node(Arc::new(n)),
        };
        match (kind, args.len()) {
            ("add", 2) => {
                let b = args.pop().unwrap();
                let a = args.pop().unwrap();
                Ok(make(Node::Add(a, b)))
            }
            ("mul", 2) => {
                let b = args.pop().unwrap();
                let a = args.pop().unwrap();
                Ok(make(Node::Mul(a, b)))
            }
            ("div", 2) => {
                let b = args.pop().unwrap();
                let a = args.pop().unwrap();
                Ok(make(Node::Div(a, b)))
            }
            ("ln", 1) => Ok(make(Node::Ln(args.pop().unwrap()))),
            _ => Err(ExactError::BadNumber(format!("constant node {kind}"))),
        }
    }

    pub(crate) fn from_linear_parts(q0: PiQuot, logs: Vec<(PiQuot, PiQuot)>) -> ConstExpr {
        let mut l = LinForm::from_quot(q0);
        for (arg, coeff) in logs {
            l.insert_log(LnArg(arg), coeff);
        }
        ConstExpr { repr: Repr::Lin(l) }
    }
}

fn depth_err(_: ExactError) -> ExactError {
    ExactError::UndecidableAtDepth("denominator enclosure straddles zero".into())
}

fn round_bits(ln_terms: usize) -> u32 {
    (4 * ln_terms).max(128) as u32
}

/// Outward rounding of interval endpoints to denominators <= 10^6,
/// used when tactics need small rational brackets of interval endpoints.
fn clamp_denominator_up(r: &Rational) -> Rational {
    clamp_denominator(r, true)
}

fn clamp_denominator_down(r: &Rational) -> Rational {
    clamp_denominator(r, false)
}

fn clamp_denominator(r: &Rational, up: bool) -> Rational {
    let den = num::BigInt::from(1_000_000u64);
    if r.denom() <= &den {
        return r.clone();
    }
    let scaled = r.numer() * &den;
    let q = if up {
        num::Integer::div_ceil(&scaled, r.denom())
    } else {
        num::Integer::div_floor(&scaled, r.denom())
    };
    Rational::new(q, den)
}

/// Bracket of ln 2 = ln(3/2) + ln(4/3); both series are alternating with
/// positive first term, so consecutive partial sums enclose the value.
fn ln2_enclosure(terms: usize) -> Enclosure {
    let a = ln_series_pos(&rat(1, 2), terms);
    let b = ln_series_pos(&rat(1, 3), terms);
    a.add(&b)
}

/// Enclosure of ln(1 + t) for 0 <= t <= 1/2 from consecutive partial sums of
/// the alternating series t - t^2/2 + t^3/3 - ...
fn ln_series_pos(t: &Rational, terms: usize) -> Enclosure {
    debug_assert!(!t.is_negative() && t <= &rat(1, 2));
    if t.is_zero() {
        return Enclosure::zero();
    }
    let n = terms.max(2);
    let mut power = t.clone();
    let mut s = Rational::zero();
    let mut prev = Rational::zero();
    for k in 1..=n {
        prev = s.clone();
        let term = &power / rat_int(k as i64);
        if k % 2 == 1 {
            s += term;
        } else {
            s -= term;
        }
        power *= t;
    }
    if prev <= s {
        Enclosure::new(prev, s)
    } else {
        Enclosure::new(s, prev)
    }
}

/// Enclosure of ln(a) for a rational a > 0: scale by a power of two into
/// (3/4, 3/2], invert below one so the series argument stays nonnegative,
/// then add the matching multiple of ln 2.
fn ln_rational(a: &Rational, terms: usize) -> Result<Enclosure, ExactError> {
    if !a.is_positive() {
        return Err(ExactError::LnNotPositive);
    }
    let mut m = a.clone();
    let mut k: i64 = 0;
    let hi = rat(3, 2);
    let lo = rat(3, 4);
    while m > hi {
        m /= rat_int(2);
        k += 1;
    }
    while m <= lo {
        m *= rat_int(2);
        k -= 1;
    }
    let core = if m >= Rational::one() {
        ln_series_pos(&(&m - Rational::one()), terms)
    } else {
        let inv = m.recip();
        ln_series_pos(&(inv - Rational::one()), terms).neg()
    };
    if k == 0 {
        return Ok(core);
    }
    let ln2 = ln2_enclosure(terms);
    Ok(core.add(&ln2.scale(&rat_int(k))))
}

/// Monotone interval extension of ln.
fn ln_interval(a: &Enclosure, terms: usize) -> Result<Enclosure, ExactError> {
    let lo = ln_rational(a.lo(), terms)?;
    let hi = ln_rational(a.hi(), terms)?;
    Ok(Enclosure::new(lo.lo().clone(), hi.hi().clone()))
}

impl fmt::Display for ConstExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Lin(l) => {
                let mut wrote = false;
                if !l.q0.is_zero() || l.logs.is_empty() {
                    write!(f, "{}", l.q0)?;
                    wrote = true;
                }
                for (arg, coeff) in &l.logs {
                    if wrote {
                        write!(f, " + ")?;
                    }
                    write!(f, "({}) * ln({})", coeff, arg.0)?;
                    wrote = true;
                }
                Ok(())
            }
            Repr::Node(n) => match n.as_ref() {
                Node::Add(a, b) => write!(f, "({}) + ({})", a, b),
                Node::Mul(a, b) => write!(f, "({}) * ({})", a, b),
                Node::Div(a, b) => write!(f, "({}) / ({})", a, b),
                Node::Ln(a) => write!(f, "ln({})", a),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi3_poly(c0: i64, c1: i64, c3: i64) -> ConstExpr {
        // c0 + c1*pi + c3*pi^3
        let p = ConstExpr::pi();
        ConstExpr::integer(c0)
            .add(&p.mul(&ConstExpr::integer(c1)))
            .add(&p.pow(3).mul(&ConstExpr::integer(c3)))
    }

    #[test]
    fn sign_examples_from_the_cubics() {
        assert_eq!(pi3_poly(48, -24, 1).sign_default().unwrap(), Sign::Positive);
        assert_eq!(
            pi3_poly(120, -60, 1).sign_default().unwrap(),
            Sign::Negative
        );
        let z = ConstExpr::pi().sub(&ConstExpr::pi());
        assert_eq!(z.sign_default().unwrap(), Sign::Zero);
    }

    #[test]
    fn pure_rational_enclosures_are_exact() {
        let e = ConstExpr::rational(7, 3).enclose(1, 4).unwrap();
        assert!(e.is_point());
        assert_eq!(e.lo(), &rat(7, 3));
    }

    #[test]
    fn pi_minus_22_sevenths_is_negative_at_depth_one() {
        let e = ConstExpr::pi().sub(&ConstExpr::rational(22, 7));
        let enc = e.enclose(1, 4).unwrap();
        assert!(enc.hi().is_negative());
    }

    #[test]
    fn reciprocal_log_arguments_cancel_exactly() {
        // ln(pi/2) + ln(2/pi) = 0 symbolically
        let half_pi = ConstExpr::pi().div(&ConstExpr::integer(2)).unwrap();
        let two_over_pi = ConstExpr::integer(2).div(&ConstExpr::pi()).unwrap();
        let s = ConstExpr::ln_default(&half_pi)
            .unwrap()
            .add(&ConstExpr::ln_default(&two_over_pi).unwrap());
        assert!(s.is_zero());
        assert_eq!(s.sign_default().unwrap(), Sign::Zero);
    }

    #[test]
    fn ln_of_one_is_zero() {
        assert!(ConstExpr::ln_default(&ConstExpr::one()).unwrap().is_zero());
    }

    #[test]
    fn ln_rejects_nonpositive_arguments() {
        assert!(ConstExpr::ln_default(&ConstExpr::integer(-3)).is_err());
        assert!(ConstExpr::ln_default(&ConstExpr::zero()).is_err());
    }

    #[test]
    fn ln2_brackets_the_true_value() {
        let e = ln2_enclosure(32);
        // ln 2 = 0.69314718055994530941...
        assert!(e.lo() < &rat(693147181, 1_000_000_000));
        assert!(e.hi() > &rat(693147180, 1_000_000_000));
        assert!(e.width() < rat(1, 1_000_000_000));
    }

    #[test]
    fn g1_slope_constant_is_positive() {
        // (1/5) ln(pi/2) - (2 pi - 6)/pi is ~1.8e-4 and must certify positive
        let half_pi = ConstExpr::pi().div(&ConstExpr::integer(2)).unwrap();
        let lhs = ConstExpr::ln_default(&half_pi)
            .unwrap()
            .mul(&ConstExpr::rational(1, 5));
        let rhs = ConstExpr::pi()
            .mul(&ConstExpr::integer(2))
            .sub(&ConstExpr::integer(6))
            .div(&ConstExpr::pi())
            .unwrap();
        let v = lhs.sub(&rhs);
        assert_eq!(v.sign_default().unwrap(), Sign::Positive);
        let enc = v.enclose(8, 32).unwrap();
        assert!(enc.lo().is_positive());
        assert!(enc.hi() < &rat(2, 10_000));
        assert!(enc.lo() > &rat(1, 10_000));
    }
}

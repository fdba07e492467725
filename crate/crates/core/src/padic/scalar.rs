//! Zealous p-adic scalars.
//!
//! A value is either a zero ball `0 + O(p^N)` or `p^v * u + O(p^N)` with `u` a
//! unit reduced modulo `p^(N - v)`. Sums keep the minimum absolute precision
//! of the operands, products and quotients keep the minimum relative
//! precision. Precision `EXACT` marks values with no error term (integer
//! constants, chosen shifts and multipliers).

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::counter;
use crate::error::{PadicError, Result};

/// Absolute precision of a value that carries no error term.
pub const EXACT: i64 = i64::MAX;

thread_local! {
    static POW_CACHE: RefCell<HashMap<u32, Vec<Rc<BigInt>>>> = RefCell::new(HashMap::new());
}

/// `p^k`, cached per thread.
pub(crate) fn pow_p(p: u32, k: i64) -> Rc<BigInt> {
    debug_assert!(k >= 0 && k != EXACT);
    let k = k as usize;
    POW_CACHE.with(|cache| {
        let mut cache = cache.borrow_mut();
        let table = cache.entry(p).or_insert_with(|| vec![Rc::new(BigInt::one())]);
        while table.len() <= k {
            let next = table.last().unwrap().as_ref() * p;
            table.push(Rc::new(next));
        }
        Rc::clone(&table[k])
    })
}

fn reduce(x: BigInt, p: u32, rel: i64) -> BigInt {
    if rel == EXACT {
        x
    } else {
        x.mod_floor(&pow_p(p, rel))
    }
}

fn divisible_by(x: &BigInt, p: u32) -> bool {
    (x % p).is_zero()
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime and the default absolute precision shared by related values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicContext {
    p: u32,
    prec: i64,
}

impl PadicContext {
    pub fn new(p: u32, prec: i64) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(PadicError::InvalidArgument(format!("{p} is not prime")));
        }
        if prec < 1 {
            return Err(PadicError::InvalidArgument(format!(
                "precision must be positive, got {prec}"
            )));
        }
        Ok(Self { p, prec })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn with_prec(&self, prec: i64) -> Self {
        Self { p: self.p, prec }
    }

    pub fn zero(&self) -> PadicScalar {
        PadicScalar::zero(self.p, self.prec)
    }

    pub fn one(&self) -> PadicScalar {
        PadicScalar::from_int(self.p, 1, self.prec)
    }

    pub fn int(&self, x: i64) -> PadicScalar {
        PadicScalar::from_int(self.p, x, self.prec)
    }

    pub fn big(&self, x: &BigInt) -> PadicScalar {
        PadicScalar::from_bigint(self.p, x.clone(), self.prec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Ball,
    Unit { val: i64, unit: BigInt },
}

/// Lower bound on the valuation of a scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Exact(i64),
    AtLeast(i64),
}

/// Norm `p^(-v)`, exact for nonzero values and an upper bound for zero balls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Norm {
    Exact(num_rational::BigRational),
    AtMost(num_rational::BigRational),
}

impl Norm {
    pub fn value(&self) -> &num_rational::BigRational {
        match self {
            Norm::Exact(r) | Norm::AtMost(r) => r,
        }
    }
}

pub(crate) fn norm_of_exponent(p: u32, v: i64) -> num_rational::BigRational {
    use num_rational::BigRational;
    if v >= 0 {
        BigRational::new(BigInt::one(), pow_p(p, v).as_ref().clone())
    } else {
        BigRational::from_integer(pow_p(p, -v).as_ref().clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    p: u32,
    prec: i64,
    repr: Repr,
}

impl PadicScalar {
    /// `0 + O(p^prec)`.
    pub fn zero(p: u32, prec: i64) -> Self {
        Self {
            p,
            prec,
            repr: Repr::Ball,
        }
    }

    pub fn from_int(p: u32, x: i64, prec: i64) -> Self {
        Self::from_parts(p, 0, BigInt::from(x), prec)
    }

    pub fn from_bigint(p: u32, x: BigInt, prec: i64) -> Self {
        Self::from_parts(p, 0, x, prec)
    }

    pub fn exact_int(p: u32, x: i64) -> Self {
        Self::from_parts(p, 0, BigInt::from(x), EXACT)
    }

    /// `num / den + O(p^prec)`; `den` must be nonzero.
    pub fn from_ratio(p: u32, num: i64, den: i64, prec: i64) -> Result<Self> {
        let vd = valuation_i64(p, den);
        let n = Self::from_int(p, num, prec.saturating_add(vd));
        let d = Self::from_int(p, den, prec.saturating_add(vd).max(vd + 1));
        n.div(&d)
    }

    /// Builds `p^val * raw + O(p^prec)` and normalizes it.
    pub fn from_parts(p: u32, val: i64, raw: BigInt, prec: i64) -> Self {
        if prec != EXACT && prec <= val {
            return Self::zero(p, prec);
        }
        let rel = if prec == EXACT { EXACT } else { prec - val };
        let mut raw = reduce(raw, p, rel);
        if raw.is_zero() {
            return Self::zero(p, prec);
        }
        let mut val = val;
        while divisible_by(&raw, p) {
            raw /= p;
            val += 1;
        }
        Self {
            p,
            prec,
            repr: Repr::Unit { val, unit: raw },
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Absolute precision `N` of `x + O(p^N)`.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    pub fn is_zero_ball(&self) -> bool {
        matches!(self.repr, Repr::Ball)
    }

    /// Valuation of a nonzero value; `None` for a zero ball.
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Ball => None,
            Repr::Unit { val, .. } => Some(*val),
        }
    }

    /// Largest integer the valuation is known to be at least.
    pub fn val_lower_bound(&self) -> i64 {
        match &self.repr {
            Repr::Ball => self.prec,
            Repr::Unit { val, .. } => *val,
        }
    }

    /// Unit part of a nonzero value.
    pub fn unit(&self) -> Option<&BigInt> {
        match &self.repr {
            Repr::Ball => None,
            Repr::Unit { unit, .. } => Some(unit),
        }
    }

    /// Relative precision `N - v`; zero balls have none.
    pub fn rel_prec(&self) -> Option<i64> {
        match &self.repr {
            Repr::Ball => None,
            Repr::Unit { val, .. } => Some(if self.prec == EXACT {
                EXACT
            } else {
                self.prec - val
            }),
        }
    }

    /// No digit at or above `p^0` is known: a zero ball of nonpositive precision.
    pub fn is_fully_unknown(&self) -> bool {
        self.is_zero_ball() && self.prec <= 0
    }

    pub fn is_p_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    pub fn valuation_norm(&self) -> (Valuation, Norm) {
        match &self.repr {
            Repr::Ball => (
                Valuation::AtLeast(self.prec),
                Norm::AtMost(norm_of_exponent(self.p, self.prec)),
            ),
            Repr::Unit { val, .. } => (
                Valuation::Exact(*val),
                Norm::Exact(norm_of_exponent(self.p, *val)),
            ),
        }
    }

    /// Pivot ordering: `Greater` when `self` has the strictly larger norm.
    /// Known nonzero values beat zero balls of the same exponent.
    pub fn norm_cmp(&self, other: &Self) -> Ordering {
        let key = |x: &Self| (x.val_lower_bound(), x.is_zero_ball());
        key(other).cmp(&key(self))
    }

    /// Re-expresses the value at absolute precision `prec`, keeping the known
    /// digits and padding with zeros. Used when a computed quantity is adopted
    /// as an exact choice (a shift, an elimination multiplier, a lift).
    pub fn lift_to(&self, prec: i64) -> Self {
        match &self.repr {
            Repr::Ball => Self::zero(self.p, prec),
            Repr::Unit { val, unit } => {
                if prec != EXACT && prec <= *val {
                    Self::zero(self.p, prec)
                } else if prec >= self.prec {
                    Self {
                        p: self.p,
                        prec,
                        repr: self.repr.clone(),
                    }
                } else {
                    Self {
                        p: self.p,
                        prec,
                        repr: Repr::Unit {
                            val: *val,
                            unit: reduce(unit.clone(), self.p, prec - val),
                        },
                    }
                }
            }
        }
    }

    /// Multiplies by `p^k` exactly.
    pub fn shift(&self, k: i64) -> Self {
        let prec = if self.prec == EXACT {
            EXACT
        } else {
            self.prec + k
        };
        match &self.repr {
            Repr::Ball => Self::zero(self.p, prec),
            Repr::Unit { val, unit } => Self {
                p: self.p,
                prec,
                repr: Repr::Unit {
                    val: val + k,
                    unit: unit.clone(),
                },
            },
        }
    }

    /// Residue in `F_p`, or `None` when the value is not known to be integral
    /// or its constant digit is unknown.
    pub fn residue(&self) -> Option<u32> {
        match &self.repr {
            Repr::Ball => (self.prec >= 1).then_some(0),
            Repr::Unit { val, unit } => match val.cmp(&0) {
                Ordering::Less => None,
                Ordering::Greater => Some(0),
                Ordering::Equal => (unit % self.p).to_u32(),
            },
        }
    }

    /// Representative in `[0, p^k)` of the value modulo `p^k`.
    pub fn residue_mod_pk(&self, k: i64) -> Option<BigInt> {
        if self.prec < k {
            return None;
        }
        match &self.repr {
            Repr::Ball => Some(BigInt::zero()),
            Repr::Unit { val, unit } => {
                if *val < 0 {
                    None
                } else if *val >= k {
                    Some(BigInt::zero())
                } else {
                    let m = pow_p(self.p, k);
                    Some((unit * pow_p(self.p, *val).as_ref()).mod_floor(&m))
                }
            }
        }
    }

    fn check_same_prime(&self, other: &Self) {
        assert_eq!(
            self.p, other.p,
            "p-adic operands over different primes ({} vs {})",
            self.p, other.p
        );
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Self {
        self.check_same_prime(other);
        let p = self.p;
        let prec = self.prec.min(other.prec);
        match (&self.repr, &other.repr) {
            (Repr::Ball, Repr::Ball) => Self::zero(p, prec),
            (Repr::Unit { .. }, Repr::Ball) => self.lift_to(prec).max_prec(prec),
            (Repr::Ball, Repr::Unit { .. }) => {
                let x = other.lift_to(prec).max_prec(prec);
                if negate {
                    -&x
                } else {
                    x
                }
            }
            (Repr::Unit { val: va, unit: ua }, Repr::Unit { val: vb, unit: ub }) => {
                let vmin = (*va).min(*vb);
                if prec != EXACT && prec <= vmin {
                    return Self::zero(p, prec);
                }
                let rel = if prec == EXACT { EXACT } else { prec - vmin };
                let scaled = |u: &BigInt, v: i64| -> Option<BigInt> {
                    let d = v - vmin;
                    if rel != EXACT && d >= rel {
                        None
                    } else if d == 0 {
                        Some(u.clone())
                    } else {
                        Some(u * pow_p(p, d).as_ref())
                    }
                };
                let a = scaled(ua, *va);
                let b = scaled(ub, *vb).map(|b| if negate { -b } else { b });
                let sum = match (a, b) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a,
                    (None, Some(b)) => b,
                    (None, None) => return Self::zero(p, prec),
                };
                if va != vb {
                    // The lower-valuation term is a unit, so no cancellation.
                    Self {
                        p,
                        prec,
                        repr: Repr::Unit {
                            val: vmin,
                            unit: reduce(sum, p, rel),
                        },
                    }
                } else {
                    Self::from_parts(p, vmin, sum, prec)
                }
            }
        }
    }

    // `lift_to` pads when raising precision; here precision only ever drops.
    fn max_prec(self, prec: i64) -> Self {
        debug_assert!(self.prec == prec);
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_signed(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_signed(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_prime(other);
        counter::bump();
        let p = self.p;
        match (&self.repr, &other.repr) {
            (Repr::Ball, Repr::Ball) => {
                let prec = if self.prec == EXACT || other.prec == EXACT {
                    EXACT
                } else {
                    self.prec + other.prec
                };
                Self::zero(p, prec)
            }
            (Repr::Ball, Repr::Unit { val, .. }) | (Repr::Unit { val, .. }, Repr::Ball) => {
                let ball = if self.is_zero_ball() { self } else { other };
                let prec = if ball.prec == EXACT {
                    EXACT
                } else {
                    ball.prec + val
                };
                Self::zero(p, prec)
            }
            (Repr::Unit { val: va, unit: ua }, Repr::Unit { val: vb, unit: ub }) => {
                let rel = self.rel_prec().unwrap().min(other.rel_prec().unwrap());
                let val = va + vb;
                let prec = if rel == EXACT { EXACT } else { val + rel };
                Self {
                    p,
                    prec,
                    repr: Repr::Unit {
                        val,
                        unit: reduce(ua * ub, p, rel),
                    },
                }
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_same_prime(other);
        let p = self.p;
        let (vb, ub) = match &other.repr {
            Repr::Ball => {
                return Err(PadicError::DivisionByExactZeroBall {
                    p,
                    prec: other.prec,
                })
            }
            Repr::Unit { val, unit } => (*val, unit),
        };
        counter::bump();
        match &self.repr {
            Repr::Ball => {
                let prec = if self.prec == EXACT {
                    EXACT
                } else {
                    self.prec - vb
                };
                Ok(Self::zero(p, prec))
            }
            Repr::Unit { val: va, unit: ua } => {
                let rel = self.rel_prec().unwrap().min(other.rel_prec().unwrap());
                let val = va - vb;
                if rel == EXACT {
                    if ub.abs().is_one() {
                        return Ok(Self {
                            p,
                            prec: EXACT,
                            repr: Repr::Unit {
                                val,
                                unit: ua * ub,
                            },
                        });
                    }
                    return Err(PadicError::InvalidArgument(
                        "exact quotient by a non-trivial unit needs a precision cap".into(),
                    ));
                }
                let m = pow_p(p, rel);
                let inv = ub
                    .mod_floor(&m)
                    .modinv(&m)
                    .expect("unit part is invertible modulo p^k");
                Ok(Self {
                    p,
                    prec: val + rel,
                    repr: Repr::Unit {
                        val,
                        unit: (ua * inv).mod_floor(&m),
                    },
                })
            }
        }
    }

    /// `v:u:N` with the unit in base 10; zero balls render as `N:0:N`.
    pub fn to_token(&self) -> String {
        let n = prec_str(self.prec);
        match &self.repr {
            Repr::Ball => format!("{n}:0:{n}"),
            Repr::Unit { val, unit } => format!("{val}:{unit}:{n}"),
        }
    }

    pub fn from_token(p: u32, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        if parts.len() != 3 {
            return Err(PadicError::Parse(format!("bad scalar token `{s}`")));
        }
        let prec = parse_prec(parts[2])?;
        let unit: BigInt = parts[1]
            .parse()
            .map_err(|_| PadicError::Parse(format!("bad unit in `{s}`")))?;
        if unit.is_zero() {
            return Ok(Self::zero(p, prec));
        }
        let val: i64 = parts[0]
            .parse()
            .map_err(|_| PadicError::Parse(format!("bad valuation in `{s}`")))?;
        Ok(Self::from_parts(p, val, unit, prec))
    }

    /// Digit expansion `a_v*p^v + ... + O(p^N)` with digits in `[0, p)`.
    pub fn to_expansion(&self) -> String {
        let p = self.p;
        let mut terms = Vec::new();
        if let Repr::Unit { val, unit } = &self.repr {
            let mut rest = if unit.is_negative() {
                // Only exact values keep a signed unit; expand a finite window.
                unit.mod_floor(&pow_p(p, 64))
            } else {
                unit.clone()
            };
            let mut k = *val;
            while !rest.is_zero() {
                let (q, d) = rest.div_mod_floor(&BigInt::from(p));
                if !d.is_zero() {
                    terms.push(format!("{d}*{p}^{k}"));
                }
                rest = q;
                k += 1;
            }
        }
        if self.prec != EXACT {
            terms.push(format!("O({p}^{})", self.prec));
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        terms.join(" + ")
    }

    pub fn from_expansion(p: u32, s: &str) -> Result<Self> {
        let bad = || PadicError::Parse(format!("bad expansion `{s}`"));
        let mut prec = EXACT;
        let mut acc: Option<(i64, BigInt)> = None;
        for term in s.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            if let Some(inner) = term.strip_prefix("O(").and_then(|t| t.strip_suffix(')')) {
                let (base, exp) = inner.split_once('^').ok_or_else(bad)?;
                if base.trim().parse::<u32>().map_err(|_| bad())? != p {
                    return Err(bad());
                }
                prec = exp.trim().parse().map_err(|_| bad())?;
                continue;
            }
            let (digit, exp) = match term.split_once('*') {
                Some((d, rest)) => {
                    let (base, exp) = rest.split_once('^').ok_or_else(bad)?;
                    if base.trim().parse::<u32>().map_err(|_| bad())? != p {
                        return Err(bad());
                    }
                    (d.trim(), exp.trim().parse::<i64>().map_err(|_| bad())?)
                }
                None => (term, 0),
            };
            let digit: BigInt = digit.parse().map_err(|_| bad())?;
            acc = Some(match acc {
                None => (exp, digit),
                Some((v, x)) => {
                    let lo = v.min(exp);
                    let x = x * pow_p(p, v - lo).as_ref() + digit * pow_p(p, exp - lo).as_ref();
                    (lo, x)
                }
            });
        }
        Ok(match acc {
            None => Self::zero(p, prec),
            Some((v, x)) => Self::from_parts(p, v, x, prec),
        })
    }
}

fn prec_str(prec: i64) -> String {
    if prec == EXACT {
        "inf".into()
    } else {
        prec.to_string()
    }
}

fn parse_prec(s: &str) -> Result<i64> {
    if s == "inf" {
        return Ok(EXACT);
    }
    s.parse()
        .map_err(|_| PadicError::Parse(format!("bad precision `{s}`")))
}

fn valuation_i64(p: u32, mut x: i64) -> i64 {
    if x == 0 {
        return 0;
    }
    let mut v = 0;
    while x % p as i64 == 0 {
        x /= p as i64;
        v += 1;
    }
    v
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expansion())
    }
}

impl Neg for &PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        match &self.repr {
            Repr::Ball => self.clone(),
            Repr::Unit { val, unit } => {
                let rel = self.rel_prec().unwrap();
                PadicScalar {
                    p: self.p,
                    prec: self.prec,
                    repr: Repr::Unit {
                        val: *val,
                        unit: reduce(-unit, self.p, rel),
                    },
                }
            }
        }
    }
}

impl Neg for PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&PadicScalar> for &PadicScalar {
            type Output = PadicScalar;
            fn $method(self, rhs: &PadicScalar) -> PadicScalar {
                PadicScalar::$method(self, rhs)
            }
        }
        impl $trait<PadicScalar> for PadicScalar {
            type Output = PadicScalar;
            fn $method(self, rhs: PadicScalar) -> PadicScalar {
                PadicScalar::$method(&self, &rhs)
            }
        }
        impl $trait<&PadicScalar> for PadicScalar {
            type Output = PadicScalar;
            fn $method(self, rhs: &PadicScalar) -> PadicScalar {
                PadicScalar::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: u32, x: i64, prec: i64) -> PadicScalar {
        PadicScalar::from_int(p, x, prec)
    }

    #[test]
    fn cancellation_keeps_the_surviving_digit() {
        let p = 5u32;
        let big = pow_p(p, 99).as_ref().clone();
        let a = PadicScalar::from_bigint(p, BigInt::one() + &big, 100);
        let b = s(p, 1, 100);
        let d = &a - &b;
        assert_eq!(d.valuation(), Some(99));
        assert_eq!(d.prec(), 100);
        assert_eq!(d.unit(), Some(&BigInt::one()));
    }

    #[test]
    fn dividing_a_small_number_by_p_loses_everything_but_one_digit() {
        let p = 3u32;
        let big = pow_p(p, 99).as_ref().clone();
        let num = &PadicScalar::from_bigint(p, BigInt::one() + &big, 100) - &s(p, 1, 100);
        let den = PadicScalar::from_parts(p, 100, BigInt::one(), 200);
        let q = num.div(&den).unwrap();
        assert_eq!(q.valuation(), Some(-1));
        assert_eq!(q.prec(), 0);
        assert_eq!(q.to_expansion(), "1*3^-1 + O(3^0)");
    }

    #[test]
    fn zero_balls_add_to_zero_balls() {
        let z = &PadicScalar::zero(7, 5) + &PadicScalar::zero(7, 5);
        assert!(z.is_zero_ball());
        assert_eq!(z.prec(), 5);
    }

    #[test]
    fn sum_takes_min_absolute_precision() {
        // 3 + O(7^4) plus 4 + O(7^2) = 7 + O(7^2)
        let r = &s(7, 3, 4) + &s(7, 4, 2);
        assert_eq!(r.valuation(), Some(1));
        assert_eq!(r.prec(), 2);
        assert_eq!(r.unit(), Some(&BigInt::one()));
    }

    #[test]
    fn unit_times_value_keeps_value_precision() {
        let p = 11;
        let u = s(p, 3, 20);
        let a = s(p, 5 * 11 + 2, 8);
        let r = &u * &a;
        assert_eq!(r, s(p, 3 * (5 * 11 + 2), 8));
    }

    #[test]
    fn multiplying_by_p_raises_absolute_precision() {
        let p = 7;
        let x = s(p, 23, 6);
        let r = &PadicScalar::from_parts(p, 1, BigInt::one(), 7) * &x;
        assert_eq!(r.valuation(), Some(1));
        assert_eq!(r.prec(), 7);
        assert_eq!(r.rel_prec(), x.rel_prec());
    }

    #[test]
    fn zero_ball_absorbs_in_products() {
        let r = &PadicScalar::zero(5, 3) * &PadicScalar::from_parts(5, 2, BigInt::from(3), 10);
        assert!(r.is_zero_ball());
        assert_eq!(r.prec(), 5);
    }

    #[test]
    fn quotient_by_p() {
        // (2*5 + O(5^6)) / (5 + O(5^6)) = 2 + O(5^5)
        let r = s(5, 10, 6).div(&s(5, 5, 6)).unwrap();
        assert_eq!(r, s(5, 2, 5));
        let one = s(5, 1, 30);
        assert_eq!(s(5, 10, 6).div(&one).unwrap(), s(5, 10, 6));
    }

    #[test]
    fn division_by_zero_ball_is_an_error() {
        let e = s(5, 1, 3).div(&PadicScalar::zero(5, 3)).unwrap_err();
        assert!(matches!(e, PadicError::DivisionByExactZeroBall { .. }));
    }

    #[test]
    fn valuation_and_norm() {
        use num_rational::BigRational;
        let (v, n) = s(7, 7, 10).valuation_norm();
        assert_eq!(v, Valuation::Exact(1));
        assert_eq!(n, Norm::Exact(BigRational::new(1.into(), 7.into())));
        let (v, n) = PadicScalar::zero(7, 3).valuation_norm();
        assert_eq!(v, Valuation::AtLeast(3));
        assert_eq!(n, Norm::AtMost(BigRational::new(1.into(), 343.into())));
        let x = PadicScalar::from_parts(7, -2, BigInt::from(3), 5);
        let (v, n) = x.valuation_norm();
        assert_eq!(v, Valuation::Exact(-2));
        assert_eq!(n, Norm::Exact(BigRational::from_integer(49.into())));
    }

    #[test]
    fn tokens_and_expansions_round_trip() {
        for x in [
            s(7, 1234, 9),
            PadicScalar::zero(7, 4),
            PadicScalar::from_parts(7, -3, BigInt::from(17), 2),
            PadicScalar::exact_int(7, 50),
        ] {
            assert_eq!(PadicScalar::from_token(7, &x.to_token()).unwrap(), x);
            assert_eq!(PadicScalar::from_expansion(7, &x.to_expansion()).unwrap(), x);
        }
        assert_eq!(s(7, 3 + 2 * 49, 4).to_expansion(), "3*7^0 + 2*7^2 + O(7^4)");
    }

    #[test]
    fn negative_values_reduce_into_range() {
        let x = s(5, -1, 3);
        assert_eq!(x.unit(), Some(&BigInt::from(124)));
        assert_eq!(x.residue(), Some(4));
        assert!((&x + &s(5, 1, 3)).is_zero_ball());
    }

    #[test]
    fn lifting_pads_with_zero_digits() {
        let c = s(7, 15, 3).lift_to(10);
        assert_eq!(c.prec(), 10);
        assert_eq!(c.unit(), Some(&BigInt::from(15)));
        let t = s(7, 15, 3).lift_to(1);
        assert_eq!(t.unit(), Some(&BigInt::from(1)));
        assert!(PadicScalar::zero(7, 2).lift_to(9).is_zero_ball());
    }

    #[test]
    fn exact_constants_do_not_limit_precision() {
        let one = PadicScalar::exact_int(5, 1);
        let x = s(5, 7, 4);
        assert_eq!(&one * &x, x);
        assert_eq!((&one + &x).prec(), 4);
        assert!((&one * &one).is_exact());
    }
}

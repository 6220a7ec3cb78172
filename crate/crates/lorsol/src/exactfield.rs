//! Exact arithmetic in the quadratic field Q(sqrt 2).
//!
//! Every structure constant handled by this crate lies in Q(sqrt 2), so a
//! scalar is a pair of arbitrary-precision rationals `(a, b)` standing for
//! `a + b*sqrt(2)`. Equality, arithmetic and sign determination are exact;
//! floating point is only consulted by [`QuadScalar::to_f64`].

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::LorsolError;

/// An element `a + b*sqrt(2)` of Q(sqrt 2) with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    a: BigRational,
    b: BigRational,
}

pub const SQRT2_F64: f64 = std::f64::consts::SQRT_2;

impl QuadScalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadScalar { a, b }
    }

    pub fn zero() -> Self {
        QuadScalar {
            a: BigRational::zero(),
            b: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        QuadScalar {
            a: BigRational::one(),
            b: BigRational::zero(),
        }
    }

    /// The generator sqrt(2).
    pub fn sqrt2() -> Self {
        QuadScalar {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        QuadScalar {
            a: BigRational::from_integer(BigInt::from(n)),
            b: BigRational::zero(),
        }
    }

    /// `num/den`, rational part only. Panics on `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        QuadScalar {
            a: BigRational::new(BigInt::from(num), BigInt::from(den)),
            b: BigRational::zero(),
        }
    }

    /// `(an/ad) + (bn/bd) * sqrt(2)`.
    pub fn from_parts(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        assert!(ad != 0 && bd != 0, "zero denominator");
        QuadScalar {
            a: BigRational::new(BigInt::from(an), BigInt::from(ad)),
            b: BigRational::new(BigInt::from(bn), BigInt::from(bd)),
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Field conjugate `a - b*sqrt(2)`.
    pub fn conj(&self) -> Self {
        QuadScalar {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a^2 - 2 b^2`, a rational; zero iff the element is zero.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(2)) * &self.b * &self.b
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<Self, LorsolError> {
        if self.is_zero() {
            return Err(LorsolError::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadScalar {
            a: &self.a / &n,
            b: -&self.b / &n,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, LorsolError> {
        Ok(self * &rhs.inverse()?)
    }

    /// Exact sign of the real number `a + b*sqrt(2)`.
    ///
    /// When `a` and `b` do not have opposite signs the answer is immediate;
    /// otherwise it is decided by comparing `a^2` with `2 b^2`, which never
    /// ties for a nonzero element (sqrt 2 is irrational).
    pub fn sign(&self) -> i8 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        match (sa, sb) {
            (0, 0) => 0,
            (s, 0) | (0, s) => s,
            (s, t) if s == t => s,
            (s, _) => {
                let a2 = &self.a * &self.a;
                let b2 = BigRational::from_integer(BigInt::from(2)) * &self.b * &self.b;
                match a2.cmp(&b2) {
                    Ordering::Greater => s,
                    Ordering::Less => -s,
                    Ordering::Equal => unreachable!("a^2 = 2b^2 only for zero"),
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Nearest double of `a + b*sqrt(2)`.
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * SQRT2_F64
    }

    /// Exact square root within Q(sqrt 2) if one exists.
    ///
    /// For `x = d1 + d2*sqrt(2)` a root `u + v*sqrt(2)` must satisfy
    /// `u^2 + 2v^2 = d1` and `2uv = d2`; both branches reduce to rational
    /// square roots, tested exactly on numerator and denominator.
    pub fn sqrt_in_field(&self) -> Option<Self> {
        if self.sign() < 0 {
            return None;
        }
        if self.is_zero() {
            return Some(QuadScalar::zero());
        }
        let two = BigRational::from_integer(BigInt::from(2));
        if self.b.is_zero() {
            // u^2 = d1 or 2 v^2 = d1
            if let Some(u) = rational_sqrt(&self.a) {
                return Some(QuadScalar::new(u, BigRational::zero()));
            }
            if let Some(v) = rational_sqrt(&(&self.a / &two)) {
                return Some(QuadScalar::new(BigRational::zero(), v));
            }
            return None;
        }
        // v^2 = (d1 +- sqrt(d1^2 - 2 d2^2)) / 4, then u = d2 / (2v)
        let disc = &self.a * &self.a - &two * &self.b * &self.b;
        if disc.is_negative() {
            return None;
        }
        let root = rational_sqrt(&disc)?;
        for s in [BigRational::one(), -BigRational::one()] {
            let v2 = (&self.a + &s * &root) / BigRational::from_integer(BigInt::from(4));
            if v2.is_negative() {
                continue;
            }
            if let Some(v) = rational_sqrt(&v2) {
                if v.is_zero() {
                    continue;
                }
                let u = &self.b / (&two * &v);
                let cand = QuadScalar::new(u, v);
                if &(&cand * &cand) == self {
                    return Some(if cand.sign() >= 0 { cand } else { -cand });
                }
            }
        }
        None
    }

    /// Render as `"a+b*sqrt2"` with rational components in lowest terms.
    pub fn to_exact_string(&self) -> String {
        format!("{}", self)
    }
}

fn rational_sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

/// Exact rational square root, if the argument is a perfect square.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back to a scaled quotient for extreme magnitudes
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            first = false;
        }
        if !self.b.is_zero() {
            if !first && !self.b.is_negative() {
                write!(f, "+")?;
            }
            if self.b.is_one() {
                write!(f, "sqrt2")?;
            } else if (-self.b.clone()).is_one() {
                write!(f, "-sqrt2")?;
            } else {
                write!(f, "{}*sqrt2", self.b)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadScalar({})", self)
    }
}

impl Default for QuadScalar {
    fn default() -> Self {
        QuadScalar::zero()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, |$x:ident, $y:ident| $body:expr) => {
        impl<'a, 'b> $trait<&'b QuadScalar> for &'a QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &'b QuadScalar) -> QuadScalar {
                let ($x, $y) = (self, rhs);
                $body
            }
        }
        impl $trait<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &'a QuadScalar) -> QuadScalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<QuadScalar> for &'a QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| QuadScalar {
    a: &x.a + &y.a,
    b: &x.b + &y.b,
});

forward_binop!(Sub, sub, |x, y| QuadScalar {
    a: &x.a - &y.a,
    b: &x.b - &y.b,
});

// (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r with r = sqrt 2
forward_binop!(Mul, mul, |x, y| QuadScalar {
    a: &x.a * &y.a + BigRational::from_integer(BigInt::from(2)) * &x.b * &y.b,
    b: &x.a * &y.b + &x.b * &y.a,
});

forward_binop!(Div, div, |x, y| {
    x.checked_div(y).expect("division by zero QuadScalar")
});

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl<'a> Neg for &'a QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -self.clone()
    }
}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self - other;
        match d.sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

// ---------------------------------------------------------------------------
// parsing: "1/2+1r2", "-r2", "3", "2r2", "1+1r2"
// ---------------------------------------------------------------------------

impl FromStr for QuadScalar {
    type Err = LorsolError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_quad(s)
    }
}

/// Parse the CLI scalar syntax: an optional rational term and an optional
/// `sqrt 2` term written as `<rational>r2` (or bare `r2`), joined by `+`/`-`.
fn parse_quad(s: &str) -> Result<QuadScalar, LorsolError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(LorsolError::Parse("empty scalar".into()));
    }
    let mut terms: Vec<(i8, &str)> = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0usize;
    let mut sign: i8 = 1;
    if bytes[0] == b'+' {
        start = 1;
    } else if bytes[0] == b'-' {
        sign = -1;
        start = 1;
    }
    let mut cur = start;
    let mut term_begin = start;
    while cur < bytes.len() {
        let c = bytes[cur];
        if (c == b'+' || c == b'-') && cur > term_begin && bytes[cur - 1] != b'/' {
            terms.push((sign, &s[term_begin..cur]));
            sign = if c == b'-' { -1 } else { 1 };
            term_begin = cur + 1;
        }
        cur += 1;
    }
    if term_begin >= s.len() {
        return Err(LorsolError::Parse(format!("malformed scalar '{}'", s)));
    }
    terms.push((sign, &s[term_begin..]));
    if terms.len() > 2 {
        return Err(LorsolError::Parse(format!(
            "scalar '{}' has more than two terms",
            s
        )));
    }

    let mut out = QuadScalar::zero();
    let mut seen_rat = false;
    let mut seen_r2 = false;
    for (sg, t) in terms {
        let (coeff_str, is_r2) = if let Some(p) = t.strip_suffix("r2") {
            (if p.is_empty() { "1" } else { p }, true)
        } else if let Some(p) = t.strip_suffix("*sqrt2") {
            (p, true)
        } else if t == "sqrt2" {
            ("1", true)
        } else {
            (t, false)
        };
        let coeff = parse_rational(coeff_str)
            .ok_or_else(|| LorsolError::Parse(format!("bad rational '{}' in '{}'", coeff_str, s)))?;
        let coeff = if sg < 0 { -coeff } else { coeff };
        if is_r2 {
            if seen_r2 {
                return Err(LorsolError::Parse(format!("duplicate sqrt2 term in '{}'", s)));
            }
            seen_r2 = true;
            out.b = coeff;
        } else {
            if seen_rat {
                return Err(LorsolError::Parse(format!("duplicate rational term in '{}'", s)));
            }
            seen_rat = true;
            out.a = coeff;
        }
    }
    Ok(out)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

// ---------------------------------------------------------------------------
// serde: {"a": [num, den], "b": [num, den]}
// ---------------------------------------------------------------------------

fn bigint_to_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(n) => serde_json::Value::from(n),
        None => serde_json::Value::from(v.to_string()),
    }
}

fn json_to_bigint(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Some(BigInt::from(i))
            } else {
                None
            }
        }
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl Serialize for QuadScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("QuadScalar", 2)?;
        let a = vec![bigint_to_json(self.a.numer()), bigint_to_json(self.a.denom())];
        let b = vec![bigint_to_json(self.b.numer()), bigint_to_json(self.b.denom())];
        st.serialize_field("a", &a)?;
        st.serialize_field("b", &b)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for QuadScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            a: [serde_json::Value; 2],
            b: [serde_json::Value; 2],
        }
        let raw = Raw::deserialize(deserializer)?;
        let part = |p: &[serde_json::Value; 2], name: &str| -> Result<BigRational, D::Error> {
            let n = json_to_bigint(&p[0])
                .ok_or_else(|| de::Error::custom(format!("bad numerator in '{}'", name)))?;
            let d = json_to_bigint(&p[1])
                .ok_or_else(|| de::Error::custom(format!("bad denominator in '{}'", name)))?;
            if d.is_zero() {
                return Err(de::Error::custom(format!("zero denominator in '{}'", name)));
            }
            Ok(BigRational::new(n, d))
        };
        Ok(QuadScalar {
            a: part(&raw.a, "a")?,
            b: part(&raw.b, "b")?,
        })
    }
}

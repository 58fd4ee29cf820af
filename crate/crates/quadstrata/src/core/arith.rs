// SPDX-License-Identifier: MIT OR Apache-2.0
//! Exact rational and Gaussian-rational arithmetic.
//!
//! All geometry in the crate lives in `Q(i)`: segment vectors, residue
//! roots, residues and directions are [`GaussianRational`] values built on
//! arbitrary-precision rationals, so every equality test is exact.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Q = BigRational;

/// Builds the rational `n / d`.
///
/// # Panics
/// Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer rational `n`.
pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats a rational as `"p"` (integers) or `"p/q"`.
pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p"` or `"p/q"` (optionally signed, surrounding whitespace
/// ignored). Decimal points and exponents are rejected on purpose.
pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".into());
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| format!("invalid numerator in {s:?}"))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| format!("invalid denominator in {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(n, d))
}

/// Serde adapter serialising a [`Q`] as a `"p/q"` string.
pub mod q_string {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => parse_q(&s).map_err(D::Error::custom),
            serde_json::Value::Number(n) if n.is_i64() => Ok(qi(n.as_i64().unwrap())),
            other => Err(D::Error::custom(format!(
                "expected a rational string \"p/q\", found {other}"
            ))),
        }
    }
}

/// Exact complex number `re + i·im` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: Q,
    im: Q,
}

impl GaussianRational {
    /// Creates `re + i·im`.
    pub fn new(re: Q, im: Q) -> Self {
        Self { re, im }
    }

    /// Creates an integer Gaussian number `re + i·im`.
    pub fn int(re: i64, im: i64) -> Self {
        Self::new(qi(re), qi(im))
    }

    /// Creates a real number from a rational.
    pub fn real(re: Q) -> Self {
        Self::new(re, Q::zero())
    }

    /// The additive identity.
    pub fn zero() -> Self {
        Self::new(Q::zero(), Q::zero())
    }

    /// The multiplicative identity.
    pub fn one() -> Self {
        Self::new(Q::one(), Q::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(Q::zero(), Q::one())
    }

    /// Real part.
    pub fn re(&self) -> &Q {
        &self.re
    }

    /// Imaginary part.
    pub fn im(&self) -> &Q {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True for real numbers `> 0`.
    pub fn is_positive_real(&self) -> bool {
        self.im.is_zero() && self.re.is_positive()
    }

    /// True for real numbers `< 0`.
    pub fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus `re² + im²`.
    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Square of the number.
    pub fn square(&self) -> Self {
        self * self
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, k: &Q) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    /// Panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "inverse of zero");
        Self::new(&self.re / &n, -&self.im / &n)
    }

    /// The planar cross product `Im(conj(self)·other)`; positive when
    /// `other` lies counter-clockwise of `self`.
    pub fn cross(&self, other: &Self) -> Q {
        &self.re * &other.im - &self.im * &other.re
    }

    /// The planar dot product `Re(conj(self)·other)`.
    pub fn dot(&self, other: &Self) -> Q {
        &self.re * &other.re + &self.im * &other.im
    }

    /// Rescales by a positive rational so that `max(|re|, |im|) = 1`; the
    /// direction is unchanged. Zero is returned unchanged.
    pub fn normalized_direction(&self) -> Self {
        let m = std::cmp::max(self.re.abs(), self.im.abs());
        if m.is_zero() {
            return self.clone();
        }
        Self::new(&self.re / &m, &self.im / &m)
    }

    /// True if `self` and `other` are non-zero and point in the same
    /// direction (positive rational multiples).
    pub fn same_direction(&self, other: &Self) -> bool {
        !self.is_zero()
            && !other.is_zero()
            && self.cross(other).is_zero()
            && self.dot(other).is_positive()
    }

    /// The root convention used by every construction: real part positive,
    /// or real part zero and imaginary part positive. Returns `±self`.
    pub fn right_half_plane_rep(&self) -> Self {
        if self.re.is_positive() || (self.re.is_zero() && self.im.is_positive()) {
            self.clone()
        } else {
            -self.clone()
        }
    }

    /// True if the number satisfies [`Self::right_half_plane_rep`]'s
    /// convention (and is non-zero).
    pub fn in_right_half_plane(&self) -> bool {
        self.re.is_positive() || (self.re.is_zero() && self.im.is_positive())
    }

    /// Exact square root in `Q(i)` if one exists, chosen in the right half
    /// plane convention.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // (x + iy)² = a + ib  ⇒  x² = (|z| + a)/2, y² = (|z| − a)/2.
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let two = qi(2);
        let x2 = (&modulus + &self.re) / &two;
        let y2 = (&modulus - &self.re) / &two;
        let x = rational_sqrt(&x2)?;
        let mut y = rational_sqrt(&y2)?;
        if (&x * &y * &two) != self.im {
            y = -y;
        }
        let r = Self::new(x, y);
        debug_assert_eq!(&r.square(), self);
        Some(r.right_half_plane_rep())
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Greatest common divisor of two machine integers (non-negative result).
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", format_q(&self.re));
        }
        let im_abs = self.im.abs();
        let im_txt = if im_abs.is_one() {
            String::new()
        } else {
            format_q(&im_abs)
        };
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{sign}{im_txt}i")
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            write!(f, "{}{sign}{im_txt}i", format_q(&self.re))
        }
    }
}

impl FromStr for GaussianRational {
    type Err = String;

    /// Parses `"a"`, `"bi"`, `"a+bi"`, `"a-bi"`, `"i"`, `"-i"` where `a`
    /// and `b` are rationals `"p"` or `"p/q"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err("empty complex number".into());
        }
        if !t.ends_with('i') {
            return Ok(Self::real(parse_q(&t)?));
        }
        let body = &t[..t.len() - 1];
        // Find the sign separating real and imaginary parts (not at index 0,
        // not right after '/').
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                split = Some(k);
                break;
            }
        }
        let (re_txt, im_txt) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im_txt {
            "" | "+" => qi(1),
            "-" => qi(-1),
            other => parse_q(other.strip_prefix('+').unwrap_or(other))?,
        };
        Ok(Self::new(parse_q(re_txt)?, im))
    }
}

#[derive(Serialize, Deserialize)]
struct GaussianRationalRepr {
    #[serde(with = "q_string")]
    re: Q,
    #[serde(with = "q_string")]
    im: Q,
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GaussianRationalRepr {
            re: self.re.clone(),
            im: self.im.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
            other => {
                let r: GaussianRationalRepr =
                    serde_json::from_value(other).map_err(D::Error::custom)?;
                Ok(Self::new(r.re, r.im))
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &'a GaussianRational) -> GaussianRational {
                let f: fn(&GaussianRational, &GaussianRational) -> GaussianRational = $body;
                f(self, rhs)
            }
        }
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &'a GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussianRational::new(
    &a.re + &b.re,
    &a.im + &b.im
));
forward_binop!(Sub, sub, |a, b| GaussianRational::new(
    &a.re - &b.re,
    &a.im - &b.im
));
forward_binop!(Mul, mul, |a, b| GaussianRational::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));
forward_binop!(Div, div, |a, b| a * &b.inv());

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl std::iter::Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut acc = GaussianRational::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl<'a> std::iter::Sum<&'a GaussianRational> for GaussianRational {
    fn sum<I: Iterator<Item = &'a GaussianRational>>(iter: I) -> Self {
        let mut acc = GaussianRational::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::int(n, 0)
    }
}

impl From<Q> for GaussianRational {
    fn from(x: Q) -> Self {
        Self::real(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in [
            "0", "3", "-2/3", "i", "-i", "1/2i", "1+i", "1-2/3i", "-5/2-1i",
        ] {
            let z = g(s);
            assert_eq!(g(&z.to_string()), z, "{s}");
        }
        assert_eq!(g("1-2/3i"), GaussianRational::new(qi(1), q(-2, 3)));
        assert_eq!(g("-1/2-3/4i"), GaussianRational::new(q(-1, 2), q(-3, 4)));
        assert_eq!(g("2i"), GaussianRational::int(0, 2));
        assert!("1.5".parse::<GaussianRational>().is_err());
        assert!("1/0".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn field_operations() {
        let a = g("1+2i");
        let b = g("3-1/2i");
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(a.square(), g("-3+4i"));
        assert_eq!(g("i").square(), g("-1"));
    }

    #[test]
    fn square_roots_are_exact() {
        assert_eq!(g("-3+4i").sqrt(), Some(g("1+2i")));
        assert_eq!(g("-4").sqrt(), Some(g("2i")));
        assert_eq!(g("9/4").sqrt(), Some(g("3/2")));
        assert_eq!(g("2").sqrt(), None);
        assert_eq!(g("2i").sqrt(), Some(g("1+i")));
    }

    #[test]
    fn json_uses_strings() {
        let z = g("1/2-3i");
        let js = serde_json::to_string(&z).unwrap();
        assert_eq!(js, r#"{"re":"1/2","im":"-3"}"#);
        let back: GaussianRational = serde_json::from_str(&js).unwrap();
        assert_eq!(back, z);
        let back2: GaussianRational = serde_json::from_str("\"1/2-3i\"").unwrap();
        assert_eq!(back2, z);
        assert!(serde_json::from_str::<GaussianRational>(r#"{"re":0.5,"im":"0"}"#).is_err());
    }
}

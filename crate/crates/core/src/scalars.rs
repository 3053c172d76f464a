//! Exact arithmetic in the Gaussian rationals `Q(i)`.
//!
//! Every constant that shows up in the crossed-product computations (cocycle
//! values `±1, ±i`, averaging factors `1/|G|`, the `1/2` in the central
//! element) lives here, so all checks downstream are bit-exact.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `re + im * i` with both parts arbitrary-precision rationals.
///
/// `BigRational` keeps itself reduced with a positive denominator, so the
/// derived equality is equality of values.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussScalar {
    re: BigRational,
    im: BigRational,
}

impl GaussScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussScalar { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussScalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussScalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// `re + im*i` from small integers.
    pub fn gaussian(re: i64, im: i64) -> Self {
        GaussScalar::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    pub fn i() -> Self {
        GaussScalar::gaussian(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussScalar::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(GaussScalar::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// `i^k`, with `k` taken mod 4.
    pub fn pow_root_of_unity(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussScalar::one(),
            1 => GaussScalar::i(),
            2 => GaussScalar::from_int(-1),
            _ => GaussScalar::gaussian(0, -1),
        }
    }

    /// If `self` is a 4th root of unity, returns `k` in `0..4` with `i^k = self`.
    pub fn root_of_unity_exponent(&self) -> Option<u8> {
        (0..4u8).find(|&k| GaussScalar::pow_root_of_unity(k as i64) == *self)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale_int(&self, n: i64) -> Self {
        if n == 0 {
            return GaussScalar::zero();
        }
        let k = BigRational::from_integer(BigInt::from(n));
        GaussScalar::new(&self.re * &k, &self.im * &k)
    }
}

impl Zero for GaussScalar {
    fn zero() -> Self {
        GaussScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussScalar {
    fn one() -> Self {
        GaussScalar::from_int(1)
    }
}

impl<'a> Add<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn add(self, rhs: &GaussScalar) -> GaussScalar {
        GaussScalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn sub(self, rhs: &GaussScalar) -> GaussScalar {
        GaussScalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn mul(self, rhs: &GaussScalar) -> GaussScalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussScalar::new(&self.re * &rhs.re, BigRational::zero());
        }
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussScalar::new(re, im)
    }
}

impl Neg for &GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $f(self, rhs: GaussScalar) -> GaussScalar {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $f(self, rhs: &GaussScalar) -> GaussScalar {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar::new(-self.re, -self.im)
    }
}

impl AddAssign<&GaussScalar> for GaussScalar {
    fn add_assign(&mut self, rhs: &GaussScalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussScalar> for GaussScalar {
    fn sub_assign(&mut self, rhs: &GaussScalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussScalar> for GaussScalar {
    fn mul_assign(&mut self, rhs: &GaussScalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for GaussScalar {
    fn from(n: i64) -> Self {
        GaussScalar::from_int(n)
    }
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |v: &BigRational| -> String {
            if v.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", fmt_ratio(v))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_ratio(&self.re)),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-{}", im_part(&-self.im.clone()))
                } else {
                    write!(f, "{}", im_part(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{} {} {}",
                    fmt_ratio(&self.re),
                    sign,
                    im_part(&self.im.abs())
                )
            }
        }
    }
}

impl fmt::Debug for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussScalar({self})")
    }
}

/// Cursor over a scalar literal. Shared with the term parser in `algebra::parse`.
pub(crate) struct ScalarParser<'s> {
    pub src: &'s str,
    pub pos: usize,
}

impl<'s> ScalarParser<'s> {
    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            self.src[start..self.pos].parse().ok()
        }
    }

    /// Parses an unsigned rational `n` or `n/d`.
    pub fn rational(&mut self) -> Result<Option<BigRational>> {
        let Some(num) = self.integer() else {
            return Ok(None);
        };
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self
                .integer()
                .ok_or_else(|| Error::parse(self.src, self.pos, "expected denominator"))?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Some(BigRational::new(num, den)))
        } else {
            Ok(Some(BigRational::from_integer(num)))
        }
    }

    /// One signed summand: `[+-] (q | q*i | qi | i)`.
    fn summand(&mut self, first: bool) -> Result<Option<GaussScalar>> {
        self.skip_ws();
        let negative = match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                false
            }
            Some(b'-') => {
                self.pos += 1;
                true
            }
            None | Some(b')') => return Ok(None),
            _ if first => false,
            _ => return Err(Error::parse(self.src, self.pos, "expected '+' or '-'")),
        };
        self.skip_ws();
        let value = match self.rational()? {
            Some(q) => {
                if self.peek() == Some(b'*') && self.src.as_bytes().get(self.pos + 1) == Some(&b'i')
                {
                    self.pos += 2;
                    GaussScalar::new(BigRational::zero(), q)
                } else if self.peek() == Some(b'i') {
                    self.pos += 1;
                    GaussScalar::new(BigRational::zero(), q)
                } else {
                    GaussScalar::new(q, BigRational::zero())
                }
            }
            None if self.peek() == Some(b'i') => {
                self.pos += 1;
                GaussScalar::i()
            }
            None => return Err(Error::parse(self.src, self.pos, "expected a number or 'i'")),
        };
        Ok(Some(if negative { -value } else { value }))
    }

    /// A sum of summands, stopping at end of input or `)`.
    pub fn sum(&mut self) -> Result<GaussScalar> {
        let mut acc = GaussScalar::zero();
        let mut first = true;
        while let Some(v) = self.summand(first)? {
            acc += &v;
            first = false;
        }
        if first {
            return Err(Error::parse(self.src, self.pos, "empty scalar"));
        }
        Ok(acc)
    }
}

impl FromStr for GaussScalar {
    type Err = Error;

    /// Accepts the rendered form `a/b + c/d*i` as well as `2+1i`, `i`, `-3/4*i`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = ScalarParser { src: s, pos: 0 };
        let v = p.sum()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(Error::parse(s, p.pos, "trailing input"));
        }
        Ok(v)
    }
}

impl Serialize for GaussScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussScalar {
        GaussScalar::gaussian(re, im)
    }

    #[test]
    fn defining_relations() {
        assert_eq!(&GaussScalar::i() * &GaussScalar::i(), g(-1, 0));
        assert_eq!(&g(1, 1) * &g(1, -1), g(2, 0));
        assert_eq!(&GaussScalar::i() * &g(0, -1), g(1, 0));
    }

    #[test]
    fn inverses() {
        assert_eq!(GaussScalar::i().inv().unwrap(), g(0, -1));
        assert_eq!(g(2, 0).inv().unwrap(), GaussScalar::from_ratio(1, 2));
        // (1-i)/2 times 1+i is 1
        let inv = g(1, 1).inv().unwrap();
        assert_eq!(inv, "1/2 - 1/2*i".parse().unwrap());
        assert_eq!(&inv * &g(1, 1), GaussScalar::one());
        assert_eq!(GaussScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(GaussScalar::pow_root_of_unity(0), g(1, 0));
        assert_eq!(GaussScalar::pow_root_of_unity(2), g(-1, 0));
        assert_eq!(GaussScalar::pow_root_of_unity(3), g(0, -1));
        assert_eq!(GaussScalar::pow_root_of_unity(-1), g(0, -1));
        assert_eq!(g(0, -1).root_of_unity_exponent(), Some(3));
        assert_eq!(g(1, 1).root_of_unity_exponent(), None);
    }

    #[test]
    fn render_and_parse() {
        let cases = [
            (g(0, 0), "0"),
            (g(3, 0), "3"),
            (g(0, 1), "i"),
            (g(0, -1), "-i"),
            (g(1, -1), "1 - i"),
            (GaussScalar::from_ratio(-1, 2), "-1/2"),
            ("1/2 + 3/4*i".parse().unwrap(), "1/2 + 3/4*i"),
            ("-1/4*i".parse().unwrap(), "-1/4*i"),
        ];
        for (v, s) in cases {
            assert_eq!(v.to_string(), s);
            assert_eq!(s.parse::<GaussScalar>().unwrap(), v);
        }
        assert_eq!("2+1i".parse::<GaussScalar>().unwrap(), g(2, 1));
        assert_eq!(" -i + 1 ".parse::<GaussScalar>().unwrap(), g(1, -1));
        assert!("1/0".parse::<GaussScalar>().is_err());
        assert!("x".parse::<GaussScalar>().is_err());
        assert!("".parse::<GaussScalar>().is_err());
    }

    fn arb() -> impl Strategy<Value = GaussScalar> {
        (-20i64..20, 1i64..7, -20i64..20, 1i64..7).prop_map(|(a, b, c, d)| {
            GaussScalar::new(
                BigRational::new(a.into(), b.into()),
                BigRational::new(c.into(), d.into()),
            )
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), GaussScalar::one());
            }
        }

        #[test]
        fn display_parse_roundtrip(a in arb()) {
            prop_assert_eq!(a.to_string().parse::<GaussScalar>().unwrap(), a);
        }
    }
}

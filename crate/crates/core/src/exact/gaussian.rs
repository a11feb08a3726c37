//! Exact Gaussian numbers: the four units, Gaussian integers and Gaussian rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = Ratio<i128>;

/// One of `1, i, -1, -i`, stored as the exponent `k` of `i^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unit(u8);

impl Unit {
    pub const ONE: Unit = Unit(0);
    pub const I: Unit = Unit(1);
    pub const MINUS_ONE: Unit = Unit(2);
    pub const MINUS_I: Unit = Unit(3);

    pub fn from_exponent(k: u32) -> Unit {
        Unit((k % 4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn conj(self) -> Unit {
        Unit((4 - self.0) % 4)
    }

    /// `true` for `±1`.
    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// `true` for `±i`.
    pub fn is_imaginary(self) -> bool {
        !self.is_real()
    }

    pub fn re(self) -> i64 {
        match self.0 {
            0 => 1,
            2 => -1,
            _ => 0,
        }
    }

    pub fn im(self) -> i64 {
        match self.0 {
            1 => 1,
            3 => -1,
            _ => 0,
        }
    }

    pub fn to_gaussian_integer(self) -> GaussianInteger {
        GaussianInteger::new(self.re() as i128, self.im() as i128)
    }

    pub fn to_gaussian_rational(self) -> GaussianRational {
        GaussianRational::from_integers(self.re() as i128, self.im() as i128)
    }

    /// The unit equal to `z`, if `z` is one.
    pub fn from_gaussian(z: &GaussianRational) -> Option<Unit> {
        [Unit::ONE, Unit::I, Unit::MINUS_ONE, Unit::MINUS_I]
            .into_iter()
            .find(|u| u.to_gaussian_rational() == *z)
    }
}

impl Mul for Unit {
    type Output = Unit;
    fn mul(self, rhs: Unit) -> Unit {
        Unit((self.0 + rhs.0) % 4)
    }
}

impl Neg for Unit {
    type Output = Unit;
    fn neg(self) -> Unit {
        Unit((self.0 + 2) % 4)
    }
}

impl std::iter::Product for Unit {
    fn product<I: Iterator<Item = Unit>>(iter: I) -> Unit {
        iter.fold(Unit::ONE, |a, b| a * b)
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "1",
            1 => "i",
            2 => "-1",
            _ => "-i",
        })
    }
}

/// `re + im*i` with integer parts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussianInteger {
    pub re: i128,
    pub im: i128,
}

impl GaussianInteger {
    pub const ZERO: GaussianInteger = GaussianInteger { re: 0, im: 0 };
    pub const ONE: GaussianInteger = GaussianInteger { re: 1, im: 0 };

    pub const fn new(re: i128, im: i128) -> Self {
        GaussianInteger { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn conj(self) -> Self {
        GaussianInteger::new(self.re, -self.im)
    }

    pub fn norm(self) -> i128 {
        self.re * self.re + self.im * self.im
    }

    pub fn scale(self, k: i128) -> Self {
        GaussianInteger::new(self.re * k, self.im * k)
    }

    pub fn times_unit(self, u: Unit) -> Self {
        match u.exponent() {
            0 => self,
            1 => GaussianInteger::new(-self.im, self.re),
            2 => GaussianInteger::new(-self.re, -self.im),
            _ => GaussianInteger::new(self.im, -self.re),
        }
    }

    /// `self / d` when the quotient is again a Gaussian integer.
    pub fn exact_div(self, d: GaussianInteger) -> Option<GaussianInteger> {
        if d.is_zero() {
            return None;
        }
        if d.im == 0 {
            if self.re % d.re == 0 && self.im % d.re == 0 {
                return Some(GaussianInteger::new(self.re / d.re, self.im / d.re));
            }
            return None;
        }
        let num = self * d.conj();
        let n = d.norm();
        if num.re % n == 0 && num.im % n == 0 {
            Some(GaussianInteger::new(num.re / n, num.im / n))
        } else {
            None
        }
    }
}

impl Add for GaussianInteger {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianInteger::new(self.re + o.re, self.im + o.im)
    }
}

impl AddAssign for GaussianInteger {
    fn add_assign(&mut self, o: Self) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl Sub for GaussianInteger {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianInteger::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussianInteger {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        GaussianInteger::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Neg for GaussianInteger {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianInteger::new(-self.re, -self.im)
    }
}

impl From<GaussianInteger> for GaussianRational {
    fn from(z: GaussianInteger) -> Self {
        GaussianRational::from_integers(z.re, z.im)
    }
}

/// `re + im*i` with exact rational parts, always kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_integers(re: i128, im: i128) -> Self {
        GaussianRational::new(Rational::from_integer(re), Rational::from_integer(im))
    }

    pub fn zero() -> Self {
        GaussianRational::from_integers(0, 0)
    }

    pub fn one() -> Self {
        GaussianRational::from_integers(1, 0)
    }

    pub fn i() -> Self {
        GaussianRational::from_integers(0, 1)
    }

    /// `num / den` for Gaussian integers; `None` when `den` is zero.
    pub fn from_quotient(num: GaussianInteger, den: GaussianInteger) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let top = num * den.conj();
        let n = den.norm();
        Some(GaussianRational::new(Rational::new(top.re, n), Rational::new(top.im, n)))
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re, -self.im)
    }

    pub fn norm(&self) -> Rational {
        self.re * self.re + self.im * self.im
    }

    /// The value as a rational integer, if it is one.
    pub fn to_integer(&self) -> Option<i128> {
        (self.im.is_zero() && self.re.is_integer()).then(|| self.re.to_integer())
    }

    /// The value as a Gaussian integer, if both parts are integers.
    pub fn to_gaussian_integer(&self) -> Option<GaussianInteger> {
        (self.re.is_integer() && self.im.is_integer())
            .then(|| GaussianInteger::new(self.re.to_integer(), self.im.to_integer()))
    }

    /// Membership in `{0, ±1, ±i}`: the admissible entries of a 3-colored adjacency matrix.
    pub fn is_zero_or_unit(&self) -> bool {
        self.is_zero() || Unit::from_gaussian(self).is_some()
    }

    /// Least common multiple of the two denominators.
    pub fn denominator_lcm(&self) -> i128 {
        self.re.denom().lcm(self.im.denom())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussianRational::new(self.re / n, -self.im / n))
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        GaussianRational::zero()
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        GaussianRational::from_integers(v as i128, 0)
    }
}

impl From<Unit> for GaussianRational {
    fn from(u: Unit) -> Self {
        u.to_gaussian_rational()
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(self.re + o.re, self.im + o.im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: GaussianRational) -> GaussianRational {
        &self + &o
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(self.re - o.re, self.im - o.im)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: GaussianRational) -> GaussianRational {
        &self - &o
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: GaussianRational) -> GaussianRational {
        &self * &o
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like integer division.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("division by zero")
    }
}

impl Div for GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: GaussianRational) -> GaussianRational {
        &self / &o
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical form `a/b+c/d*i`: both parts always present, integer parts printed without a
/// denominator, the sign of the imaginary part carried by the joining operator.
/// Examples: `0+0*i`, `1-1*i`, `-1/2+0*i`, `0+1/2*i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, &self.re)?;
        f.write_str(if self.im.is_negative() { "-" } else { "+" })?;
        write_rational(f, &self.im.abs())?;
        f.write_str("*i")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed Gaussian rational {0:?}")]
pub struct ParseGaussianError(pub String);

fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: i128 = num.parse().ok()?;
    let den: i128 = den.parse().ok()?;
    (den != 0).then(|| Rational::new(num, den))
}

impl FromStr for GaussianRational {
    type Err = ParseGaussianError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGaussianError(s.to_string());
        let t = s.trim();
        let body = t.strip_suffix("*i").ok_or_else(err)?;
        // the joining sign is the last '+' or '-' that is not the leading sign
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(err)?;
        let re = parse_rational(&body[..split]).ok_or_else(err)?;
        let im_abs = parse_rational(&body[split + 1..]).ok_or_else(err)?;
        if im_abs.is_negative() {
            return Err(err());
        }
        let im = if &body[split..split + 1] == "-" { -im_abs } else { im_abs };
        Ok(GaussianRational::new(re, im))
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(re: (i128, i128), im: (i128, i128)) -> GaussianRational {
        GaussianRational::new(Rational::new(re.0, re.1), Rational::new(im.0, im.1))
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(GaussianRational::zero().to_string(), "0+0*i");
        assert_eq!(GaussianRational::from_integers(1, -1).to_string(), "1-1*i");
        assert_eq!(q((-2, 4), (0, 1)).to_string(), "-1/2+0*i");
        assert_eq!(q((0, 1), (3, 6)).to_string(), "0+1/2*i");
        assert_eq!(q((-3, 7), (-5, 9)).to_string(), "-3/7-5/9*i");
    }

    #[test]
    fn parse_accepts_canonical_and_rejects_garbage() {
        for s in ["0+0*i", "1-1*i", "-1/2+0*i", "0+1/2*i", "-3/7-5/9*i", "12-1/3*i"] {
            let z: GaussianRational = s.parse().unwrap();
            assert_eq!(z.to_string(), s);
        }
        // non-canonical but well-formed input normalizes
        let z: GaussianRational = "2/4+3/3*i".parse().unwrap();
        assert_eq!(z.to_string(), "1/2+1*i");
        for bad in ["", "1", "1+i", "1+-1*i", "a+b*i", "1/0+0*i", "*i"] {
            assert!(bad.parse::<GaussianRational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn unit_algebra() {
        assert_eq!(Unit::I * Unit::I, Unit::MINUS_ONE);
        assert_eq!(Unit::I.conj(), Unit::MINUS_I);
        assert_eq!(-Unit::MINUS_I, Unit::I);
        assert!(Unit::MINUS_ONE.is_real());
        assert!(Unit::MINUS_I.is_imaginary());
        for u in [Unit::ONE, Unit::I, Unit::MINUS_ONE, Unit::MINUS_I] {
            assert_eq!(u * u.conj(), Unit::ONE);
            assert_eq!(Unit::from_gaussian(&u.to_gaussian_rational()), Some(u));
            assert_eq!(GaussianInteger::ONE.times_unit(u), u.to_gaussian_integer());
        }
    }

    #[test]
    fn gaussian_integer_exact_division() {
        let a = GaussianInteger::new(3, 4);
        let b = GaussianInteger::new(1, 2);
        let p = a * b;
        assert_eq!(p.exact_div(b), Some(a));
        assert_eq!(p.exact_div(a), Some(b));
        assert_eq!(GaussianInteger::new(1, 0).exact_div(GaussianInteger::new(1, 1)), None);
        assert_eq!(GaussianInteger::new(5, 0).exact_div(GaussianInteger::ZERO), None);
    }

    #[test]
    fn rational_field_ops() {
        let a = q((1, 2), (-1, 3));
        let b = GaussianRational::from_integers(2, 1);
        let c = &(&a * &b) / &b;
        assert_eq!(c, a);
        assert_eq!(&a - &a, GaussianRational::zero());
        assert_eq!(a.conj().conj(), a);
        assert!(GaussianRational::from_integers(0, -1).is_zero_or_unit());
        assert!(!GaussianRational::from_integers(1, -1).is_zero_or_unit());
        assert_eq!(
            GaussianRational::from_quotient(GaussianInteger::new(1, 0), GaussianInteger::new(0, 2)),
            Some(q((0, 1), (-1, 2)))
        );
    }
}

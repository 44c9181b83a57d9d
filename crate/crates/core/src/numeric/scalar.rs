//! Scalar fields used throughout the crate.
//!
//! Two concrete fields are supported: complex numbers with exact rational
//! parts ([`ExactComplex`]) and double precision complex numbers
//! ([`ApproxComplex`]). Every algorithm is written once against the
//! [`Scalar`] trait; exact mode turns every identity check into a
//! zero-tolerance comparison.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Complex number with exact rational real and imaginary parts.
pub type ExactComplex = Complex<Rational>;

/// Double precision complex number.
pub type ApproxComplex = Complex<f64>;

/// The real subfield of a [`Scalar`].
pub trait RealScalar:
    Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn abs_val(&self) -> Self;
}

impl RealScalar for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }
}

impl RealScalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }
}

/// A complex scalar field, either exact or floating point.
pub trait Scalar:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    type Real: RealScalar;

    /// `true` for exact arithmetic, where equality is zero-tolerance.
    const EXACT: bool;

    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    /// Embeds a rational (rounded to nearest in float mode).
    fn from_rational(r: &Rational) -> Self;
    fn re_part(&self) -> Self::Real;
    fn im_part(&self) -> Self::Real;

    fn from_real(re: Self::Real) -> Self {
        Self::from_parts(re, Self::Real::zero())
    }

    fn from_i64(v: i64) -> Self {
        Self::from_real(Self::Real::from_i64(v))
    }

    /// `p / q` as a real scalar. Panics if `q == 0`.
    fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_i64(p) / Self::from_i64(q)
    }

    fn i() -> Self {
        Self::from_parts(Self::Real::zero(), Self::Real::one())
    }

    fn conj(&self) -> Self {
        Self::from_parts(self.re_part(), -self.im_part())
    }

    fn to_approx(&self) -> ApproxComplex {
        Complex::new(self.re_part().to_f64(), self.im_part().to_f64())
    }

    /// Modulus as a float, used for scaling tolerances.
    fn magnitude(&self) -> f64 {
        self.to_approx().norm()
    }

    /// Zero test: exact equality in exact mode, `|x| <= tol * scale` otherwise.
    fn is_negligible(&self, tol: f64, scale: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol * scale.max(f64::MIN_POSITIVE)
        }
    }

    fn pow_u(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for ExactComplex {
    type Real = Rational;
    const EXACT: bool = true;

    fn from_parts(re: Rational, im: Rational) -> Self {
        Complex::new(re, im)
    }

    fn from_rational(r: &Rational) -> Self {
        Complex::new(r.clone(), Rational::zero())
    }

    fn re_part(&self) -> Rational {
        self.re.clone()
    }

    fn im_part(&self) -> Rational {
        self.im.clone()
    }
}

impl Scalar for ApproxComplex {
    type Real = f64;
    const EXACT: bool = false;

    fn from_parts(re: f64, im: f64) -> Self {
        Complex::new(re, im)
    }

    fn from_rational(r: &Rational) -> Self {
        Complex::new(RealScalar::to_f64(r), 0.0)
    }

    fn re_part(&self) -> f64 {
        self.re
    }

    fn im_part(&self) -> f64 {
        self.im
    }
}

/// Builds an exact complex number from integer ratios `re_p/re_q + i·im_p/im_q`.
pub fn exact(re_p: i64, re_q: i64, im_p: i64, im_q: i64) -> ExactComplex {
    Complex::new(
        Rational::new(BigInt::from(re_p), BigInt::from(re_q)),
        Rational::new(BigInt::from(im_p), BigInt::from(im_q)),
    )
}

/// Gaussian-integer shorthand `re + i·im`.
pub fn gauss(re: i64, im: i64) -> ExactComplex {
    exact(re, 1, im, 1)
}

/// Lossy conversion of an exact value into float mode.
pub fn to_float(x: &ExactComplex) -> ApproxComplex {
    x.to_approx()
}

/// Exact conversion of a finite float into a rational (binary expansion).
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p` (optional sign on `p`, decimal integers).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    if q.starts_with(['-', '+']) {
        return None;
    }
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(Rational::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let r = parse_rational("6/-4");
        assert!(r.is_none());
        let r = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("0/7").unwrap()), "0");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("1.5").is_none());
    }

    #[test]
    fn conj_is_involution() {
        let x = exact(3, 7, -2, 5);
        assert_eq!(x.conj().conj(), x);
        let y = ApproxComplex::new(1.5, -0.25);
        assert_eq!(y.conj().conj(), y);
    }

    #[test]
    fn negligible_is_exact_in_exact_mode() {
        let tiny = exact(1, 1_000_000_000, 0, 1);
        assert!(!tiny.is_negligible(1.0, 1.0));
        assert!(ExactComplex::zero().is_negligible(0.0, 1.0));
        assert!(ApproxComplex::new(1e-13, 0.0).is_negligible(1e-12, 1.0));
    }
}

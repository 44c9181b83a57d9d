//! Dense univariate polynomials.

use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::Scalar;

/// Dense polynomial, `coeffs[k]` is the coefficient at `x^k`.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and [`UniPoly::degree`] returns `None` for it.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// `x - root`.
    pub fn linear(root: T) -> Self {
        Self::new(vec![-root, T::one()])
    }

    /// Monic polynomial `∏ (x - r)`.
    pub fn from_roots(roots: &[T]) -> Self {
        let mut coeffs = vec![T::one()];
        for r in roots {
            // multiply in place by (x - r)
            coeffs.push(T::zero());
            for k in (0..coeffs.len()).rev() {
                let lower = if k > 0 { coeffs[k - 1].clone() } else { T::zero() };
                coeffs[k] = lower - r.clone() * coeffs[k].clone();
            }
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient at `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_i64(k as i64))
                .collect(),
        )
    }

    /// Keeps only the terms of degree `< len`.
    pub fn truncate(&self, len: usize) -> Self {
        Self::new(self.coeffs.iter().take(len).cloned().collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = T::one() / lc.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Maps every coefficient into another scalar field.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> UniPoly<U> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Newton-form interpolation through `(xs[i], ys[i])`; the nodes must be distinct.
    pub fn interpolate(xs: &[T], ys: &[T]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd: Vec<T> = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (dd[i].clone() - dd[i - 1].clone())
                    / (xs[i].clone() - xs[i - level].clone());
            }
        }
        let mut acc = Self::zero();
        for i in (0..n).rev() {
            acc = &(&acc * &Self::linear(xs[i].clone())) + &Self::constant(dd[i].clone());
        }
        acc
    }
}

impl<T: Scalar> Add for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn add(self, rhs: Self) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Sub for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn sub(self, rhs: Self) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Mul for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn mul(self, rhs: Self) -> UniPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }
}

impl<T: Scalar> Neg for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn neg(self) -> UniPoly<T> {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for UniPoly<T> {
            type Output = UniPoly<T>;

            fn $m(self, rhs: Self) -> UniPoly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

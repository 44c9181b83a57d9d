//! Moments by direct integration over triangulations.
//!
//! The integrand `z^k` is expanded in barycentric coordinates of each
//! triangle and integrated monomial by monomial with
//! `∫ α^a β^b γ^c dA = 2·Area·a!b!c!/(a+b+c+2)!`. Nothing here uses the
//! closed-form edge sums of [`crate::moments`], so the two can check each other.

use num_bigint::BigInt;
use num_traits::One;

use super::config::VertexConfig;
use super::triangulation::Triangulation;
use crate::error::{Error, Result};
use crate::numeric::{Rational, RealScalar, Scalar};

/// Largest moment index the multinomial expansion accepts.
pub const MAX_ORACLE_INDEX: usize = 30;

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, v| acc * v)
}

/// Complexified signed area `(i/4)[(z2-z1)(zbar3-zbar1) - (z3-z1)(zbar2-zbar1)]`.
///
/// For real vertices this is the ordinary signed area, positive when the
/// triangle is counterclockwise.
pub fn triangle_area<T: Scalar>(v1: &(T, T), v2: &(T, T), v3: &(T, T)) -> T {
    let (u, ubar) = (v2.0.clone() - v1.0.clone(), v2.1.clone() - v1.1.clone());
    let (w, wbar) = (v3.0.clone() - v1.0.clone(), v3.1.clone() - v1.1.clone());
    T::i() * (u * wbar - w * ubar) / T::from_i64(4)
}

/// `∫ z^k dμ` over one affine triangle (or `∫ zbar^k` with `anti`, which
/// swaps the `z` and `zbar` data of all three vertices, area included).
pub fn triangle_moment_oracle<T: Scalar>(
    v1: &(T, T),
    v2: &(T, T),
    v3: &(T, T),
    k: usize,
    anti: bool,
) -> T {
    assert!(k <= MAX_ORACLE_INDEX, "oracle index {k} above {MAX_ORACLE_INDEX}");
    let swap = |v: &(T, T)| if anti { (v.1.clone(), v.0.clone()) } else { v.clone() };
    let (a1, a2, a3) = (swap(v1), swap(v2), swap(v3));
    let area = triangle_area(&a1, &a2, &a3);
    let (z1, z2, z3) = (a1.0, a2.0, a3.0);

    let kfact = factorial(k);
    let top = factorial(k + 2);
    let mut total = T::zero();
    for a in 0..=k {
        for b in 0..=k - a {
            let c = k - a - b;
            let (fa, fb, fc) = (factorial(a), factorial(b), factorial(c));
            let multinomial = &kfact / (&fa * &fb * &fc);
            let weight = Rational::new(BigInt::from(2) * &fa * &fb * &fc * multinomial, top.clone());
            let mono = z1.pow_u(a) * z2.pow_u(b) * z3.pow_u(c);
            total = total + mono * T::from_rational(&weight);
        }
    }
    total * area
}

/// Moment of the polygonal measure as the sum of triangle oracles over `tri`.
pub fn polygon_moment_oracle<T: Scalar>(
    config: &VertexConfig<T>,
    tri: &Triangulation,
    k: usize,
    anti: bool,
) -> Result<T> {
    if tri.n() != config.n() {
        return Err(Error::InvalidTriangulation(format!(
            "triangulation of a {}-gon used on {} vertices",
            tri.n(),
            config.n()
        )));
    }
    Ok(tri.triangles().iter().fold(T::zero(), |acc, &[i, j, l]| {
        acc + triangle_moment_oracle(&config.vertex(i), &config.vertex(j), &config.vertex(l), k, anti)
    }))
}

/// Shoelace area `(1/2) Σ (x_j y_{j+1} - x_{j+1} y_j)`; real mode only.
pub fn signed_area<T: Scalar>(config: &VertexConfig<T>) -> Result<T> {
    if !config.is_real() {
        return Err(Error::ModeError);
    }
    let n = config.n();
    let z = config.z();
    let twice = (0..n).fold(T::Real::from_i64(0), |acc, j| {
        let (p, q) = (&z[j], &z[(j + 1) % n]);
        acc + p.re_part() * q.im_part() - q.re_part() * p.im_part()
    });
    Ok(T::from_real(twice) / T::from_i64(2))
}

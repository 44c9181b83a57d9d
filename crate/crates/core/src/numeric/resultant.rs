//! Sylvester resultant.
//!
//! Convention: `Res(p, q) = det Syl(p, q)` with the `deg q` shifted rows of
//! `p` placed first, coefficients ordered from the highest degree down. With
//! this ordering `Res(p, q) = lc(p)^deg(q) · ∏ q(α)` over the roots `α` of `p`.

use super::matrix::DenseMatrix;
use super::poly::UniPoly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub fn sylvester_matrix<T: Scalar>(p: &UniPoly<T>, q: &UniPoly<T>) -> Result<DenseMatrix<T>> {
    let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else {
        return Err(Error::DegenerateInput("resultant of the zero polynomial"));
    };
    let size = dp + dq;
    Ok(DenseMatrix::from_fn(size, size, |r, c| {
        let (poly, deg, shift) = if r < dq { (p, dp, r) } else { (q, dq, r - dq) };
        // entry at column c holds the coefficient of x^(deg - (c - shift))
        match c.checked_sub(shift) {
            Some(off) if off <= deg => poly.coeff(deg - off),
            _ => T::zero(),
        }
    }))
}

pub fn sylvester_resultant<T: Scalar>(p: &UniPoly<T>, q: &UniPoly<T>) -> Result<T> {
    let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else {
        return Err(Error::DegenerateInput("resultant of the zero polynomial"));
    };
    if dp == 0 && dq == 0 {
        return Ok(T::one());
    }
    sylvester_matrix(p, q)?.det()
}

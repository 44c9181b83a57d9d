//! Closed-form harmonic and anti-harmonic moments of polygonal measures.
//!
//! The normalized moment is `ν_k = C(k,2)·m_{k-2}` where `m_j = ∫ z^j dμ`.
//! For the polygon with vertices `z_1..z_n` (indices mod n)
//!
//! ```text
//! ν_k = (i/4) Σ_j (zbar_{j+1} - zbar_j)(z_j^{k-1} + z_j^{k-2} z_{j+1} + ... + z_{j+1}^{k-1})
//! ```
//!
//! The edge factor is ordered `zbar_{j+1} - zbar_j`, which makes `ν_2` the
//! signed area (positive for counterclockwise real polygons). The
//! anti-harmonic `ν̄_k` is the same expression with `z` and `zbar`
//! interchanged, so `ν̄_2 = -ν_2` identically.

use crate::error::{Error, Result};
use crate::numeric::{Scalar, UniPoly};
use crate::polygon::VertexConfig;

/// Extra series terms used to witness the vanishing tail of the adjoint numerator.
pub const ADJOINT_BUFFER: usize = 4;

/// Relative tolerance for float-mode identity checks in this module.
pub const FLOAT_CHECK_TOL: f64 = 1e-9;

/// `Σ_{m=0}^{d} a^{d-m} b^m`, the divided difference `(a^{d+1} - b^{d+1})/(a - b)`.
fn summed_power<T: Scalar>(a: &T, b: &T, d: usize) -> T {
    let mut acc = T::zero();
    let mut apow = T::one();
    // Horner in b: Σ a^{d-m} b^m = a^d + b(a^{d-1} + b(...))
    for _ in 0..=d {
        acc = acc * b.clone() + apow.clone();
        apow = apow * a.clone();
    }
    // the loop above accumulates Σ a^m b^{d-m}, which is the same sum
    acc
}

/// `ν_k` (or `ν̄_k` with `anti`); zero for `k < 2`.
pub fn nu<T: Scalar>(config: &VertexConfig<T>, k: usize, anti: bool) -> T {
    if k < 2 {
        return T::zero();
    }
    let (z, zbar) = if anti { (config.zbar(), config.z()) } else { (config.z(), config.zbar()) };
    let n = config.n();
    let sum = (0..n).fold(T::zero(), |acc, j| {
        let nx = (j + 1) % n;
        let edge = zbar[nx].clone() - zbar[j].clone();
        if edge.is_zero() {
            return acc;
        }
        acc + edge * summed_power(&z[j], &z[nx], k - 1)
    });
    T::i() * sum / T::from_i64(4)
}

/// Table of `ν_2..ν_kmax` and `ν̄_2..ν̄_kmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable<T> {
    n: usize,
    kmax: usize,
    nu: Vec<T>,
    nubar: Vec<T>,
}

impl<T: Scalar> MomentTable<T> {
    /// Wraps precomputed values; `nu[0]` is `ν_2`. Both sequences must have
    /// the same length and `ν̄_2 = -ν_2` must hold.
    pub fn from_values(n: usize, nu: Vec<T>, nubar: Vec<T>) -> Result<Self> {
        if nu.is_empty() || nu.len() != nubar.len() {
            return Err(Error::InvalidConfig(
                "moment table needs equally many harmonic and anti-harmonic values".into(),
            ));
        }
        let sum = nu[0].clone() + nubar[0].clone();
        if !sum.is_negligible(FLOAT_CHECK_TOL, 1.0 + nu[0].magnitude()) {
            return Err(Error::InvalidConfig("anti-harmonic nu_2 must equal -nu_2".into()));
        }
        let kmax = nu.len() + 1;
        Ok(Self { n, kmax, nu, nubar })
    }

    /// Harmonic values only; the anti-harmonic side is filled with `ν̄_2 = -ν_2`
    /// and zeros, for inputs where only `ν_k` is known.
    pub fn harmonic_only(n: usize, nu: Vec<T>) -> Result<Self> {
        let mut nubar = vec![T::zero(); nu.len()];
        if let Some(first) = nu.first() {
            nubar[0] = -first.clone();
        }
        Self::from_values(n, nu, nubar)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    /// `ν_k`, with `ν_0 = ν_1 = 0`; `None` above `kmax`.
    pub fn nu(&self, k: usize) -> Option<T> {
        self.get(k, false)
    }

    pub fn nubar(&self, k: usize) -> Option<T> {
        self.get(k, true)
    }

    pub fn get(&self, k: usize, anti: bool) -> Option<T> {
        match k {
            0 | 1 => Some(T::zero()),
            k if k <= self.kmax => {
                Some(if anti { &self.nubar } else { &self.nu }[k - 2].clone())
            }
            _ => None,
        }
    }

    /// `ν_2..ν_kmax`.
    pub fn nu_values(&self) -> &[T] {
        &self.nu
    }

    pub fn nubar_values(&self) -> &[T] {
        &self.nubar
    }

    /// `ν_0, ν_1, ..., ν_kmax` (or the anti-harmonic sequence).
    pub fn sequence(&self, anti: bool) -> Vec<T> {
        (0..=self.kmax).map(|k| self.get(k, anti).expect("in range")).collect()
    }

    pub fn to_approx(&self) -> MomentTable<crate::numeric::ApproxComplex> {
        MomentTable {
            n: self.n,
            kmax: self.kmax,
            nu: self.nu.iter().map(Scalar::to_approx).collect(),
            nubar: self.nubar.iter().map(Scalar::to_approx).collect(),
        }
    }
}

pub fn moment_table<T: Scalar>(config: &VertexConfig<T>, kmax: usize) -> Result<MomentTable<T>> {
    if kmax < 2 {
        return Err(Error::DegenerateInput("kmax must be at least 2"));
    }
    let nu = (2..=kmax).map(|k| self::nu(config, k, false)).collect();
    let nubar = (2..=kmax).map(|k| self::nu(config, k, true)).collect();
    Ok(MomentTable { n: config.n(), kmax, nu, nubar })
}

/// Elementary and complete homogeneous symmetric functions of a tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct SymFuncs<T> {
    /// `e_0..=e_d`, with `e_k = 0` for `k > n`.
    pub e: Vec<T>,
    /// `h_0..=h_d`.
    pub h: Vec<T>,
}

impl<T: Scalar> SymFuncs<T> {
    /// `h_k`, zero for negative `k`.
    pub fn h_at(&self, k: i64) -> T {
        if k < 0 {
            T::zero()
        } else {
            self.h[k as usize].clone()
        }
    }
}

/// `e_k` and `h_k` for `k <= upto`.
pub fn sym_funcs<T: Scalar>(values: &[T], upto: usize) -> SymFuncs<T> {
    // coefficients of ∏ (1 + v t)
    let mut e = vec![T::zero(); upto.max(values.len()) + 1];
    e[0] = T::one();
    for (count, v) in values.iter().enumerate() {
        for k in (1..=count + 1).rev() {
            e[k] = e[k].clone() + v.clone() * e[k - 1].clone();
        }
    }
    e.truncate(upto + 1);
    let n = values.len();
    let mut h = vec![T::one()];
    for k in 1..=upto {
        // Σ_{m=0}^{k} (-1)^m e_m h_{k-m} = 0
        let mut acc = T::zero();
        for m in 1..=k.min(n) {
            let term = e[m].clone() * h[k - m].clone();
            acc = if m % 2 == 1 { acc + term } else { acc - term };
        }
        h.push(acc);
    }
    SymFuncs { e, h }
}

/// `∏ (1 - z_j w) = Σ (-1)^m e_m w^m`.
pub fn vertex_polynomial<T: Scalar>(z: &[T]) -> UniPoly<T> {
    let s = sym_funcs(z, z.len());
    UniPoly::new(
        s.e.into_iter()
            .enumerate()
            .map(|(m, c)| if m % 2 == 0 { c } else { -c })
            .collect(),
    )
}

/// The adjoint numerator `AD(w) = ∏(1 - z_j w) · Σ ν_{j+2} w^j`, a polynomial of degree `<= n-3`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointNumerator<T> {
    pub poly: UniPoly<T>,
    /// Coefficients at degrees `n-2 .. n-2+ADJOINT_BUFFER` before truncation.
    pub tail: Vec<T>,
}

impl<T: Scalar> AdjointNumerator<T> {
    /// Coefficient at `w^{n-3}`.
    pub fn top_coefficient(&self, n: usize) -> T {
        self.poly.coeff(n - 3)
    }

    /// `AD(0)`, which always equals `ν_2`.
    pub fn constant_term(&self) -> T {
        self.poly.coeff(0)
    }
}

pub fn adjoint_numerator<T: Scalar>(config: &VertexConfig<T>) -> Result<AdjointNumerator<T>> {
    let n = config.n();
    let len = n + ADJOINT_BUFFER;
    let series = UniPoly::new((0..len).map(|j| nu(config, j + 2, false)).collect());
    let full = (&vertex_polynomial(config.z()) * &series).truncate(len);
    let scale = series
        .coeffs()
        .iter()
        .map(Scalar::magnitude)
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let tail: Vec<T> = (n - 2..len).map(|d| full.coeff(d)).collect();
    for (off, c) in tail.iter().enumerate() {
        if !c.is_negligible(FLOAT_CHECK_TOL, scale * (1.0 + config.radius()).powi(n as i32)) {
            return Err(Error::DegreeOverflow { degree: n - 2 + off });
        }
    }
    Ok(AdjointNumerator { poly: full.truncate(n - 2), tail })
}

/// Which sign pattern over the triangle index `ℓ` reproduced the moments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QSignVariant {
    /// `Q_m = Σ_ℓ D_{1,ℓ,ℓ+1} e_m(...)`.
    Plain,
    /// `Q_m = Σ_ℓ (-1)^ℓ D_{1,ℓ,ℓ+1} e_m(...)` with 1-based `ℓ`.
    Alternating,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QDecomposition<T> {
    /// `Q_0..Q_{n-3}`.
    pub q: Vec<T>,
    pub variant: QSignVariant,
}

/// `D_{ijk}`: `ν_2` of the triangle on vertices `i, j, k` (0-based).
pub fn triangle_nu2<T: Scalar>(config: &VertexConfig<T>, i: usize, j: usize, k: usize) -> T {
    nu(&config.select(&[i, j, k]), 2, false)
}

/// `Q_m` under the given sign variant (no consistency check).
pub fn q_coefficients_variant<T: Scalar>(config: &VertexConfig<T>, variant: QSignVariant) -> Vec<T> {
    let n = config.n();
    let z = config.z();
    let mut q = vec![T::zero(); n - 2];
    // 0-based ℓ runs over 1..n-2 (triangles 0, ℓ, ℓ+1); the 1-based index is ℓ+1
    for l in 1..n - 1 {
        let d = triangle_nu2(config, 0, l, l + 1);
        let d = match variant {
            QSignVariant::Alternating if (l + 1) % 2 == 1 => -d,
            _ => d,
        };
        let rest: Vec<T> = (1..n).filter(|&m| m != l && m != l + 1).map(|m| z[m].clone()).collect();
        let e = sym_funcs(&rest, n - 3).e;
        for (m, qm) in q.iter_mut().enumerate() {
            *qm = qm.clone() + d.clone() * e[m].clone();
        }
    }
    q
}

/// Checks `ν_j = Σ_m (-1)^m Q_m h_{j-m-2}` for `2 <= j <= kmax`.
pub fn q_reproduces_moments<T: Scalar>(config: &VertexConfig<T>, q: &[T], kmax: usize) -> bool {
    let s = sym_funcs(config.z(), kmax);
    let scale = (1.0 + config.radius()).powi(kmax as i32 + 2);
    (2..=kmax).all(|j| {
        let mut acc = T::zero();
        for (m, qm) in q.iter().enumerate() {
            let term = qm.clone() * s.h_at(j as i64 - m as i64 - 2);
            acc = if m % 2 == 0 { acc + term } else { acc - term };
        }
        (acc - nu(config, j, false)).is_negligible(FLOAT_CHECK_TOL, scale)
    })
}

/// `Q_0..Q_{n-3}`, with the sign placement fixed by requiring that the
/// moments are reproduced through the complete symmetric functions.
pub fn q_coefficients<T: Scalar>(config: &VertexConfig<T>) -> Result<QDecomposition<T>> {
    let kmax = 2 * config.n() + 2;
    for variant in [QSignVariant::Plain, QSignVariant::Alternating] {
        let q = q_coefficients_variant(config, variant);
        if q_reproduces_moments(config, &q, kmax) {
            return Ok(QDecomposition { q, variant });
        }
    }
    Err(Error::ConsistencyFailure("no sign variant of Q_m reproduces the moments".into()))
}

/// `Σ_{m=0}^{n} (-1)^m e_m ν_{k+2+n-m}` for the given `k >= -2`.
fn recurrence_residual<T: Scalar>(seq: &[T], e: &[T], k: i64) -> T {
    let n = e.len() - 1;
    let top = (k + 2 + n as i64) as usize;
    e.iter().enumerate().fold(T::zero(), |acc, (m, em)| {
        let term = em.clone() * seq[top - m].clone();
        if m % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

fn with_e0<T: Scalar>(e: &[T]) -> Vec<T> {
    std::iter::once(T::one()).chain(e.iter().cloned()).collect()
}

/// Verifies `ν_{k+2+n} - e_1 ν_{k+1+n} + ... + (-1)^n e_n ν_{k+2} = 0` for every
/// `k >= -2` inside the sequence. `seq` starts at `ν_0`; `e` is `e_1..e_n`.
pub fn check_recurrence<T: Scalar>(seq: &[T], e: &[T]) -> Result<usize> {
    let e = with_e0(e);
    let n = e.len() - 1;
    let scale = seq.iter().map(Scalar::magnitude).fold(0.0, f64::max)
        * e.iter().map(Scalar::magnitude).fold(1.0, f64::max);
    let mut checked = 0;
    let mut k: i64 = -2;
    while ((k + 2) as usize + n) < seq.len() {
        if !recurrence_residual(seq, &e, k).is_negligible(FLOAT_CHECK_TOL, scale.max(1.0)) {
            return Err(Error::RecurrenceViolation { k });
        }
        checked += 1;
        k += 1;
    }
    Ok(checked)
}

/// Extends `ν_0..` up to index `target` with the recurrence; `e` is `e_1..e_n`.
/// Needs at least `ν_0..ν_{n-1}` to start.
pub fn extend_recurrence<T: Scalar>(seq: &[T], e: &[T], target: usize) -> Result<Vec<T>> {
    let n = e.len();
    if seq.len() < n {
        return Err(Error::InsufficientMoments { needed: n - 1, have: seq.len().saturating_sub(1) });
    }
    let mut out = seq.to_vec();
    while out.len() <= target {
        let idx = out.len();
        let next = (1..=n).fold(T::zero(), |acc, m| {
            let term = e[m - 1].clone() * out[idx - m].clone();
            if m % 2 == 1 {
                acc + term
            } else {
                acc - term
            }
        });
        out.push(next);
    }
    out.truncate(target + 1);
    Ok(out)
}

impl<T: Scalar> MomentTable<T> {
    /// Extends both sequences to `target` using the recurrences with `e` (for `ν`) and `ebar` (for `ν̄`).
    pub fn extend(&self, e: &[T], ebar: &[T], target: usize) -> Result<Self> {
        if target <= self.kmax {
            return Ok(self.clone());
        }
        let nu = extend_recurrence(&self.sequence(false), e, target)?;
        let nubar = extend_recurrence(&self.sequence(true), ebar, target)?;
        Ok(Self { n: self.n, kmax: target, nu: nu[2..].to_vec(), nubar: nubar[2..].to_vec() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{exact, gauss, ExactComplex};
    use num_traits::Zero;

    fn tri() -> VertexConfig<ExactComplex> {
        VertexConfig::real(vec![gauss(0, 0), gauss(1, 0), gauss(0, 1)]).unwrap()
    }

    fn square() -> VertexConfig<ExactComplex> {
        VertexConfig::real(vec![gauss(0, 0), gauss(1, 0), gauss(1, 1), gauss(0, 1)]).unwrap()
    }

    #[test]
    fn summed_power_is_divided_difference() {
        let (a, b) = (gauss(2, 1), gauss(-1, 3));
        let d = 4;
        let lhs = summed_power(&a, &b, d);
        let rhs = (a.pow_u(d + 1) - b.pow_u(d + 1)) / (a - b);
        assert_eq!(lhs, rhs);
        assert_eq!(summed_power(&gauss(1, 1), &gauss(1, 1), 2), gauss(1, 1).pow_u(2) * gauss(3, 0));
    }

    #[test]
    fn low_index_moments_vanish() {
        assert!(nu(&tri(), 0, false).is_zero());
        assert!(nu(&tri(), 1, false).is_zero());
        assert!(nu(&tri(), 1, true).is_zero());
    }

    #[test]
    fn unit_triangle_values() {
        let c = tri();
        assert_eq!(nu(&c, 2, false), exact(1, 2, 0, 1));
        assert_eq!(nu(&c, 3, false), exact(1, 2, 1, 2));
        assert_eq!(nu(&c, 4, false), exact(0, 1, 1, 2));
        assert!(nu(&c, 5, false).is_zero());
    }

    #[test]
    fn table_invariants() {
        let t = moment_table(&tri(), 4).unwrap();
        assert_eq!(t.nu_values(), &[exact(1, 2, 0, 1), exact(1, 2, 1, 2), exact(0, 1, 1, 2)]);
        assert_eq!(t.nubar(2).unwrap(), -t.nu(2).unwrap());
        // swapped-formula convention: in real mode nubar_k = -conj(nu_k)
        for k in 2..=4 {
            assert_eq!(t.nubar(k).unwrap(), -t.nu(k).unwrap().conj());
        }
        assert!(moment_table(&tri(), 1).is_err());
    }

    #[test]
    fn symmetric_functions() {
        let s = sym_funcs(&[gauss(0, 0), gauss(1, 0), gauss(0, 1)], 3);
        assert_eq!(s.e, vec![gauss(1, 0), gauss(1, 1), gauss(0, 1), gauss(0, 0)]);
        assert_eq!(s.h[2], gauss(0, 1));
        assert_eq!(s.h[3], gauss(0, 0));
        let ones = sym_funcs(&vec![gauss(1, 0); 3], 4);
        assert_eq!(ones.e[1..], [gauss(3, 0), gauss(3, 0), gauss(1, 0), gauss(0, 0)]);
        assert_eq!(ones.h[2], gauss(6, 0));
    }

    #[test]
    fn adjoint_for_triangle_is_area() {
        let ad = adjoint_numerator(&tri()).unwrap();
        assert_eq!(ad.poly.degree(), Some(0));
        assert_eq!(ad.poly.coeff(0), exact(1, 2, 0, 1));
        assert!(ad.tail.iter().all(Zero::is_zero));
    }

    #[test]
    fn adjoint_for_square() {
        let ad = adjoint_numerator(&square()).unwrap();
        assert_eq!(ad.poly.degree(), Some(1));
        assert_eq!(ad.constant_term(), gauss(1, 0));
        // nu_3 - e_1 nu_2 = 3(1+i)/2 - (2+2i)
        assert_eq!(ad.top_coefficient(4), exact(-1, 2, -1, 2));
    }

    #[test]
    fn q_decomposition_signs() {
        let t = q_coefficients(&tri()).unwrap();
        assert_eq!(t.q, vec![exact(1, 2, 0, 1)]);
        let sq = q_coefficients(&square()).unwrap();
        assert_eq!(sq.q[0], gauss(1, 0));
        assert_eq!(sq.variant, QSignVariant::Plain);
        let alt = q_coefficients_variant(&square(), QSignVariant::Alternating);
        assert!(!q_reproduces_moments(&square(), &alt, 10));
    }

    #[test]
    fn recurrence_on_triangle() {
        let c = tri();
        let t = moment_table(&c, 5).unwrap();
        let e = sym_funcs(c.z(), 3).e[1..].to_vec();
        assert!(check_recurrence(&t.sequence(false), &e).is_ok());
        let ext = extend_recurrence(&t.sequence(false), &e, 12).unwrap();
        for (k, v) in ext.iter().enumerate() {
            assert_eq!(*v, nu(&c, k, false), "k = {k}");
        }
        let zeros = vec![ExactComplex::zero(); 9];
        assert!(check_recurrence(&zeros, &[gauss(3, 1), gauss(-2, 0), gauss(5, 5)]).is_ok());
    }

    #[test]
    fn recurrence_violation_reports_k() {
        let c = tri();
        let mut seq = moment_table(&c, 8).unwrap().sequence(false);
        seq[6] = seq[6].clone() + gauss(1, 0);
        let e = sym_funcs(c.z(), 3).e[1..].to_vec();
        // nu_6 first appears as the top term at k = 1
        assert_eq!(check_recurrence(&seq, &e), Err(Error::RecurrenceViolation { k: 1 }));
    }
}

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::{ApproxComplex, ExactComplex, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `zbar_j` is the complex conjugate of `z_j`: an honest plane polygon.
    Real,
    /// `z` and `zbar` are independent tuples.
    Complexified,
}

/// An n-tuple of (possibly complexified) polygon vertices `(z_j, zbar_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexConfig<T> {
    z: Vec<T>,
    zbar: Vec<T>,
    mode: Mode,
}

impl<T: Scalar> VertexConfig<T> {
    /// Real polygon with vertices `z`, listed in boundary order.
    pub fn real(z: Vec<T>) -> Result<Self> {
        let zbar = z.iter().map(Scalar::conj).collect();
        Self::new(z, zbar, Mode::Real)
    }

    pub fn complexified(z: Vec<T>, zbar: Vec<T>) -> Result<Self> {
        Self::new(z, zbar, Mode::Complexified)
    }

    /// Checked constructor; in real mode every `zbar_j` must equal `conj(z_j)`
    /// (exactly, or within `1e-12` relative in float mode).
    pub fn new(z: Vec<T>, zbar: Vec<T>, mode: Mode) -> Result<Self> {
        if z.len() != zbar.len() {
            return Err(Error::InvalidConfig(format!(
                "{} z-values but {} zbar-values",
                z.len(),
                zbar.len()
            )));
        }
        if z.len() < 3 {
            return Err(Error::InvalidConfig(format!("need at least 3 vertices, got {}", z.len())));
        }
        if mode == Mode::Real {
            for (j, (a, b)) in z.iter().zip(&zbar).enumerate() {
                let diff = a.conj() - b.clone();
                if !diff.is_negligible(1e-12, 1.0 + a.magnitude()) {
                    return Err(Error::NotConjugate(j));
                }
            }
        }
        Ok(Self { z, zbar, mode })
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_real(&self) -> bool {
        self.mode == Mode::Real
    }

    pub fn z(&self) -> &[T] {
        &self.z
    }

    pub fn zbar(&self) -> &[T] {
        &self.zbar
    }

    pub fn vertex(&self, j: usize) -> (T, T) {
        (self.z[j].clone(), self.zbar[j].clone())
    }

    /// Interchanges the roles of `z` and `zbar`.
    pub fn swapped(&self) -> Self {
        Self { z: self.zbar.clone(), zbar: self.z.clone(), mode: self.mode }
    }

    /// The relabeled configuration `(z ∘ sigma, zbar ∘ tau)`, i.e. the new
    /// `j`-th vertex is `(z[sigma[j]], zbar[tau[j]])`. Indices are 0-based.
    pub fn relabel(&self, sigma: &[usize], tau: &[usize]) -> Self {
        assert_eq!(sigma.len(), self.n());
        assert_eq!(tau.len(), self.n());
        let z = sigma.iter().map(|&i| self.z[i].clone()).collect();
        let zbar = tau.iter().map(|&i| self.zbar[i].clone()).collect();
        let mode = if self.mode == Mode::Real && sigma == tau {
            Mode::Real
        } else {
            Mode::Complexified
        };
        Self { z, zbar, mode }
    }

    /// Reverses the boundary order (the involution `j -> n+1-j`).
    pub fn reversed(&self) -> Self {
        let rev: Vec<usize> = (0..self.n()).rev().collect();
        self.relabel(&rev, &rev)
    }

    /// Dilation `(t z, t zbar)`; real mode is kept only for real `t`.
    pub fn scaled(&self, t: &T) -> Self {
        let mode = if t.im_part().is_zero() { self.mode } else { Mode::Complexified };
        Self {
            z: self.z.iter().map(|x| x.clone() * t.clone()).collect(),
            zbar: self.zbar.iter().map(|x| x.clone() * t.clone()).collect(),
            mode,
        }
    }

    /// The sub-configuration on the given vertex indices.
    pub fn select(&self, idx: &[usize]) -> Self {
        Self {
            z: idx.iter().map(|&i| self.z[i].clone()).collect(),
            zbar: idx.iter().map(|&i| self.zbar[i].clone()).collect(),
            mode: self.mode,
        }
    }

    pub fn to_approx(&self) -> VertexConfig<ApproxComplex> {
        VertexConfig {
            z: self.z.iter().map(Scalar::to_approx).collect(),
            zbar: self.zbar.iter().map(Scalar::to_approx).collect(),
            mode: self.mode,
        }
    }

    /// Largest vertex modulus over both tuples.
    pub fn radius(&self) -> f64 {
        self.z.iter().chain(&self.zbar).map(Scalar::magnitude).fold(0.0, f64::max)
    }
}

impl VertexConfig<ExactComplex> {
    /// Real configuration from exact `(x, y)` coordinates.
    pub fn from_xy(points: &[(Rational, Rational)]) -> Result<Self> {
        Self::real(
            points
                .iter()
                .map(|(x, y)| ExactComplex::new(x.clone(), y.clone()))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::gauss;

    #[test]
    fn real_mode_checks_conjugacy() {
        let z = vec![gauss(0, 0), gauss(1, 0), gauss(0, 1)];
        let bad = vec![gauss(0, 0), gauss(1, 0), gauss(0, 1)];
        assert_eq!(
            VertexConfig::new(z.clone(), bad, Mode::Real),
            Err(Error::NotConjugate(2))
        );
        assert!(VertexConfig::real(z).is_ok());
    }

    #[test]
    fn too_few_vertices() {
        assert!(matches!(
            VertexConfig::real(vec![gauss(0, 0), gauss(1, 0)]),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn relabel_keeps_real_only_for_equal_pairs() {
        let c = VertexConfig::real(vec![gauss(0, 0), gauss(1, 0), gauss(0, 1)]).unwrap();
        assert!(c.relabel(&[1, 2, 0], &[1, 2, 0]).is_real());
        assert!(!c.relabel(&[1, 2, 0], &[0, 1, 2]).is_real());
        assert_eq!(c.reversed().z(), &[gauss(0, 1), gauss(1, 0), gauss(0, 0)]);
    }
}

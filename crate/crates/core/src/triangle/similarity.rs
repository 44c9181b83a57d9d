use crate::error::{Error, Result};
use crate::numeric::Scalar;
use crate::symmetry::Perm;

/// The three vectors `A_{τ(3)} C_τ` for the cyclic labelings `τ`, and their sum.
#[derive(Clone, Debug, PartialEq)]
pub struct SimilarityReport<T> {
    pub vectors: [T; 3],
    pub sum: T,
}

impl<T: Scalar> SimilarityReport<T> {
    /// Exact zero, or `|sum| <= 1e-12` in float mode.
    pub fn vanishes(&self) -> bool {
        self.sum.is_negligible(1e-12, 1.0)
    }
}

/// Points are complex numbers `A_j`. For each cyclic `τ` the similarity
/// `w ↦ α w + β` sending `conj(A_1), conj(A_2)` to `A_τ(1), A_τ(2)` carries
/// `conj(A_3)` to `C_τ`; the vectors from `A_τ(3)` to `C_τ` sum to zero.
pub fn similarity_theorem<T: Scalar>(a: &[T; 3]) -> Result<SimilarityReport<T>> {
    if (0..3).any(|j| a[j] == a[(j + 1) % 3]) {
        return Err(Error::DegenerateTriangle);
    }
    let z: Vec<T> = a.iter().map(Scalar::conj).collect();
    let vectors = ["()", "(123)", "(132)"].map(|cyc| {
        let t = Perm::from_cycles(cyc, 3).expect("valid cycle");
        let (p, q, r) = (&a[t.apply(0)], &a[t.apply(1)], &a[t.apply(2)]);
        let alpha = (p.clone() - q.clone()) / (z[0].clone() - z[1].clone());
        let beta = p.clone() - alpha.clone() * z[0].clone();
        alpha * z[2].clone() + beta - r.clone()
    });
    let sum = vectors.iter().fold(T::zero(), |acc, v| acc + v.clone());
    Ok(SimilarityReport { vectors, sum })
}

use num_traits::Num;

use crate::error::{Error, Result};
use crate::moments::FLOAT_CHECK_TOL;
use crate::numeric::{DenseMatrix, Scalar};
use crate::polygon::VertexConfig;
use crate::symmetry::action::{action_matrix, bilinear};
use crate::symmetry::relations::phi_value;
use crate::symmetry::{Perm, PermPair};

/// Matrix of `M_{σ,τ}`: the variable `z_j` moved to position `σ(j)` and `zbar_j` to `τ(j)`.
pub fn triangle_form(sigma: &Perm, tau: &Perm) -> DenseMatrix<i8> {
    action_matrix(&PermPair::new(sigma.inverse(), tau.inverse()))
}

fn s3(cycles: &str) -> Perm {
    Perm::from_cycles(cycles, 3).expect("valid cycle")
}

pub(crate) fn index_of(p: &Perm) -> usize {
    Perm::all(3).iter().position(|q| q == p).expect("element of S_3")
}

/// The even permutations of `S_3`, as indices into `Perm::all(3)`.
pub(crate) fn even_indices() -> [usize; 3] {
    [index_of(&s3("()")), index_of(&s3("(123)")), index_of(&s3("(132)"))]
}

/// `(12)∘τ` for each `τ`, as indices.
pub(crate) fn left_swap() -> [usize; 6] {
    let swap = s3("(12)");
    let all = Perm::all(3);
    std::array::from_fn(|k| index_of(&swap.compose(&all[k])))
}

/// The twelve values `M_{id,τ}` then `M_{(12),τ}`, `τ` in lexicographic order; no `i/4` factor.
pub fn twelve_values<T: Scalar>(config: &VertexConfig<T>) -> Result<Vec<T>> {
    if config.n() != 3 {
        return Err(Error::DimensionMismatch(format!("twelve relations need 3 vertices, got {}", config.n())));
    }
    let rows = [Perm::identity(3), s3("(12)")];
    Ok(rows
        .iter()
        .flat_map(|s| Perm::all(3).into_iter().map(move |t| (s.clone(), t)))
        .map(|(s, t)| bilinear(&triangle_form(&s, &t), config))
        .collect())
}

/// Pass flags for every relation among the twelve values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwelveRelations {
    /// `M_{(12),(12)τ} + M_{id,τ} = 0`, one per `τ`.
    pub two_term: [bool; 6],
    /// Sums over the even `τ` in the `id` row and in the `(12)` row.
    pub three_term: [bool; 2],
    pub quadratic: bool,
    /// `3 φ_ij` against the printed combinations, for `ij = 11, 12, 21, 22`.
    pub phi_printed: [bool; 4],
    /// `3 φ_11 = a + 2b + c - d`.
    pub phi11_corrected: bool,
}

/// Coefficients on `(a, b, c, d) = (M_{id,id}, M_{id,(123)}, M_{id,(12)}, M_{id,(23)})` of `3 φ_ij`.
pub const PHI_PRINTED: [((usize, usize), [i64; 4]); 4] = [
    ((1, 1), [1, 2, -1, -1]),
    ((1, 2), [2, 1, -1, -2]),
    ((2, 1), [-1, 1, -1, -2]),
    ((2, 2), [1, 2, -2, -1]),
];
pub const PHI11_CORRECTED: [i64; 4] = [1, 2, 1, -1];

impl TwelveRelations {
    /// Labeled outcomes, two-term relations first and φ formulas last.
    pub fn checks(&self) -> Vec<(String, bool)> {
        let mut out: Vec<(String, bool)> = self
            .two_term
            .iter()
            .enumerate()
            .map(|(k, &ok)| (format!("two-term τ = {}", Perm::all(3)[k]), ok))
            .collect();
        out.push(("three-term, id row".into(), self.three_term[0]));
        out.push(("three-term, (12) row".into(), self.three_term[1]));
        out.push(("quadratic".into(), self.quadratic));
        for (((i, j), _), ok) in PHI_PRINTED.iter().zip(self.phi_printed) {
            out.push((format!("φ{i}{j} printed"), ok));
        }
        out
    }

    /// The nine relations among the roots themselves.
    pub fn roots_passed(&self) -> bool {
        self.two_term.iter().chain(&self.three_term).all(|&b| b) && self.quadratic
    }

    pub fn passed(&self) -> bool {
        self.roots_passed() && self.phi_printed.iter().all(|&b| b)
    }
}

pub(crate) fn quadratic<T: Clone + Num>(x: &[T]) -> T {
    let e = even_indices();
    let swap = s3("(12)");
    let (a, b) = (x[e[0]].clone(), x[e[1]].clone());
    let (c, d) = (x[index_of(&swap)].clone(), x[index_of(&s3("(23)"))].clone());
    a.clone() * a.clone() + a * b.clone() + b.clone() * b - c.clone() * c.clone() - c * d.clone() - d.clone() * d
}

pub(crate) fn three_term<T: Clone + Num>(x: &[T], row: usize) -> T {
    even_indices().iter().fold(T::zero(), |acc, &k| acc + x[6 * row + k].clone())
}

/// Evaluates every relation on the configuration, exactly in exact mode.
pub fn twelve_relations<T: Scalar>(config: &VertexConfig<T>) -> Result<TwelveRelations> {
    let x = twelve_values(config)?;
    let scale = x.iter().map(Scalar::magnitude).fold(0.0, f64::max);
    let zero = |v: T, s: f64| v.is_negligible(FLOAT_CHECK_TOL, s);
    let swap = left_swap();
    let two_term = std::array::from_fn(|k| zero(x[6 + swap[k]].clone() + x[k].clone(), scale));
    let three_term = [zero(three_term(&x, 0), scale), zero(three_term(&x, 1), scale)];
    let quadratic = zero(quadratic(&x), scale * scale);

    let e = even_indices();
    let basis = [x[e[0]].clone(), x[e[1]].clone(), x[index_of(&s3("(12)"))].clone(), x[index_of(&s3("(23)"))].clone()];
    let combo = |w: &[i64; 4]| basis.iter().zip(w).fold(T::zero(), |acc, (v, &c)| acc + T::from_i64(c) * v.clone());
    let phi3 = |i: usize, j: usize| T::from_i64(3) * phi_value(i, j, config);
    let phi_printed = std::array::from_fn(|k| {
        let ((i, j), w) = PHI_PRINTED[k];
        zero(phi3(i, j) - combo(&w), scale)
    });
    let phi11_corrected = zero(phi3(1, 1) - combo(&PHI11_CORRECTED), scale);
    Ok(TwelveRelations { two_term, three_term, quadratic, phi_printed, phi11_corrected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::nu;
    use crate::numeric::gauss;
    use crate::polygon::Mode;
    use crate::sample;
    use crate::symmetry::action::form_scalar;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_form_is_area() {
        let c = VertexConfig::real(vec![gauss(0, 0), gauss(1, 0), gauss(0, 1)]).unwrap();
        let x = twelve_values(&c).unwrap();
        assert_eq!(form_scalar::<crate::ExactComplex>() * x[0].clone(), nu(&c, 2, false));
    }

    #[test]
    fn relations_on_unit_triangle() {
        let c = VertexConfig::real(vec![gauss(0, 0), gauss(1, 0), gauss(0, 1)]).unwrap();
        let r = twelve_relations(&c).unwrap();
        assert!(r.roots_passed());
        assert!(r.phi11_corrected);
        assert_eq!(r.phi_printed[1..], [true, true, true]);
    }

    #[test]
    fn relations_on_random_and_scaled() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let c = sample::config(3, Mode::Complexified, &mut rng);
            for cfg in [c.clone(), c.scaled(&gauss(3, -2))] {
                let r = twelve_relations(&cfg).unwrap();
                assert!(r.roots_passed());
                assert!(r.phi11_corrected);
                assert_eq!(r.phi_printed[1..], [true, true, true]);
                assert!(!r.phi_printed[0]);
            }
            let f = twelve_relations(&c.to_approx()).unwrap();
            assert!(f.roots_passed() && f.phi11_corrected);
        }
    }
}

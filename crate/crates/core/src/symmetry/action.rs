use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::perm::{Perm, PermPair};
use crate::error::{Error, Result};
use crate::moments::FLOAT_CHECK_TOL;
use crate::numeric::{DenseMatrix, Scalar, UniPoly};
use crate::polygon::VertexConfig;

/// Float threshold on `|a - b| / scale` below which two orbit values collide.
pub const COLLISION_TOL: f64 = 1e-9;

/// The bilinear form `ν_2` after relabeling by `(σ, τ)`, as an integer matrix.
///
/// Rows index `z`, columns index `zbar`, and the form is
/// `(i/4) Σ z_c M[c][d] zbar_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionForm {
    pub matrix: DenseMatrix<i8>,
    pub pair: PermPair,
}

/// `M[c][d] = M_id[σ⁻¹c][τ⁻¹d]` with `M_id = P[C] - P[C⁻¹]`.
pub fn action_matrix(pair: &PermPair) -> DenseMatrix<i8> {
    let n = pair.n();
    let (si, ti) = (pair.sigma.inverse(), pair.tau.inverse());
    DenseMatrix::from_fn(n, n, |c, d| {
        let (a, b) = (si.apply(c), ti.apply(d));
        if b == (a + 1) % n {
            1
        } else if (b + 1) % n == a {
            -1
        } else {
            0
        }
    })
}

/// Compact orbit key: for each row, the columns of its `+1` and `-1`.
fn matrix_key(pair: &PermPair) -> Vec<u8> {
    let n = pair.n();
    let si = pair.sigma.inverse();
    let t = &pair.tau;
    (0..n)
        .flat_map(|c| {
            let a = si.apply(c);
            [t.apply((a + 1) % n) as u8, t.apply((a + n - 1) % n) as u8]
        })
        .collect()
}

pub fn action_form(pair: &PermPair) -> ActionForm {
    assert!(pair.n() >= 3, "action forms need n >= 3");
    ActionForm { matrix: action_matrix(pair), pair: pair.clone() }
}

/// `Σ z_c M[c][d] zbar_d` for an integer matrix.
pub fn bilinear<T: Scalar>(matrix: &DenseMatrix<i8>, config: &VertexConfig<T>) -> T {
    let (z, zbar) = (config.z(), config.zbar());
    let mut acc = T::zero();
    for c in 0..matrix.rows() {
        for d in 0..matrix.cols() {
            match *matrix.get(c, d) {
                0 => {}
                1 => acc = acc + z[c].clone() * zbar[d].clone(),
                -1 => acc = acc - z[c].clone() * zbar[d].clone(),
                m => acc = acc + T::from_i64(m as i64) * z[c].clone() * zbar[d].clone(),
            }
        }
    }
    acc
}

/// The normalization `i/4` that makes the identity form equal to `ν_2`.
pub fn form_scalar<T: Scalar>() -> T {
    T::i() / T::from_i64(4)
}

pub fn eval_form<T: Scalar>(form: &ActionForm, config: &VertexConfig<T>) -> T {
    form_scalar::<T>() * bilinear(&form.matrix, config)
}

/// `ν_2` of the configuration relabeled by `pair`, via the matrix.
pub fn eval_pair<T: Scalar>(pair: &PermPair, config: &VertexConfig<T>) -> T {
    eval_form(&action_form(pair), config)
}

/// The even-`n` building blocks `C_1, C_2, δ_1, δ_2`.
pub fn even_generators(n: usize) -> (Perm, Perm, Perm, Perm) {
    assert!(n % 2 == 0 && n >= 4);
    let join = |v: Vec<String>| v.join("");
    let c1 = format!("({})", (1..n).step_by(2).map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    let c2 = format!("({})", (2..=n).step_by(2).map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    let d1 = join((1..n).step_by(2).map(|a| format!("({},{})", a, a + 1)).collect());
    let d2 = join((2..=n).step_by(2).map(|a| format!("({},{})", a, a % n + 1)).collect());
    let p = |s: &str| Perm::from_cycles(s, n).expect("well-formed generator");
    (p(&c1), p(&c2), p(&d1), p(&d2))
}

/// The stabilizer of `ν_2` from its closed description: `(C^k, C^k)` for odd
/// `n`; for `n = 2ℓ` the pairs `(C_1^u C_2^v, C_1^v C_2^u)` and
/// `(δ_1 C_1^u C_2^v, δ_2 C_1^v C_2^u)`.
pub fn stabilizer(n: usize) -> Vec<PermPair> {
    assert!(n >= 3);
    let mut out = Vec::new();
    if n % 2 == 1 {
        let c = Perm::long_cycle(n);
        for k in 0..n {
            out.push(PermPair::new(c.pow(k), c.pow(k)));
        }
    } else {
        let l = n / 2;
        let (c1, c2, d1, d2) = even_generators(n);
        for u in 0..l {
            for v in 0..l {
                let a = c1.pow(u).compose(&c2.pow(v));
                let b = c1.pow(v).compose(&c2.pow(u));
                out.push(PermPair::new(a.clone(), b.clone()));
                out.push(PermPair::new(d1.compose(&a), d2.compose(&b)));
            }
        }
    }
    out.sort();
    out
}

/// Every pair fixing the identity matrix, by exhaustive search over `S_n × S_n`.
pub fn stabilizer_exhaustive(n: usize) -> Vec<PermPair> {
    let id = matrix_key(&PermPair::identity(n));
    let perms = Perm::all(n);
    let mut out: Vec<PermPair> = perms
        .par_iter()
        .flat_map_iter(|s| {
            let id = &id;
            perms.iter().filter_map(move |t| {
                let pair = PermPair::new(s.clone(), t.clone());
                (matrix_key(&pair) == *id).then_some(pair)
            })
        })
        .collect();
    out.sort();
    out
}

/// Orbit of `ν_2` under `S_n × S_n`, one representative per distinct matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitData {
    pub n: usize,
    /// First pair (in lexicographic order of one-line notations) of each class.
    pub reps: Vec<PermPair>,
    /// Size of each class, which is the stabilizer order.
    pub class_sizes: Vec<usize>,
}

impl OrbitData {
    pub fn degree(&self) -> usize {
        self.reps.len()
    }
}

/// Groups all `(n!)²` pairs by exact matrix equality.
pub fn orbit_data(n: usize) -> OrbitData {
    assert!(n >= 3);
    let perms = Perm::all(n);
    let keyed: Vec<Vec<(Vec<u8>, usize, usize)>> = perms
        .par_iter()
        .enumerate()
        .map(|(si, s)| {
            perms
                .iter()
                .enumerate()
                .map(|(ti, t)| (matrix_key(&PermPair::new(s.clone(), t.clone())), si, ti))
                .collect()
        })
        .collect();
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut reps = Vec::new();
    let mut class_sizes = Vec::new();
    for (key, si, ti) in keyed.into_iter().flatten() {
        match index.get(&key) {
            Some(&k) => class_sizes[k] += 1,
            None => {
                index.insert(key, reps.len());
                reps.push(PermPair::new(perms[si].clone(), perms[ti].clone()));
                class_sizes.push(1);
            }
        }
    }
    OrbitData { n, reps, class_sizes }
}

/// `P(t) = ∏ (t - ν_2(σ,τ))` over orbit representatives, with its roots.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalPoly<T> {
    pub poly: UniPoly<T>,
    pub roots: Vec<T>,
}

fn product_of_linears<T: Scalar>(roots: &[T]) -> UniPoly<T> {
    match roots.len() {
        0 => UniPoly::constant(T::one()),
        1 => UniPoly::linear(roots[0].clone()),
        len => {
            let (a, b) = roots.split_at(len / 2);
            let (pa, pb) = rayon::join(|| product_of_linears(a), || product_of_linears(b));
            &pa * &pb
        }
    }
}

fn check_distinct<T: Scalar>(values: &[T]) -> Result<()> {
    if T::EXACT {
        let mut seen = HashSet::new();
        for v in values {
            let key = format!("{v:?}");
            if !seen.insert(key) {
                return Err(Error::NonGenericConfig);
            }
        }
    } else {
        let scale = values.iter().map(Scalar::magnitude).fold(0.0, f64::max);
        for (i, a) in values.iter().enumerate() {
            for b in &values[i + 1..] {
                if (a.clone() - b.clone()).is_negligible(COLLISION_TOL, scale) {
                    return Err(Error::NonGenericConfig);
                }
            }
        }
    }
    Ok(())
}

/// Builds `P` from the given orbit; fails with `NonGenericConfig` if two roots coincide.
pub fn minimal_poly_with<T: Scalar>(orbit: &OrbitData, config: &VertexConfig<T>) -> Result<MinimalPoly<T>> {
    if orbit.n != config.n() {
        return Err(Error::DimensionMismatch(format!(
            "orbit of degree {} used on {} vertices",
            orbit.n,
            config.n()
        )));
    }
    let roots: Vec<T> = orbit.reps.par_iter().map(|p| eval_pair(p, config)).collect();
    check_distinct(&roots)?;
    Ok(MinimalPoly { poly: product_of_linears(&roots), roots })
}

pub fn minimal_poly<T: Scalar>(config: &VertexConfig<T>) -> Result<MinimalPoly<T>> {
    minimal_poly_with(&orbit_data(config.n()), config)
}

impl<T: Scalar> MinimalPoly<T> {
    /// `P(ν_2)` is zero (exactly, or relative to the coefficient scale).
    pub fn annihilates(&self, value: &T) -> bool {
        let r = value.magnitude().max(1.0);
        let scale = self
            .poly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.magnitude() * r.powi(k as i32))
            .fold(0.0, f64::max);
        self.poly.eval(value).is_negligible(FLOAT_CHECK_TOL, scale)
    }

    /// Coefficients agree (exactly, or to relative tolerance) with another polynomial.
    pub fn same_coefficients(&self, other: &Self) -> bool {
        let scale = self.poly.coeffs().iter().map(Scalar::magnitude).fold(1.0, f64::max);
        self.poly.coeffs().len() == other.poly.coeffs().len()
            && self
                .poly
                .coeffs()
                .iter()
                .zip(other.poly.coeffs())
                .all(|(a, b)| (a.clone() - b.clone()).is_negligible(FLOAT_CHECK_TOL, scale))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::nu;
    use crate::numeric::{exact, gauss, ExactComplex};
    use crate::polygon::Mode;
    use crate::sample;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tri() -> VertexConfig<ExactComplex> {
        VertexConfig::real(vec![gauss(0, 0), gauss(1, 0), gauss(0, 1)]).unwrap()
    }

    #[test]
    fn identity_form_is_area() {
        let f = action_form(&PermPair::identity(3));
        assert_eq!(eval_form(&f, &tri()), exact(1, 2, 0, 1));
        let c = Perm::long_cycle(3);
        assert_eq!(eval_pair(&PermPair::new(c.clone(), c), &tri()), exact(1, 2, 0, 1));
        let xi = Perm::from_cycles("(1,3)", 3).unwrap();
        assert_eq!(eval_pair(&PermPair::new(xi.clone(), xi), &tri()), exact(-1, 2, 0, 1));
    }

    #[test]
    fn forms_match_relabeled_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = *[3usize, 4, 5].choose(&mut rng).unwrap();
            let cfg = sample::config(n, Mode::Complexified, &mut rng);
            let perms = Perm::all(n);
            let pair = PermPair::new(
                perms.choose(&mut rng).unwrap().clone(),
                perms.choose(&mut rng).unwrap().clone(),
            );
            let relabeled = cfg.relabel(pair.sigma.images(), pair.tau.images());
            assert_eq!(eval_pair(&pair, &cfg), nu(&relabeled, 2, false), "{pair}");
        }
    }

    #[test]
    fn matrices_are_signed_permutation_patterns() {
        for n in 3..=5 {
            for s in Perm::all(n) {
                for t in Perm::all(n).into_iter().step_by(7) {
                    let m = action_matrix(&PermPair::new(s.clone(), t));
                    for r in 0..n {
                        let row: Vec<i8> = (0..n).map(|c| *m.get(r, c)).collect();
                        let col: Vec<i8> = (0..n).map(|c| *m.get(c, r)).collect();
                        for line in [row, col] {
                            assert_eq!(line.iter().filter(|&&x| x == 1).count(), 1);
                            assert_eq!(line.iter().filter(|&&x| x == -1).count(), 1);
                            assert_eq!(line.iter().map(|&x| x as i64).sum::<i64>(), 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn key_agrees_with_matrix() {
        let perms = Perm::all(4);
        for s in perms.iter().step_by(5) {
            for t in perms.iter().step_by(3) {
                let pair = PermPair::new(s.clone(), t.clone());
                let m = action_matrix(&pair);
                let key = matrix_key(&pair);
                for c in 0..4 {
                    assert_eq!(*m.get(c, key[2 * c] as usize), 1);
                    assert_eq!(*m.get(c, key[2 * c + 1] as usize), -1);
                }
            }
        }
    }

    #[test]
    fn stabilizers_are_complete() {
        for (n, order) in [(3, 3), (4, 8), (5, 5)] {
            let closed = stabilizer(n);
            assert_eq!(closed.len(), order);
            assert_eq!(closed, stabilizer_exhaustive(n), "n = {n}");
        }
    }

    #[test]
    fn orbit_degrees() {
        for (n, d) in [(3, 12), (4, 72), (5, 2880)] {
            let o = orbit_data(n);
            assert_eq!(o.degree(), d);
            assert!(o.class_sizes.iter().all(|&s| s * d == (1..=n).product::<usize>().pow(2)));
            assert_eq!(o.reps[0], PermPair::identity(n));
        }
    }

    #[test]
    fn triangle_minimal_polynomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let cfg = sample::config(3, Mode::Complexified, &mut rng);
        let p = minimal_poly(&cfg).unwrap();
        assert_eq!(p.poly.degree(), Some(12));
        assert!(p.annihilates(&nu(&cfg, 2, false)));
        let s = Perm::from_cycles("(1,2)", 3).unwrap();
        let t = Perm::from_cycles("(2,3)", 3).unwrap();
        let moved = minimal_poly(&cfg.relabel(s.images(), t.images())).unwrap();
        assert!(p.same_coefficients(&moved));
    }

    #[test]
    fn degenerate_orbit() {
        let z = vec![gauss(1, 2), gauss(3, -1), gauss(0, 5)];
        let cfg = VertexConfig::complexified(z, vec![gauss(0, 0); 3]).unwrap();
        assert_eq!(minimal_poly(&cfg), Err(Error::NonGenericConfig));
        // the real unit triangle has coinciding orbit values
        assert_eq!(minimal_poly(&tri()), Err(Error::NonGenericConfig));
    }
}

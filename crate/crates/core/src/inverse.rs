//! Recovering vertices from harmonic moments.
//!
//! The moments `ν_2..ν_{2n-1}` determine `e_1..e_n` through the Toeplitz
//! system `U·E = V` with `E = (e_1, -e_2, ..., (-1)^{n+1} e_n)`, whose
//! determinant `𝔇_n` is the only denominator that appears.

use rand::Rng;

use crate::error::{Error, Result};
use crate::moments::{extend_recurrence, nu, MomentTable};
use crate::numeric::{poly_roots, ApproxComplex, DenseMatrix, ExactComplex, Rational, Scalar, UniPoly};
use crate::polygon::VertexConfig;
use crate::symmetry::perm::next_permutation;

/// Relative threshold on `|𝔇_n|` (against `max|U|^n`) below which a float system counts as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Default relative moment mismatch accepted when matching orderings.
pub const MATCH_TOL: f64 = 1e-8;

/// Largest vertex count for which the ordering search runs.
pub const MAX_RECONSTRUCT_N: usize = 7;

#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzSystem<T> {
    pub u: DenseMatrix<T>,
    pub v: Vec<T>,
    pub dd: T,
}

fn toeplitz_from_seq<T: Scalar>(seq: &[T], n: usize) -> Result<ToeplitzSystem<T>> {
    let u = DenseMatrix::from_fn(n, n, |r, c| {
        let idx = n as i64 - 1 + r as i64 - c as i64;
        seq[idx as usize].clone()
    });
    let v = (n..2 * n).map(|k| seq[k].clone()).collect();
    let dd = u.det()?;
    Ok(ToeplitzSystem { u, v, dd })
}

/// `U[r][c] = ν_{n-1+r-c}`, `V = (ν_n, ..., ν_{2n-1})`.
pub fn build_toeplitz<T: Scalar>(table: &MomentTable<T>, n: usize) -> Result<ToeplitzSystem<T>> {
    if n < 1 || table.kmax() < 2 * n - 1 {
        return Err(Error::InsufficientMoments { needed: 2 * n - 1, have: table.kmax() });
    }
    toeplitz_from_seq(&table.sequence(false), n)
}

impl<T: Scalar> ToeplitzSystem<T> {
    pub fn n(&self) -> usize {
        self.v.len()
    }

    fn is_singular(&self) -> bool {
        let scale = self.u.entries().iter().map(Scalar::magnitude).fold(0.0, f64::max);
        self.dd.is_negligible(SINGULAR_TOL, scale.powi(self.n() as i32))
    }
}

/// Solves the system and returns `e_1..e_n`.
pub fn solve_elementary<T: Scalar>(sys: &ToeplitzSystem<T>) -> Result<Vec<T>> {
    if sys.is_singular() {
        return Err(Error::SingularMomentMatrix);
    }
    let big_e = sys.u.solve(&sys.v).map_err(|_| Error::SingularMomentMatrix)?;
    Ok(big_e
        .into_iter()
        .enumerate()
        .map(|(m, x)| if m % 2 == 0 { x } else { -x })
        .collect())
}

/// Roots of `t^n - e_1 t^{n-1} + ... + (-1)^n e_n`.
pub fn vertex_multiset(e: &[ApproxComplex]) -> Result<Vec<ApproxComplex>> {
    let n = e.len();
    let mut coeffs = vec![ApproxComplex::new(0.0, 0.0); n + 1];
    coeffs[n] = ApproxComplex::new(1.0, 0.0);
    for (m, em) in e.iter().enumerate() {
        let m = m + 1;
        coeffs[n - m] = if m % 2 == 0 { *em } else { -*em };
    }
    poly_roots(&UniPoly::new(coeffs))
}

/// A reconstructed real polygon and its relative moment mismatch.
#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction {
    pub config: VertexConfig<ApproxComplex>,
    pub mismatch: f64,
}

/// Max-norm relative distance between the moments of `z` and `target` (`ν_2..`).
fn moment_mismatch(z: &[ApproxComplex], target: &[ApproxComplex], scale: f64) -> f64 {
    let config = VertexConfig::real(z.to_vec()).expect("roots give a valid real config");
    target
        .iter()
        .enumerate()
        .map(|(i, t)| (nu(&config, i + 2, false) - t).norm())
        .fold(0.0, f64::max)
        / scale
}

fn canonical_rotation(z: &[ApproxComplex]) -> Vec<ApproxComplex> {
    // round-off below this grid must not decide the starting vertex
    let grid = 1e-9 * z.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let key = |v: &ApproxComplex| ((v.re / grid).round() as i64, (v.im / grid).round() as i64);
    let start = (0..z.len()).min_by_key(|&j| key(&z[j])).unwrap_or(0);
    z[start..].iter().chain(&z[..start]).copied().collect()
}

/// Rebuilds a real polygon from `ν_2..ν_{2n-1}`, including its cyclic order.
pub fn reconstruct_real<T: Scalar>(table: &MomentTable<T>, n: usize, tol: f64) -> Result<Reconstruction> {
    if n > MAX_RECONSTRUCT_N {
        return Err(Error::InvalidConfig(format!("ordering search supports n <= {MAX_RECONSTRUCT_N}")));
    }
    if n < 3 {
        return Err(Error::InvalidConfig("a polygon needs at least 3 vertices".into()));
    }
    let e = solve_elementary(&build_toeplitz(table, n)?)?;
    let e: Vec<ApproxComplex> = e.iter().map(Scalar::to_approx).collect();
    let roots = vertex_multiset(&e)?;
    let target: Vec<ApproxComplex> = table.nu_values()[..2 * n - 2].iter().map(Scalar::to_approx).collect();
    let scale = target.iter().map(|t| t.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);

    let mut rest: Vec<usize> = (1..n).collect();
    let mut best: Option<(f64, Vec<ApproxComplex>)> = None;
    loop {
        let z: Vec<ApproxComplex> = std::iter::once(roots[0]).chain(rest.iter().map(|&i| roots[i])).collect();
        let d = moment_mismatch(&z, &target, scale);
        if best.as_ref().map_or(true, |(b, _)| d < *b) {
            best = Some((d, z));
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    let (mismatch, z) = best.expect("at least one ordering");
    if !(mismatch <= tol) {
        return Err(Error::NoMatchingOrder { best: mismatch });
    }
    Ok(Reconstruction { config: VertexConfig::real(canonical_rotation(&z))?, mismatch })
}

/// Outcome of the denominator test on one probing line.
#[derive(Clone, Debug, PartialEq)]
pub struct DenominatorProbe {
    /// Degree of `𝔇_n·ν_{2n}` along the line, if it is a polynomial of degree `<= n+1`.
    pub first: Option<usize>,
    /// Degree of `𝔇_n²·ν_{2n+1}` along the line, if it is a polynomial of degree `<= 2n+1`.
    pub second: Option<usize>,
}

impl DenominatorProbe {
    pub fn passed(&self) -> bool {
        self.first.is_some() && self.second.is_some()
    }
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=6).into())
}

/// Checks that `ν_{2n}` and `ν_{2n+1}`, obtained from `ν_2..ν_{2n-1}` by the
/// recurrence, become polynomial after multiplying by `𝔇_n` and `𝔇_n²`.
///
/// The moments are restricted to a random line `a + t·b` in moment space;
/// each cleared quantity is interpolated through `bound + 1` points and then
/// compared against further points on the same line.
pub fn denominator_probe<R: Rng>(n: usize, rng: &mut R) -> Result<DenominatorProbe> {
    let gen = |rng: &mut R| -> Vec<ExactComplex> {
        (0..2 * n - 2).map(|_| ExactComplex::new(random_rational(rng), random_rational(rng))).collect()
    };
    let (a, b) = (gen(rng), gen(rng));
    let at = |t: i64| -> Result<Option<(ExactComplex, ExactComplex)>> {
        let t = ExactComplex::from_i64(t);
        let mut seq = vec![ExactComplex::from_i64(0); 2];
        seq.extend(a.iter().zip(&b).map(|(x, y)| x.clone() + t.clone() * y.clone()));
        let sys = toeplitz_from_seq(&seq, n)?;
        if sys.dd == ExactComplex::from_i64(0) {
            return Ok(None);
        }
        let e = solve_elementary(&sys)?;
        let ext = extend_recurrence(&seq, &e, 2 * n + 1)?;
        let dd = sys.dd;
        Ok(Some((dd.clone() * ext[2 * n].clone(), dd.clone() * dd * ext[2 * n + 1].clone())))
    };
    let extra = 3;
    let bounds = [n + 1, 2 * n + 1];
    let needed = bounds[1] + 1 + extra;
    let (mut ts, mut ys1, mut ys2) = (Vec::new(), Vec::new(), Vec::new());
    let mut t = 0i64;
    while ts.len() < needed {
        if let Some((y1, y2)) = at(t)? {
            ts.push(ExactComplex::from_i64(t));
            ys1.push(y1);
            ys2.push(y2);
        }
        t += 1;
    }
    let fit = |ys: &[ExactComplex], bound: usize| -> Option<usize> {
        let p = UniPoly::interpolate(&ts[..bound + 1], &ys[..bound + 1]);
        let ok = ts[bound + 1..].iter().zip(&ys[bound + 1..]).all(|(x, y)| p.eval(x) == *y);
        ok.then(|| p.degree().unwrap_or(0))
    };
    Ok(DenominatorProbe { first: fit(&ys1[..], bounds[0]), second: fit(&ys2[..], bounds[1]) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{moment_table, sym_funcs};
    use crate::numeric::{exact, gauss};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tri() -> VertexConfig<ExactComplex> {
        VertexConfig::real(vec![gauss(0, 0), gauss(1, 0), gauss(0, 1)]).unwrap()
    }

    fn square() -> VertexConfig<ExactComplex> {
        VertexConfig::real(vec![gauss(0, 0), gauss(1, 0), gauss(1, 1), gauss(0, 1)]).unwrap()
    }

    #[test]
    fn triangle_toeplitz() {
        let sys = build_toeplitz(&moment_table(&tri(), 5).unwrap(), 3).unwrap();
        let h = exact(1, 2, 0, 1);
        let g = exact(1, 2, 1, 2);
        let z = gauss(0, 0);
        let expected = DenseMatrix::from_rows(vec![
            vec![h.clone(), z.clone(), z.clone()],
            vec![g.clone(), h.clone(), z],
            vec![exact(0, 1, 1, 2), g, h],
        ])
        .unwrap();
        assert_eq!(sys.u, expected);
        assert_eq!(sys.dd, exact(1, 8, 0, 1));
        assert_eq!(solve_elementary(&sys).unwrap(), vec![gauss(1, 1), gauss(0, 1), gauss(0, 0)]);
    }

    #[test]
    fn insufficient_moments() {
        let t = moment_table(&tri(), 4).unwrap();
        assert!(matches!(build_toeplitz(&t, 3), Err(Error::InsufficientMoments { .. })));
    }

    #[test]
    fn collinear_is_singular() {
        let flat = VertexConfig::real(vec![gauss(0, 0), gauss(1, 0), gauss(2, 0)]).unwrap();
        let sys = build_toeplitz(&moment_table(&flat, 5).unwrap(), 3).unwrap();
        assert_eq!(sys.dd, gauss(0, 0));
        assert_eq!(solve_elementary(&sys), Err(Error::SingularMomentMatrix));
    }

    #[test]
    fn square_elementary_functions() {
        let sq = square();
        let e = solve_elementary(&build_toeplitz(&moment_table(&sq, 7).unwrap(), 4).unwrap()).unwrap();
        assert_eq!(e, sym_funcs(sq.z(), 4).e[1..].to_vec());
        assert_eq!(e[0], gauss(2, 2));
    }

    #[test]
    fn multiset_of_roots() {
        let e = [ApproxComplex::new(1.0, 1.0), ApproxComplex::new(0.0, 1.0), ApproxComplex::new(0.0, 0.0)];
        let r = vertex_multiset(&e).unwrap();
        let want = [ApproxComplex::new(0.0, 0.0), ApproxComplex::new(1.0, 0.0), ApproxComplex::new(0.0, 1.0)];
        assert!(crate::numeric::multiset_distance(&r, &want) < 1e-8);
        let zero = vertex_multiset(&[ApproxComplex::new(0.0, 0.0); 4]).unwrap();
        assert!(zero.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn round_trips() {
        for c in [tri(), square()] {
            let n = c.n();
            let t = moment_table(&c, 2 * n - 1).unwrap();
            let rec = reconstruct_real(&t, n, MATCH_TOL).unwrap();
            for (a, b) in rec.config.z().iter().zip(c.to_approx().z()) {
                assert!((a - b).norm() < 1e-8, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn reversed_square_keeps_its_orientation() {
        let c = square().reversed();
        let t = moment_table(&c, 7).unwrap();
        let rec = reconstruct_real(&t, 4, MATCH_TOL).unwrap();
        let want = [gauss(0, 0), gauss(0, 1), gauss(1, 1), gauss(1, 0)];
        for (a, b) in rec.config.z().iter().zip(&want) {
            assert!((a - b.to_approx()).norm() < 1e-8);
        }
    }

    #[test]
    fn perturbed_moment_has_no_realization() {
        let t = moment_table(&square(), 7).unwrap();
        let mut nu = t.nu_values().to_vec();
        nu[1] = nu[1].clone() + gauss(1, 0);
        let bad = MomentTable::from_values(4, nu, t.nubar_values().to_vec()).unwrap();
        assert!(matches!(reconstruct_real(&bad, 4, MATCH_TOL), Err(Error::NoMatchingOrder { .. })));
    }

    #[test]
    fn denominators_divide_d_n() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 3..=4 {
            let probe = denominator_probe(n, &mut rng).unwrap();
            assert!(probe.passed(), "n = {n}: {probe:?}");
        }
    }
}

//! Triangles: the resultant relation among the moments, the twelve orbit
//! roots and their relations, the signed symmetries of those roots, and the
//! vector-sum theorem for similar triangles erected on a triangle.

mod galois;
mod relations;
mod similarity;

pub use galois::{galois3, galois3_seeded, Galois3, SignedSymmetry, GALOIS_CONFIGS, GALOIS_HEIGHT};
pub use relations::{triangle_form, twelve_relations, twelve_values, TwelveRelations};
pub use similarity::{similarity_theorem, SimilarityReport};

use crate::error::{Error, Result};
use crate::moments::{nu, sym_funcs, FLOAT_CHECK_TOL};
use crate::numeric::{multiset_distance, rational_from_f64, poly_roots, sylvester_resultant, ApproxComplex, DenseMatrix, Scalar, UniPoly};
use crate::polygon::VertexConfig;
use crate::symmetry::action::COLLISION_TOL;
use crate::symmetry::{minimal_poly, Perm};

/// Root tolerance of [`l_in_m`], relative to the largest orbit value.
pub const ROOT_TOL: f64 = 1e-8;

/// A triangle with its symmetric functions, `S = Σ z_j zbar_j` and `M = ν_2`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleData<T> {
    pub config: VertexConfig<T>,
    /// `e_1, e_2, e_3` of the `z`-values.
    pub e: [T; 3],
    /// `e_1, e_2, e_3` of the `zbar`-values.
    pub ebar: [T; 3],
    pub s_true: T,
    pub m: T,
}

fn three<T: Scalar>(values: &[T]) -> [T; 3] {
    let s = sym_funcs(values, 3);
    [s.e[1].clone(), s.e[2].clone(), s.e[3].clone()]
}

/// The matrix with rows `1`, `z`, `zbar`.
pub fn omega<T: Scalar>(config: &VertexConfig<T>) -> DenseMatrix<T> {
    DenseMatrix::from_fn(3, 3, |r, c| match r {
        0 => T::one(),
        1 => config.z()[c].clone(),
        _ => config.zbar()[c].clone(),
    })
}

/// `ω ωᵀ` with the entry `Σ z_j zbar_j` replaced by the variable `S`.
pub fn omega_gram<T: Scalar>(td: &TriangleData<T>) -> [[UniPoly<T>; 3]; 3] {
    let c = |v: T| UniPoly::constant(v);
    let [e1, e2, _] = td.e.clone();
    let [f1, f2, _] = td.ebar.clone();
    let two = T::from_i64(2);
    let pz = e1.clone() * e1.clone() - two.clone() * e2;
    let pzbar = f1.clone() * f1.clone() - two * f2;
    [
        [c(T::from_i64(3)), c(e1.clone()), c(f1.clone())],
        [c(e1), c(pz), UniPoly::x()],
        [c(f1), UniPoly::x(), c(pzbar)],
    ]
}

fn det3<T: Scalar>(m: &[[UniPoly<T>; 3]; 3]) -> UniPoly<T> {
    let minor = |r: usize, a: usize, b: usize| &(&m[r][a] * &m[r + 1][b]) - &(&m[r][b] * &m[r + 1][a]);
    let t0 = &m[0][0] * &minor(1, 1, 2);
    let t1 = &m[0][1] * &minor(1, 0, 2);
    let t2 = &m[0][2] * &minor(1, 0, 1);
    &(&t0 - &t1) + &t2
}

fn close<T: Scalar>(a: &T, b: &T, scale: f64) -> bool {
    (a.clone() - b.clone()).is_negligible(FLOAT_CHECK_TOL, scale)
}

impl<T: Scalar> TriangleData<T> {
    /// Checks `(det ω)² = -16 M²` and `M = (i/4) det ω` on construction.
    pub fn new(config: VertexConfig<T>) -> Result<Self> {
        if config.n() != 3 {
            return Err(Error::DimensionMismatch(format!("triangle data needs 3 vertices, got {}", config.n())));
        }
        let e = three(config.z());
        let ebar = three(config.zbar());
        let s_true = config
            .z()
            .iter()
            .zip(config.zbar())
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
        let m = nu(&config, 2, false);
        let det = omega(&config).det()?;
        let scale = (1.0 + config.radius()).powi(6);
        let sixteen = T::from_i64(16);
        if !close(&(det.clone() * det.clone()), &-(sixteen * m.clone() * m.clone()), scale)
            || !close(&(T::i() / T::from_i64(4) * det), &m, scale)
        {
            return Err(Error::ConsistencyFailure("det ω does not match ν_2".into()));
        }
        Ok(Self { config, e, ebar, s_true, m })
    }

    /// The same data with `M` replaced by `m`; the Bryant check is not repeated.
    pub fn with_m(&self, m: T) -> Self {
        Self { m, ..self.clone() }
    }
}

/// `R(S)` from the expanded formula, with `M` given explicitly.
fn r_expanded<T: Scalar>(td: &TriangleData<T>, m: &T) -> UniPoly<T> {
    let [e1, e2, _] = td.e.clone();
    let [f1, f2, _] = td.ebar.clone();
    let k = |v: i64| T::from_i64(v);
    let constant = k(16) * m.clone() * m.clone() + e1.clone() * e1.clone() * f1.clone() * f1.clone()
        - k(4) * e1.clone() * e1.clone() * f2.clone()
        - k(4) * f1.clone() * f1.clone() * e2.clone()
        + k(12) * e2 * f2;
    UniPoly::new(vec![constant, k(2) * e1 * f1, k(-3)])
}

/// `R(S) = 16 M² + det Ω(S)`, compared with the determinant taken with symbolic `S`.
pub fn r_poly<T: Scalar>(td: &TriangleData<T>) -> Result<UniPoly<T>> {
    let r = r_expanded(td, &td.m);
    let direct = &det3(&omega_gram(td)) + &UniPoly::constant(T::from_i64(16) * td.m.clone() * td.m.clone());
    let scale = (1.0 + td.config.radius()).powi(6);
    let agree = (0..3).all(|k| close(&r.coeff(k), &direct.coeff(k), scale));
    if !agree || direct.degree().unwrap_or(0) > 2 {
        return Err(Error::ConsistencyFailure("expanded R differs from 16M² + det Ω(S)".into()));
    }
    Ok(r)
}

/// `Σ_j z_j zbar_σ(j)` for every `σ ∈ S_3`, in lexicographic order of `σ`.
pub fn permutation_sums<T: Scalar>(config: &VertexConfig<T>) -> Vec<T> {
    Perm::all(3)
        .iter()
        .map(|s| (0..3).fold(T::zero(), |acc, j| acc + config.z()[j].clone() * config.zbar()[s.apply(j)].clone()))
        .collect()
}

/// `Q(S) = ∏_σ (S - Σ_j z_j zbar_σ(j))`.
pub fn q_poly<T: Scalar>(td: &TriangleData<T>) -> UniPoly<T> {
    UniPoly::from_roots(&permutation_sums(&td.config))
}

/// `L = Res_S(R, Q)`; zero on every genuine triangle datum.
pub fn sole_relation<T: Scalar>(td: &TriangleData<T>) -> Result<T> {
    sylvester_resultant(&r_poly(td)?, &q_poly(td))
}

/// `L` as a polynomial in `M`, with its root comparison against the orbit of `ν_2`.
#[derive(Clone, Debug, PartialEq)]
pub struct LInM<T> {
    pub poly: UniPoly<T>,
    pub orbit_values: Vec<T>,
    /// Matching distance between the float roots and the orbit values, relative to the largest value.
    pub root_distance: f64,
}

fn power_of_two<T: Scalar>(exp: i32) -> T {
    let p = T::from_i64(1i64 << exp.unsigned_abs().min(60));
    if exp >= 0 {
        p
    } else {
        T::one() / p
    }
}

/// `L` with `M` replaced by `m`: the Sylvester determinant in exact mode, and
/// `∏_σ R(Σ_j z_j zbar_σ(j))` in float mode, which equals it because `Q` is monic.
pub fn l_value<T: Scalar>(td: &TriangleData<T>, m: &T) -> Result<T> {
    let r = r_expanded(td, m);
    if T::EXACT {
        sylvester_resultant(&r, &q_poly(td))
    } else {
        Ok(permutation_sums(&td.config).iter().fold(T::one(), |acc, s| acc * r.eval(s)))
    }
}

fn scale_step<T: Scalar>(top: f64) -> T {
    power_of_two(top.max(f64::MIN_POSITIVE).log2().round() as i32 - 2)
}

/// `L` as a polynomial in `M`, fitted at nodes scaled to `|M|`; must have degree 12.
pub fn l_poly<T: Scalar>(td: &TriangleData<T>) -> Result<UniPoly<T>> {
    let r0 = r_expanded(td, &T::zero());
    let top = permutation_sums(&td.config)
        .iter()
        .map(|s| (r0.eval(s).magnitude() / 16.0).sqrt())
        .fold(0.0, f64::max);
    let step: T = scale_step(top);
    let poly = if T::EXACT {
        let nodes: Vec<T> = (-6..=6).map(|k| T::from_i64(k) * step.clone()).collect();
        let values = nodes.iter().map(|t| l_value(td, t)).collect::<Result<Vec<T>>>()?;
        UniPoly::interpolate(&nodes, &values)
    } else {
        circle_fit(td, &(step.clone() * T::from_i64(4)))?
    };
    let scaled = rescale(&poly, &step);
    let coeff_scale = scaled.iter().map(Scalar::magnitude).fold(0.0, f64::max);
    if poly.degree() != Some(12) || scaled[12].is_negligible(FLOAT_CHECK_TOL, coeff_scale) {
        return Err(Error::DegreeMismatch { expected: 12, found: poly.degree() });
    }
    Ok(poly)
}

const CIRCLE_NODES: usize = 16;

fn from_f64<T: Scalar>(x: f64) -> T {
    T::from_rational(&rational_from_f64(x).expect("finite"))
}

/// Float coefficients of `L` from its values at 16 points on the circle `|M| = r`,
/// by a discrete Fourier transform; degrees 13 to 15 come out as noise-level values.
fn circle_fit<T: Scalar>(td: &TriangleData<T>, r: &T) -> Result<UniPoly<T>> {
    let unit = |j: usize| {
        let a = std::f64::consts::TAU * j as f64 / CIRCLE_NODES as f64;
        T::from_parts(from_f64::<T>(a.cos()).re_part(), from_f64::<T>(a.sin()).re_part())
    };
    let values = (0..CIRCLE_NODES)
        .map(|j| l_value(td, &(r.clone() * unit(j))))
        .collect::<Result<Vec<T>>>()?;
    let n = T::from_i64(CIRCLE_NODES as i64);
    let mut coeffs = Vec::with_capacity(CIRCLE_NODES);
    let mut rk = T::one();
    for k in 0..CIRCLE_NODES {
        let sum = values
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (j, v)| acc + v.clone() * unit(j * k % CIRCLE_NODES).conj());
        coeffs.push(sum / (n.clone() * rk.clone()));
        rk = rk * r.clone();
    }
    let scale = coeffs.iter().zip(0..).map(|(c, k)| c.magnitude() * r.magnitude().powi(k)).fold(0.0, f64::max);
    for (k, c) in coeffs.iter_mut().enumerate().skip(13) {
        if !c.is_negligible(FLOAT_CHECK_TOL, scale / r.magnitude().powi(k as i32)) {
            return Err(Error::DegreeMismatch { expected: 12, found: Some(CIRCLE_NODES - 1) });
        }
        *c = T::zero();
    }
    Ok(UniPoly::new(coeffs))
}

/// Coefficients of `p(step·x)`.
fn rescale<T: Scalar>(p: &UniPoly<T>, step: &T) -> Vec<T> {
    p.coeffs().iter().enumerate().map(|(k, c)| c.clone() * step.pow_u(k)).collect()
}

/// Roots of a polynomial in `M²`, found in the variable `M²/step²` and mapped back.
fn even_roots<T: Scalar>(p: &UniPoly<T>, step: &T) -> Result<Vec<ApproxComplex>> {
    let scaled = rescale(p, step);
    let half = UniPoly::new(scaled.iter().step_by(2).map(Scalar::to_approx).collect());
    let s = step.to_approx();
    Ok(poly_roots(&half)?
        .into_iter()
        .flat_map(|u| {
            let r = u.sqrt() * s;
            [r, -r]
        })
        .collect())
}

/// Interpolates `L` in `M` and matches its roots with the 12 orbit values of `ν_2`.
pub fn l_in_m<T: Scalar>(td: &TriangleData<T>) -> Result<LInM<T>> {
    let orbit_values = minimal_poly(&td.config)?.roots;
    let approx: Vec<ApproxComplex> = orbit_values.iter().map(Scalar::to_approx).collect();
    let top = approx.iter().map(|v| v.norm()).fold(0.0, f64::max);
    for (i, a) in approx.iter().enumerate() {
        if approx[i + 1..].iter().any(|b| (a - b).norm() <= COLLISION_TOL * top.max(f64::MIN_POSITIVE)) {
            return Err(Error::NonGenericConfig);
        }
    }
    let poly = l_poly(td)?;
    let step: T = scale_step(top);
    let scaled = rescale(&poly, &step);
    let odd_scale = scaled.iter().map(Scalar::magnitude).fold(0.0, f64::max);
    if !scaled.iter().skip(1).step_by(2).all(|c| c.is_negligible(FLOAT_CHECK_TOL, odd_scale)) {
        return Err(Error::ConsistencyFailure("L has odd powers of M".into()));
    }
    if T::EXACT {
        if let Some(v) = orbit_values.iter().find(|v| !poly.eval(v).is_zero()) {
            return Err(Error::RootMismatch { distance: v.magnitude() });
        }
    }
    let roots = even_roots(&poly, &step)?;
    let root_distance = multiset_distance(&roots, &approx) / top.max(1.0);
    if !(root_distance <= ROOT_TOL) {
        return Err(Error::RootMismatch { distance: root_distance });
    }
    Ok(LInM { poly, orbit_values, root_distance })
}

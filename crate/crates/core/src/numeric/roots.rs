//! Simultaneous root finding (Aberth–Ehrlich) with Newton polish.

use num_complex::Complex;
use num_traits::Zero;

use super::poly::UniPoly;
use super::scalar::ApproxComplex;
use crate::error::{Error, Result};

/// Settings for [`poly_roots_with`].
#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    pub max_sweeps: usize,
    pub polish_steps: usize,
    /// Bound on `|p(r)/lc(p)| / (1+|r|)^deg` accepted for every root.
    pub residual_tol: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self { max_sweeps: 200, polish_steps: 5, residual_tol: 1e-10 }
    }
}

/// All roots of `p` with multiplicity, using [`RootOptions::default`].
pub fn poly_roots(p: &UniPoly<ApproxComplex>) -> Result<Vec<ApproxComplex>> {
    poly_roots_with(p, RootOptions::default())
}

fn eval_with_derivative(c: &[ApproxComplex], x: ApproxComplex) -> (ApproxComplex, ApproxComplex) {
    let mut v = ApproxComplex::zero();
    let mut d = ApproxComplex::zero();
    for a in c.iter().rev() {
        d = d * x + v;
        v = v * x + a;
    }
    (v, d)
}

fn residual(c: &[ApproxComplex], x: ApproxComplex) -> f64 {
    let deg = (c.len() - 1) as i32;
    eval_with_derivative(c, x).0.norm() / (1.0 + x.norm()).powi(deg)
}

pub fn poly_roots_with(p: &UniPoly<ApproxComplex>, opts: RootOptions) -> Result<Vec<ApproxComplex>> {
    if matches!(p.degree(), None | Some(0)) {
        return Err(Error::DegenerateInput("root finding needs degree >= 1"));
    }
    if p.coeffs().iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::DegenerateInput("non-finite coefficient"));
    }
    let monic = p.monic();
    let coeffs = monic.coeffs();

    // exact zero roots are split off first
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let mut roots = vec![ApproxComplex::zero(); zeros];
    let reduced: Vec<ApproxComplex> = coeffs[zeros..].to_vec();
    let m = reduced.len() - 1;
    if m == 0 {
        return Ok(roots);
    }

    // Fujiwara bound for the initial circle
    let radius = (1..=m)
        .map(|k| reduced[m - k].norm().powf(1.0 / k as f64))
        .fold(0.0, f64::max)
        .max(1e-3)
        * 2.0;
    let center = -reduced[m - 1] / m as f64;
    let mut z: Vec<ApproxComplex> = (0..m)
        .map(|k| {
            let theta = 0.4 + std::f64::consts::TAU * k as f64 / m as f64;
            center + Complex::from_polar(radius * 0.5, theta)
        })
        .collect();

    for _ in 0..opts.max_sweeps {
        let mut max_step: f64 = 0.0;
        for k in 0..m {
            let (v, d) = eval_with_derivative(&reduced, z[k]);
            if v.is_zero() {
                continue;
            }
            let ratio = v / d;
            let repulsion: ApproxComplex = (0..m)
                .filter(|&j| j != k)
                .map(|j| {
                    let diff = z[k] - z[j];
                    if diff.is_zero() {
                        ApproxComplex::zero()
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let denom = ApproxComplex::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.is_zero() || !d.re.is_finite() || d.is_zero() {
                // nudge off a critical point
                Complex::from_polar(1e-8 * (1.0 + z[k].norm()), 0.7 + k as f64)
            } else {
                ratio / denom
            };
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }

    for r in z.iter_mut() {
        for _ in 0..opts.polish_steps {
            let (v, d) = eval_with_derivative(&reduced, *r);
            if d.is_zero() || v.is_zero() {
                break;
            }
            let cand = *r - v / d;
            if residual(&reduced, cand) <= residual(&reduced, *r) {
                *r = cand;
            } else {
                break;
            }
        }
    }

    let worst = z.iter().map(|&r| residual(&reduced, r)).fold(0.0, f64::max);
    if !(worst <= opts.residual_tol) {
        return Err(Error::NoConvergence { sweeps: opts.max_sweeps, residual: worst });
    }
    roots.extend(z);
    Ok(roots)
}

/// Greedy matching distance between two root multisets: the largest distance
/// between paired roots when each root of `a` is paired with the nearest
/// unused root of `b`.
pub fn multiset_distance(a: &[ApproxComplex], b: &[ApproxComplex]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .fold((usize::MAX, f64::INFINITY), |acc, v| if v.1 < acc.1 { v } else { acc });
        if j == usize::MAX {
            return f64::INFINITY;
        }
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

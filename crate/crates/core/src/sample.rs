//! Seeded random inputs: rationals, configurations and simple polygons.

use num_bigint::BigInt;
use rand::Rng;

use crate::error::Result;
use crate::numeric::{ExactComplex, Rational};
use crate::polygon::{Mode, VertexConfig};

/// Numerators are drawn from `-NUM_RANGE..=NUM_RANGE`.
pub const NUM_RANGE: i64 = 30;
/// Denominators are drawn from `1..=DEN_RANGE`.
pub const DEN_RANGE: i64 = 12;

pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(-NUM_RANGE..=NUM_RANGE)),
        BigInt::from(rng.gen_range(1..=DEN_RANGE)),
    )
}

pub fn complex<R: Rng>(rng: &mut R) -> ExactComplex {
    ExactComplex::new(rational(rng), rational(rng))
}

/// Gaussian integer with parts in `-bound..=bound`.
pub fn gaussian<R: Rng>(rng: &mut R, bound: i64) -> ExactComplex {
    let r = |rng: &mut R| Rational::from_integer(BigInt::from(rng.gen_range(-bound..=bound)));
    ExactComplex::new(r(rng), r(rng))
}

/// Random rational configuration; complexified mode draws `z` and `zbar` independently.
pub fn config<R: Rng>(n: usize, mode: Mode, rng: &mut R) -> VertexConfig<ExactComplex> {
    let z: Vec<ExactComplex> = (0..n).map(|_| complex(rng)).collect();
    let built = match mode {
        Mode::Real => VertexConfig::real(z),
        Mode::Complexified => {
            let zbar = (0..n).map(|_| complex(rng)).collect();
            VertexConfig::complexified(z, zbar)
        }
    };
    built.expect("n >= 3 and matching lengths")
}

fn orient(a: &(i64, i64), b: &(i64, i64), c: &(i64, i64)) -> i64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn segments_touch(p: &(i64, i64), q: &(i64, i64), r: &(i64, i64), s: &(i64, i64)) -> bool {
    let (d1, d2) = (orient(p, q, r).signum(), orient(p, q, s).signum());
    let (d3, d4) = (orient(r, s, p).signum(), orient(r, s, q).signum());
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    let within = |a: &(i64, i64), b: &(i64, i64), c: &(i64, i64)| {
        c.0 >= a.0.min(b.0) && c.0 <= a.0.max(b.0) && c.1 >= a.1.min(b.1) && c.1 <= a.1.max(b.1)
    };
    (d1 == 0 && within(p, q, r))
        || (d2 == 0 && within(p, q, s))
        || (d3 == 0 && within(r, s, p))
        || (d4 == 0 && within(r, s, q))
}

/// `true` if the closed polyline through integer points is simple and has no three collinear consecutive vertices.
pub fn is_simple(pts: &[(i64, i64)]) -> bool {
    let n = pts.len();
    for i in 0..n {
        if orient(&pts[i], &pts[(i + 1) % n], &pts[(i + 2) % n]) == 0 {
            return false;
        }
        for j in i + 1..n {
            // adjacent edges share exactly one vertex
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            if segments_touch(&pts[i], &pts[(i + 1) % n], &pts[j], &pts[(j + 1) % n]) {
                return false;
            }
        }
    }
    true
}

/// Random simple counterclockwise polygon with integer-over-`scale` vertices.
///
/// Vertices are drawn at increasing angles around the origin with random
/// radii, snapped to the integer grid, and redrawn until the polygon is simple.
pub fn simple_polygon<R: Rng>(n: usize, rng: &mut R) -> Result<VertexConfig<ExactComplex>> {
    const GRID: f64 = 40.0;
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<(i64, i64)> = angles
            .iter()
            .map(|a| {
                let r = rng.gen_range(0.3..1.0) * GRID;
                ((r * a.cos()).round() as i64, (r * a.sin()).round() as i64)
            })
            .collect();
        let twice_area: i64 = (0..n).map(|j| {
            let (p, q) = (pts[j], pts[(j + 1) % n]);
            p.0 * q.1 - q.0 * p.1
        })
        .sum();
        if twice_area <= 0 || !is_simple(&pts) {
            continue;
        }
        let scale = BigInt::from(rng.gen_range(1..=8));
        let z = pts
            .iter()
            .map(|&(x, y)| {
                ExactComplex::new(
                    Rational::new(BigInt::from(x), scale.clone()),
                    Rational::new(BigInt::from(y), scale.clone()),
                )
            })
            .collect();
        return VertexConfig::real(z);
    }
}

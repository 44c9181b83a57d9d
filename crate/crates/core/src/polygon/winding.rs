use super::config::VertexConfig;
use crate::error::{Error, Result};
use crate::numeric::{RealScalar, Scalar};

/// Boundary distance treated as "on the curve" in float mode.
pub const BOUNDARY_TOL: f64 = 1e-12;

fn cross<R: RealScalar>(a: &(R, R), b: &(R, R), q: &(R, R)) -> R {
    (b.0.clone() - a.0.clone()) * (q.1.clone() - a.1.clone())
        - (q.0.clone() - a.0.clone()) * (b.1.clone() - a.1.clone())
}

fn on_segment<T: Scalar>(a: &(T::Real, T::Real), b: &(T::Real, T::Real), q: &(T::Real, T::Real)) -> bool {
    if T::EXACT {
        let zero = T::Real::from_i64(0);
        if cross(a, b, q) != zero {
            return false;
        }
        let dx = b.0.clone() - a.0.clone();
        let dy = b.1.clone() - a.1.clone();
        let t = (q.0.clone() - a.0.clone()) * dx.clone() + (q.1.clone() - a.1.clone()) * dy.clone();
        let len2 = dx.clone() * dx + dy.clone() * dy;
        t >= zero && t <= len2
    } else {
        let f = |v: &T::Real| v.to_f64();
        let (ax, ay, bx, by, qx, qy) = (f(&a.0), f(&a.1), f(&b.0), f(&b.1), f(&q.0), f(&q.1));
        let (dx, dy) = (bx - ax, by - ay);
        let len2 = dx * dx + dy * dy;
        let t = if len2 > 0.0 {
            (((qx - ax) * dx + (qy - ay) * dy) / len2).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let (px, py) = (ax + t * dx - qx, ay + t * dy - qy);
        (px * px + py * py).sqrt() <= BOUNDARY_TOL
    }
}

/// Winding number of the closed boundary curve around `q = (x, y)`.
///
/// Signed crossings of the horizontal ray to the right of `q`; for real
/// vertices this is the density of the polygonal measure at `q`.
pub fn winding_number<T: Scalar>(config: &VertexConfig<T>, q: &(T::Real, T::Real)) -> Result<i64> {
    if !config.is_real() {
        return Err(Error::ModeError);
    }
    let pts: Vec<(T::Real, T::Real)> = config.z().iter().map(|z| (z.re_part(), z.im_part())).collect();
    let n = pts.len();
    let zero = T::Real::from_i64(0);
    let mut wn = 0i64;
    for j in 0..n {
        let (a, b) = (&pts[j], &pts[(j + 1) % n]);
        if on_segment::<T>(a, b, q) {
            return Err(Error::OnBoundary);
        }
        if a.1 <= q.1 {
            if b.1 > q.1 && cross(a, b, q) > zero {
                wn += 1;
            }
        } else if b.1 <= q.1 && cross(a, b, q) < zero {
            wn -= 1;
        }
    }
    Ok(wn)
}

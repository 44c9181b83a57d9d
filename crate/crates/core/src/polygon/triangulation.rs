//! Triangulations of the reference convex n-gon.
//!
//! Vertices of the reference polygon are labelled `0..n` counterclockwise.
//! A triangulation is stored as its set of diagonals; validity is purely
//! combinatorial (non-crossing diagonals of a convex polygon).

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    n: usize,
    diagonals: Vec<(usize, usize)>,
    triangles: Vec<[usize; 3]>,
}

fn crosses((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

impl Triangulation {
    pub fn new(n: usize, diagonals: Vec<(usize, usize)>) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidTriangulation(format!("n = {n} is below 3")));
        }
        let mut diags: Vec<(usize, usize)> = diagonals
            .into_iter()
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        diags.sort_unstable();
        diags.dedup();
        if diags.len() != n - 3 {
            return Err(Error::InvalidTriangulation(format!(
                "expected {} distinct diagonals, got {}",
                n - 3,
                diags.len()
            )));
        }
        for &(a, b) in &diags {
            if b >= n || b - a < 2 || (a == 0 && b == n - 1) {
                return Err(Error::InvalidTriangulation(format!("({a},{b}) is not a diagonal")));
            }
        }
        for (i, &d1) in diags.iter().enumerate() {
            for &d2 in &diags[i + 1..] {
                if crosses(d1, d2) {
                    return Err(Error::InvalidTriangulation(format!(
                        "diagonals {d1:?} and {d2:?} cross"
                    )));
                }
            }
        }
        let is_side = |a: usize, b: usize| b == a + 1 || (a == 0 && b == n - 1) || diags.contains(&(a, b));
        let mut triangles = Vec::with_capacity(n - 2);
        for i in 0..n {
            for j in i + 1..n {
                if !is_side(i, j) {
                    continue;
                }
                for k in j + 1..n {
                    if is_side(j, k) && is_side(i, k) {
                        triangles.push([i, j, k]);
                    }
                }
            }
        }
        debug_assert_eq!(triangles.len(), n - 2);
        Ok(Self { n, diagonals: diags, triangles })
    }

    /// The fan from vertex 0: diagonals `(0,2), (0,3), ..., (0,n-2)`.
    pub fn fan(n: usize) -> Result<Self> {
        Self::new(n, (2..n.saturating_sub(1)).map(|k| (0, k)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &[(usize, usize)] {
        &self.diagonals
    }

    /// Triangles as increasing index triples (counterclockwise in the reference polygon).
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }
}

fn diagonal_sets(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    // triangulations of the sub-polygon lo, lo+1, ..., hi
    if hi - lo < 2 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for apex in lo + 1..hi {
        let left = diagonal_sets(lo, apex);
        let right = diagonal_sets(apex, hi);
        for l in &left {
            for r in &right {
                let mut d = l.clone();
                d.extend_from_slice(r);
                if apex - lo >= 2 {
                    d.push((lo, apex));
                }
                if hi - apex >= 2 {
                    d.push((apex, hi));
                }
                out.push(d);
            }
        }
    }
    out
}

/// Every triangulation of the convex n-gon (Catalan number `C_{n-2}` of them).
pub fn all_triangulations(n: usize) -> Vec<Triangulation> {
    if n < 3 {
        return Vec::new();
    }
    diagonal_sets(0, n - 1)
        .into_iter()
        .map(|d| Triangulation::new(n, d).expect("generated triangulation is valid"))
        .collect()
}

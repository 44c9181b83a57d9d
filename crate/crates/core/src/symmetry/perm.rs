use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{DenseMatrix, Scalar};

/// A permutation of `{1..n}`, stored 0-based in one-line notation.
///
/// Composition is right to left: `a.compose(&b)` maps `x` to `a(b(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

/// Advances `p` to the next permutation in lexicographic order; `false` after the last.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// From 0-based images; rejects non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidCycle(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Self { images })
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(one_based: &[usize]) -> Result<Self> {
        if one_based.contains(&0) {
            return Err(Error::InvalidCycle("one-line notation is 1-based".into()));
        }
        Self::from_images(one_based.iter().map(|x| x - 1).collect())
    }

    /// Parses products of cycles such as `(1,2,3)(4,5)`, `(1 3)` or `()`.
    /// Cycles without separators (`(123)`) are read digit by digit when `n < 10`.
    /// A product of cycles composes right to left.
    pub fn from_cycles(text: &str, n: usize) -> Result<Self> {
        let bad = |why: &str| Error::InvalidCycle(format!("{text:?}: {why}"));
        let mut perm = Self::identity(n);
        let mut rest = text.trim();
        let mut cycles = Vec::new();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            cycles.push(&body[..close]);
            rest = body[close + 1..].trim_start();
        }
        for body in cycles.into_iter().rev() {
            let body = body.trim();
            let tokens: Vec<&str> = if body.is_empty() {
                Vec::new()
            } else if body.contains([',', ' ']) {
                body.split([',', ' ']).filter(|t| !t.is_empty()).collect()
            } else if n < 10 {
                body.split("").filter(|t| !t.is_empty()).collect()
            } else {
                vec![body]
            };
            let mut elems = Vec::with_capacity(tokens.len());
            for t in tokens {
                let v: usize = t.parse().map_err(|_| bad("non-numeric entry"))?;
                if v == 0 || v > n {
                    return Err(bad("entry out of range"));
                }
                if elems.contains(&(v - 1)) {
                    return Err(bad("repeated entry"));
                }
                elems.push(v - 1);
            }
            let mut cyc = Self::identity(n);
            for (k, &a) in elems.iter().enumerate() {
                cyc.images[a] = elems[(k + 1) % elems.len()];
            }
            perm = cyc.compose(&perm);
        }
        Ok(perm)
    }

    /// `(1, 2, ..., n)`, sending `j` to `j+1`.
    pub fn long_cycle(n: usize) -> Self {
        Self { images: (0..n).map(|j| (j + 1) % n).collect() }
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Self> {
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = vec![Self { images: cur.clone() }];
        while next_permutation(&mut cur) {
            out.push(Self { images: cur.clone() });
        }
        out
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "composing permutations of different degree");
        Self { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Self { images }
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(self.n()), |acc, _| self.compose(&acc))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Matrix with entry 1 at `(i, σ(i))`.
    pub fn perm_matrix<T: Scalar>(&self) -> DenseMatrix<T> {
        DenseMatrix::from_fn(self.n(), self.n(), |r, c| {
            if self.images[r] == c {
                T::one()
            } else {
                T::zero()
            }
        })
    }

    /// Disjoint cycles (1-based), fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.images[x];
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// An element `(σ, τ)` of `S_n × S_n`; `σ` relabels `z`, `τ` relabels `zbar`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermPair {
    pub sigma: Perm,
    pub tau: Perm,
}

impl PermPair {
    pub fn new(sigma: Perm, tau: Perm) -> Self {
        assert_eq!(sigma.n(), tau.n());
        Self { sigma, tau }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Perm::identity(n), Perm::identity(n))
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::new(self.sigma.compose(&other.sigma), self.tau.compose(&other.tau))
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.sigma.inverse(), self.tau.inverse())
    }
}

impl fmt::Display for PermPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.sigma, self.tau)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ExactComplex;

    #[test]
    fn long_cycle_notation() {
        let c = Perm::from_cycles("(1,2,3)", 3).unwrap();
        assert_eq!(c.one_line(), vec![2, 3, 1]);
        assert_eq!(c, Perm::long_cycle(3));
        assert!(c.compose(&c.inverse()).is_identity());
        assert_eq!(c.to_string(), "(1,2,3)");
        assert_eq!(Perm::from_cycles("(123)", 3).unwrap(), c);
        assert_eq!(Perm::from_cycles("(1 2 3)", 3).unwrap(), c);
    }

    #[test]
    fn products_compose_right_to_left() {
        // (12)(13): 1 -> 3 -> 3, 3 -> 1 -> 2, 2 -> 2 -> 1
        let p = Perm::from_cycles("(12)(13)", 3).unwrap();
        assert_eq!(p.one_line(), vec![3, 1, 2]);
        let a = Perm::from_cycles("(1,2)", 3).unwrap();
        let b = Perm::from_cycles("(1,3)", 3).unwrap();
        assert_eq!(a.compose(&b), p);
    }

    #[test]
    fn invalid_cycles() {
        for bad in ["(1,4)", "(1,1)", "(0,2)", "(1,2", "1,2", "(a,b)"] {
            assert!(matches!(Perm::from_cycles(bad, 3), Err(Error::InvalidCycle(_))), "{bad}");
        }
        assert!(Perm::from_cycles("()", 3).unwrap().is_identity());
        assert!(Perm::from_one_line(&[1, 1, 2]).is_err());
    }

    #[test]
    fn all_permutations_in_order() {
        let all = Perm::all(4);
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all[0].is_identity());
    }

    #[test]
    fn matrix_of_long_cycle() {
        let c = Perm::long_cycle(3);
        let m = c.perm_matrix::<ExactComplex>();
        let minus = c.inverse().perm_matrix::<ExactComplex>();
        let pattern: Vec<i64> = m
            .entries()
            .iter()
            .zip(minus.entries())
            .map(|(a, b)| if a == b { 0 } else if a.re > b.re { 1 } else { -1 })
            .collect();
        assert_eq!(pattern, vec![0, 1, -1, -1, 0, 1, 1, -1, 0]);
    }

    #[test]
    fn powers() {
        let c = Perm::long_cycle(5);
        assert!(c.pow(5).is_identity());
        assert_eq!(c.pow(2).one_line(), vec![3, 4, 5, 1, 2]);
    }
}

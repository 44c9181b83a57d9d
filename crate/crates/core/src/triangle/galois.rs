use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::relations::{even_indices, left_swap, quadratic, three_term, twelve_values};
use crate::numeric::{ExactComplex, Rational};
use crate::polygon::VertexConfig;
use crate::symmetry::Perm;

/// Number of random configurations each candidate is tested on.
pub const GALOIS_CONFIGS: usize = 5;
/// Numerators and denominators of the test configurations are bounded by this.
pub const GALOIS_HEIGHT: i64 = 100;
const DEFAULT_SEED: u64 = 0x6a3;

/// A signed relabeling of the `id` row: `M_{id,τ} ↦ ε[τ] M_{id,γ(τ)}`.
///
/// Indices refer to `Perm::all(3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedSymmetry {
    pub gamma: [u8; 6],
    pub eps: [i8; 6],
}

impl SignedSymmetry {
    pub fn identity() -> Self {
        Self { gamma: [0, 1, 2, 3, 4, 5], eps: [1; 6] }
    }

    /// Substitution `self` after `other`.
    pub fn then(&self, other: &Self) -> Self {
        Self {
            gamma: std::array::from_fn(|k| self.gamma[other.gamma[k] as usize]),
            eps: std::array::from_fn(|k| other.eps[k] * self.eps[other.gamma[k] as usize]),
        }
    }

    /// Maps the even permutations onto themselves.
    pub fn preserves_blocks(&self) -> bool {
        let even = even_indices();
        even.iter().all(|k| even.contains(&(self.gamma[*k] as usize)))
    }

    /// Image of the twelve values, the `(12)` row forced by the two-term relations.
    pub fn apply<T: Clone + std::ops::Neg<Output = T>>(&self, x: &[T]) -> Vec<T> {
        let top: Vec<T> = (0..6)
            .map(|k| {
                let v = x[self.gamma[k] as usize].clone();
                if self.eps[k] < 0 {
                    -v
                } else {
                    v
                }
            })
            .collect();
        let swap = left_swap();
        let bottom: Vec<T> = (0..6).map(|k| -top[swap[k]].clone()).collect();
        [top, bottom].concat()
    }
}

impl fmt::Display for SignedSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let all = Perm::all(3);
        let parts: Vec<String> = (0..6)
            .map(|k| {
                let sign = if self.eps[k] < 0 { "-" } else { "" };
                format!("{} -> {sign}{}", all[k], all[self.gamma[k] as usize])
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// The group of signed symmetries preserving every relation among the twelve roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Galois3 {
    pub order: usize,
    pub plus_order: usize,
    pub generators: Vec<SignedSymmetry>,
    pub elements: Vec<SignedSymmetry>,
}

fn candidates() -> Vec<SignedSymmetry> {
    let mut gamma: Vec<usize> = (0..6).collect();
    let mut out = Vec::with_capacity(720 * 64);
    loop {
        for bits in 0..64u8 {
            out.push(SignedSymmetry {
                gamma: std::array::from_fn(|k| gamma[k] as u8),
                eps: std::array::from_fn(|k| if bits >> k & 1 == 1 { -1 } else { 1 }),
            });
        }
        if !crate::symmetry::perm::next_permutation(&mut gamma) {
            break;
        }
    }
    out
}

type Gaussian = num_complex::Complex<BigInt>;

fn height_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(-GALOIS_HEIGHT..=GALOIS_HEIGHT)),
        BigInt::from(rng.gen_range(1..=GALOIS_HEIGHT)),
    )
}

/// Twelve values with denominators cleared; the relations are homogeneous so this loses nothing.
fn integer_values<R: Rng>(rng: &mut R) -> Vec<Gaussian> {
    let mut draw = || (0..3).map(|_| ExactComplex::new(height_rational(rng), height_rational(rng))).collect::<Vec<_>>();
    let (z, zbar) = (draw(), draw());
    let config = VertexConfig::complexified(z, zbar).expect("three vertices");
    let x = twelve_values(&config).expect("n = 3");
    let lcm = x.iter().fold(BigInt::from(1), |acc, v| {
        num_integer::Integer::lcm(&num_integer::Integer::lcm(&acc, v.re.denom()), v.im.denom())
    });
    x.iter()
        .map(|v| {
            let s = |r: &Rational| (r * Rational::from_integer(lcm.clone())).to_integer();
            Gaussian::new(s(&v.re), s(&v.im))
        })
        .collect()
}

fn preserves(g: &SignedSymmetry, points: &[Vec<Gaussian>]) -> bool {
    points.iter().all(|x| {
        let y = g.apply(x);
        three_term(&y, 0) == Gaussian::default()
            && three_term(&y, 1) == Gaussian::default()
            && quadratic(&y) == Gaussian::default()
    })
}

fn closure(gens: &[SignedSymmetry]) -> BTreeSet<SignedSymmetry> {
    let mut seen = BTreeSet::from([SignedSymmetry::identity()]);
    let mut queue = VecDeque::from([SignedSymmetry::identity()]);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let gh = g.then(h);
            if seen.insert(gh) {
                queue.push_back(gh);
            }
        }
    }
    seen
}

/// Enumerates all 46080 signed relabelings and keeps those preserving the relations at
/// [`GALOIS_CONFIGS`] random configurations drawn from `seed`.
pub fn galois3_seeded(seed: u64) -> Galois3 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vec<Gaussian>> = (0..GALOIS_CONFIGS).map(|_| integer_values(&mut rng)).collect();
    let elements: Vec<SignedSymmetry> = candidates().into_par_iter().filter(|g| preserves(g, &points)).collect();
    let plus_order = elements.iter().filter(|g| g.preserves_blocks()).count();
    let mut generators = Vec::new();
    let mut span = closure(&generators);
    for g in &elements {
        if !span.contains(g) {
            generators.push(*g);
            span = closure(&generators);
        }
    }
    Galois3 { order: elements.len(), plus_order, generators, elements }
}

pub fn galois3() -> Galois3 {
    galois3_seeded(DEFAULT_SEED)
}

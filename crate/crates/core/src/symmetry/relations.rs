use rand::seq::SliceRandom;
use rand::Rng;

use super::action::{action_matrix, eval_pair, form_scalar, orbit_data, OrbitData};
use super::perm::{Perm, PermPair};
use crate::numeric::{DenseMatrix, ExactComplex, RowBasis, Scalar};
use crate::polygon::{Mode, VertexConfig};
use crate::sample;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn vectorize(m: &DenseMatrix<i8>) -> Vec<ExactComplex> {
    m.entries().iter().map(|&x| ExactComplex::from_i64(x as i64)).collect()
}

/// Dimension of the span of all action matrices.
pub fn span_rank(orbit: &OrbitData) -> usize {
    let n = orbit.n;
    let mut basis = RowBasis::<ExactComplex>::new(n * n);
    for pair in &orbit.reps {
        basis.insert(vectorize(&action_matrix(pair)));
    }
    basis.rank()
}

/// `(n-1)²`, the dimension of the matrices with zero row and column sums.
pub fn expected_span_rank(n: usize) -> usize {
    (n - 1) * (n - 1)
}

/// Matrix of `φ_ij = (z_i - z_n)(zbar_j - zbar_n)`; `i, j` are 1-based and at most `n-1`.
pub fn phi_basis(i: usize, j: usize, n: usize) -> DenseMatrix<i8> {
    assert!((1..n).contains(&i) && (1..n).contains(&j));
    let mut m = DenseMatrix::from_fn(n, n, |_, _| 0i8);
    let last = n - 1;
    m.set(i - 1, j - 1, 1);
    m.set(i - 1, last, -1);
    m.set(last, j - 1, -1);
    let corner = *m.get(last, last) + 1;
    m.set(last, last, corner);
    m
}

/// `(z_i - z_n)(zbar_j - zbar_n)`.
pub fn phi_value<T: Scalar>(i: usize, j: usize, config: &VertexConfig<T>) -> T {
    let n = config.n();
    let (z, zbar) = (config.z(), config.zbar());
    (z[i - 1].clone() - z[n - 1].clone()) * (zbar[j - 1].clone() - zbar[n - 1].clone())
}

fn cycle(text: &str, n: usize) -> Perm {
    Perm::from_cycles(text, n).expect("generated cycle notation")
}

/// The four signed pairs whose half-sum is `ρ_ij`:
/// `x[(1i)(1n), (1j)(2,n-1)(2n)] - x[(1i), (1j)(2,n-1)(2n)] + x[(1i)(1n), (1j)(2n)] - x[(1i), (1j)(2n)]`.
pub fn rho_terms(i: usize, j: usize, n: usize) -> [(i64, PermPair); 4] {
    assert!(n >= 4 && (1..n).contains(&i) && (1..n).contains(&j));
    let tr = |a: usize, b: usize| if a == b { "()".to_string() } else { format!("({a},{b})") };
    let s1 = cycle(&format!("{}{}", tr(1, i), tr(1, n)), n);
    let s2 = cycle(&tr(1, i), n);
    let t1 = cycle(&format!("{}{}{}", tr(1, j), tr(2, n - 1), tr(2, n)), n);
    let t2 = cycle(&format!("{}{}", tr(1, j), tr(2, n)), n);
    [
        (1, PermPair::new(s1.clone(), t1.clone())),
        (-1, PermPair::new(s2.clone(), t1)),
        (1, PermPair::new(s1, t2.clone())),
        (-1, PermPair::new(s2, t2)),
    ]
}

/// Matrix of `ρ_ij` (half the signed sum of the four action matrices), as `2ρ` to stay integral.
pub fn rho_matrix_doubled(i: usize, j: usize, n: usize) -> DenseMatrix<i8> {
    let terms = rho_terms(i, j, n);
    DenseMatrix::from_fn(n, n, |r, c| {
        terms.iter().map(|(s, p)| *s as i8 * *action_matrix(p).get(r, c)).sum()
    })
}

/// `Θ(ρ_ij)` evaluated at a configuration through the action forms.
pub fn rho_value<T: Scalar>(i: usize, j: usize, config: &VertexConfig<T>) -> T {
    let sum = rho_terms(i, j, config.n())
        .iter()
        .fold(T::zero(), |acc, (s, p)| acc + T::from_i64(*s) * eval_pair(p, config));
    sum / T::from_i64(2)
}

/// `ρ_ij` matches `φ_ij` as a matrix, and at `config` its value is `(i/4)·φ_ij`.
pub fn rho_check<T: Scalar>(i: usize, j: usize, config: &VertexConfig<T>) -> bool {
    let n = config.n();
    let doubled = rho_matrix_doubled(i, j, n);
    let phi = phi_basis(i, j, n);
    let matrix_ok = doubled.entries().iter().zip(phi.entries()).all(|(a, b)| *a == 2 * *b);
    let value = rho_value(i, j, config);
    let expected = form_scalar::<T>() * phi_value(i, j, config);
    let scale = expected.magnitude().max(1.0);
    matrix_ok && (value - expected).is_negligible(crate::moments::FLOAT_CHECK_TOL, scale)
}

/// Checks `φ_{i1 j1} φ_{i2 j2} = φ_{i1 j2} φ_{i2 j1}` for all index quadruples,
/// once with `φ` evaluated directly and once through `ρ`. Returns the number of failures.
pub fn segre_failures<T: Scalar>(config: &VertexConfig<T>) -> usize {
    let m = config.n() - 1;
    let direct: Vec<Vec<T>> =
        (1..=m).map(|i| (1..=m).map(|j| phi_value(i, j, config)).collect()).collect();
    let via_rho: Option<Vec<Vec<T>>> = (config.n() >= 4)
        .then(|| (1..=m).map(|i| (1..=m).map(|j| rho_value(i, j, config)).collect()).collect());
    let mut failures = 0;
    for table in std::iter::once(&direct).chain(via_rho.as_ref()) {
        let scale = table.iter().flatten().map(Scalar::magnitude).fold(1.0, f64::max).powi(2);
        for i1 in 0..m {
            for j1 in 0..m {
                for i2 in 0..m {
                    for j2 in 0..m {
                        let q = table[i1][j1].clone() * table[i2][j2].clone()
                            - table[i1][j2].clone() * table[i2][j1].clone();
                        if !q.is_negligible(crate::moments::FLOAT_CHECK_TOL, scale) {
                            failures += 1;
                        }
                    }
                }
            }
        }
    }
    failures
}

/// Outcome of the linear-relation analysis.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearRelationReport {
    pub n: usize,
    pub pairs: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub expected_kernel_dim: usize,
    pub samples: usize,
    /// Kernel vectors satisfying `Σ_{τ⁻¹(d) = σ⁻¹(c)+1} u = Σ_{τ⁻¹(d) = σ⁻¹(c)-1} u` for all `c, d`.
    pub index_form_passed: usize,
    /// Kernel vectors satisfying the printed form `Σ_{σ(j) = τ(i)+1} u = Σ_{σ(j) = τ(i)-1} u`.
    pub printed_form_passed: usize,
}

impl LinearRelationReport {
    pub fn passed(&self) -> bool {
        self.kernel_dim == self.expected_kernel_dim && self.index_form_passed == self.samples
    }
}

/// Sparse kernel vector of the evaluation map on `span{x_(σ,τ)}`, as `(pair, coefficient)`.
fn random_kernel_vector<R: Rng>(
    orbit: &OrbitData,
    members: &[Vec<PermPair>],
    rref: &DenseMatrix<ExactComplex>,
    pivots: &[usize],
    rng: &mut R,
) -> Vec<(PermPair, i64)> {
    let cols = orbit.reps.len();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut coeff = vec![ExactComplex::from_i64(0); cols];
    for &f in free.choose_multiple(rng, 6.min(free.len())) {
        coeff[f] = ExactComplex::from_i64(rng.gen_range(1..=5) * if rng.gen() { 1 } else { -1 });
    }
    for (row, &pc) in pivots.iter().enumerate() {
        let v = free.iter().fold(ExactComplex::from_i64(0), |acc, &f| {
            acc - rref.get(row, f).clone() * coeff[f].clone()
        });
        coeff[pc] = v;
    }
    let lcm = coeff.iter().fold(num_bigint::BigInt::from(1), |acc, c| {
        num_integer::Integer::lcm(&acc, c.re.denom())
    });
    let mut out = Vec::new();
    for (class, c) in coeff.iter().enumerate() {
        let c: i64 = (c.re.clone() * crate::numeric::Rational::from_integer(lcm.clone()))
            .to_integer()
            .try_into()
            .expect("small kernel coefficients");
        let mem = &members[class];
        // split each class coefficient over two members, plus a zero-sum shuffle
        let a: i64 = rng.gen_range(-3..=3);
        out.push((mem[0].clone(), c - a));
        let other = mem.choose(rng).expect("nonempty class").clone();
        out.push((other, a));
        if mem.len() > 1 {
            let b: i64 = rng.gen_range(1..=3);
            let x = mem.choose(rng).unwrap().clone();
            let y = mem.choose(rng).unwrap().clone();
            out.push((x, b));
            out.push((y, -b));
        }
    }
    out
}

fn relation_holds(u: &[(PermPair, i64)], n: usize, printed: bool) -> bool {
    // lhs[c][d] - rhs[c][d] accumulated in one table
    let mut diff = vec![0i64; n * n];
    for (pair, w) in u {
        if printed {
            // σ(j) = τ(i) ± 1, indexed by (i, j)
            for i in 0..n {
                let ti = pair.tau.apply(i);
                let jp = pair.sigma.inverse().apply((ti + 1) % n);
                let jm = pair.sigma.inverse().apply((ti + n - 1) % n);
                diff[i * n + jp] += w;
                diff[i * n + jm] -= w;
            }
        } else {
            // τ⁻¹(d) = σ⁻¹(c) ± 1, indexed by (c, d)
            for c in 0..n {
                let a = pair.sigma.inverse().apply(c);
                diff[c * n + pair.tau.apply((a + 1) % n)] += w;
                diff[c * n + pair.tau.apply((a + n - 1) % n)] -= w;
            }
        }
    }
    diff.iter().all(|&x| x == 0)
}

fn evaluates_to_zero(u: &[(PermPair, i64)], n: usize) -> bool {
    let mut acc = vec![0i64; n * n];
    for (pair, w) in u {
        for (slot, &m) in acc.iter_mut().zip(action_matrix(pair).entries()) {
            *slot += w * m as i64;
        }
    }
    acc.iter().all(|&x| x == 0)
}

/// Exact rank and kernel dimension of `x_(σ,τ) ↦ M_(σ,τ)`, plus `samples` random
/// kernel vectors tested against both index forms of the linear relations.
pub fn linear_relations<R: Rng>(n: usize, samples: usize, rng: &mut R) -> LinearRelationReport {
    let orbit = orbit_data(n);
    let perms = Perm::all(n);
    let pairs = perms.len() * perms.len();
    let mut members: Vec<Vec<PermPair>> = vec![Vec::new(); orbit.reps.len()];
    {
        let index: std::collections::HashMap<Vec<i8>, usize> = orbit
            .reps
            .iter()
            .enumerate()
            .map(|(k, p)| (action_matrix(p).entries().to_vec(), k))
            .collect();
        for s in &perms {
            for t in &perms {
                let pair = PermPair::new(s.clone(), t.clone());
                let k = index[action_matrix(&pair).entries()];
                members[k].push(pair);
            }
        }
    }
    let a = DenseMatrix::from_fn(n * n, orbit.reps.len(), |r, c| {
        ExactComplex::from_i64(*action_matrix(&orbit.reps[c]).entries().get(r).unwrap() as i64)
    });
    let (rref, pivots) = a.rref();
    let rank = pivots.len();
    let mut index_ok = 0;
    let mut printed_ok = 0;
    for _ in 0..samples {
        let u = random_kernel_vector(&orbit, &members, &rref, &pivots, rng);
        debug_assert!(evaluates_to_zero(&u, n));
        if evaluates_to_zero(&u, n) && relation_holds(&u, n, false) {
            index_ok += 1;
        }
        if relation_holds(&u, n, true) {
            printed_ok += 1;
        }
    }
    LinearRelationReport {
        n,
        pairs,
        rank,
        kernel_dim: pairs - rank,
        expected_kernel_dim: pairs - expected_span_rank(n),
        samples,
        index_form_passed: index_ok,
        printed_form_passed: printed_ok,
    }
}

/// One line of the graded-dimension report.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedRow {
    pub n: usize,
    pub d: usize,
    pub monomials: usize,
    pub points: usize,
    pub rank: usize,
    /// `C(d+n-2, n-2)²`, the degree-`d` part of the Segre coordinate ring.
    pub segre: usize,
    /// `C(d+n-1, n-1)²`, the formula as printed.
    pub printed: usize,
}

impl GradedRow {
    pub fn matches_segre(&self) -> bool {
        self.rank == self.segre
    }

    pub fn matches_printed(&self) -> bool {
        self.rank == self.printed
    }

    /// The printed count exceeds the number of monomials, so no evaluation rank can reach it.
    pub fn printed_unreachable(&self) -> bool {
        self.printed > self.monomials
    }
}

fn monomials(vars: usize, d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; d];
    loop {
        out.push(cur.clone());
        // next non-decreasing sequence
        let Some(pos) = (0..d).rev().find(|&p| cur[p] + 1 < vars) else {
            break;
        };
        let v = cur[pos] + 1;
        for x in &mut cur[pos..] {
            *x = v;
        }
    }
    out
}

/// Exact rank of the evaluation matrix of degree-`d` monomials in the `φ_ij`
/// at `2·min(#monomials, max(segre, printed))` random integer configurations.
pub fn graded_rank<R: Rng>(n: usize, d: usize, rng: &mut R) -> GradedRow {
    let vars = (n - 1) * (n - 1);
    let monos = monomials(vars, d);
    let segre = binomial(d + n - 2, n - 2).pow(2);
    let printed = binomial(d + n - 1, n - 1).pow(2);
    let points = 2 * monos.len().min(segre.max(printed));
    let mut basis = RowBasis::<ExactComplex>::new(monos.len());
    for _ in 0..points {
        let cfg = sample_integer_config(n, rng);
        let phis: Vec<ExactComplex> = (1..n)
            .flat_map(|i| (1..n).map(move |j| (i, j)))
            .map(|(i, j)| phi_value(i, j, &cfg))
            .collect();
        let row = monos
            .iter()
            .map(|m| m.iter().fold(ExactComplex::from_i64(1), |acc, &v| acc * phis[v].clone()))
            .collect();
        basis.insert(row);
        if basis.rank() == monos.len() {
            break;
        }
    }
    GradedRow { n, d, monomials: monos.len(), points, rank: basis.rank(), segre, printed }
}

fn sample_integer_config<R: Rng>(n: usize, rng: &mut R) -> VertexConfig<ExactComplex> {
    let z = (0..n).map(|_| ExactComplex::from_i64(rng.gen_range(-9..=9))).collect();
    let zbar = (0..n).map(|_| ExactComplex::from_i64(rng.gen_range(-9..=9))).collect();
    VertexConfig::complexified(z, zbar).expect("n >= 3")
}

/// Combined report for one `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub linear: LinearRelationReport,
    pub segre_configs: usize,
    pub segre_failures: usize,
    pub graded: Vec<GradedRow>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.linear.passed()
            && self.segre_failures == 0
            && self.graded.iter().all(GradedRow::matches_segre)
    }
}

/// Linear kernel, Segre quadrics at `configs` random configurations, and graded ranks up to `max_degree`.
pub fn relation_checks<R: Rng>(
    n: usize,
    configs: usize,
    max_degree: usize,
    rng: &mut R,
) -> RelationReport {
    let linear = linear_relations(n, 100, rng);
    let segre_failures = (0..configs)
        .map(|_| segre_failures(&sample::config(n, Mode::Complexified, rng)))
        .sum();
    let graded = (1..=max_degree).map(|d| graded_rank(n, d, rng)).collect();
    RelationReport { linear, segre_configs: configs, segre_failures, graded }
}

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polymoment::inverse::{build_toeplitz, reconstruct_real, solve_elementary, MATCH_TOL};
use polymoment::moments::{moment_table, nu, q_coefficients, q_reproduces_moments, sym_funcs, MomentTable};
use polymoment::numeric::{multiset_distance, poly_roots, sylvester_resultant, ApproxComplex, DenseMatrix, UniPoly};
use polymoment::polygon::{all_triangulations, polygon_moment_oracle, winding_number, Triangulation};
use polymoment::symmetry::{action_matrix, eval_pair, orbit_data, stabilizer, Perm, PermPair};
use polymoment::triangle::{omega, TriangleData};
use polymoment::{sample, Error, ExactComplex, Rational, Scalar, VertexConfig};

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
}

fn complex() -> impl Strategy<Value = ExactComplex> {
    (rational(), rational()).prop_map(|(re, im)| ExactComplex::new(re, im))
}

fn complexified(n: usize) -> impl Strategy<Value = VertexConfig<ExactComplex>> {
    (prop::collection::vec(complex(), n), prop::collection::vec(complex(), n))
        .prop_map(|(z, w)| VertexConfig::complexified(z, w).unwrap())
}

fn real(n: usize) -> impl Strategy<Value = VertexConfig<ExactComplex>> {
    prop::collection::vec(complex(), n).prop_map(|z| VertexConfig::real(z).unwrap())
}

/// Real or complexified configurations with `lo..=hi` vertices.
fn any_config(lo: usize, hi: usize) -> impl Strategy<Value = VertexConfig<ExactComplex>> {
    (lo..=hi, any::<bool>()).prop_flat_map(|(n, re)| if re { real(n).boxed() } else { complexified(n).boxed() })
}

fn elementary(values: &[ExactComplex]) -> Vec<ExactComplex> {
    sym_funcs(values, values.len()).e[1..].to_vec()
}

fn weight(k: usize) -> ExactComplex {
    ExactComplex::from_i64((k * (k - 1) / 2) as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_field_laws(a in complex(), b in complex(), c in complex()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a * c);
    }

    #[test]
    fn solve_then_multiply(n in 1usize..=5, entries in prop::collection::vec(complex(), 36), rhs in prop::collection::vec(complex(), 6)) {
        let a = DenseMatrix::from_fn(n, n, |r, c| entries[r * 6 + c].clone());
        prop_assume!(!a.det().unwrap().is_zero());
        let b = &rhs[..n];
        let x = a.solve(b).unwrap();
        prop_assert_eq!(a.mul_vec(&x).unwrap(), b.to_vec());
    }

    #[test]
    fn roots_of_expanded_polynomial(pts in prop::collection::btree_set((-3i64..=3, -3i64..=3), 1..=12)) {
        let roots: Vec<ApproxComplex> = pts.iter().map(|&(a, b)| ApproxComplex::new(a as f64, b as f64)).collect();
        let found = poly_roots(&UniPoly::from_roots(&roots)).unwrap();
        prop_assert!(multiset_distance(&found, &roots) <= 1e-8);
    }

    #[test]
    fn planted_common_root(r in complex(), p in prop::collection::vec(complex(), 1..4), q in prop::collection::vec(complex(), 1..4)) {
        let lin = UniPoly::linear(r);
        let p = &lin * &UniPoly::new(p);
        let q = &lin * &UniPoly::new(q);
        prop_assume!(!p.is_zero() && !q.is_zero() && p.degree() > Some(0) && q.degree() > Some(0));
        prop_assert!(sylvester_resultant(&p, &q).unwrap().is_zero());
    }

    #[test]
    fn oracle_equivalence(c in any_config(3, 6), k in 2usize..=10, anti in any::<bool>()) {
        let fan = Triangulation::fan(c.n()).unwrap();
        prop_assert_eq!(polygon_moment_oracle(&c, &fan, k - 2, anti).unwrap() * weight(k), nu(&c, k, anti));
    }

    #[test]
    fn triangulation_independence(c in (4usize..=6).prop_flat_map(real), k in 0usize..=8) {
        let tris = all_triangulations(c.n());
        let first = polygon_moment_oracle(&c, &tris[0], k, false).unwrap();
        for t in &tris[1..] {
            prop_assert_eq!(polygon_moment_oracle(&c, t, k, false).unwrap(), first.clone());
        }
    }

    #[test]
    fn additivity_along_a_diagonal(c in any_config(4, 6), m in 2usize..=4, k in 0usize..=6) {
        let n = c.n();
        prop_assume!(m <= n - 2);
        let left: Vec<usize> = (0..=m).collect();
        let right: Vec<usize> = (m..n).chain([0]).collect();
        let part = |idx: &[usize]| {
            let sub = c.select(idx);
            polygon_moment_oracle(&sub, &Triangulation::fan(sub.n()).unwrap(), k, false).unwrap()
        };
        let whole = polygon_moment_oracle(&c, &Triangulation::fan(n).unwrap(), k, false).unwrap();
        prop_assert_eq!(part(&left) + part(&right), whole);
    }

    #[test]
    fn homogeneity(c in any_config(3, 5), t in complex(), k in 2usize..=8) {
        prop_assert_eq!(nu(&c.scaled(&t), k, false), t.pow_u(k) * nu(&c, k, false));
    }

    #[test]
    fn reversal_negates(c in any_config(3, 6), k in 2usize..=9, anti in any::<bool>()) {
        prop_assert_eq!(nu(&c.reversed(), k, anti), -nu(&c, k, anti));
    }

    #[test]
    fn linear_in_zbar(n in 3usize..=5, seed in any::<u64>(), shift in complex(), k in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z: Vec<ExactComplex> = (0..n).map(|_| sample::complex(&mut rng)).collect();
        let w1: Vec<ExactComplex> = (0..n).map(|_| sample::complex(&mut rng)).collect();
        let w2: Vec<ExactComplex> = (0..n).map(|_| sample::complex(&mut rng)).collect();
        let at = |w: Vec<ExactComplex>| nu(&VertexConfig::complexified(z.clone(), w).unwrap(), k, false);
        let sum: Vec<ExactComplex> = w1.iter().zip(&w2).map(|(a, b)| a.clone() + b.clone()).collect();
        let shifted: Vec<ExactComplex> = w1.iter().map(|a| a.clone() + shift.clone()).collect();
        prop_assert_eq!(at(sum), at(w1.clone()) + at(w2));
        prop_assert_eq!(at(shifted), at(w1));
    }

    #[test]
    fn moments_from_q_and_h(c in any_config(3, 6)) {
        let q = q_coefficients(&c).unwrap();
        prop_assert!(q_reproduces_moments(&c, &q.q, 10));
    }

    #[test]
    fn toeplitz_recovers_elementary_functions(c in (3usize..=6).prop_flat_map(complexified)) {
        let n = c.n();
        let table = moment_table(&c, 2 * n - 1).unwrap();
        match build_toeplitz(&table, n).and_then(|s| solve_elementary(&s)) {
            Ok(e) => prop_assert_eq!(e, elementary(c.z())),
            Err(err) => prop_assert_eq!(err, Error::SingularMomentMatrix),
        }
    }

    #[test]
    fn forms_are_relabeled_areas(c in (3usize..=5).prop_flat_map(complexified), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let perms = Perm::all(c.n());
        let pair = PermPair::new(a.get(&perms).clone(), b.get(&perms).clone());
        let moved = c.relabel(pair.sigma.images(), pair.tau.images());
        prop_assert_eq!(eval_pair(&pair, &c), nu(&moved, 2, false));
    }

    #[test]
    fn action_matrices_have_zero_line_sums(n in 3usize..=5, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let perms = Perm::all(n);
        let m = action_matrix(&PermPair::new(a.get(&perms).clone(), b.get(&perms).clone()));
        for r in 0..n {
            prop_assert_eq!((0..n).map(|c| i32::from(*m.get(r, c))).sum::<i32>(), 0);
            prop_assert_eq!((0..n).map(|c| i32::from(*m.get(c, r))).sum::<i32>(), 0);
        }
    }

    #[test]
    fn bryant_identity(c in complexified(3)) {
        let td = TriangleData::new(c).unwrap();
        let d = omega(&td.config).det().unwrap();
        prop_assert_eq!(d.clone() * d, -(ExactComplex::from_i64(16) * td.m.clone() * td.m.clone()));
    }

    #[test]
    fn triangle_moments_factor_through_area(c in complexified(3), j in 0usize..=8) {
        let h = sym_funcs(c.z(), j).h[j].clone();
        prop_assert_eq!(nu(&c, j + 2, false), nu(&c, 2, false) * h);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reconstruction_round_trip(n in 3usize..=5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sample::simple_polygon(n, &mut rng).unwrap();
        let t = moment_table(&p, 2 * n - 1).unwrap();
        let t = MomentTable::harmonic_only(2 * n - 1, t.nu_values().to_vec()).unwrap();
        let rec = reconstruct_real(&t, n, MATCH_TOL).unwrap();
        let orig: Vec<ApproxComplex> = p.z().iter().map(Scalar::to_approx).collect();
        let shift = (0..n).find(|&s| (rec.config.z()[0] - orig[s]).norm() <= 1e-8);
        prop_assert!(shift.is_some());
        let s = shift.unwrap();
        for j in 0..n {
            prop_assert!((rec.config.z()[j] - orig[(j + s) % n]).norm() <= 1e-8);
        }
    }
}

#[test]
fn orbit_counting() {
    for n in 3..=6 {
        let factorial: usize = (1..=n).product();
        assert_eq!(orbit_data(n).degree() * stabilizer(n).len(), factorial * factorial, "n = {n}");
    }
}

#[test]
fn winding_density_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let p = sample::simple_polygon(6, &mut rng).unwrap();
    let exact_area = polygon_moment_oracle(&p, &Triangulation::fan(6).unwrap(), 0, false).unwrap();
    assert!(exact_area.re > Rational::zero());
    let pf = p.to_approx();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for v in pf.z() {
        (x0, x1, y0, y1) = (x0.min(v.re), x1.max(v.re), y0.min(v.im), y1.max(v.im));
    }
    let box_area = (x1 - x0) * (y1 - y0);
    let samples = 40_000;
    let draws: Vec<(ApproxComplex, f64)> = (0..samples)
        .filter_map(|_| {
            let q = (rng.gen_range(x0..x1), rng.gen_range(y0..y1));
            winding_number(&pf, &q).ok().map(|w| (ApproxComplex::new(q.0, q.1), w as f64))
        })
        .collect();
    for k in 0..=3 {
        let vals: Vec<ApproxComplex> = draws.iter().map(|(z, w)| z.powu(k as u32) * *w * box_area).collect();
        let m = vals.len() as f64;
        let mean = vals.iter().sum::<ApproxComplex>() / m;
        let oracle = polygon_moment_oracle(&pf, &Triangulation::fan(6).unwrap(), k, false).unwrap();
        for part in [|c: &ApproxComplex| c.re, |c: &ApproxComplex| c.im] {
            let var = vals.iter().map(|v| (part(v) - part(&mean)).powi(2)).sum::<f64>() / (m - 1.0);
            let se = (var / m).sqrt();
            assert!((part(&mean) - part(&oracle)).abs() <= 3.0 * se + 1e-9, "k = {k}: {mean} vs {oracle} (se {se})");
        }
    }
}

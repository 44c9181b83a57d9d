//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use polymoment::inverse::{build_toeplitz, reconstruct_real, solve_elementary, MATCH_TOL};
use polymoment::moments::{adjoint_numerator, check_recurrence, moment_table, nu, sym_funcs, MomentTable};
use polymoment::numeric::ApproxComplex;
use polymoment::polygon::{all_triangulations, polygon_moment_oracle, Triangulation};
use polymoment::symmetry::relations::expected_span_rank;
use polymoment::symmetry::{
    graded_rank, minimal_poly_with, orbit_data, rho_check, segre_failures, span_rank, stabilizer,
    stabilizer_exhaustive, Perm,
};
use polymoment::triangle::{
    galois3_seeded, l_in_m, similarity_theorem, sole_relation, twelve_relations, TriangleData, ROOT_TOL,
};
use polymoment::{sample, Error, ExactComplex, Mode, Rational, Scalar, VertexConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + criterion)
}

fn configs(n: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<VertexConfig<ExactComplex>> {
    (0..count).map(|_| sample::config(n, Mode::Complexified, rng)).collect()
}

fn elementary(values: &[ExactComplex]) -> Vec<ExactComplex> {
    sym_funcs(values, values.len()).e[1..].to_vec()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = rng(1);
    let mut mismatches = 0;
    let mut checked = 0;
    for n in 3..=6 {
        let fan = Triangulation::fan(n).unwrap();
        for c in configs(n, 25, &mut rng) {
            for k in 2..=10 {
                for anti in [false, true] {
                    let weight = ExactComplex::from_i64((k * (k - 1) / 2) as i64);
                    let oracle = polygon_moment_oracle(&c, &fan, k - 2, anti).unwrap() * weight;
                    checked += 1;
                    if oracle != nu(&c, k, anti) {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    outcome(mismatches == 0, format!("{checked} exact comparisons, {mismatches} mismatches"))
}

fn triangulation_independence() -> Outcome {
    let mut rng = rng(2);
    let mut ok = true;
    let mut counts = Vec::new();
    for (n, expected) in [(4, 2), (5, 5)] {
        let tris = all_triangulations(n);
        counts.push(tris.len());
        ok &= tris.len() == expected;
        for c in configs(n, 10, &mut rng) {
            for k in 0..=8 {
                for anti in [false, true] {
                    let first = polygon_moment_oracle(&c, &tris[0], k, anti).unwrap();
                    ok &= tris.iter().all(|t| polygon_moment_oracle(&c, t, k, anti).unwrap() == first);
                }
            }
        }
    }
    outcome(ok, format!("triangulations per n = 4, 5: {counts:?}"))
}

fn recurrence() -> Outcome {
    let mut rng = rng(3);
    let mut failures = 0;
    let mut identities = 0;
    for n in 3..=6 {
        for c in configs(n, 25, &mut rng) {
            let t = moment_table(&c, 12).unwrap();
            for (seq, e) in [(t.sequence(false), elementary(c.z())), (t.sequence(true), elementary(c.zbar()))] {
                match check_recurrence(&seq, &e) {
                    Ok(count) => identities += count,
                    Err(_) => failures += 1,
                }
            }
        }
    }
    outcome(failures == 0, format!("{identities} recurrence identities, {failures} violating sequences"))
}

fn adjoint_degree() -> Outcome {
    let mut rng = rng(4);
    let mut shape_failures = 0;
    let mut constant_failures = 0;
    let mut top_failures = Vec::new();
    for n in 3..=6 {
        let mut top_bad = 0;
        for c in configs(n, 25, &mut rng) {
            let nu2 = nu(&c, 2, false);
            match adjoint_numerator(&c) {
                Ok(a) => {
                    if a.poly.coeffs().len() > n - 2 || !a.tail.iter().all(Zero::is_zero) {
                        shape_failures += 1;
                    }
                    if a.constant_term() != nu2 {
                        constant_failures += 1;
                    }
                    if a.top_coefficient(n) != nu2 {
                        top_bad += 1;
                    }
                }
                Err(_) => shape_failures += 1,
            }
        }
        top_failures.push(top_bad);
    }
    let top_ok = top_failures.iter().all(|&f| f == 0);
    outcome(
        shape_failures == 0 && top_ok,
        format!(
            "degree and zero tail: {shape_failures} failures; coefficient at w^(n-3) = ν2 fails for {:?} of 25 at n = 3..6; AD(0) = ν2: {constant_failures} failures",
            top_failures
        ),
    )
}

fn vertex_error(rec: &[ApproxComplex], orig: &[ApproxComplex]) -> f64 {
    let n = orig.len();
    (0..n)
        .map(|s| (0..n).map(|j| (rec[j] - orig[(j + s) % n]).norm()).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min)
}

fn inverse_round_trip() -> Outcome {
    let mut rng = rng(5);
    let (mut e_bad, mut singular) = (0, 0);
    for n in 3..=6 {
        for c in configs(n, 25, &mut rng) {
            let t = moment_table(&c, 2 * n - 1).unwrap();
            match build_toeplitz(&t, n).and_then(|s| solve_elementary(&s)) {
                Ok(e) if e == elementary(c.z()) => {}
                Err(Error::SingularMomentMatrix) => singular += 1,
                _ => e_bad += 1,
            }
        }
    }
    let mut worst: f64 = 0.0;
    let mut rec_bad = 0;
    for n in 3..=5 {
        let polys: Vec<_> = (0..25).map(|_| sample::simple_polygon(n, &mut rng).unwrap()).collect();
        let errs: Vec<f64> = polys
            .par_iter()
            .map(|p| {
                let t = moment_table(p, 2 * n - 1).unwrap();
                let t = MomentTable::harmonic_only(2 * n - 1, t.nu_values().to_vec()).unwrap();
                match reconstruct_real(&t, n, MATCH_TOL) {
                    Ok(rec) => vertex_error(rec.config.z(), &p.z().iter().map(Scalar::to_approx).collect::<Vec<_>>()),
                    Err(_) => f64::INFINITY,
                }
            })
            .collect();
        for e in errs {
            worst = worst.max(e);
            rec_bad += usize::from(!(e <= 1e-8));
        }
    }
    outcome(
        e_bad == 0 && rec_bad == 0,
        format!("e-recovery: {e_bad} wrong, {singular} singular; reconstruction: {rec_bad} of 75 off, max vertex error {worst:.1e}"),
    )
}

fn orbit_degrees() -> Outcome {
    let mut ok = true;
    let mut found = Vec::new();
    for (n, d, order) in [(3, 12, 3), (4, 72, 8), (5, 2880, 5)] {
        let orbit = orbit_data(n);
        let exhaustive = stabilizer_exhaustive(n);
        ok &= orbit.degree() == d && exhaustive.len() == order && stabilizer(n) == exhaustive;
        ok &= orbit.class_sizes.iter().all(|&s| s == order);
        found.push((orbit.degree(), exhaustive.len()));
    }
    outcome(ok, format!("(d_n, stabilizer order) for n = 3, 4, 5: {found:?}"))
}

fn span_rank_check() -> Outcome {
    let ranks: Vec<usize> = (3..=5).map(|n| span_rank(&orbit_data(n))).collect();
    let ok = ranks == vec![4, 9, 16] && (3..=5).all(|n| expected_span_rank(n) == (n - 1) * (n - 1));
    outcome(ok, format!("ranks for n = 3, 4, 5: {ranks:?}"))
}

fn minimal_polynomial() -> Outcome {
    let mut rng = rng(8);
    let mut bad = 0;
    for n in [3, 4] {
        let orbit = orbit_data(n);
        let all = Perm::all(n);
        for c in configs(n, 10, &mut rng) {
            let (s, t) = (&all[rng.gen_range(0..all.len())], &all[rng.gen_range(0..all.len())]);
            let moved = c.relabel(s.images(), t.images());
            let ok = match (minimal_poly_with(&orbit, &c), minimal_poly_with(&orbit, &moved)) {
                (Ok(p), Ok(q)) => {
                    p.poly.eval(&nu(&c, 2, false)).is_zero() && p.poly == q.poly && p.poly.degree() == Some(orbit.degree())
                }
                _ => false,
            };
            bad += usize::from(!ok);
        }
    }
    outcome(bad == 0, format!("{bad} of 20 configurations fail (P(ν2) = 0, simple roots, relabeling invariance)"))
}

fn rho_phi() -> Outcome {
    let mut rng = rng(9);
    let mut bad = 0;
    for n in [4, 5] {
        for c in configs(n, 10, &mut rng) {
            bad += (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).filter(|&(i, j)| !rho_check(i, j, &c)).count();
        }
    }
    outcome(bad == 0, format!("{bad} failing (i, j, config) triples"))
}

fn segre() -> Outcome {
    let mut rng = rng(10);
    let failures: usize = (3..=5).flat_map(|n| configs(n, 10, &mut rng)).map(|c| segre_failures(&c)).sum();
    outcome(failures == 0, format!("{failures} non-vanishing 2x2 minors over n = 3, 4, 5"))
}

fn sole_relation_check() -> Outcome {
    let mut rng = rng(11);
    let cs = configs(3, 100, &mut rng);
    let shift = ExactComplex::from_rational(&Rational::new(1.into(), 7.into()));
    let results: Vec<(bool, bool)> = cs
        .par_iter()
        .map(|c| {
            let td = TriangleData::new(c.clone()).unwrap();
            let zero = sole_relation(&td).is_ok_and(|l| l.is_zero());
            let moved = td.with_m(td.m.clone() + shift.clone());
            let nonzero = sole_relation(&moved).is_ok_and(|l| !l.is_zero());
            (zero, nonzero)
        })
        .collect();
    let vanish = results.iter().filter(|r| r.0).count();
    let perturbed = results.iter().filter(|r| r.1).count();
    outcome(vanish == 100 && perturbed == 100, format!("L = 0 at {vanish}/100, L != 0 after perturbing M at {perturbed}/100"))
}

fn triangle_roots() -> Outcome {
    let mut rng = rng(12);
    let mut distances = Vec::new();
    let mut bad = 0;
    while distances.len() + bad < 10 {
        let c = sample::config(3, Mode::Complexified, &mut rng).to_approx();
        match TriangleData::new(c).and_then(|td| l_in_m(&td)) {
            Ok(l) if l.poly.degree() == Some(12) => distances.push(l.root_distance),
            Err(Error::NonGenericConfig) => {}
            _ => bad += 1,
        }
    }
    let worst = distances.iter().cloned().fold(0.0, f64::max);
    outcome(bad == 0 && worst <= ROOT_TOL, format!("degree 12 at {}/10, max root distance {worst:.1e}", distances.len()))
}

fn twelve_root_relations() -> Outcome {
    let mut rng = rng(13);
    let reports: Vec<_> = configs(3, 20, &mut rng).iter().map(|c| twelve_relations(c).unwrap()).collect();
    let labels = reports[0].checks();
    let failing: Vec<String> = labels
        .iter()
        .enumerate()
        .filter_map(|(k, (label, _))| {
            let holds = reports.iter().filter(|r| r.checks()[k].1).count();
            (holds < reports.len()).then(|| format!("{label} holds at {holds}/20"))
        })
        .collect();
    let corrected = reports.iter().filter(|r| r.phi11_corrected).count();
    let ok = reports.iter().all(|r| r.passed());
    let summary = if failing.is_empty() { "all 13 hold".to_string() } else { failing.join("; ") };
    outcome(ok, format!("{summary}; 3φ11 = a + 2b + c - d holds at {corrected}/20"))
}

fn galois_enumeration() -> Outcome {
    let groups: Vec<_> = (1..=5).map(galois3_seeded).collect();
    let orders: Vec<(usize, usize)> = groups.iter().map(|g| (g.order, g.plus_order)).collect();
    let stable = groups.iter().all(|g| g.elements == groups[0].elements);
    let ok = stable && orders.iter().all(|&o| o == (288, 144));
    outcome(ok, format!("(|G3|, |G3+|) per seed: {orders:?}, identical sets: {stable}"))
}

fn similarity() -> Outcome {
    let mut rng = rng(15);
    let mut bad = 0;
    let mut done = 0;
    while done < 20 {
        let a: [ExactComplex; 3] = std::array::from_fn(|_| sample::complex(&mut rng));
        match similarity_theorem(&a) {
            Ok(r) => bad += usize::from(!r.sum.is_zero()),
            Err(Error::DegenerateTriangle) => continue,
            Err(_) => bad += 1,
        }
        done += 1;
    }
    outcome(bad == 0, format!("Σ A_j C_j != 0 for {bad} of 20 triangles"))
}

fn graded_dimensions() -> Outcome {
    let mut rng = rng(16);
    let expected = [(3, 1, 4), (3, 2, 9), (4, 1, 9), (4, 2, 36)];
    let mut ok = true;
    let mut rows = Vec::new();
    for (n, d, dim) in expected {
        let row = graded_rank(n, d, &mut rng);
        ok &= row.rank == dim && row.matches_segre();
        let flagged = !row.matches_printed() && row.printed_unreachable();
        ok &= flagged;
        rows.push(format!("n={n} d={d}: rank {} (printed {}{})", row.rank, row.printed, if flagged { ", flagged" } else { "" }));
    }
    outcome(ok, rows.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 16] = [
        ("oracle equivalence", oracle_equivalence),
        ("triangulation independence", triangulation_independence),
        ("recurrence", recurrence),
        ("adjoint numerator degree and leading coefficient", adjoint_degree),
        ("inverse round trip", inverse_round_trip),
        ("orbit degrees and stabilizers", orbit_degrees),
        ("span rank", span_rank_check),
        ("minimal polynomial", minimal_polynomial),
        ("rho/phi identity", rho_phi),
        ("Segre quadrics", segre),
        ("triangle sole relation", sole_relation_check),
        ("triangle root structure", triangle_roots),
        ("twelve-root relations", twelve_root_relations),
        ("Galois enumeration", galois_enumeration),
        ("similar triangles theorem", similarity),
        ("graded dimensions", graded_dimensions),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        failed += usize::from(!o.passed);
        println!(
            "criterion {:>2} {} {name} ({:.1}s): {}",
            k + 1,
            if o.passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

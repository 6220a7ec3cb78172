//! Acceptance gate: one test per published acceptance criterion, each
//! ending in a single `[PASS criterion-N]` line with its tolerance and
//! runtime budget stated. Run with `--nocapture` to see the lines.

use std::time::Instant;

use lorsol::catalog::{
    evaluate_point, verify_nonunimodular_theorem, verify_segre_equivalence,
    verify_unimodular_theorem, SweepOptions,
};
use lorsol::curvature::{curvature_tensor, ricci};
use lorsol::liemodel::{family_from_list, Family, LieAlgebra3};
use lorsol::papertables::{expected_eigenvalues, expected_tables};
use lorsol::segre::char_poly;
use lorsol::soliton::{annotate, solve, CausalCharacter, SolitonClass};
use lorsol::walker::{
    christoffels, default_combos, fd_christoffels, run_combo, solve_symmetric,
    build_soliton_field, field_norm_sq, walker_ricci, Grid3, Poly, StructuredF, WalkerMetric,
};
use lorsol::QuadScalar;

// ---------------------------------------------------------------------------
// Deterministic exact tuple generator
// ---------------------------------------------------------------------------

/// Exact values drawn by a fixed linear congruential sequence; every tuple
/// is identical on every run.
struct TupleGen {
    state: u64,
    pool: Vec<QuadScalar>,
}

impl TupleGen {
    fn new(seed: u64) -> Self {
        let q = QuadScalar::from_ratio;
        let s2 = QuadScalar::sqrt2();
        let mut pool = Vec::new();
        for n in -3..=3 {
            pool.push(q(n, 1));
            pool.push(q(n, 2));
            pool.push(q(2 * n + 1, 4));
            pool.push(&q(n, 1) + &s2);
            pool.push(&q(n, 2) - &s2);
        }
        TupleGen { state: seed, pool }
    }

    fn next_value(&mut self) -> QuadScalar {
        // Numerical Recipes LCG constants
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let idx = (self.state >> 33) as usize % self.pool.len();
        self.pool[idx].clone()
    }

    /// Next constraint-satisfying algebra of the family.
    fn next_point(&mut self, family: Family) -> (Vec<QuadScalar>, LieAlgebra3) {
        loop {
            let params: Vec<QuadScalar> =
                (0..family.param_names().len()).map(|_| self.next_value()).collect();
            if let Ok(alg) = family_from_list(family, &params) {
                return (params, alg);
            }
        }
    }
}

/// The algebra in the basis the published tables use (IV3: orthonormal).
fn table_algebra(family: Family, params: &[QuadScalar]) -> LieAlgebra3 {
    lorsol::catalog::computation_algebra(family, params)
}

// ---------------------------------------------------------------------------
// Criterion 1: curvature tables
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_curvature_tables() {
    let start = Instant::now();
    let mut gen = TupleGen::new(0x1007);
    let per_family = 50;
    let mut checked = 0usize;
    for family in Family::ALL {
        for _ in 0..per_family {
            let (params, _) = gen.next_point(family);
            let alg = table_algebra(family, &params);
            let data = curvature_tensor(&alg);
            let exp = expected_tables(&alg).expect("tagged family has printed tables");
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        for l in 0..3 {
                            assert_eq!(
                                data.r[i][j][k][l], exp.r[i][j][k][l],
                                "R_{}{}{}{} mismatch for {family} at {params:?}",
                                i + 1, j + 1, k + 1, l + 1
                            );
                        }
                    }
                }
            }
            checked += 1;
        }
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 5.0, "budget 5 s exceeded: {dt:?}");
    println!(
        "[PASS criterion-1] curvature tables exact (0 tolerance) on {checked} tuples \
         ({per_family}/family) in {dt:?} (< 5 s)"
    );
}

// ---------------------------------------------------------------------------
// Criterion 2: Ricci matrices and eigenvalues
// ---------------------------------------------------------------------------

#[test]
fn criterion_2_ricci_and_eigenvalues() {
    let start = Instant::now();
    let mut gen = TupleGen::new(0x2003);
    let per_family = 50;
    let mut eig_checked = 0usize;
    for family in Family::ALL {
        for _ in 0..per_family {
            let (params, _) = gen.next_point(family);
            let alg = table_algebra(family, &params);
            let (_, ric_op, scal) = ricci(&alg);
            let exp = expected_tables(&alg).expect("printed Ricci matrix");
            assert_eq!(ric_op, exp.ric_op, "ric_op mismatch for {family} at {params:?}");
            if let Some(eigs) = expected_eigenvalues(&alg) {
                // Vieta match pins the eigenvalue multiset exactly
                let (c2, c1, c0) = char_poly(&ric_op);
                let [e1, e2, e3] = [&eigs[0], &eigs[1], &eigs[2]];
                assert_eq!(&(&(e1 + e2) + e3), &c2);
                assert_eq!(&(&(&(e1 * e2) + &(e1 * e3)) + &(e2 * e3)), &c1);
                assert_eq!(&(&(e1 * e2) * e3), &c0);
                assert_eq!(&(&(e1 + e2) + e3), &scal, "scal is the eigenvalue sum");
                eig_checked += 1;
            }
        }
    }
    let dt = start.elapsed();
    println!(
        "[PASS criterion-2] printed Ricci matrices exact on {} tuples, eigenvalue \
         multisets exact on {eig_checked} (Vieta), in {dt:?}",
        7 * per_family
    );
}

// ---------------------------------------------------------------------------
// Criterion 3: soliton solution sets
// ---------------------------------------------------------------------------

fn q(n: i64, d: i64) -> QuadScalar {
    QuadScalar::from_ratio(n, d)
}

fn solved(family: Family, params: &[i64]) -> lorsol::soliton::SolitonSolutionSet {
    let p: Vec<QuadScalar> = params.iter().map(|&n| QuadScalar::from_int(n)).collect();
    let alg = table_algebra(family, &p);
    let mut s = solve(&alg);
    annotate(&mut s, &alg);
    s
}

#[test]
fn criterion_3_soliton_solution_sets() {
    let start = Instant::now();

    // (XIIa): II with alpha = 0 != beta — unique steady solution
    for beta in [1i64, -3, 2] {
        let s = solved(Family::II, &[0, beta]);
        assert!(s.exists && !s.trivial);
        assert!(s.homogeneous_basis.is_empty(), "XIIa solution is unique");
        assert_eq!(s.particular.as_ref().unwrap().lambda, QuadScalar::zero());
        assert!(s.paper_representative_verified);
    }

    // (XIIb): II with alpha = beta != 0 — lambda = -beta^2/2, 1-param family
    for beta in [1i64, 2, -1] {
        let s = solved(Family::II, &[beta, beta]);
        assert!(s.exists && !s.trivial);
        assert_eq!(s.homogeneous_basis.len(), 1, "XIIb has one free direction");
        let lam = s.particular.as_ref().unwrap().lambda.clone();
        assert_eq!(lam, -&(&q(1, 2) * &QuadScalar::from_int(beta * beta)));
        assert!(s.paper_representative_verified);
    }

    // generic II (alpha(alpha - beta) != 0, alpha != 0): no solutions
    for (a, b) in [(1i64, 2i64), (2, -1), (-1, 1)] {
        assert!(!solved(Family::II, &[a, b]).exists);
    }

    // (XIII): III — lambda = -alpha^2/2; alpha = 0 is flat/steady
    for a in [1i64, 2, -2, 0] {
        let s = solved(Family::III, &[a]);
        assert!(s.exists);
        let lam = s.particular.as_ref().unwrap().lambda.clone();
        assert_eq!(lam, -&(&q(1, 2) * &QuadScalar::from_int(a * a)));
        assert!(s.paper_representative_verified);
    }

    // Ia: solutions only at Einstein points
    for p in [[1i64, 2, 3], [1, 0, 0], [2, 2, 1]] {
        let s = solved(Family::Ia, &p);
        assert!(!s.exists || s.trivial, "Ia admits no nontrivial solitons");
    }
    assert!(solved(Family::Ia, &[0, 0, 0]).trivial); // flat point

    // Ib: never a nontrivial soliton
    for p in [[1i64, 1, 0], [2, 1, 1], [0, 2, 2]] {
        let s = solved(Family::Ib, &p);
        assert!(!s.exists || s.trivial);
    }

    // IV.1 / IV.2: existence only with constant curvature (Einstein)
    for (fam, p) in [
        (Family::IV1, [1i64, 1, 1, 1]),
        (Family::IV1, [1, 0, 0, 2]),
        (Family::IV2, [1, 1, -1, 1]),
        (Family::IV2, [2, 0, 0, 1]),
    ] {
        let s = solved(fam, &p);
        assert!(!s.exists || s.trivial, "{fam} {p:?} must be Einstein-only");
    }

    // (XIVb): IV.3 with alpha != 0 = gamma, delta != 0, 2alpha — steady
    // (alpha = delta would be the Einstein sub-case, excluded here)
    for (a, d) in [(3i64, 1i64), (2, 1), (1, -3)] {
        let s = solved(Family::IV3, &[a, 0, 0, d]);
        assert!(s.exists && !s.trivial);
        assert_eq!(s.particular.as_ref().unwrap().lambda, QuadScalar::zero());
        assert_eq!(s.soliton_class, Some(SolitonClass::Steady));
        assert!(s.paper_representative_verified);
    }

    // (XIVa): delta = 2 alpha — the lambda-family
    for a in [1i64, 2, -1] {
        let s = solved(Family::IV3, &[a, 0, 0, 2 * a]);
        assert!(s.exists && !s.trivial);
        assert_eq!(s.soliton_class, Some(SolitonClass::FamilyInLambda));
        assert!(
            s.homogeneous_basis.iter().any(|h| !h[3].is_zero()),
            "lambda must be a free direction"
        );
        assert!(s.paper_representative_verified);
    }

    // IV.3 with alpha = 0 != gamma: the system is inconsistent
    for (g, d) in [(1i64, 1i64), (2, 1), (1, -1)] {
        assert!(!solved(Family::IV3, &[0, 0, g, d]).exists);
    }

    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 5.0, "budget 5 s exceeded: {dt:?}");
    println!(
        "[PASS criterion-3] soliton solution sets match (XIIa)/(XIIb)/(XIII)/(XIVa)/(XIVb) \
         and all published non-existence cases exactly, in {dt:?} (< 5 s)"
    );
}

// ---------------------------------------------------------------------------
// Criterion 4: Theorem 2 certificate over the default grid
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_theorem_two_certificate() {
    let start = Instant::now();
    let report = verify_segre_equivalence(SweepOptions::default());
    for family in Family::ALL {
        let n = report.records_for(family);
        assert!(n >= 1000, "family {family} has only {n} grid points");
    }
    assert!(
        report.violations.is_empty(),
        "violations: {:?}",
        &report.violations[..report.violations.len().min(5)]
    );
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 60.0, "budget 60 s exceeded: {dt:?}");
    println!(
        "[PASS criterion-4] soliton existence <=> Segre {{3}} or degenerate {{21}} at all \
         {} grid points (>= 1000/family), zero violations, in {dt:?} (< 60 s)",
        report.points_checked
    );
}

/// Not a numbered criterion: the two classification-theorem sweeps over
/// their full default grids, zero violations.
#[test]
fn theorem_sweeps_full_grid() {
    let unim = verify_unimodular_theorem(SweepOptions::default());
    assert!(unim.passed(), "unimodular sweep violations: {:?}", &unim.violations[..unim.violations.len().min(5)]);
    let nonunim = verify_nonunimodular_theorem(SweepOptions::default());
    assert!(nonunim.passed(), "non-unimodular sweep violations: {:?}", &nonunim.violations[..nonunim.violations.len().min(5)]);
    println!(
        "[PASS] theorem sweeps: {} unimodular and {} non-unimodular points, zero violations",
        unim.points_checked, nonunim.points_checked
    );
}

// ---------------------------------------------------------------------------
// Criterion 5: causal-character labels
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_causal_characters() {
    let pt = |f: Family, p: &[i64]| {
        let params: Vec<QuadScalar> = p.iter().map(|&n| QuadScalar::from_int(n)).collect();
        evaluate_point(f, &params)
    };
    // Theorem unim a): II, alpha = 0 != beta — steady, spacelike
    let r = pt(Family::II, &[0, 1]);
    assert_eq!(r.soliton_class, Some(SolitonClass::Steady));
    assert_eq!(r.causal_character, Some(CausalCharacter::Spacelike));
    // b): II, alpha = beta != 0 — expanding, spacelike
    let r = pt(Family::II, &[2, 2]);
    assert_eq!(r.soliton_class, Some(SolitonClass::Expanding));
    assert_eq!(r.causal_character, Some(CausalCharacter::Spacelike));
    // c): III, alpha != 0 — expanding, spacelike
    let r = pt(Family::III, &[1]);
    assert_eq!(r.soliton_class, Some(SolitonClass::Expanding));
    assert_eq!(r.causal_character, Some(CausalCharacter::Spacelike));
    // d): III, alpha = 0 — steady, null
    let r = pt(Family::III, &[0]);
    assert_eq!(r.soliton_class, Some(SolitonClass::Steady));
    assert_eq!(r.causal_character, Some(CausalCharacter::Null));
    // Theorem nonunim: (XIVb) steady, null
    let r = pt(Family::IV3, &[1, 0, 0, 1]);
    assert_eq!(r.soliton_class, Some(SolitonClass::Steady));
    assert_eq!(r.causal_character, Some(CausalCharacter::Null));
    // (XIVa): lambda-family, causal character varies with lambda
    let r = pt(Family::IV3, &[1, 0, 0, 2]);
    assert_eq!(r.soliton_class, Some(SolitonClass::FamilyInLambda));
    assert_eq!(r.causal_character, Some(CausalCharacter::VariesWithinFamily));
    println!(
        "[PASS criterion-5] causal labels match Theorems unim a)-d) and nonunim exactly \
         (spacelike/null/varies as printed)"
    );
}

// ---------------------------------------------------------------------------
// Criterion 6: Walker geometry
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_walker_geometry() {
    // ric_op^2 = 0 at sampled points of non-flat metrics, exactly
    let grid = Grid3::default();
    for combo in default_combos() {
        let spec = StructuredF { kappa: combo.kappa, p: combo.p.clone(), q: combo.q.clone() };
        let m = WalkerMetric::structured(combo.eps, spec).unwrap();
        for &x in &grid.axis() {
            for &y in &grid.axis() {
                let (_, op) = walker_ricci(&m, x, y);
                for i in 0..3 {
                    for j in 0..3 {
                        let sq: f64 = (0..3).map(|k| op[i][k] * op[k][j]).sum();
                        assert_eq!(sq, 0.0, "ric_op^2 != 0");
                    }
                }
            }
        }
        // flat <=> f_xx = 0 <=> kappa = 0
        assert_eq!(m.is_flat(&grid, 0.0), combo.kappa == 0.0);
    }
    let flat = WalkerMetric::structured(
        1.0,
        StructuredF { kappa: 0.0, p: Poly::new(vec![1.0, 2.0]), q: Poly::new(vec![3.0]) },
    )
    .unwrap();
    assert!(flat.is_flat(&grid, 0.0), "f linear in x is flat");

    // FD Christoffel oracle: second-order convergence
    let spec = StructuredF {
        kappa: 1.5,
        p: Poly::new(vec![1.0, -1.0, 2.0]),
        q: Poly::new(vec![0.0, 0.5, 0.0, 1.0]),
    };
    let m = WalkerMetric::structured(-1.0, spec).unwrap();
    let err = |h: f64| -> f64 {
        let mut worst = 0.0f64;
        for &(x, y) in &[(0.4, -0.7), (-0.9, 0.3), (0.8, 0.8)] {
            let c = christoffels(&m, x, y);
            let fd = fd_christoffels(&m, x, y, h);
            for a in 0..3 {
                for b in 0..3 {
                    for k in 0..3 {
                        worst = worst.max((c[a][b][k] - fd[a][b][k]).abs());
                    }
                }
            }
        }
        worst
    };
    let ratio = err(1e-3) / err(1e-4);
    assert!(
        (50.0..200.0).contains(&ratio),
        "expected ~100x error drop for 10x step refinement, got {ratio}"
    );
    println!(
        "[PASS criterion-6] ric_op^2 = 0 exactly at all sampled non-flat points; \
         flat <=> f_xx = 0; FD Christoffel convergence ratio {ratio:.1} (in [50, 200])"
    );
}

// ---------------------------------------------------------------------------
// Criterion 7: Walker soliton residuals
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_walker_soliton_residuals() {
    let start = Instant::now();
    let combos = default_combos();
    assert!(combos.len() >= 10);
    // the matrix spans all lambda signs and both kappa signs
    assert!(combos.iter().any(|c| c.lambda > 0.0));
    assert!(combos.iter().any(|c| c.lambda == 0.0));
    assert!(combos.iter().any(|c| c.lambda < 0.0));
    assert!(combos.iter().any(|c| c.kappa > 0.0));
    assert!(combos.iter().any(|c| c.kappa < 0.0));

    let grid = Grid3::default(); // 20^3 on [-1, 1]^3
    let mut worst = 0.0f64;
    for combo in &combos {
        let r = run_combo(combo, &grid);
        assert!(
            r.max_residual < 1e-8,
            "residual {} for kappa={} lambda={}",
            r.max_residual, combo.kappa, combo.lambda
        );
        worst = worst.max(r.max_residual);
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 30.0, "budget 30 s exceeded: {dt:?}");
    println!(
        "[PASS criterion-7] {} Walker solitons (lambda < 0, = 0, > 0; kappa both signs) \
         with max grid residual {worst:.2e} < 1e-8 on 20^3, in {dt:?} (< 30 s)",
        combos.len()
    );
}

// ---------------------------------------------------------------------------
// Criterion 8: pointwise causal variation
// ---------------------------------------------------------------------------

#[test]
fn criterion_8_causal_variation() {
    // kappa = 1, eps = 1, P = Q = 0, gamma = 1, lambda = 0:
    // X = (y/2, 0, 1) with g(X, X) = y + x^2, changing sign on the grid
    let spec = StructuredF { kappa: 1.0, p: Poly::new(vec![]), q: Poly::new(vec![]) };
    let m = WalkerMetric::structured(1.0, spec.clone()).unwrap();
    let sol = solve_symmetric(&spec, 1.0, 0.0, 1.0, 0.0, 0.0);
    let field = build_soliton_field(&spec, 1.0, &sol, 0.0, 1.0);
    let grid = Grid3::default();
    let residual = lorsol::walker::soliton_residual(&m, &field, 0.0, &grid);
    assert!(residual < 1e-8, "witness must itself be a soliton: {residual}");
    let (mut pos, mut neg) = (false, false);
    for &t in &grid.axis() {
        for &x in &grid.axis() {
            for &y in &grid.axis() {
                let v = field_norm_sq(&m, &field, t, x, y);
                pos |= v > 1e-9;
                neg |= v < -1e-9;
            }
        }
    }
    assert!(pos && neg, "g(X, X) must take both signs");
    println!(
        "[PASS criterion-8] constructed Walker soliton with g(X, X) = y + x^2 taking both \
         signs on the grid (causal character varies pointwise)"
    );
}

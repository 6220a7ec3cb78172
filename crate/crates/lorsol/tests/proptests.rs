//! Property-based checks of the algebraic identities the exact pipeline
//! relies on: field axioms in Q(sqrt2), curvature symmetries, Segre
//! invariances, and the soliton residual identity.

use proptest::prelude::*;

use lorsol::curvature::{curvature_tensor, ricci};
use lorsol::liemodel::{family_from_list, Family, LieAlgebra3};
use lorsol::linalg::{identity3, inverse3, mat_mul, mat_scale, transpose, Mat3};
use lorsol::segre::{classify, classify_algebra};
use lorsol::soliton::{annotate, lie_derivative_metric, residual, solve};
use lorsol::QuadScalar;

// ---------------------------------------------------------------------------
// Strategies
// ---------------------------------------------------------------------------

fn quad() -> impl Strategy<Value = QuadScalar> {
    // a + b*sqrt2 with small rational a, b
    (-12i64..13, 1i64..5, -6i64..7, 1i64..4)
        .prop_map(|(an, ad, bn, bd)| QuadScalar::from_parts(an, ad, bn, bd))
}

fn nonzero_quad() -> impl Strategy<Value = QuadScalar> {
    quad().prop_filter("nonzero", |q| !q.is_zero())
}

fn family_point() -> impl Strategy<Value = LieAlgebra3> {
    let fam = prop::sample::select(Family::ALL.to_vec());
    (fam, proptest::collection::vec(quad(), 4)).prop_filter_map(
        "constraint-satisfying point",
        |(f, vals)| {
            let n = f.param_names().len();
            family_from_list(f, &vals[..n]).ok()
        },
    )
}

/// A random exact isometry of diag(1,1,-1): a short word in rational
/// rotation (3/5, 4/5), rational boost (5/4, 3/4) and an axis flip.
fn isometry_ppm() -> impl Strategy<Value = Mat3> {
    proptest::collection::vec(0usize..3, 0..5).prop_map(|word| {
        let q = QuadScalar::from_ratio;
        let rot: Mat3 = [
            [q(3, 5), q(-4, 5), q(0, 1)],
            [q(4, 5), q(3, 5), q(0, 1)],
            [q(0, 1), q(0, 1), q(1, 1)],
        ];
        let boost: Mat3 = [
            [q(5, 4), q(0, 1), q(3, 4)],
            [q(0, 1), q(1, 1), q(0, 1)],
            [q(3, 4), q(0, 1), q(5, 4)],
        ];
        let flip: Mat3 = [
            [q(-1, 1), q(0, 1), q(0, 1)],
            [q(0, 1), q(1, 1), q(0, 1)],
            [q(0, 1), q(0, 1), q(1, 1)],
        ];
        let mut t = identity3();
        for g in word {
            let gen = match g {
                0 => &rot,
                1 => &boost,
                _ => &flip,
            };
            t = mat_mul(&t, gen);
        }
        t
    })
}

// ---------------------------------------------------------------------------
// Q(sqrt2) field axioms
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn field_axioms(a in quad(), b in quad(), c in quad()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-&a), QuadScalar::zero());
    }

    #[test]
    fn inverse_and_conjugate(a in nonzero_quad(), b in quad()) {
        let inv = a.inverse().unwrap();
        prop_assert_eq!(&a * &inv, QuadScalar::one());
        // conjugation is a ring automorphism
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        // norm is multiplicative and equals a * conj(a)
        prop_assert_eq!(&a * &a.conj(), QuadScalar::new(a.norm(), num::Zero::zero()));
    }

    #[test]
    fn exact_sign_matches_float(a in quad()) {
        let f = a.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(a.sign() as f64, f.signum());
        }
    }

    #[test]
    fn sqrt_roundtrip(a in quad()) {
        let sq = &a * &a;
        if let Some(r) = sq.sqrt_in_field() {
            prop_assert_eq!(&r * &r, sq);
            prop_assert!(r.sign() >= 0);
        }
    }
}

// ---------------------------------------------------------------------------
// Curvature identities
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn curvature_symmetries_and_bianchi(alg in family_point()) {
        let data = curvature_tensor(&alg);
        let r = &data.r;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        // skew symmetries and pair symmetry
                        prop_assert_eq!(&r[i][j][k][l], &(-&r[j][i][k][l]));
                        prop_assert_eq!(&r[i][j][k][l], &(-&r[i][j][l][k]));
                        prop_assert_eq!(&r[i][j][k][l], &r[k][l][i][j]);
                        // first Bianchi identity
                        let s = &(&r[i][j][k][l] + &r[j][k][i][l]) + &r[k][i][j][l];
                        prop_assert!(s.is_zero());
                    }
                }
            }
        }
        // ric symmetric; scal = trace of ric_op
        let (ric, ric_op, scal) = ricci(&alg);
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(&ric[i][j], &ric[j][i]);
            }
        }
        prop_assert_eq!(lorsol::linalg::trace(&ric_op), scal);
    }
}

// ---------------------------------------------------------------------------
// Segre invariances
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn segre_scaling_invariance(alg in family_point(), c in nonzero_quad()) {
        let (_, ric_op, _) = ricci(&alg);
        let base = classify(&ric_op, alg.metric()).unwrap();
        let scaled = classify(&mat_scale(&c, &ric_op), alg.metric()).unwrap();
        prop_assert_eq!(scaled.segre_type, base.segre_type);
        prop_assert_eq!(scaled.degenerate, base.degenerate);
        prop_assert_eq!(scaled.minimal_poly_degree, base.minimal_poly_degree);
    }

    #[test]
    fn segre_isometry_conjugation_invariance(
        alg in family_point().prop_filter("orthonormal metric", |a| {
            a.metric().is_orthonormal_ppm()
        }),
        t in isometry_ppm(),
    ) {
        let (_, ric_op, _) = ricci(&alg);
        let base = classify(&ric_op, alg.metric()).unwrap();
        let tinv = inverse3(&t).expect("isometries are invertible");
        let conj = mat_mul(&tinv, &mat_mul(&ric_op, &t));
        // sanity: t really is an isometry of the metric
        let g = alg.metric().matrix();
        prop_assert_eq!(&mat_mul(&transpose(&t), &mat_mul(g, &t)), g);
        let moved = classify(&conj, alg.metric()).unwrap();
        prop_assert_eq!(moved.segre_type, base.segre_type);
        prop_assert_eq!(moved.degenerate, base.degenerate);
        let eig = |r: &lorsol::segre::SegreReport| -> Vec<(Option<QuadScalar>, usize)> {
            r.eigenvalues.iter().map(|e| (e.exact.clone(), e.multiplicity)).collect()
        };
        prop_assert_eq!(eig(&moved), eig(&base));
    }
}

// ---------------------------------------------------------------------------
// Soliton identities
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lie_derivative_is_symmetric(alg in family_point(), x in proptest::collection::vec(quad(), 3)) {
        let v = [x[0].clone(), x[1].clone(), x[2].clone()];
        let lie = lie_derivative_metric(&alg, &v);
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(&lie[i][j], &lie[j][i]);
            }
        }
    }

    #[test]
    fn reported_solutions_have_zero_residual(alg in family_point(), picks in proptest::collection::vec(-3i64..4, 4)) {
        let mut sol = solve(&alg);
        annotate(&mut sol, &alg);
        if let Some(p) = &sol.particular {
            // particular solution plus an arbitrary kernel combination
            let mut x = p.x.clone();
            let mut lambda = p.lambda.clone();
            for (h, k) in sol.homogeneous_basis.iter().zip(&picks) {
                let c = QuadScalar::from_int(*k);
                for i in 0..3 {
                    x[i] = &x[i] + &(&c * &h[i]);
                }
                lambda = &lambda + &(&c * &h[3]);
            }
            let res = residual(&alg, &x, &lambda);
            prop_assert!(lorsol::linalg::is_zero_mat(&res));
        }
        // trivial flag consistency: Einstein metrics always solve
        if sol.trivial {
            prop_assert!(sol.exists);
        }
    }

    #[test]
    fn segre_theorem_two_local(alg in family_point()) {
        // pointwise form of Theorem 2 on random points (full sweeps in the
        // acceptance gate): nontrivial left-invariant soliton existence
        // implies the non-diagonalizable triple-eigenvalue Ricci operator
        let mut sol = solve(&alg);
        annotate(&mut sol, &alg);
        let report = classify_algebra(&alg).unwrap();
        if sol.exists && !sol.trivial {
            let jordan = matches!(
                report.segre_type,
                lorsol::segre::SegreType::Jordan3 | lorsol::segre::SegreType::Jordan21
            );
            prop_assert!(jordan && report.has_triple_eigenvalue());
        }
    }
}

//! Transcriptions of the published component tables for the seven families:
//! curvature components, Ricci operators and eigenvalues, Lie-derivative
//! matrices, the per-family soliton systems, and the explicit soliton fields.
//!
//! These are data, not computation: the curvature and soliton modules derive
//! everything from structure constants, and the verification sweeps compare
//! the two routes. For family IV3 every table refers to the orthonormal
//! basis produced by [`crate::liemodel::orthonormalize_iv3`].

use crate::exactfield::QuadScalar;
use crate::liemodel::{Family, LieAlgebra3};
use crate::linalg::{zero_mat3, Mat3, Vec3};

pub type R4 = [[[[QuadScalar; 3]; 3]; 3]; 3];

fn qi(n: i64) -> QuadScalar {
    QuadScalar::from_int(n)
}

fn qr(n: i64, d: i64) -> QuadScalar {
    QuadScalar::from_ratio(n, d)
}

/// 1/sqrt2 = sqrt2/2
fn isq2() -> QuadScalar {
    QuadScalar::sqrt2() / qi(2)
}

/// Set `R_{ijkl}` (1-based) and all seven symmetry images.
fn set_component(r: &mut R4, i: usize, j: usize, k: usize, l: usize, v: QuadScalar) {
    let (i, j, k, l) = (i - 1, j - 1, k - 1, l - 1);
    let neg = -v.clone();
    r[i][j][k][l] = v.clone();
    r[j][i][k][l] = neg.clone();
    r[i][j][l][k] = neg.clone();
    r[j][i][l][k] = v.clone();
    r[k][l][i][j] = v.clone();
    r[l][k][i][j] = neg.clone();
    r[k][l][j][i] = neg;
    r[l][k][j][i] = v;
}

/// Expected exact tables for one family at given parameters.
pub struct ExpectedTables {
    /// Full covariant curvature tensor implied by the printed components
    /// (components in no symmetry orbit of a printed one are zero).
    pub r: R4,
    /// Printed Ricci operator.
    pub ric_op: Mat3,
}

fn params_of(alg: &LieAlgebra3) -> (QuadScalar, QuadScalar, QuadScalar, QuadScalar) {
    (
        alg.param("alpha"),
        alg.param("beta"),
        alg.param("gamma"),
        alg.param("delta"),
    )
}

/// The printed curvature and Ricci tables for a tagged algebra.
/// For IV3 pass the algebra already expressed in the orthonormal basis.
pub fn expected_tables(alg: &LieAlgebra3) -> Option<ExpectedTables> {
    let family = alg.family()?;
    let (a, b, g, d) = params_of(alg);
    let quarter = qr(1, 4);
    let half = qr(1, 2);
    let mut r: R4 = Default::default();
    let mut ric_op = zero_mat3();
    match family {
        Family::Ia => {
            let r1221 = &quarter
                * &(&(&(&(&(&(&a * &a) + &(&b * &b)) - &(qi(3) * &g * &g)) - &(qi(2) * &a * &b))
                    + &(qi(2) * &a * &g))
                    + &(qi(2) * &b * &g));
            let r1313 = &quarter
                * &(&(&(&(&(&(&a * &a) - &(qi(3) * &b * &b)) + &(&g * &g)) + &(qi(2) * &a * &b))
                    - &(qi(2) * &a * &g))
                    + &(qi(2) * &b * &g));
            let r2332 = &quarter
                * &(&(&(&(&(&(qi(3) * &a * &a) - &(&b * &b)) - &(&g * &g)) - &(qi(2) * &a * &b))
                    - &(qi(2) * &a * &g))
                    + &(qi(2) * &b * &g));
            set_component(&mut r, 1, 2, 2, 1, r1221);
            set_component(&mut r, 1, 3, 1, 3, r1313);
            set_component(&mut r, 2, 3, 3, 2, r2332);
            let l1 = &half * &(&(&(&b - &g) * &(&b - &g)) - &(&a * &a));
            let l2 = &half * &(&(&(&a - &g) * &(&a - &g)) - &(&b * &b));
            let l3 = &half * &(&(&(&a - &b) * &(&a - &b)) - &(&g * &g));
            ric_op[0][0] = l1;
            ric_op[1][1] = l2;
            ric_op[2][2] = l3;
        }
        Family::Ib => {
            let r1221 = &quarter * &(&(&a * &a) + &(qi(4) * &b * &b));
            let r2332 = &(&(&(qr(3, 4) * &a) * &a) + &(&b * &b)) - &(&a * &g);
            let r1231 = &b * &(&a - &(qi(2) * &g));
            set_component(&mut r, 1, 2, 2, 1, r1221.clone());
            set_component(&mut r, 1, 3, 1, 3, r1221);
            set_component(&mut r, 2, 3, 3, 2, r2332);
            set_component(&mut r, 1, 2, 3, 1, r1231);
            let off = &b * &(&a - &(qi(2) * &g));
            let diag = &(&half * &a) * &(&a - &(qi(2) * &g));
            ric_op[0][0] = -(&half * &(&(&a * &a) + &(qi(4) * &b * &b)));
            ric_op[1][1] = diag.clone();
            ric_op[2][2] = diag;
            ric_op[1][2] = -off.clone();
            ric_op[2][1] = off;
        }
        Family::II => {
            let r1221 = &quarter * &(&(&(&a * &a) - &(qi(2) * &a)) + &(qi(4) * &b));
            let r1313 = &quarter * &(&(&(&a * &a) + &(qi(2) * &a)) - &(qi(4) * &b));
            let r2332 = &(&quarter * &a) * &(&(qi(3) * &a) - &(qi(4) * &b));
            let r1231 = &(&half * &a) - &b;
            set_component(&mut r, 1, 2, 2, 1, r1221);
            set_component(&mut r, 1, 3, 1, 3, r1313);
            set_component(&mut r, 2, 3, 3, 2, r2332);
            set_component(&mut r, 1, 2, 3, 1, r1231);
            let am2b = &a - &(qi(2) * &b);
            ric_op[0][0] = -(&half * &a * &a);
            ric_op[1][1] = &half * &(&a + &qi(1)) * &am2b;
            ric_op[2][2] = &half * &(&a - &qi(1)) * &am2b;
            ric_op[1][2] = &b - &(&half * &a);
            ric_op[2][1] = &(&half * &a) - &b;
        }
        Family::III => {
            let r1221 = &quarter * &(&(&a * &a) + &qi(4));
            let r1331 = &qi(1) - &(&quarter * &a * &a);
            let r2323 = &quarter * &a * &a;
            let r1231 = qi(1);
            let r1223 = &isq2() * &a;
            set_component(&mut r, 1, 2, 2, 1, r1221);
            set_component(&mut r, 1, 3, 3, 1, r1331);
            set_component(&mut r, 2, 3, 2, 3, r2323);
            set_component(&mut r, 1, 2, 3, 1, r1231);
            set_component(&mut r, 1, 2, 2, 3, r1223.clone());
            set_component(&mut r, 1, 3, 2, 3, r1223.clone());
            let a2h = &half * &a * &a;
            ric_op[0][0] = -a2h.clone();
            ric_op[0][1] = -(&isq2() * &a);
            ric_op[0][2] = -(&isq2() * &a);
            ric_op[1][0] = -(&isq2() * &a);
            ric_op[1][1] = -(&half * &(&(&a * &a) + &qi(2)));
            ric_op[1][2] = qi(-1);
            ric_op[2][0] = &isq2() * &a;
            ric_op[2][1] = qi(1);
            ric_op[2][2] = &qi(1) - &a2h;
        }
        Family::IV1 => {
            let r1212 = &quarter
                * &(&(&(&(&b * &b) + &(&g * &g)) + &(qi(4) * &a * &d)) - &(qi(2) * &b * &g));
            let r1313 = &quarter
                * &(&(&(&(qi(4) * &a * &a) - &(qi(3) * &b * &b)) + &(&g * &g))
                    + &(qi(2) * &b * &g));
            let r2332 = &quarter
                * &(&(&(&(&b * &b) - &(qi(3) * &g * &g)) + &(qi(4) * &d * &d))
                    + &(qi(2) * &b * &g));
            set_component(&mut r, 1, 2, 1, 2, r1212);
            set_component(&mut r, 1, 3, 1, 3, r1313);
            set_component(&mut r, 2, 3, 3, 2, r2332);
            let apd = &a + &d;
            ric_op[0][0] = &half * &(&(&(&b * &b) - &(&g * &g)) - &(qi(2) * &a * &apd));
            ric_op[1][1] = &half * &(&(&(&g * &g) - &(&b * &b)) - &(qi(2) * &d * &apd));
            ric_op[2][2] = &half
                * &(&(&(&b - &g) * &(&b - &g)) - &(qi(2) * &(&(&a * &a) + &(&d * &d))));
        }
        Family::IV2 => {
            let bpg = &b + &g;
            let r1212 = &(&a * &d) - &(&quarter * &bpg * &bpg);
            let r1331 = &quarter
                * &(&(&(&(qi(4) * &a * &a) + &(qi(3) * &b * &b)) - &(&g * &g))
                    + &(qi(2) * &b * &g));
            let r2323 = &quarter
                * &(&(&(&(&b * &b) - &(qi(3) * &g * &g)) - &(qi(4) * &d * &d))
                    - &(qi(2) * &b * &g));
            set_component(&mut r, 1, 2, 1, 2, r1212);
            set_component(&mut r, 1, 3, 3, 1, r1331);
            set_component(&mut r, 2, 3, 2, 3, r2323);
            let apd = &a + &d;
            ric_op[0][0] = &half * &(&(&(&b * &b) - &(&g * &g)) + &(qi(2) * &a * &apd));
            ric_op[1][1] = &half * &(&(&(&g * &g) - &(&b * &b)) + &(qi(2) * &d * &apd));
            ric_op[2][2] =
                &half * &(&(&bpg * &bpg) + &(qi(2) * &(&(&a * &a) + &(&d * &d))));
        }
        Family::IV3 => {
            let r1212 = &quarter
                * &(&(&(qi(2) * &a * &d) - &(qi(2) * &a * &a))
                    - &(&g * &(&(qi(2) * &b) + &g)));
            let r1213 = &half * &(&(&(&a * &a) + &(&b * &g)) - &(&a * &d));
            let r1313 = &quarter
                * &(&(&(qi(2) * &a * &d) - &(qi(2) * &a * &a)) + &(&g * &(&g - &(qi(2) * &b))));
            let r2323 = -(&qr(3, 4) * &g * &g);
            set_component(&mut r, 1, 2, 1, 2, r1212);
            set_component(&mut r, 1, 2, 1, 3, r1213);
            set_component(&mut r, 1, 3, 1, 3, r1313);
            set_component(&mut r, 2, 3, 2, 3, r2323);
            let ada = &a * &(&d - &a);
            let aad = &a * &(&a - &d);
            ric_op[0][0] = -(&half * &g * &g);
            ric_op[1][1] = &half * &(&ada + &(&g * &(&g - &b)));
            ric_op[1][2] = &half * &(&aad + &(&b * &g));
            ric_op[2][1] = -(&half * &(&aad + &(&b * &g)));
            ric_op[2][2] = &half * &(&aad + &(&g * &(&b + &g)));
        }
    }
    Some(ExpectedTables { r, ric_op })
}

/// Printed Ricci-operator eigenvalues where the paper lists them (real ones).
pub fn expected_eigenvalues(alg: &LieAlgebra3) -> Option<Vec<QuadScalar>> {
    let family = alg.family()?;
    let (a, b, g, d) = params_of(alg);
    let half = qr(1, 2);
    match family {
        Family::Ia => Some(vec![
            &half * &(&(&(&b - &g) * &(&b - &g)) - &(&a * &a)),
            &half * &(&(&(&a - &g) * &(&a - &g)) - &(&b * &b)),
            &half * &(&(&(&a - &b) * &(&a - &b)) - &(&g * &g)),
        ]),
        Family::II => {
            let l23 = &(&half * &a) * &(&a - &(qi(2) * &b));
            Some(vec![-(&half * &a * &a), l23.clone(), l23])
        }
        Family::III => {
            let l = -(&half * &a * &a);
            Some(vec![l.clone(), l.clone(), l])
        }
        Family::IV1 => {
            let apd = &a + &d;
            Some(vec![
                &half * &(&(&(&b * &b) - &(&g * &g)) - &(qi(2) * &a * &apd)),
                &half * &(&(&(&g * &g) - &(&b * &b)) - &(qi(2) * &d * &apd)),
                &half * &(&(&(&b - &g) * &(&b - &g)) - &(qi(2) * &(&(&a * &a) + &(&d * &d)))),
            ])
        }
        Family::IV2 => {
            let apd = &a + &d;
            let bpg = &b + &g;
            Some(vec![
                &half * &(&(&(&b * &b) - &(&g * &g)) + &(qi(2) * &a * &apd)),
                &half * &(&(&(&g * &g) - &(&b * &b)) + &(qi(2) * &d * &apd)),
                &half * &(&(&bpg * &bpg) + &(qi(2) * &(&(&a * &a) + &(&d * &d)))),
            ])
        }
        Family::IV3 => {
            let l = &half * &g * &g;
            Some(vec![-l.clone(), l.clone(), l])
        }
        Family::Ib => None,
    }
}

/// The printed `L_X g` matrix for a tagged family, as a function of X.
/// For IV3 both X and the output refer to the orthonormal basis.
pub fn lie_derivative_matrix(alg: &LieAlgebra3, x: &Vec3) -> Option<Mat3> {
    let family = alg.family()?;
    let (a, b, g, d) = params_of(alg);
    let (x1, x2, x3) = (x[0].clone(), x[1].clone(), x[2].clone());
    let half = qr(1, 2);
    let s2 = QuadScalar::sqrt2();
    let mut m = zero_mat3();
    match family {
        Family::Ia => {
            m[0][1] = &x3 * &(&a - &b);
            m[0][2] = &x2 * &(&g - &a);
            m[1][2] = &x1 * &(&b - &g);
        }
        Family::Ib => {
            m[0][1] = &(&x2 * &b) + &(&x3 * &(&a - &g));
            m[0][2] = &(&x3 * &b) + &(&x2 * &(&g - &a));
            m[1][1] = qi(-2) * &x1 * &b;
            m[2][2] = qi(-2) * &x1 * &b;
        }
        Family::II => {
            let two_amb = qi(2) * &(&a - &b);
            m[0][1] = &half * &(&x2 + &(&x3 * &(&two_amb - &qi(1))));
            m[0][2] = &half * &(&x3 + &(&x2 * &(-(&two_amb.clone()) - &qi(1))));
            m[1][1] = -x1.clone();
            m[1][2] = x1.clone();
            m[2][2] = -x1.clone();
        }
        Family::III => {
            let f = isq2();
            m[0][0] = &f * &(qi(-2) * &(&x2 + &x3));
            m[0][1] = &f * &x1;
            m[0][2] = &f * &x1;
            m[1][1] = &f * &(qi(2) * &x3);
            m[1][2] = &f * &(&x3 - &x2);
            m[2][2] = &f * &(qi(-2) * &x2);
        }
        Family::IV1 => {
            m[0][0] = qi(-2) * &a * &x3;
            m[0][1] = &x3 * &(&b - &g);
            m[0][2] = &(&x1 * &a) + &(&x2 * &g);
            m[1][1] = qi(2) * &x3 * &d;
            m[1][2] = -(&(&x1 * &b) + &(&x2 * &d));
        }
        Family::IV2 => {
            m[0][0] = qi(2) * &x3 * &a;
            m[0][1] = &x3 * &(&b + &g);
            m[0][2] = -(&(&x1 * &a) + &(&x2 * &g));
            m[1][1] = qi(2) * &x3 * &d;
            m[1][2] = -(&(&x1 * &b) + &(&x2 * &d));
        }
        Family::IV3 => {
            m[0][0] = &s2 * &a * &(&x3 - &x2);
            m[0][1] = &half
                * &(&(&(&x3 * &(&b + &(qi(2) * &g))) + &(&s2 * &x1 * &a)) - &(&x2 * &b));
            m[0][2] = &half
                * &(&(&(&x2 * &(&b - &(qi(2) * &g))) - &(&s2 * &x1 * &a)) - &(&x3 * &b));
            m[1][1] = &(&x1 * &b) + &(&s2 * &x3 * &d);
            m[1][2] = -(&(&x1 * &b) + &(&isq2() * &d * &(&x2 + &x3)));
            m[2][2] = &(&x1 * &b) + &(&s2 * &x2 * &d);
        }
    }
    // symmetrize the upper triangle
    for i in 0..3 {
        for j in (i + 1)..3 {
            m[j][i] = m[i][j].clone();
        }
    }
    Some(m)
}

/// One affine equation `sum coeff_i * (X1, X2, X3, lambda)_i = rhs`.
pub type AffineEq = ([QuadScalar; 4], QuadScalar);

/// The printed soliton system for a tagged family, as affine equations in
/// `(X1, X2, X3, lambda)`. `None` when the paper prints no system for the
/// parameter values (IV3 with alpha = gamma = 0, the flat case).
pub fn soliton_system(alg: &LieAlgebra3) -> Option<Vec<AffineEq>> {
    let family = alg.family()?;
    let (a, b, g, d) = params_of(alg);
    let z = QuadScalar::zero;
    let s2 = QuadScalar::sqrt2();
    let two = qi(2);
    let eq = |c1: QuadScalar, c2: QuadScalar, c3: QuadScalar, cl: QuadScalar, rhs: QuadScalar| {
        ([c1, c2, c3, cl], rhs)
    };
    match family {
        Family::Ia => Some(vec![
            // (beta-gamma)^2 - alpha^2 = 2 lambda, etc.
            eq(z(), z(), z(), two.clone(),
                &(&(&b - &g) * &(&b - &g)) - &(&a * &a)),
            eq(z(), z(), z(), two.clone(),
                &(&(&a - &g) * &(&a - &g)) - &(&b * &b)),
            eq(z(), z(), z(), two.clone(),
                &(&(&a - &b) * &(&a - &b)) - &(&g * &g)),
            eq(&b - &g, z(), z(), z(), z()),
            eq(z(), &a - &g, z(), z(), z()),
            eq(z(), z(), &a - &b, z(), z()),
        ]),
        Family::Ib => Some(vec![
            eq(z(), z(), z(), -two.clone(), &(&a * &a) + &(qi(4) * &b * &b)),
            eq(qi(4) * &b, z(), z(), two.clone(),
                &(&a * &a) - &(qi(2) * &a * &g)),
            eq(qi(-4) * &b, z(), z(), two.clone(),
                &(&a * &a) - &(qi(2) * &a * &g)),
            eq(z(), b.clone(), &a - &g, z(), z()),
            eq(z(), &a - &g, -b.clone(), z(), z()),
            eq(z(), z(), z(), z(), -(&b * &(&a - &(qi(2) * &g)))),
        ]),
        Family::II => {
            let amb2 = qi(2) * &(&a - &b);
            Some(vec![
                eq(z(), z(), z(), -two.clone(), &a * &a),
                eq(qi(2), z(), z(), two.clone(),
                    &(&(&(&a * &a) - &(qi(2) * &a * &b)) + &a) - &(qi(2) * &b)),
                eq(qi(-2), z(), z(), two.clone(),
                    &(&(&(&a * &a) - &(qi(2) * &a * &b)) - &a) + &(qi(2) * &b)),
                eq(qi(-2), z(), z(), z(), &(qi(2) * &b) - &a),
                eq(z(), qi(1), &amb2 - &qi(1), z(), z()),
                eq(z(), &amb2 + &qi(1), qi(-1), z(), z()),
            ])
        }
        Family::III => Some(vec![
            eq(z(), s2.clone(), s2.clone(), qi(1), -(&qr(1, 2) * &a * &a)),
            eq(z(), z(), -s2.clone(), qi(1), -(&(&qr(1, 2) * &a * &a) + &qi(1))),
            eq(z(), -s2.clone(), z(), qi(1), &qi(1) - &(&qr(1, 2) * &a * &a)),
            eq(isq2(), z(), z(), z(), &isq2() * &a),
            eq(z(), qi(1), qi(-1), z(), -s2),
        ]),
        Family::IV1 => {
            let apd = &a + &d;
            Some(vec![
                eq(z(), z(), qi(4) * &a, -two.clone(),
                    -(&(&(&b * &b) - &(&g * &g)) - &(qi(2) * &a * &apd))),
                eq(z(), z(), qi(4) * &d, -two.clone(),
                    -(&(&(&g * &g) - &(&b * &b)) - &(qi(2) * &d * &apd))),
                eq(z(), z(), z(), two.clone(),
                    &(&(&b - &g) * &(&b - &g)) - &(qi(2) * &(&(&a * &a) + &(&d * &d)))),
                eq(a.clone(), g.clone(), z(), z(), z()),
                eq(b.clone(), d.clone(), z(), z(), z()),
                eq(z(), z(), &b - &g, z(), z()),
            ])
        }
        Family::IV2 => {
            let apd = &a + &d;
            Some(vec![
                eq(z(), z(), qi(4) * &a, -two.clone(),
                    -(&(&(&b * &b) - &(&g * &g)) + &(qi(2) * &a * &apd))),
                eq(z(), z(), qi(4) * &d, -two.clone(),
                    -(&(&(&g * &g) - &(&b * &b)) + &(qi(2) * &d * &apd))),
                eq(z(), z(), z(), two.clone(),
                    &(&(&b + &g) * &(&b + &g)) + &(qi(2) * &(&(&a * &a) + &(&d * &d)))),
                eq(a.clone(), g.clone(), z(), z(), z()),
                eq(b.clone(), d.clone(), z(), z(), z()),
                eq(z(), z(), &b + &g, z(), z()),
            ])
        }
        Family::IV3 => {
            if a.is_zero() && !g.is_zero() {
                // system for alpha = 0 != gamma
                Some(vec![
                    eq(z(), z(), z(), -two.clone(), &g * &g),
                    eq(qi(2) * &b, z(), qi(2) * &s2 * &d, -two.clone(),
                        -(&(&g * &g) - &(&b * &g))),
                    eq(qi(-2) * &b, qi(-2) * &s2 * &d, z(), -two.clone(),
                        -(&(&g * &g) + &(&b * &g))),
                    eq(z(), b.clone(), -(&(qi(2) * &g) + &b), z(), z()),
                    eq(z(), &(qi(2) * &g) - &b, b.clone(), z(), z()),
                    eq(qi(-2) * &b, -(&s2 * &d), -(&s2 * &d), z(), -(&b * &g)),
                ])
            } else if g.is_zero() && !a.is_zero() {
                // system for alpha != 0 = gamma
                Some(vec![
                    eq(z(), qi(2) * &s2 * &a, qi(-2) * &s2 * &a, two.clone(), z()),
                    eq(qi(2) * &b, z(), qi(2) * &s2 * &d, -two.clone(),
                        &(&a * &a) - &(&a * &d)),
                    eq(qi(2) * &b, qi(2) * &s2 * &d, z(), two.clone(),
                        &(&a * &a) - &(&a * &d)),
                    eq(&s2 * &a, -b.clone(), b.clone(), z(), z()),
                    eq(qi(-2) * &b, -(&s2 * &d), -(&s2 * &d), z(),
                        -(&(&a * &a) - &(&a * &d))),
                ])
            } else {
                None
            }
        }
    }
}

/// The explicit printed soliton fields, where the paper gives one for the
/// parameter values: `(X, lambda)`. IV3 fields are in the orthonormal basis.
/// For the IV3 lambda-family (delta = 2 alpha) the member at the supplied
/// lambda is returned.
pub fn printed_soliton_field(
    alg: &LieAlgebra3,
    lambda_choice: Option<&QuadScalar>,
) -> Option<(Vec3, QuadScalar)> {
    let family = alg.family()?;
    let (a, b, g, d) = params_of(alg);
    let z = QuadScalar::zero;
    match family {
        Family::II => {
            if a.is_zero() && !b.is_zero() {
                // X = -beta e1, lambda = 0
                Some(([-b.clone(), z(), z()], z()))
            } else if a == b && !a.is_zero() {
                // one-parameter family; delta = 0 representative, lambda = -beta^2/2
                Some((
                    [-(&qr(1, 2) * &b), z(), z()],
                    -(&qr(1, 2) * &b * &b),
                ))
            } else {
                None
            }
        }
        Family::III => Some((
            [a.clone(), -isq2(), isq2()],
            -(&qr(1, 2) * &a * &a),
        )),
        Family::IV3 => {
            if !g.is_zero() || a.is_zero() {
                return None;
            }
            if d == qi(2) * &a {
                // lambda-family member at the chosen lambda
                let lam = lambda_choice.cloned().unwrap_or_else(QuadScalar::zero);
                let d2 = &d * &d;
                let d3 = &d2 * &d;
                let d4 = &d2 * &d2;
                let e8s2d3 = qi(8) * &QuadScalar::sqrt2() * &d3;
                let x1 = -(&(qi(2) * &b * &lam) / &d2);
                let x2 = -(&(&d4 + &(qi(8) * &(&d2 - &(qi(2) * &b * &b)) * &lam)) / &e8s2d3);
                let x3 = -(&(&d4 - &(qi(8) * &(&d2 + &(qi(2) * &b * &b)) * &lam)) / &e8s2d3);
                Some(([x1, x2, x3], lam))
            } else if !d.is_zero() {
                // steady null field
                let c = &(&(&a * &a) - &(&a * &d)) / &(qi(2) * &QuadScalar::sqrt2() * &d);
                Some(([z(), c.clone(), c], z()))
            } else {
                None
            }
        }
        _ => None,
    }
}

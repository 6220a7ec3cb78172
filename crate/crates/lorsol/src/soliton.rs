//! Assembly and exact solution of the left-invariant Ricci-soliton equation
//! `L_X g + Ric = lambda g` as an affine system in `(X1, X2, X3, lambda)`.

use serde::Serialize;

use crate::curvature::ricci;
use crate::exactfield::QuadScalar;
use crate::liemodel::LieAlgebra3;
use crate::linalg::{basis_vec3, solve_affine, zero_mat3, Mat3, Vec3};
use crate::papertables;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolitonClass {
    Shrinking,
    Steady,
    Expanding,
    FamilyInLambda,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Null,
    VariesWithinFamily,
}

/// Exact affine solution set of the soliton equation, with annotations.
#[derive(Debug, Clone, Serialize)]
pub struct SolitonSolutionSet {
    pub exists: bool,
    /// Free variables set to zero.
    pub particular: Option<Particular>,
    /// Kernel basis in `(X1, X2, X3, lambda)` coordinates.
    pub homogeneous_basis: Vec<[QuadScalar; 4]>,
    /// The metric is Einstein, so every solution is a trivial soliton.
    pub trivial: bool,
    pub soliton_class: Option<SolitonClass>,
    pub causal_character: Option<CausalCharacter>,
    /// Reduced echelon form of the augmented 6x5 system, for audit.
    pub echelon: Vec<Vec<QuadScalar>>,
    /// The published representative, when the family tag matches one.
    pub paper_representative: Option<Particular>,
    /// False when a published representative failed the residual check.
    pub paper_representative_verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Particular {
    pub x: [QuadScalar; 3],
    pub lambda: QuadScalar,
}

/// `(L_X g)(e_i, e_j) = -<[X, e_i], e_j> - <e_i, [X, e_j]>` for a
/// left-invariant field X.
pub fn lie_derivative_metric(alg: &LieAlgebra3, x: &Vec3) -> Mat3 {
    let g = alg.metric();
    let mut out = zero_mat3();
    for i in 0..3 {
        for j in 0..3 {
            let bi = alg.bracket(x, &basis_vec3(i));
            let bj = alg.bracket(x, &basis_vec3(j));
            out[i][j] = -(g.inner(&bi, &basis_vec3(j)) + g.inner(&basis_vec3(i), &bj));
        }
    }
    out
}

/// Residual matrix `L_X g + Ric - lambda g`; zero iff `(X, lambda)` solves
/// the soliton equation.
pub fn residual(alg: &LieAlgebra3, x: &Vec3, lambda: &QuadScalar) -> Mat3 {
    let (ric, _, _) = ricci(alg);
    residual_from(alg, &ric, x, lambda)
}

/// Residual with a precomputed Ricci tensor.
pub fn residual_from(alg: &LieAlgebra3, ric: &Mat3, x: &Vec3, lambda: &QuadScalar) -> Mat3 {
    let lie = lie_derivative_metric(alg, x);
    let g = alg.metric();
    let mut out = zero_mat3();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = &(&lie[i][j] + &ric[i][j]) - &(lambda * g.entry(i, j));
        }
    }
    out
}

/// Index order of the six independent entries: 11, 22, 33, 12, 13, 23.
pub const ENTRY_ORDER: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)];

/// The six entries of `L_X g + Ric - lambda g = 0` as affine-linear
/// equations in `(X1, X2, X3, lambda)`: returns `(coefficients, rhs)`.
pub fn build_system(alg: &LieAlgebra3) -> (Vec<Vec<QuadScalar>>, Vec<QuadScalar>) {
    let (ric, _, _) = ricci(alg);
    build_system_from(alg, &ric)
}

/// System assembly with a precomputed Ricci tensor.
pub fn build_system_from(alg: &LieAlgebra3, ric: &Mat3) -> (Vec<Vec<QuadScalar>>, Vec<QuadScalar>) {
    let g = alg.metric();
    // L_X g is linear in X: columns from basis fields
    let lie_cols: [Mat3; 3] = [
        lie_derivative_metric(alg, &basis_vec3(0)),
        lie_derivative_metric(alg, &basis_vec3(1)),
        lie_derivative_metric(alg, &basis_vec3(2)),
    ];
    let mut rows = Vec::with_capacity(6);
    let mut rhs = Vec::with_capacity(6);
    for &(i, j) in &ENTRY_ORDER {
        let row = vec![
            lie_cols[0][i][j].clone(),
            lie_cols[1][i][j].clone(),
            lie_cols[2][i][j].clone(),
            -g.entry(i, j).clone(),
        ];
        rows.push(row);
        rhs.push(-ric[i][j].clone());
    }
    (rows, rhs)
}

/// Solve the soliton system exactly and annotate the result.
pub fn solve(alg: &LieAlgebra3) -> SolitonSolutionSet {
    let (ric, ric_op, scal) = ricci(alg);
    solve_with_curvature(alg, &ric, &ric_op, &scal)
}

/// `solve` with precomputed Ricci data (avoids recomputing curvature in
/// sweeps that already have it).
pub fn solve_with_curvature(
    alg: &LieAlgebra3,
    ric: &Mat3,
    ric_op: &Mat3,
    scal: &QuadScalar,
) -> SolitonSolutionSet {
    let (rows, rhs) = build_system_from(alg, ric);
    let mut aug: Vec<Vec<QuadScalar>> = Vec::with_capacity(6);
    for (r, b) in rows.iter().zip(rhs.iter()) {
        let mut v = r.clone();
        v.push(b.clone());
        aug.push(v);
    }
    let echelon = crate::linalg::rref(aug).rows;
    let sol = solve_affine(&rows, &rhs);

    let particular = sol.particular.map(|p| Particular {
        x: [p[0].clone(), p[1].clone(), p[2].clone()],
        lambda: p[3].clone(),
    });
    let homogeneous_basis: Vec<[QuadScalar; 4]> = sol
        .kernel
        .into_iter()
        .map(|v| [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
        .collect();

    let mut out = SolitonSolutionSet {
        exists: particular.is_some(),
        particular,
        homogeneous_basis,
        trivial: crate::curvature::einstein_from(ric_op, scal),
        soliton_class: None,
        causal_character: None,
        echelon,
        paper_representative: None,
        paper_representative_verified: true,
    };
    annotate_from(&mut out, alg, ric);
    out
}

/// Fill in soliton class, causal character, and the published representative.
pub fn annotate(sol: &mut SolitonSolutionSet, alg: &LieAlgebra3) {
    let (ric, _, _) = ricci(alg);
    annotate_from(sol, alg, &ric)
}

fn annotate_from(sol: &mut SolitonSolutionSet, alg: &LieAlgebra3, ric: &Mat3) {
    let Some(part) = sol.particular.clone() else {
        return;
    };
    let lambda_free = sol.homogeneous_basis.iter().any(|k| !k[3].is_zero());
    sol.soliton_class = Some(if lambda_free {
        SolitonClass::FamilyInLambda
    } else {
        match part.lambda.sign() {
            1 => SolitonClass::Shrinking,
            0 => SolitonClass::Steady,
            _ => SolitonClass::Expanding,
        }
    });

    sol.causal_character = Some(causal_character_of_family(
        alg,
        &part.x,
        &sol.homogeneous_basis,
    ));

    if let Some((x, lam)) = papertables::printed_soliton_field(alg, Some(&part.lambda)) {
        let res = residual_from(alg, ric, &x, &lam);
        let ok = crate::linalg::is_zero_mat(&res);
        sol.paper_representative = Some(Particular { x, lambda: lam });
        sol.paper_representative_verified = ok;
    }
}

/// Exact sign analysis of `<X, X>` over the affine family
/// `X = x0 + sum t_a k_a` (k_a the X-parts of the kernel basis).
fn causal_character_of_family(
    alg: &LieAlgebra3,
    x0: &Vec3,
    kernel: &[[QuadScalar; 4]],
) -> CausalCharacter {
    let g = alg.metric();
    let dirs: Vec<Vec3> = kernel
        .iter()
        .map(|k| [k[0].clone(), k[1].clone(), k[2].clone()])
        .filter(|v| !v.iter().all(|x| x.is_zero()))
        .collect();
    let c = g.inner(x0, x0);
    if dirs.is_empty() {
        return match c.sign() {
            1 => CausalCharacter::Spacelike,
            0 => CausalCharacter::Null,
            _ => CausalCharacter::Timelike,
        };
    }
    // q(t) = c + 2 b.t + t^T A t  with A_ab = <k_a, k_b>, b_a = <x0, k_a>
    let n = dirs.len();
    let mut a = vec![vec![QuadScalar::zero(); n]; n];
    let mut b = vec![QuadScalar::zero(); n];
    for (p, dp) in dirs.iter().enumerate() {
        b[p] = g.inner(x0, dp);
        for (q, dq) in dirs.iter().enumerate() {
            a[p][q] = g.inner(dp, dq);
        }
    }
    let a_zero = a.iter().all(|r| r.iter().all(|x| x.is_zero()));
    let b_zero = b.iter().all(|x| x.is_zero());
    if a_zero && b_zero {
        return match c.sign() {
            1 => CausalCharacter::Spacelike,
            0 => CausalCharacter::Null,
            _ => CausalCharacter::Timelike,
        };
    }
    if a_zero {
        // nonconstant linear form takes all signs
        return CausalCharacter::VariesWithinFamily;
    }
    let (pos, neg, _) = crate::linalg::signature(&a);
    if pos > 0 && neg > 0 {
        return CausalCharacter::VariesWithinFamily;
    }
    // semidefinite quadratic part: stationary value decides
    let neg_b: Vec<QuadScalar> = b.iter().map(|x| -x.clone()).collect();
    let stat = solve_affine(&a, &neg_b);
    let Some(xstar) = stat.particular else {
        // b leaves the range of A: linear escape along ker A
        return CausalCharacter::VariesWithinFamily;
    };
    let mut extremum = c.clone();
    for (bi, xi) in b.iter().zip(xstar.iter()) {
        extremum = extremum + bi * xi;
    }
    match (pos > 0, extremum.sign()) {
        (true, 1) => CausalCharacter::Spacelike, // minimum positive
        (true, _) => CausalCharacter::VariesWithinFamily,
        (false, -1) => CausalCharacter::Timelike, // maximum negative
        (false, _) => CausalCharacter::VariesWithinFamily,
    }
}

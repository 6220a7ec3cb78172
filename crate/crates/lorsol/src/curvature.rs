//! Exact Levi-Civita connection and curvature of a left-invariant metric,
//! computed from structure constants alone.
//!
//! Conventions are calibrated against the printed component tables: with
//! R'(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z, the
//! covariant components reported here are R_{ijkl} = -<R'(e_i,e_j)e_k, e_l>
//! and the Ricci tensor is ric(X,Y) = trace(Z -> R'(Z,X)Y).

use crate::exactfield::QuadScalar;
use crate::liemodel::LieAlgebra3;
use crate::linalg::{
    identity3, mat_mul, mat_scale, mat_sub, trace, vec_add, vec_scale, zero_mat3, zero_vec3, Mat3,
    Vec3,
};

/// Connection coefficients `nabla_{e_i} e_j = sum_k Gamma[i][j][k] e_k`.
#[derive(Debug, Clone)]
pub struct ConnectionCoeffs {
    gamma: [[Vec3; 3]; 3],
}

impl ConnectionCoeffs {
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &QuadScalar {
        &self.gamma[i][j][k]
    }

    /// `nabla_{e_i} v` for a constant-coefficient (left-invariant) field v.
    pub fn nabla(&self, i: usize, v: &Vec3) -> Vec3 {
        let mut out = zero_vec3();
        for j in 0..3 {
            if v[j].is_zero() {
                continue;
            }
            out = vec_add(&out, &vec_scale(&v[j], &self.gamma[i][j]));
        }
        out
    }
}

/// Covariant curvature components together with Ricci data.
#[derive(Debug, Clone)]
pub struct CurvatureData {
    /// `R_{ijkl}`, 0-based indices, paper-calibrated sign.
    pub r: [[[[QuadScalar; 3]; 3]; 3]; 3],
    /// Covariant Ricci tensor.
    pub ric: Mat3,
    /// Ricci operator (metric-raised).
    pub ric_op: Mat3,
    /// Scalar curvature.
    pub scal: QuadScalar,
}

impl CurvatureData {
    /// 1-based component accessor matching the printed index style.
    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> &QuadScalar {
        &self.r[i - 1][j - 1][k - 1][l - 1]
    }
}

/// Koszul formula specialized to left-invariant fields:
/// `2 <nabla_{e_i} e_j, e_k> = <[e_i,e_j],e_k> - <[e_j,e_k],e_i> + <[e_k,e_i],e_j>`.
pub fn levi_civita(alg: &LieAlgebra3) -> ConnectionCoeffs {
    let g = alg.metric();
    let ginv = g.inverse();
    let pair = |i: usize, j: usize, k: usize| -> QuadScalar {
        // <[e_i, e_j], e_k>
        let mut s = QuadScalar::zero();
        for m in 0..3 {
            s = s + alg.c(i, j, m) * g.entry(m, k);
        }
        s
    };
    let half = QuadScalar::from_ratio(1, 2);
    let mut gamma: [[Vec3; 3]; 3] =
        std::array::from_fn(|_| std::array::from_fn(|_| zero_vec3()));
    for i in 0..3 {
        for j in 0..3 {
            // covariant coefficients first
            let mut cov = zero_vec3();
            for (k, slot) in cov.iter_mut().enumerate() {
                *slot = &half * &(&(&pair(i, j, k) - &pair(j, k, i)) + &pair(k, i, j));
            }
            for m in 0..3 {
                let mut s = QuadScalar::zero();
                for (k, c) in cov.iter().enumerate() {
                    s = s + &ginv[m][k] * c;
                }
                gamma[i][j][m] = s;
            }
        }
    }
    ConnectionCoeffs { gamma }
}

/// Full curvature pipeline: connection, covariant tensor, Ricci data.
pub fn curvature_tensor(alg: &LieAlgebra3) -> CurvatureData {
    let conn = levi_civita(alg);
    let g = alg.metric();
    let ginv = g.inverse();

    // R'(e_i, e_j) e_k as a contravariant vector
    let mut rvec: [[[Vec3; 3]; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let t1 = conn.nabla(i, &conn.gamma[j][k].clone());
                let t2 = conn.nabla(j, &conn.gamma[i][k].clone());
                let mut br = zero_vec3();
                for m in 0..3 {
                    if alg.c(i, j, m).is_zero() {
                        continue;
                    }
                    br = vec_add(&br, &vec_scale(alg.c(i, j, m), &conn.gamma[m][k]));
                }
                let mut v = zero_vec3();
                for n in 0..3 {
                    v[n] = &(&t1[n] - &t2[n]) - &br[n];
                }
                rvec[i][j][k] = v;
            }
        }
    }

    let mut r: [[[[QuadScalar; 3]; 3]; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let mut s = QuadScalar::zero();
                    for m in 0..3 {
                        s = s + &rvec[i][j][k][m] * g.entry(m, l);
                    }
                    r[i][j][k][l] = -s;
                }
            }
        }
    }

    let mut ric = zero_mat3();
    for j in 0..3 {
        for k in 0..3 {
            let mut s = QuadScalar::zero();
            for i in 0..3 {
                s = s + &rvec[i][j][k][i];
            }
            ric[j][k] = s;
        }
    }
    let ric_op = mat_mul(&ginv, &ric);
    let scal = trace(&ric_op);
    CurvatureData { r, ric, ric_op, scal }
}

/// `(ric, ric_op, scal)` of the algebra. Faster than the full pipeline:
/// only the needed component of each `R'(e_i, e_j) e_k` is formed.
pub fn ricci(alg: &LieAlgebra3) -> (Mat3, Mat3, QuadScalar) {
    let conn = levi_civita(alg);
    let g = alg.metric();
    let ginv = g.inverse();
    let mut ric = zero_mat3();
    for j in 0..3 {
        for k in 0..3 {
            // ric_jk = sum_i <i-th component of R'(e_i, e_j) e_k>
            let mut s = QuadScalar::zero();
            for i in 0..3 {
                for m in 0..3 {
                    // t1_i - t2_i - bracket_i
                    if !conn.gamma[j][k][m].is_zero() {
                        s = s + &conn.gamma[j][k][m] * &conn.gamma[i][m][i];
                    }
                    if !conn.gamma[i][k][m].is_zero() {
                        s = s - &(&conn.gamma[i][k][m] * &conn.gamma[j][m][i]);
                    }
                    if !alg.c(i, j, m).is_zero() {
                        s = s - &(alg.c(i, j, m) * &conn.gamma[m][k][i]);
                    }
                }
            }
            ric[j][k] = s;
        }
    }
    let ric_op = mat_mul(&ginv, &ric);
    let scal = trace(&ric_op);
    (ric, ric_op, scal)
}

/// True iff `ric = c * metric` for some scalar c, exactly.
pub fn einstein_check(alg: &LieAlgebra3) -> bool {
    let (_, ric_op, scal) = ricci(alg);
    einstein_from(&ric_op, &scal)
}

/// Einstein test from precomputed Ricci data.
pub fn einstein_from(ric_op: &Mat3, scal: &QuadScalar) -> bool {
    let c = scal / &QuadScalar::from_int(3);
    mat_sub(ric_op, &mat_scale(&c, &identity3()))
        .iter()
        .all(|row| row.iter().all(|x| x.is_zero()))
}

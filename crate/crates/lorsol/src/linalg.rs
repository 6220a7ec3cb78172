//! Small exact linear algebra over Q(sqrt 2): 3x3 helpers, reduced row
//! echelon form with kernel extraction, and congruence diagonalization for
//! signature counting.

use crate::exactfield::QuadScalar;

pub type Vec3 = [QuadScalar; 3];
pub type Mat3 = [[QuadScalar; 3]; 3];

pub fn zero_vec3() -> Vec3 {
    [QuadScalar::zero(), QuadScalar::zero(), QuadScalar::zero()]
}

pub fn zero_mat3() -> Mat3 {
    [zero_vec3(), zero_vec3(), zero_vec3()]
}

pub fn identity3() -> Mat3 {
    let mut m = zero_mat3();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = QuadScalar::one();
    }
    m
}

pub fn basis_vec3(i: usize) -> Vec3 {
    let mut v = zero_vec3();
    v[i] = QuadScalar::one();
    v
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = zero_mat3();
    for i in 0..3 {
        for j in 0..3 {
            let mut s = QuadScalar::zero();
            for k in 0..3 {
                s = s + &a[i][k] * &b[k][j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn mat_vec(a: &Mat3, v: &Vec3) -> Vec3 {
    let mut out = zero_vec3();
    for i in 0..3 {
        let mut s = QuadScalar::zero();
        for k in 0..3 {
            s = s + &a[i][k] * &v[k];
        }
        out[i] = s;
    }
    out
}

pub fn mat_add(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = zero_mat3();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = &a[i][j] + &b[i][j];
        }
    }
    out
}

pub fn mat_sub(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = zero_mat3();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = &a[i][j] - &b[i][j];
        }
    }
    out
}

pub fn mat_scale(c: &QuadScalar, a: &Mat3) -> Mat3 {
    let mut out = zero_mat3();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = c * &a[i][j];
        }
    }
    out
}

pub fn vec_add(u: &Vec3, v: &Vec3) -> Vec3 {
    [&u[0] + &v[0], &u[1] + &v[1], &u[2] + &v[2]]
}

pub fn vec_sub(u: &Vec3, v: &Vec3) -> Vec3 {
    [&u[0] - &v[0], &u[1] - &v[1], &u[2] - &v[2]]
}

pub fn vec_scale(c: &QuadScalar, v: &Vec3) -> Vec3 {
    [c * &v[0], c * &v[1], c * &v[2]]
}

pub fn transpose(a: &Mat3) -> Mat3 {
    let mut out = zero_mat3();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i].clone();
        }
    }
    out
}

pub fn trace(a: &Mat3) -> QuadScalar {
    &(&a[0][0] + &a[1][1]) + &a[2][2]
}

pub fn det3(a: &Mat3) -> QuadScalar {
    let mut d = QuadScalar::zero();
    d = d + &a[0][0] * &(&a[1][1] * &a[2][2] - &a[1][2] * &a[2][1]);
    d = d - &a[0][1] * &(&a[1][0] * &a[2][2] - &a[1][2] * &a[2][0]);
    d = d + &a[0][2] * &(&a[1][0] * &a[2][1] - &a[1][1] * &a[2][0]);
    d
}

pub fn is_zero_mat(a: &Mat3) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

pub fn is_symmetric(a: &Mat3) -> bool {
    a[0][1] == a[1][0] && a[0][2] == a[2][0] && a[1][2] == a[2][1]
}

/// Adjugate-based exact inverse. `None` if singular.
pub fn inverse3(a: &Mat3) -> Option<Mat3> {
    let d = det3(a);
    if d.is_zero() {
        return None;
    }
    let cof = |i: usize, j: usize| -> QuadScalar {
        let r = [(i + 1) % 3, (i + 2) % 3];
        let c = [(j + 1) % 3, (j + 2) % 3];
        &a[r[0]][c[0]] * &a[r[1]][c[1]] - &a[r[0]][c[1]] * &a[r[1]][c[0]]
    };
    let mut out = zero_mat3();
    for i in 0..3 {
        for j in 0..3 {
            // adjugate: transposed cofactors; cyclic index trick keeps signs
            out[i][j] = cof(j, i) / d.clone();
        }
    }
    Some(out)
}

pub fn rank3(a: &Mat3) -> usize {
    let rows: Vec<Vec<QuadScalar>> = a.iter().map(|r| r.to_vec()).collect();
    rref(rows).pivots.len()
}

/// Result of reduced row echelon elimination on an augmented or plain matrix.
pub struct Rref {
    pub rows: Vec<Vec<QuadScalar>>,
    pub pivots: Vec<usize>,
}

/// Exact Gauss-Jordan elimination; pivot choice is the first nonzero entry in
/// column order, so output is deterministic.
pub fn rref(mut rows: Vec<Vec<QuadScalar>>) -> Rref {
    let nrows = rows.len();
    let ncols = if nrows == 0 { 0 } else { rows[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        if r >= nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("pivot nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] = &rows[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { rows, pivots }
}

/// Exact solution set of `A x = b` in affine form.
pub struct AffineSolution {
    /// `None` when the system is inconsistent.
    pub particular: Option<Vec<QuadScalar>>,
    /// Basis of the homogeneous kernel (empty for a unique solution).
    pub kernel: Vec<Vec<QuadScalar>>,
}

/// Solve `A x = b` exactly; free variables are set to zero in the particular
/// solution, and the kernel basis vectors carry a 1 in their free column.
pub fn solve_affine(a: &[Vec<QuadScalar>], b: &[QuadScalar]) -> AffineSolution {
    let nrows = a.len();
    assert_eq!(nrows, b.len());
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<QuadScalar>> = Vec::with_capacity(nrows);
    for (row, rhs) in a.iter().zip(b.iter()) {
        let mut v = row.clone();
        v.push(rhs.clone());
        aug.push(v);
    }
    let red = rref(aug);
    // inconsistent iff a pivot lands in the rhs column
    if red.pivots.last() == Some(&ncols) {
        return AffineSolution {
            particular: None,
            kernel: Vec::new(),
        };
    }
    let pivot_cols: Vec<usize> = red.pivots.clone();
    let free_cols: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();

    let mut particular = vec![QuadScalar::zero(); ncols];
    for (ri, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = red.rows[ri][ncols].clone();
    }

    let mut kernel = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![QuadScalar::zero(); ncols];
        v[fc] = QuadScalar::one();
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -red.rows[ri][fc].clone();
        }
        kernel.push(v);
    }
    AffineSolution {
        particular: Some(particular),
        kernel,
    }
}

/// Signs of the pivots of a congruence diagonalization of a symmetric matrix:
/// `(positive, negative, zero)` counts.
///
/// Symmetric elimination with diagonal pivoting; when the whole remaining
/// diagonal vanishes but an off-diagonal entry survives, the standard
/// row/column addition turns it into a (+1, -1) pair.
pub fn signature(sym: &[Vec<QuadScalar>]) -> (usize, usize, usize) {
    let n = sym.len();
    let mut m: Vec<Vec<QuadScalar>> = sym.to_vec();
    let mut pos = 0usize;
    let mut neg = 0usize;
    let mut zero = 0usize;
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&_first) = active.first() {
        // prefer a nonzero diagonal pivot
        if let Some(pk) = active.iter().position(|&i| !m[i][i].is_zero()) {
            let p = active[pk];
            let piv = m[p][p].clone();
            match piv.sign() {
                1 => pos += 1,
                -1 => neg += 1,
                _ => unreachable!(),
            }
            active.remove(pk);
            let rest = active.clone();
            for &i in &rest {
                if m[i][p].is_zero() {
                    continue;
                }
                let f = &m[i][p] / &piv;
                for &j in &rest {
                    let t = &m[p][j] * &f;
                    m[i][j] = &m[i][j] - &t;
                }
                m[i][p] = QuadScalar::zero();
                m[p][i] = QuadScalar::zero();
            }
            for &j in &rest {
                m[p][j] = QuadScalar::zero();
                m[j][p] = QuadScalar::zero();
            }
            continue;
        }
        // all-zero diagonal: look for an off-diagonal hyperbolic pair
        let mut found = None;
        'outer: for (ai, &i) in active.iter().enumerate() {
            for &j in active.iter().skip(ai + 1) {
                if !m[i][j].is_zero() {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        match found {
            Some((i, j)) => {
                // e_i := e_i + e_j gives diagonal entry 2 m[i][j]
                for k in 0..n {
                    let t = &m[i][k] + &m[j][k];
                    m[i][k] = t;
                }
                for k in 0..n {
                    let t = &m[k][i] + &m[k][j];
                    m[k][i] = t;
                }
            }
            None => {
                zero += active.len();
                break;
            }
        }
    }
    (pos, neg, zero)
}

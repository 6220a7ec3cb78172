//! Segre classification of the Ricci operator of a Lorentzian 3-manifold.
//!
//! The exact path decides the type purely algebraically (square-free part of
//! the characteristic polynomial plus eigenspace ranks); the float path uses
//! a relative tolerance with an explicit ambiguity band so a borderline input
//! is reported as ambiguous rather than silently rounded.

use serde::Serialize;

use crate::error::LorsolError;
use crate::exactfield::QuadScalar;
use crate::liemodel::{LieAlgebra3, Metric3};
use crate::linalg::{det3, identity3, is_zero_mat, mat_mul, mat_scale, mat_sub, rank3, trace, Mat3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SegreType {
    #[serde(rename = "DIAG_11_1")]
    Diag111,
    #[serde(rename = "COMPLEX_1ZZ")]
    Complex1zz,
    #[serde(rename = "JORDAN_21")]
    Jordan21,
    #[serde(rename = "JORDAN_3")]
    Jordan3,
}

impl SegreType {
    /// The notation used in the literature.
    pub fn paper_notation(&self) -> &'static str {
        match self {
            SegreType::Diag111 => "{11,1}",
            SegreType::Complex1zz => "{1zz̄}",
            SegreType::Jordan21 => "{21}",
            SegreType::Jordan3 => "{3}",
        }
    }
}

/// One eigenvalue with multiplicity; `exact` is set when the value lies in
/// Q(sqrt2). Complex pairs are reported once with `im > 0` and `exact = None`.
#[derive(Debug, Clone, Serialize)]
pub struct EigenvalueInfo {
    pub exact: Option<QuadScalar>,
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SegreReport {
    pub segre_type: SegreType,
    /// Characteristic polynomial has a repeated root.
    pub degenerate: bool,
    /// Sorted by (re, im); complex pairs reported once with multiplicity 2.
    pub eigenvalues: Vec<EigenvalueInfo>,
    pub minimal_poly_degree: usize,
}

impl SegreReport {
    /// True iff the characteristic polynomial is a perfect cube.
    pub fn has_triple_eigenvalue(&self) -> bool {
        self.eigenvalues.len() == 1 && self.eigenvalues[0].multiplicity == 3
    }
}

/// Coefficients of `char(op) = x^3 - c2 x^2 + c1 x - c0`.
pub fn char_poly(op: &Mat3) -> (QuadScalar, QuadScalar, QuadScalar) {
    let c2 = trace(op);
    let mut c1 = QuadScalar::zero();
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        c1 = c1 + &(&op[i][i] * &op[j][j]) - &(&op[i][j] * &op[j][i]);
    }
    let c0 = det3(op);
    (c2, c1, c0)
}

fn eval_char(c2: &QuadScalar, c1: &QuadScalar, c0: &QuadScalar, x: &QuadScalar) -> QuadScalar {
    // Horner: ((x - c2) x + c1) x - c0
    &(&(&(&(x - c2) * x) + c1) * x) - c0
}

/// Discriminant of `x^3 - c2 x^2 + c1 x - c0`: positive for three distinct
/// real roots, negative for one real root and a complex pair, zero when a
/// root repeats.
pub fn char_discriminant(c2: &QuadScalar, c1: &QuadScalar, c0: &QuadScalar) -> QuadScalar {
    let t1 = &QuadScalar::from_int(18) * &(&(c2 * c1) * c0);
    let t2 = &QuadScalar::from_int(4) * &(&(&(c2 * c2) * c2) * c0);
    let t3 = &(c2 * c2) * &(c1 * c1);
    let t4 = &QuadScalar::from_int(4) * &(&(c1 * c1) * c1);
    let t5 = &QuadScalar::from_int(27) * &(c0 * c0);
    &(&(&(&t1 - &t2) + &t3) - &t4) - &t5
}

/// `op != 0` and `op^2 = 0`, exactly.
pub fn is_two_step_nilpotent(op: &Mat3) -> bool {
    !is_zero_mat(op) && is_zero_mat(&mat_mul(op, op))
}

fn shifted(op: &Mat3, r: &QuadScalar) -> Mat3 {
    mat_sub(op, &mat_scale(r, &identity3()))
}

fn self_adjoint_check(op: &Mat3, metric: &Metric3) -> Result<(), LorsolError> {
    let gop = mat_mul(metric.matrix(), op);
    if crate::linalg::is_symmetric(&gop) {
        Ok(())
    } else {
        Err(LorsolError::NotSelfAdjoint)
    }
}

/// Reconstruct a small-denominator rational close to `x`, verified by the
/// caller against the exact polynomial.
fn rational_candidate(x: f64) -> Option<QuadScalar> {
    if !x.is_finite() {
        return None;
    }
    // continued-fraction expansion, denominator capped
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, x.floor() as i64, 1i64);
    let mut frac = x - x.floor();
    for _ in 0..40 {
        let approx = p1 as f64 / q1 as f64;
        if (approx - x).abs() < 1e-10 * (1.0 + x.abs()) {
            return Some(QuadScalar::from_ratio(p1, q1));
        }
        if frac.abs() < 1e-12 {
            break;
        }
        let a = (1.0 / frac).floor();
        frac = 1.0 / frac - a;
        let a = a as i64;
        let (p2, q2) = (a.checked_mul(p1)?.checked_add(p0)?, a.checked_mul(q1)?.checked_add(q0)?);
        if q2 > 1_000_000_000 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    None
}

/// Roots of the real cubic `x^3 - c2 x^2 + c1 x - c0` as (re, im) pairs.
fn cubic_roots_f64(c2: f64, c1: f64, c0: f64) -> [(f64, f64); 3] {
    // depressed form t^3 + pt + q with x = t + c2/3
    let s = c2 / 3.0;
    let p = c1 - c2 * c2 / 3.0;
    // t^3 + p t + q = 0
    let q = -c0 + c2 * (c1 - 2.0 * c2 * c2 / 9.0) / 3.0;
    let half_q = q / 2.0;
    let disc = half_q * half_q + (p / 3.0).powi(3);
    if disc > 0.0 {
        let sd = disc.sqrt();
        let u = (-half_q + sd).cbrt();
        let v = (-half_q - sd).cbrt();
        let t1 = u + v;
        let re = -t1 / 2.0;
        let im = (u - v) * 3f64.sqrt() / 2.0;
        [(t1 + s, 0.0), (re + s, -im.abs()), (re + s, im.abs())]
    } else {
        // three real roots (trigonometric form)
        let r = (-p / 3.0).max(0.0).sqrt();
        if r == 0.0 {
            return [(s, 0.0); 3];
        }
        let cos_arg = (-half_q / (r * r * r)).clamp(-1.0, 1.0);
        let theta = cos_arg.acos() / 3.0;
        let mut out = [(0.0, 0.0); 3];
        for (k, slot) in out.iter_mut().enumerate() {
            let t = 2.0 * r * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos();
            *slot = (t + s, 0.0);
        }
        out
    }
}

/// Try to find one exact root of the characteristic cubic in Q(sqrt2) by
/// rational reconstruction of `u + v sqrt2` from numeric roots of the
/// polynomial and its sqrt2-conjugate; every candidate is verified exactly.
fn exact_root(
    c2: &QuadScalar,
    c1: &QuadScalar,
    c0: &QuadScalar,
    approx_roots: &[(f64, f64); 3],
) -> Option<QuadScalar> {
    let try_root = |cand: QuadScalar| -> Option<QuadScalar> {
        eval_char(c2, c1, c0, &cand).is_zero().then_some(cand)
    };
    // rational roots first
    for (re, im) in approx_roots {
        if im.abs() < 1e-7 {
            if let Some(c) = rational_candidate(*re).and_then(try_root) {
                return Some(c);
            }
        }
    }
    // roots u + v sqrt2 with v != 0: pair numeric roots of p with numeric
    // roots of the conjugate polynomial
    let conj_roots = cubic_roots_f64(c2.conj().to_f64(), c1.conj().to_f64(), c0.conj().to_f64());
    let sqrt2 = 2f64.sqrt();
    for (re, im) in approx_roots {
        if im.abs() >= 1e-7 {
            continue;
        }
        for (cre, cim) in &conj_roots {
            if cim.abs() >= 1e-7 {
                continue;
            }
            let u = (re + cre) / 2.0;
            let v = (re - cre) / (2.0 * sqrt2);
            let (Some(uq), Some(vq)) = (rational_candidate(u), rational_candidate(v)) else {
                continue;
            };
            let cand = &uq + &(&vq * &QuadScalar::sqrt2());
            if let Some(c) = try_root(cand) {
                return Some(c);
            }
        }
    }
    None
}

fn ev(exact: Option<QuadScalar>, re: f64, im: f64, multiplicity: usize) -> EigenvalueInfo {
    let re = exact.as_ref().map(|x| x.to_f64()).unwrap_or(re);
    EigenvalueInfo { exact, re, im, multiplicity }
}

fn sort_eigenvalues(evs: &mut [EigenvalueInfo]) {
    evs.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}

/// Exact Segre classification of a metric-self-adjoint operator.
pub fn classify(op: &Mat3, metric: &Metric3) -> Result<SegreReport, LorsolError> {
    self_adjoint_check(op, metric)?;
    let (c2, c1, c0) = char_poly(op);
    let disc = char_discriminant(&c2, &c1, &c0);
    let third = QuadScalar::from_ratio(1, 3);
    let numeric = cubic_roots_f64(c2.to_f64(), c1.to_f64(), c0.to_f64());

    match disc.sign() {
        1 => {
            // three distinct real eigenvalues: diagonalizable
            let mut evs = exact_distinct_eigenvalues(&c2, &c1, &c0, &numeric);
            sort_eigenvalues(&mut evs);
            Ok(SegreReport {
                segre_type: SegreType::Diag111,
                degenerate: false,
                eigenvalues: evs,
                minimal_poly_degree: 3,
            })
        }
        -1 => {
            // one real root, one complex-conjugate pair
            let real = numeric
                .iter()
                .find(|(_, im)| im.abs() < 1e-9)
                .copied()
                .unwrap_or(numeric[0]);
            let pair = numeric
                .iter()
                .find(|(_, im)| *im > 0.0)
                .copied()
                .unwrap_or((0.0, 0.0));
            let exact = exact_root(&c2, &c1, &c0, &numeric);
            let mut evs = vec![ev(exact, real.0, 0.0, 1), ev(None, pair.0, pair.1, 2)];
            sort_eigenvalues(&mut evs);
            Ok(SegreReport {
                segre_type: SegreType::Complex1zz,
                degenerate: false,
                eigenvalues: evs,
                minimal_poly_degree: 3,
            })
        }
        _ => {
            // repeated root; triple iff char = (x - c2/3)^3
            let r_triple = &third * &c2;
            let triple = eval_char(&c2, &c1, &c0, &r_triple).is_zero()
                && (&c1 - &(&(&third * &c2) * &c2)).is_zero();
            if triple {
                let rank = rank3(&shifted(op, &r_triple));
                let (ty, mindeg) = match rank {
                    0 => (SegreType::Diag111, 1),
                    1 => (SegreType::Jordan21, 2),
                    2 => (SegreType::Jordan3, 3),
                    _ => unreachable!("shifted operator of a triple root has rank <= 2"),
                };
                Ok(SegreReport {
                    segre_type: ty,
                    degenerate: true,
                    eigenvalues: vec![ev(Some(r_triple), 0.0, 0.0, 3)],
                    minimal_poly_degree: mindeg,
                })
            } else {
                // double root r, simple root s = c2 - 2r; r is the unique
                // common root of char and its derivative
                let r = double_root(&c2, &c1, &c0);
                let s = &c2 - &(&QuadScalar::from_int(2) * &r);
                let rank = rank3(&shifted(op, &r));
                let (ty, mindeg) = if rank <= 1 {
                    (SegreType::Diag111, 2)
                } else {
                    (SegreType::Jordan21, 3)
                };
                let mut evs = vec![ev(Some(r), 0.0, 0.0, 2), ev(Some(s), 0.0, 0.0, 1)];
                sort_eigenvalues(&mut evs);
                Ok(SegreReport {
                    segre_type: ty,
                    degenerate: true,
                    eigenvalues: evs,
                    minimal_poly_degree: mindeg,
                })
            }
        }
    }
}

/// Classify the Ricci operator of a left-invariant metric.
pub fn classify_algebra(alg: &LieAlgebra3) -> Result<SegreReport, LorsolError> {
    let (_, ric_op, _) = crate::curvature::ricci(alg);
    classify(&ric_op, alg.metric())
}

/// The repeated root of a cubic known to have exactly one double root:
/// the root of `gcd(p, p')`, computed by one Euclid division step.
fn double_root(c2: &QuadScalar, c1: &QuadScalar, c0: &QuadScalar) -> QuadScalar {
    // p = x^3 - c2 x^2 + c1 x - c0, p' = 3x^2 - 2 c2 x + c1
    // p mod p' is linear: a x + b; the double root is -b/a (a != 0 because
    // the double root is unique)
    let three = QuadScalar::from_int(3);
    let nine = QuadScalar::from_int(9);
    // 9 p - (3x - c2) p' = (6 c1 - 2 c2^2) x + (c2 c1 - 9 c0)
    let a = &(&QuadScalar::from_int(6) * c1) - &(&QuadScalar::from_int(2) * &(c2 * c2));
    let b = &(c2 * c1) - &(&nine * c0);
    if !a.is_zero() {
        return (-b).checked_div(&a).expect("nonzero linear coefficient");
    }
    // degenerate Euclid step: p' itself has the double root with
    // multiplicity two, r = c2/3 (then p would be a perfect cube, which the
    // caller has excluded, but keep a safe fallback)
    c2 / &three
}

fn exact_distinct_eigenvalues(
    c2: &QuadScalar,
    c1: &QuadScalar,
    c0: &QuadScalar,
    numeric: &[(f64, f64); 3],
) -> Vec<EigenvalueInfo> {
    if let Some(r) = exact_root(c2, c1, c0, numeric) {
        // deflate: p = (x - r)(x^2 + u x + v)
        let u = &r - c2;
        let v = &(&(&r * &r) - &(c2 * &r)) + c1;
        let d = &(&u * &u) - &(&QuadScalar::from_int(4) * &v);
        if let Some(sd) = d.sqrt_in_field() {
            let half = QuadScalar::from_ratio(1, 2);
            let r2 = &half * &(&(-&u) + &sd);
            let r3 = &half * &(&(-&u) - &sd);
            return vec![
                ev(Some(r), 0.0, 0.0, 1),
                ev(Some(r2), 0.0, 0.0, 1),
                ev(Some(r3), 0.0, 0.0, 1),
            ];
        }
        // remaining quadratic irreducible over Q(sqrt2): approx the pair
        let (ua, va) = (u.to_f64(), v.to_f64());
        let da = (ua * ua - 4.0 * va).max(0.0).sqrt();
        let mut out = vec![ev(Some(r), 0.0, 0.0, 1)];
        out.push(ev(None, (-ua + da) / 2.0, 0.0, 1));
        out.push(ev(None, (-ua - da) / 2.0, 0.0, 1));
        return out;
    }
    numeric.iter().map(|&(re, _)| ev(None, re, 0.0, 1)).collect()
}

// ---------------------------------------------------------------------------
// Float path
// ---------------------------------------------------------------------------

pub const DEFAULT_FLOAT_TOL: f64 = 1e-9;

/// Width of the ambiguity band above the tolerance: a quantity between
/// `tol` and `AMBIGUITY_FACTOR * tol` (relative) is neither clearly zero nor
/// clearly nonzero.
const AMBIGUITY_FACTOR: f64 = 10.0;

/// Roots of a double-precision cubic near a multiple root carry an error of
/// about sqrt(machine epsilon); gap decisions below this floor would be
/// noise, so the effective clustering tolerance never drops under it.
const ROOT_ACCURACY_FLOOR: f64 = 1.5e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FuzzySign {
    Zero,
    NonZero,
    Ambiguous,
}

fn fuzzy(x: f64, scale: f64, tol: f64) -> FuzzySign {
    let t = tol * scale.max(f64::MIN_POSITIVE);
    let a = x.abs();
    if a <= t {
        FuzzySign::Zero
    } else if a < AMBIGUITY_FACTOR * t {
        FuzzySign::Ambiguous
    } else {
        FuzzySign::NonZero
    }
}

pub type MatF = [[f64; 3]; 3];

fn max_abs(m: &MatF) -> f64 {
    m.iter().flatten().fold(0.0f64, |a, &x| a.max(x.abs()))
}

/// Float-path two-step nilpotency: `||op^2|| <= tol * ||op||^2`, `op != 0`.
pub fn is_two_step_nilpotent_float(op: &MatF, tol: f64) -> bool {
    let scale = max_abs(op);
    if scale == 0.0 {
        return false;
    }
    let mut sq = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            sq[i][j] = (0..3).map(|k| op[i][k] * op[k][j]).sum();
        }
    }
    max_abs(&sq) <= tol * scale * scale
}

fn rank_float(m: &MatF, scale: f64, tol: f64) -> Result<usize, LorsolError> {
    // Gaussian elimination with full pivoting; pivot in the ambiguity band
    // aborts the classification
    let mut a = *m;
    let mut rank = 0;
    let mut rows: Vec<usize> = (0..3).collect();
    let mut cols: Vec<usize> = (0..3).collect();
    while !rows.is_empty() && !cols.is_empty() {
        let (mut bi, mut bj, mut best) = (0usize, 0usize, -1.0f64);
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                if a[r][c].abs() > best {
                    best = a[r][c].abs();
                    bi = ri;
                    bj = ci;
                }
            }
        }
        match fuzzy(best, scale, tol) {
            FuzzySign::Zero => break,
            FuzzySign::Ambiguous => {
                return Err(LorsolError::AmbiguousClassification(format!(
                    "pivot magnitude {best:.3e} within the ambiguity band",
                )))
            }
            FuzzySign::NonZero => {}
        }
        let (pr, pc) = (rows[bi], cols[bj]);
        rows.remove(bi);
        cols.remove(bj);
        for &r in &rows {
            let f = a[r][pc] / a[pr][pc];
            for c in 0..3 {
                a[r][c] -= f * a[pr][c];
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Tolerance-based Segre classification for numeric operators (e.g. from
/// Walker coordinates). `tol` is relative to the largest operator entry;
/// borderline inputs produce `AmbiguousClassification`.
pub fn classify_float(op: &MatF, metric: &MatF, tol: f64) -> Result<SegreReport, LorsolError> {
    let scale = max_abs(op).max(1e-300);
    let gscale = max_abs(metric);
    // self-adjointness of op w.r.t. the metric: g.op symmetric
    let mut gop = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            gop[i][j] = (0..3).map(|k| metric[i][k] * op[k][j]).sum();
        }
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            if (gop[i][j] - gop[j][i]).abs() > tol * AMBIGUITY_FACTOR * scale * gscale.max(1.0) {
                return Err(LorsolError::NotSelfAdjoint);
            }
        }
    }

    let c2: f64 = op[0][0] + op[1][1] + op[2][2];
    let mut c1 = 0.0;
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        c1 += op[i][i] * op[j][j] - op[i][j] * op[j][i];
    }
    let c0 = op[0][0] * (op[1][1] * op[2][2] - op[1][2] * op[2][1])
        - op[0][1] * (op[1][0] * op[2][2] - op[1][2] * op[2][0])
        + op[0][2] * (op[1][0] * op[2][1] - op[1][1] * op[2][0]);
    let roots = cubic_roots_f64(c2, c1, c0);
    let tol_gap = tol.max(ROOT_ACCURACY_FLOOR);

    // complex pair detection on the imaginary part
    let max_im = roots.iter().fold(0.0f64, |a, r| a.max(r.1.abs()));
    match fuzzy(max_im, scale, tol_gap) {
        FuzzySign::Ambiguous => {
            return Err(LorsolError::AmbiguousClassification(
                "imaginary part of an eigenvalue pair within the ambiguity band".into(),
            ))
        }
        FuzzySign::NonZero => {
            let real = roots.iter().find(|r| r.1 == 0.0).copied().unwrap_or(roots[0]);
            let pair = roots.iter().find(|r| r.1 > 0.0).copied().unwrap_or((0.0, 0.0));
            let mut evs = vec![ev(None, real.0, 0.0, 1), ev(None, pair.0, pair.1, 2)];
            sort_eigenvalues(&mut evs);
            return Ok(SegreReport {
                segre_type: SegreType::Complex1zz,
                degenerate: false,
                eigenvalues: evs,
                minimal_poly_degree: 3,
            });
        }
        FuzzySign::Zero => {}
    }

    // all real: cluster
    let mut rs: Vec<f64> = roots.iter().map(|r| r.0).collect();
    rs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let gap01 = fuzzy(rs[1] - rs[0], scale, tol_gap);
    let gap12 = fuzzy(rs[2] - rs[1], scale, tol_gap);
    if gap01 == FuzzySign::Ambiguous || gap12 == FuzzySign::Ambiguous {
        return Err(LorsolError::AmbiguousClassification(
            "eigenvalue gap within the ambiguity band".into(),
        ));
    }
    let shifted_f = |r: f64| -> MatF {
        let mut m = *op;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= r;
        }
        m
    };
    match (gap01, gap12) {
        (FuzzySign::NonZero, FuzzySign::NonZero) => Ok(SegreReport {
            segre_type: SegreType::Diag111,
            degenerate: false,
            eigenvalues: rs.iter().map(|&r| ev(None, r, 0.0, 1)).collect(),
            minimal_poly_degree: 3,
        }),
        (FuzzySign::Zero, FuzzySign::Zero) => {
            let r = (rs[0] + rs[1] + rs[2]) / 3.0;
            let rank = rank_float(&shifted_f(r), scale, tol)?;
            let (ty, mindeg) = match rank {
                0 => (SegreType::Diag111, 1),
                1 => (SegreType::Jordan21, 2),
                _ => (SegreType::Jordan3, 3),
            };
            Ok(SegreReport {
                segre_type: ty,
                degenerate: true,
                eigenvalues: vec![ev(None, r, 0.0, 3)],
                minimal_poly_degree: mindeg,
            })
        }
        _ => {
            // one double, one simple
            let (r, s) = if gap01 == FuzzySign::Zero {
                ((rs[0] + rs[1]) / 2.0, rs[2])
            } else {
                ((rs[1] + rs[2]) / 2.0, rs[0])
            };
            let rank = rank_float(&shifted_f(r), scale, tol)?;
            let (ty, mindeg) = if rank <= 1 {
                (SegreType::Diag111, 2)
            } else {
                (SegreType::Jordan21, 3)
            };
            let mut evs = vec![ev(None, r, 0.0, 2), ev(None, s, 0.0, 1)];
            sort_eigenvalues(&mut evs);
            Ok(SegreReport {
                segre_type: ty,
                degenerate: true,
                eigenvalues: evs,
                minimal_poly_degree: mindeg,
            })
        }
    }
}

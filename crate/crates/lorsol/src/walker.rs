//! Walker coordinate-patch geometry: the metric with a parallel null field
//! in adapted coordinates (t, x, y), its curvature, the soliton equations,
//! the symmetric-case reduction to a linear ODE, and numerical residual
//! verification. This is the floating-point lane of the crate; everything
//! here is checked against closed forms or finite-difference oracles.

use serde::Serialize;

use crate::error::LorsolError;

pub const DEFAULT_FD_STEP: f64 = 1e-4;
pub const DEFAULT_ODE_STEP: f64 = 1e-3;

// ---------------------------------------------------------------------------
// Polynomials in y
// ---------------------------------------------------------------------------

/// Dense polynomial with ascending coefficients; derivatives are exact.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Poly {
    pub coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: f64) -> Self {
        Poly::new(vec![c])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, y: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * y + c)
    }

    pub fn deriv(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, c: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| c * x).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(0.0)
                        + other.coeffs.get(k).copied().unwrap_or(0.0)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    #[cfg(test)]
    fn approx_eq(&self, other: &Poly, tol: f64) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|k| {
            (self.coeffs.get(k).copied().unwrap_or(0.0)
                - other.coeffs.get(k).copied().unwrap_or(0.0))
            .abs()
                <= tol
        })
    }
}

// ---------------------------------------------------------------------------
// The metric
// ---------------------------------------------------------------------------

/// Locally symmetric defining function `f(x, y) = kappa x^2 + x P(y) + Q(y)`;
/// flat exactly when kappa = 0.
#[derive(Debug, Clone, Serialize)]
pub struct StructuredF {
    pub kappa: f64,
    pub p: Poly,
    pub q: Poly,
}

impl StructuredF {
    pub fn f(&self, x: f64, y: f64) -> f64 {
        self.kappa * x * x + x * self.p.eval(y) + self.q.eval(y)
    }

    pub fn fx(&self, x: f64, y: f64) -> f64 {
        2.0 * self.kappa * x + self.p.eval(y)
    }

    pub fn fy(&self, x: f64, y: f64) -> f64 {
        x * self.p.deriv().eval(y) + self.q.deriv().eval(y)
    }

    pub fn fxx(&self) -> f64 {
        2.0 * self.kappa
    }
}

type Fn2 = Box<dyn Fn(f64, f64) -> f64 + Sync + Send>;

/// Defining function given as callables with analytic partials.
pub struct RawF {
    pub f: Fn2,
    pub fx: Fn2,
    pub fy: Fn2,
    pub fxx: Fn2,
}

pub enum FDef {
    Structured(StructuredF),
    Raw(RawF),
}

/// The Walker metric `[[0,0,1],[0,eps,0],[1,0,f(x,y)]]` in coordinates
/// (t, x, y); the parallel null field is `d/dt`.
pub struct WalkerMetric {
    pub eps: f64,
    pub f: FDef,
}

impl WalkerMetric {
    pub fn structured(eps: f64, spec: StructuredF) -> Result<Self, LorsolError> {
        if eps != 1.0 && eps != -1.0 {
            return Err(LorsolError::InvalidInput("epsilon must be +1 or -1".into()));
        }
        Ok(WalkerMetric { eps, f: FDef::Structured(spec) })
    }

    pub fn raw(eps: f64, raw: RawF) -> Result<Self, LorsolError> {
        if eps != 1.0 && eps != -1.0 {
            return Err(LorsolError::InvalidInput("epsilon must be +1 or -1".into()));
        }
        Ok(WalkerMetric { eps, f: FDef::Raw(raw) })
    }

    pub fn f(&self, x: f64, y: f64) -> f64 {
        match &self.f {
            FDef::Structured(s) => s.f(x, y),
            FDef::Raw(r) => (r.f)(x, y),
        }
    }

    pub fn fx(&self, x: f64, y: f64) -> f64 {
        match &self.f {
            FDef::Structured(s) => s.fx(x, y),
            FDef::Raw(r) => (r.fx)(x, y),
        }
    }

    pub fn fy(&self, x: f64, y: f64) -> f64 {
        match &self.f {
            FDef::Structured(s) => s.fy(x, y),
            FDef::Raw(r) => (r.fy)(x, y),
        }
    }

    pub fn fxx(&self, x: f64, y: f64) -> f64 {
        match &self.f {
            FDef::Structured(s) => s.fxx(),
            FDef::Raw(r) => (r.fxx)(x, y),
        }
    }

    pub fn metric_at(&self, x: f64, y: f64) -> [[f64; 3]; 3] {
        [[0.0, 0.0, 1.0], [0.0, self.eps, 0.0], [1.0, 0.0, self.f(x, y)]]
    }

    pub fn metric_inv_at(&self, x: f64, y: f64) -> [[f64; 3]; 3] {
        [[-self.f(x, y), 0.0, 1.0], [0.0, 1.0 / self.eps, 0.0], [1.0, 0.0, 0.0]]
    }

    /// Flat iff `f_xx` vanishes identically: exact for structured f,
    /// sampled on a grid for raw callables.
    pub fn is_flat(&self, probe: &Grid3, tol: f64) -> bool {
        match &self.f {
            FDef::Structured(s) => s.kappa == 0.0,
            FDef::Raw(r) => probe
                .axis()
                .iter()
                .all(|&x| probe.axis().iter().all(|&y| (r.fxx)(x, y).abs() <= tol)),
        }
    }
}

// ---------------------------------------------------------------------------
// Connection and curvature
// ---------------------------------------------------------------------------

/// `gamma[a][b][c]` is the coefficient of the c-th coordinate field in
/// `nabla_a partial_b`; coordinate order (t, x, y).
pub fn christoffels(m: &WalkerMetric, x: f64, y: f64) -> [[[f64; 3]; 3]; 3] {
    let mut g = [[[0.0f64; 3]; 3]; 3];
    let fx = m.fx(x, y);
    let fy = m.fy(x, y);
    // (eq:Levi-Civita): nabla_x d_y = (fx/2) d_t,
    // nabla_y d_y = (fy/2) d_t - (fx / 2 eps) d_x
    g[1][2][0] = 0.5 * fx;
    g[2][1][0] = 0.5 * fx;
    g[2][2][0] = 0.5 * fy;
    g[2][2][1] = -fx / (2.0 * m.eps);
    g
}

/// Centered-difference Koszul oracle for the Christoffel symbols.
pub fn fd_christoffels(m: &WalkerMetric, x: f64, y: f64, h: f64) -> [[[f64; 3]; 3]; 3] {
    // metric depends on (x, y) only; index 0 = t derivative is zero
    let dg = |dir: usize, i: usize, j: usize| -> f64 {
        match dir {
            1 => (m.metric_at(x + h, y)[i][j] - m.metric_at(x - h, y)[i][j]) / (2.0 * h),
            2 => (m.metric_at(x, y + h)[i][j] - m.metric_at(x, y - h)[i][j]) / (2.0 * h),
            _ => 0.0,
        }
    };
    let ginv = m.metric_inv_at(x, y);
    let mut out = [[[0.0f64; 3]; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let mut s = 0.0;
                for d in 0..3 {
                    s += 0.5 * ginv[c][d] * (dg(a, d, b) + dg(b, d, a) - dg(d, a, b));
                }
                out[a][b][c] = s;
            }
        }
    }
    out
}

/// `(ric, ric_op)` of the Walker metric at a point, per (eq:Ric).
pub fn walker_ricci(m: &WalkerMetric, x: f64, y: f64) -> ([[f64; 3]; 3], [[f64; 3]; 3]) {
    let c = -m.fxx(x, y) / (2.0 * m.eps);
    let mut ric = [[0.0f64; 3]; 3];
    let mut ric_op = [[0.0f64; 3]; 3];
    ric[2][2] = c;
    ric_op[0][2] = c;
    (ric, ric_op)
}

// ---------------------------------------------------------------------------
// Vector fields
// ---------------------------------------------------------------------------

/// Uniformly sampled function with node derivatives; evaluation by cubic
/// Hermite interpolation (error O(h^4)).
#[derive(Debug, Clone, Serialize)]
pub struct SampledFn {
    pub x0: f64,
    pub h: f64,
    pub vals: Vec<f64>,
    pub derivs: Vec<f64>,
}

impl SampledFn {
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.vals.len();
        if n == 1 {
            return self.vals[0];
        }
        let pos = ((x - self.x0) / self.h).floor();
        let i = (pos.max(0.0) as usize).min(n - 2);
        let s = (x - (self.x0 + i as f64 * self.h)) / self.h;
        let (v0, v1) = (self.vals[i], self.vals[i + 1]);
        let (d0, d1) = (self.derivs[i] * self.h, self.derivs[i + 1] * self.h);
        let s2 = s * s;
        let s3 = s2 * s;
        v0 * (2.0 * s3 - 3.0 * s2 + 1.0)
            + d0 * (s3 - 2.0 * s2 + s)
            + v1 * (-2.0 * s3 + 3.0 * s2)
            + d1 * (s3 - s2)
    }
}

/// The structured soliton field of (eq:ws-1):
/// `X = (lambda t - eps x w'(y) + mu(y), lambda x / 2 + w(y), gamma)`.
pub struct StructuredField {
    pub lambda: f64,
    pub gamma: f64,
    pub eps: f64,
    pub spec: StructuredF,
    pub w: SampledFn,
    pub wp: SampledFn,
    pub mu: SampledFn,
}

impl StructuredField {
    /// `w''` from the ODE relation, not interpolation.
    fn wpp(&self, y: f64) -> f64 {
        let rhs = self.gamma * self.spec.p.deriv().eval(y) - 0.5 * self.lambda * self.spec.p.eval(y);
        (2.0 * self.spec.kappa * self.w.eval(y) + rhs) / (2.0 * self.eps)
    }

    /// `mu'` from the quadrature relation.
    fn mup(&self, y: f64) -> f64 {
        0.5 * (self.spec.kappa / self.eps - self.spec.p.eval(y) * self.w.eval(y)
            + self.lambda * self.spec.q.eval(y)
            - self.gamma * self.spec.q.deriv().eval(y))
    }
}

type Fn3 = Box<dyn Fn(f64, f64, f64) -> f64 + Sync + Send>;

/// Field given by raw component callables; partials by centered FD.
pub struct RawField {
    pub a: Fn3,
    pub b: Fn3,
    pub c: Fn3,
    pub fd_step: f64,
}

pub enum WalkerField {
    Structured(StructuredField),
    Raw(RawField),
}

/// Components and first partials of a field at a point.
#[derive(Debug, Clone, Copy, Default)]
pub struct FieldJet {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub a_t: f64,
    pub a_x: f64,
    pub a_y: f64,
    pub b_t: f64,
    pub b_x: f64,
    pub b_y: f64,
    pub c_t: f64,
    pub c_x: f64,
    pub c_y: f64,
}

impl WalkerField {
    pub fn components(&self, t: f64, x: f64, y: f64) -> (f64, f64, f64) {
        match self {
            WalkerField::Structured(s) => (
                s.lambda * t - s.eps * x * s.wp.eval(y) + s.mu.eval(y),
                0.5 * s.lambda * x + s.w.eval(y),
                s.gamma,
            ),
            WalkerField::Raw(r) => ((r.a)(t, x, y), (r.b)(t, x, y), (r.c)(t, x, y)),
        }
    }

    pub fn jet(&self, t: f64, x: f64, y: f64) -> FieldJet {
        match self {
            WalkerField::Structured(s) => {
                let (a, b, c) = self.components(t, x, y);
                FieldJet {
                    a,
                    b,
                    c,
                    a_t: s.lambda,
                    a_x: -s.eps * s.wp.eval(y),
                    a_y: -s.eps * x * s.wpp(y) + s.mup(y),
                    b_t: 0.0,
                    b_x: 0.5 * s.lambda,
                    b_y: s.wp.eval(y),
                    c_t: 0.0,
                    c_x: 0.0,
                    c_y: 0.0,
                }
            }
            WalkerField::Raw(r) => {
                let h = r.fd_step;
                let d = |f: &Fn3, k: usize| -> f64 {
                    let (mut lo, mut hi) = ((t, x, y), (t, x, y));
                    match k {
                        0 => {
                            lo.0 -= h;
                            hi.0 += h;
                        }
                        1 => {
                            lo.1 -= h;
                            hi.1 += h;
                        }
                        _ => {
                            lo.2 -= h;
                            hi.2 += h;
                        }
                    }
                    (f(hi.0, hi.1, hi.2) - f(lo.0, lo.1, lo.2)) / (2.0 * h)
                };
                FieldJet {
                    a: (r.a)(t, x, y),
                    b: (r.b)(t, x, y),
                    c: (r.c)(t, x, y),
                    a_t: d(&r.a, 0),
                    a_x: d(&r.a, 1),
                    a_y: d(&r.a, 2),
                    b_t: d(&r.b, 0),
                    b_x: d(&r.b, 1),
                    b_y: d(&r.b, 2),
                    c_t: d(&r.c, 0),
                    c_x: d(&r.c, 1),
                    c_y: d(&r.c, 2),
                }
            }
        }
    }
}

/// `(L_X g)` at a point, per (eq:lied).
pub fn walker_lie_derivative(
    m: &WalkerMetric,
    field: &WalkerField,
    t: f64,
    x: f64,
    y: f64,
) -> [[f64; 3]; 3] {
    let j = field.jet(t, x, y);
    let f = m.f(x, y);
    let fx = m.fx(x, y);
    let fy = m.fy(x, y);
    let e = m.eps;
    let m12 = e * j.b_t + j.c_x;
    let m13 = j.a_t + j.c_y + f * j.c_t;
    let m23 = j.a_x + e * j.b_y + f * j.c_x;
    let m33 = j.b * fx + j.c * fy + 2.0 * (j.a_y + f * j.c_y);
    [
        [2.0 * j.c_t, m12, m13],
        [m12, 2.0 * e * j.b_x, m23],
        [m13, m23, m33],
    ]
}

/// Max-abs entry of `L_X g + Ric - lambda g` at a point.
pub fn soliton_residual_at(
    m: &WalkerMetric,
    field: &WalkerField,
    lambda: f64,
    t: f64,
    x: f64,
    y: f64,
) -> f64 {
    let lie = walker_lie_derivative(m, field, t, x, y);
    let (ric, _) = walker_ricci(m, x, y);
    let g = m.metric_at(x, y);
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            worst = worst.max((lie[i][j] + ric[i][j] - lambda * g[i][j]).abs());
        }
    }
    worst
}

/// Uniform cube grid `[min, max]^3` with n points per axis.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Grid3 {
    pub n: usize,
    pub min: f64,
    pub max: f64,
}

impl Default for Grid3 {
    fn default() -> Self {
        Grid3 { n: 20, min: -1.0, max: 1.0 }
    }
}

impl Grid3 {
    pub fn axis(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.min];
        }
        (0..self.n)
            .map(|k| self.min + (self.max - self.min) * k as f64 / (self.n - 1) as f64)
            .collect()
    }
}

/// Max residual of the soliton equation over the grid.
pub fn soliton_residual(m: &WalkerMetric, field: &WalkerField, lambda: f64, grid: &Grid3) -> f64 {
    let axis = grid.axis();
    let mut worst = 0.0f64;
    for &t in &axis {
        for &x in &axis {
            for &y in &axis {
                worst = worst.max(soliton_residual_at(m, field, lambda, t, x, y));
            }
        }
    }
    worst
}

// ---------------------------------------------------------------------------
// Reduction of the soliton PDE
// ---------------------------------------------------------------------------

/// `w2 w''(y) + w0 w(y) = rhs(y)` — the first line of (wfinal).
#[derive(Debug, Clone, Serialize)]
pub struct WEquation {
    pub w2: f64,
    pub w0: f64,
    pub rhs: Poly,
}

/// `2 mu'(y) = rhs_known(y) + pw_coeff * P(y) w(y)` — the second line.
#[derive(Debug, Clone, Serialize)]
pub struct MuEquation {
    pub rhs_known: Poly,
    pub pw_coeff: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Reduction {
    pub flat: bool,
    /// beta was nonzero but the x^2 row of (wls) forces it to vanish.
    pub beta_forced_zero: bool,
    /// The beta actually used in the remaining system.
    pub beta: f64,
    pub w_eq: WEquation,
    pub mu_eq: MuEquation,
}

/// Linear-in-unknowns expression grouped by powers of x: each slot holds
/// the coefficient polynomial (in y) of 1, w, w'' and mu' respectively.
#[derive(Clone)]
struct LinRow {
    known: Poly,
    w: Poly,
    wpp: Poly,
    mup: Poly,
}

/// Mechanically reduce the soliton PDE (walker-eq4) for a structured f,
/// following the paper's chain: expand in powers of x, force the x^2 row
/// (which kills beta in the non-flat case), and read off (wfinal).
///
/// `alpha` is the linear-in-x coefficient of C that the general reduction
/// kills via `alpha f_xx = 0`; requesting a nonzero alpha on a non-flat
/// metric is an error.
pub fn reduce_general(
    m: &WalkerMetric,
    lambda: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
) -> Result<Reduction, LorsolError> {
    let FDef::Structured(spec) = &m.f else {
        return Err(LorsolError::InvalidInput(
            "the symbolic reduction needs a structured f".into(),
        ));
    };
    let flat = spec.kappa == 0.0;
    if alpha != 0.0 && !flat {
        return Err(LorsolError::Constraint(
            "alpha * f_xx = 0: a non-flat Walker soliton needs alpha = 0".into(),
        ));
    }

    let build_rows = |beta: f64| -> Vec<LinRow> {
        // walker-eq4 with f = kappa x^2 + x P + Q, grouped by x powers:
        //   (2 beta - lambda) f + 2 mu' - 2 eps x w''
        //     + (beta y + gamma) f_y + f_x (lambda x / 2 + w) - kappa/eps = 0
        let e = m.eps;
        let v = Poly::new(vec![gamma, beta]);
        let zero_row =
            LinRow { known: Poly::zero(), w: Poly::zero(), wpp: Poly::zero(), mup: Poly::zero() };
        let mut rows = vec![zero_row.clone(), zero_row.clone(), zero_row];
        let c = 2.0 * beta - lambda;
        // (2 beta - lambda) f
        rows[0].known = rows[0].known.add(&spec.q.scale(c));
        rows[1].known = rows[1].known.add(&spec.p.scale(c));
        rows[2].known = rows[2].known.add(&Poly::constant(c * spec.kappa));
        // 2 mu'
        rows[0].mup = Poly::constant(2.0);
        // -2 eps x w''
        rows[1].wpp = Poly::constant(-2.0 * e);
        // (beta y + gamma)(x P' + Q')
        rows[0].known = rows[0].known.add(&v.mul(&spec.q.deriv()));
        rows[1].known = rows[1].known.add(&v.mul(&spec.p.deriv()));
        // (2 kappa x + P)(lambda x / 2 + w)
        rows[2].known = rows[2].known.add(&Poly::constant(spec.kappa * lambda));
        rows[1].w = rows[1].w.add(&Poly::constant(2.0 * spec.kappa));
        rows[1].known = rows[1].known.add(&spec.p.scale(0.5 * lambda));
        rows[0].w = rows[0].w.add(&spec.p);
        // - kappa / eps
        rows[0].known = rows[0].known.sub(&Poly::constant(spec.kappa / e));
        rows
    };

    let rows = build_rows(beta);
    // the x^2 row carries no unknowns and must vanish identically
    debug_assert!(rows[2].w.is_zero() && rows[2].wpp.is_zero() && rows[2].mup.is_zero());
    let x2 = rows[2].known.eval(0.0); // constant: 2 beta kappa
    let beta_forced_zero = x2 != 0.0;
    let (beta_eff, rows) = if beta_forced_zero {
        (0.0, build_rows(0.0))
    } else {
        (beta, rows)
    };

    // x^1 row: known + w_c * w + wpp_c * w'' = 0, with constant w
    // coefficients; rearranged to (wfinal) form
    let w2 = -rows[1].wpp.eval(0.0); // 2 eps
    let w0 = -rows[1].w.eval(0.0); // -2 kappa
    let w_rhs = rows[1].known.clone();
    // x^0 row: known + P w + 2 mu' = 0
    let mu_known = rows[0].known.scale(-1.0);
    let pw_coeff = -rows[0].w.coeffs.first().copied().unwrap_or(0.0) / 1.0;

    Ok(Reduction {
        flat,
        beta_forced_zero,
        beta: beta_eff,
        w_eq: WEquation { w2, w0, rhs: w_rhs },
        mu_eq: MuEquation { rhs_known: mu_known, pw_coeff },
    })
}

// ---------------------------------------------------------------------------
// Symmetric-case solver
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct WalkerSolution {
    pub w: SampledFn,
    pub wp: SampledFn,
    pub mu: SampledFn,
}

/// Integrate (wfinal): `2 eps w'' - 2 kappa w = gamma P' - lambda P / 2`
/// and `2 mu' = kappa/eps - P w + lambda Q - gamma Q'`, on y in
/// [-1, 1] from y = 0 with the classical fourth-order one-step method
/// (fixed step), initial values `w(0) = w0`, `w'(0) = w0p`, `mu(0) = 0`.
pub fn solve_symmetric(
    spec: &StructuredF,
    eps: f64,
    lambda: f64,
    gamma: f64,
    w0: f64,
    w0p: f64,
) -> WalkerSolution {
    let h = DEFAULT_ODE_STEP;
    let steps = (1.0 / h).round() as usize;
    let pp = spec.p.deriv();
    let qp = spec.q.deriv();
    let wpp = |y: f64, w: f64| -> f64 {
        (2.0 * spec.kappa * w + gamma * pp.eval(y) - 0.5 * lambda * spec.p.eval(y)) / (2.0 * eps)
    };
    let mup = |y: f64, w: f64| -> f64 {
        0.5 * (spec.kappa / eps - spec.p.eval(y) * w + lambda * spec.q.eval(y)
            - gamma * qp.eval(y))
    };
    // state (w, w', mu)
    let deriv = |y: f64, s: [f64; 3]| -> [f64; 3] { [s[1], wpp(y, s[0]), mup(y, s[0])] };
    let rk4_step = |y: f64, s: [f64; 3], h: f64| -> [f64; 3] {
        let k1 = deriv(y, s);
        let add = |s: [f64; 3], k: [f64; 3], c: f64| {
            [s[0] + c * k[0], s[1] + c * k[1], s[2] + c * k[2]]
        };
        let k2 = deriv(y + 0.5 * h, add(s, k1, 0.5 * h));
        let k3 = deriv(y + 0.5 * h, add(s, k2, 0.5 * h));
        let k4 = deriv(y + h, add(s, k3, h));
        [
            s[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            s[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            s[2] + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
        ]
    };

    let n = 2 * steps + 1;
    let mut states = vec![[0.0f64; 3]; n];
    states[steps] = [w0, w0p, 0.0];
    for k in 0..steps {
        // forward from y = 0
        let y = k as f64 * h;
        states[steps + k + 1] = rk4_step(y, states[steps + k], h);
        // backward from y = 0
        let y = -(k as f64) * h;
        states[steps - k - 1] = rk4_step(y, states[steps - k], -h);
    }

    let node_y = |i: usize| -> f64 { -1.0 + i as f64 * h };
    let w = SampledFn {
        x0: -1.0,
        h,
        vals: states.iter().map(|s| s[0]).collect(),
        derivs: states.iter().map(|s| s[1]).collect(),
    };
    let wp = SampledFn {
        x0: -1.0,
        h,
        vals: states.iter().map(|s| s[1]).collect(),
        derivs: (0..n).map(|i| wpp(node_y(i), states[i][0])).collect(),
    };
    let mu = SampledFn {
        x0: -1.0,
        h,
        vals: states.iter().map(|s| s[2]).collect(),
        derivs: (0..n).map(|i| mup(node_y(i), states[i][0])).collect(),
    };
    WalkerSolution { w, wp, mu }
}

/// The field (eq:ws-1) from a symmetric-case solution.
pub fn build_soliton_field(
    spec: &StructuredF,
    eps: f64,
    sol: &WalkerSolution,
    lambda: f64,
    gamma: f64,
) -> WalkerField {
    WalkerField::Structured(StructuredField {
        lambda,
        gamma,
        eps,
        spec: spec.clone(),
        w: sol.w.clone(),
        wp: sol.wp.clone(),
        mu: sol.mu.clone(),
    })
}

/// Pointwise causal character of a field: the sign of g(X, X).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointCausality {
    Spacelike,
    Timelike,
    Null,
}

/// `g(X, X) = eps B^2 + 2 A C + f C^2` at the point.
pub fn field_norm_sq(m: &WalkerMetric, field: &WalkerField, t: f64, x: f64, y: f64) -> f64 {
    let (a, b, c) = field.components(t, x, y);
    m.eps * b * b + 2.0 * a * c + m.f(x, y) * c * c
}

pub fn causal_character_field(
    m: &WalkerMetric,
    field: &WalkerField,
    t: f64,
    x: f64,
    y: f64,
    tol: f64,
) -> PointCausality {
    let q = field_norm_sq(m, field, t, x, y);
    if q.abs() <= tol {
        PointCausality::Null
    } else if q > 0.0 {
        PointCausality::Spacelike
    } else {
        PointCausality::Timelike
    }
}

// ---------------------------------------------------------------------------
// Check battery (shared by the CLI and the acceptance tests)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct SolitonCombo {
    pub kappa: f64,
    pub eps: f64,
    pub p: Poly,
    pub q: Poly,
    pub lambda: f64,
    pub gamma: f64,
    pub w0: f64,
    pub w0p: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComboResult {
    pub combo: SolitonCombo,
    pub max_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct WalkerCheckReport {
    pub grid: Grid3,
    pub tol: f64,
    pub combos: Vec<ComboResult>,
    pub max_residual: f64,
    /// max |ric_op^2| over sampled non-flat metrics (should be 0 exactly).
    pub nilpotency_defect: f64,
    /// FD/closed-form Christoffel error at h = 1e-3 and 1e-4.
    pub christoffel_fd_errors: (f64, f64),
    /// Witness field whose g(X, X) changes sign over the grid.
    pub causal_variation_witnessed: bool,
    pub passed: bool,
}

/// The soliton test matrix: lambda of all three signs, kappa of both signs,
/// varied P, Q, gamma and initial conditions.
pub fn default_combos() -> Vec<SolitonCombo> {
    let c = |kappa: f64,
             eps: f64,
             p: Vec<f64>,
             q: Vec<f64>,
             lambda: f64,
             gamma: f64,
             w0: f64,
             w0p: f64| SolitonCombo {
        kappa,
        eps,
        p: Poly::new(p),
        q: Poly::new(q),
        lambda,
        gamma,
        w0,
        w0p,
    };
    vec![
        c(1.0, 1.0, vec![], vec![], 1.0, 0.0, 0.0, 0.0),
        c(1.0, 1.0, vec![], vec![], 0.0, 1.0, 0.0, 0.0), // causal-variation witness
        c(1.0, 1.0, vec![], vec![], -1.0, 0.0, 1.0, 0.0),
        c(-1.0, 1.0, vec![], vec![], 0.0, 0.0, 0.0, 1.0), // oscillatory homogeneous part
        c(-1.0, 1.0, vec![1.0], vec![], 2.0, 1.0, 0.0, 0.0),
        c(2.0, -1.0, vec![0.0, 1.0], vec![1.0], -2.0, 1.0, 1.0, 1.0),
        c(-2.0, -1.0, vec![1.0, 1.0], vec![0.0, 0.0, 1.0], 1.0, -1.0, 0.0, 0.0),
        c(0.5, 1.0, vec![0.0, 0.0, 1.0], vec![1.0, -1.0], 0.0, 2.0, 0.0, -1.0),
        c(-0.5, 1.0, vec![3.0], vec![0.0, 1.0], -0.5, 0.0, 2.0, 0.0),
        c(3.0, -1.0, vec![], vec![0.0, 0.0, 0.0, 1.0], 0.5, 1.0, 0.0, 0.0),
        c(1.0, 1.0, vec![0.0, 2.0], vec![], 3.0, 0.0, 0.0, 2.0),
        c(-3.0, 1.0, vec![0.0, 1.0], vec![0.0, 1.0], 0.0, 0.0, 1.0, -1.0),
    ]
}

pub fn run_combo(combo: &SolitonCombo, grid: &Grid3) -> ComboResult {
    let spec = StructuredF { kappa: combo.kappa, p: combo.p.clone(), q: combo.q.clone() };
    let metric = WalkerMetric::structured(combo.eps, spec.clone()).expect("eps is +-1");
    let sol = solve_symmetric(&spec, combo.eps, combo.lambda, combo.gamma, combo.w0, combo.w0p);
    let field = build_soliton_field(&spec, combo.eps, &sol, combo.lambda, combo.gamma);
    let max_residual = soliton_residual(&metric, &field, combo.lambda, grid);
    ComboResult { combo: combo.clone(), max_residual }
}

pub fn run_walker_check(tol: f64, grid: Grid3) -> WalkerCheckReport {
    let combos = default_combos();
    let results: Vec<ComboResult> = combos.iter().map(|c| run_combo(c, &grid)).collect();
    let max_residual = results.iter().fold(0.0f64, |a, r| a.max(r.max_residual));

    // nilpotency of ric_op over the combo metrics
    let mut nil = 0.0f64;
    for c in &combos {
        let spec = StructuredF { kappa: c.kappa, p: c.p.clone(), q: c.q.clone() };
        let m = WalkerMetric::structured(c.eps, spec).expect("eps is +-1");
        for &x in &grid.axis() {
            for &y in &grid.axis() {
                let (_, op) = walker_ricci(&m, x, y);
                let mut sq = [[0.0f64; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        sq[i][j] = (0..3).map(|k| op[i][k] * op[k][j]).sum();
                    }
                }
                nil = nil.max(sq.iter().flatten().fold(0.0f64, |a, &v| a.max(v.abs())));
            }
        }
    }

    // FD convergence probe on a generic metric; P, Q of degree >= 2 so the
    // centered differences are not exact
    let spec = StructuredF {
        kappa: 1.0,
        p: Poly::new(vec![1.0, -2.0, 0.5]),
        q: Poly::new(vec![0.0, 1.0, 0.0, 0.25]),
    };
    let m = WalkerMetric::structured(1.0, spec).expect("eps is +-1");
    let fd_err = |h: f64| -> f64 {
        let mut worst = 0.0f64;
        for &x in &[-0.7, 0.2, 0.9] {
            for &y in &[-0.5, 0.4, 0.8] {
                let closed = christoffels(&m, x, y);
                let fd = fd_christoffels(&m, x, y, h);
                for a in 0..3 {
                    for b in 0..3 {
                        for c in 0..3 {
                            worst = worst.max((closed[a][b][c] - fd[a][b][c]).abs());
                        }
                    }
                }
            }
        }
        worst
    };
    let christoffel_fd_errors = (fd_err(1e-3), fd_err(1e-4));

    // causal variation witness: combo #2 gives X = (y/2, 0, 1), g(X,X) = y + x^2
    let witness = &combos[1];
    let spec = StructuredF { kappa: witness.kappa, p: witness.p.clone(), q: witness.q.clone() };
    let metric = WalkerMetric::structured(witness.eps, spec.clone()).expect("eps is +-1");
    let sol = solve_symmetric(&spec, witness.eps, witness.lambda, witness.gamma, 0.0, 0.0);
    let field = build_soliton_field(&spec, witness.eps, &sol, witness.lambda, witness.gamma);
    let (mut pos, mut neg) = (false, false);
    for &t in &grid.axis() {
        for &x in &grid.axis() {
            for &y in &grid.axis() {
                let q = field_norm_sq(&metric, &field, t, x, y);
                pos |= q > tol;
                neg |= q < -tol;
            }
        }
    }
    let causal_variation_witnessed = pos && neg;

    let passed = max_residual < tol && nil == 0.0 && causal_variation_witnessed;
    WalkerCheckReport {
        grid,
        tol,
        combos: results,
        max_residual,
        nilpotency_defect: nil,
        christoffel_fd_errors,
        causal_variation_witnessed,
        passed,
    }
}

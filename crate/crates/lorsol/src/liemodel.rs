//! Three-dimensional Lorentzian Lie algebras: metrics, structure constants,
//! the seven parameter families, and structural predicates.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::LorsolError;
use crate::exactfield::QuadScalar;
use crate::linalg::{
    basis_vec3, det3, identity3, inverse3, is_symmetric, mat_mul, mat_vec, signature, transpose,
    vec_add, vec_scale, zero_vec3, Mat3, Vec3,
};

/// Tags for the parameter families of the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Family {
    Ia,
    Ib,
    II,
    III,
    IV1,
    IV2,
    IV3,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Ia,
        Family::Ib,
        Family::II,
        Family::III,
        Family::IV1,
        Family::IV2,
        Family::IV3,
    ];

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Ia | Family::Ib => &["alpha", "beta", "gamma"],
            Family::II => &["alpha", "beta"],
            Family::III => &["alpha"],
            Family::IV1 | Family::IV2 | Family::IV3 => &["alpha", "beta", "gamma", "delta"],
        }
    }

    pub fn constraint_text(self) -> &'static str {
        match self {
            Family::Ia => "none",
            Family::Ib => "beta != 0",
            Family::II => "none",
            Family::III => "none",
            Family::IV1 => "alpha*gamma - beta*delta = 0, alpha + delta != 0",
            Family::IV2 => "alpha*gamma + beta*delta = 0, alpha + delta != 0",
            Family::IV3 => "alpha*gamma = 0, alpha + delta != 0",
        }
    }

    pub fn is_unimodular_family(self) -> bool {
        matches!(self, Family::Ia | Family::Ib | Family::II | Family::III)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Ia => "Ia",
            Family::Ib => "Ib",
            Family::II => "II",
            Family::III => "III",
            Family::IV1 => "IV1",
            Family::IV2 => "IV2",
            Family::IV3 => "IV3",
        };
        write!(f, "{}", s)
    }
}

impl FromStr for Family {
    type Err = LorsolError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Ia" => Ok(Family::Ia),
            "Ib" => Ok(Family::Ib),
            "II" => Ok(Family::II),
            "III" => Ok(Family::III),
            "IV1" | "IV.1" => Ok(Family::IV1),
            "IV2" | "IV.2" => Ok(Family::IV2),
            "IV3" | "IV.3" => Ok(Family::IV3),
            _ => Err(LorsolError::Parse(format!("unknown family '{}'", s))),
        }
    }
}

/// A nondegenerate symmetric bilinear form on the basis, of Lorentzian
/// signature (+,+,-) up to basis order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric3 {
    g: Mat3,
}

impl Metric3 {
    pub fn new(g: Mat3) -> Result<Self, LorsolError> {
        if !is_symmetric(&g) {
            return Err(LorsolError::InvalidInput("metric must be symmetric".into()));
        }
        if det3(&g).is_zero() {
            return Err(LorsolError::DegenerateMetric);
        }
        let rows: Vec<Vec<QuadScalar>> = g.iter().map(|r| r.to_vec()).collect();
        let (pos, neg, _) = signature(&rows);
        if (pos, neg) != (2, 1) {
            return Err(LorsolError::NotLorentzian { pos, neg });
        }
        Ok(Metric3 { g })
    }

    /// diag(1, 1, -1)
    pub fn orthonormal_ppm() -> Self {
        let mut g = crate::linalg::zero_mat3();
        g[0][0] = QuadScalar::one();
        g[1][1] = QuadScalar::one();
        g[2][2] = QuadScalar::from_int(-1);
        Metric3 { g }
    }

    /// diag(-1, 1, 1), the IV.1 basis convention.
    pub fn orthonormal_mpp() -> Self {
        let mut g = crate::linalg::zero_mat3();
        g[0][0] = QuadScalar::from_int(-1);
        g[1][1] = QuadScalar::one();
        g[2][2] = QuadScalar::one();
        Metric3 { g }
    }

    /// The IV.3 pseudo-orthonormal form [[1,0,0],[0,0,-1],[0,-1,0]].
    pub fn pseudo_orthonormal_iv3() -> Self {
        let mut g = crate::linalg::zero_mat3();
        g[0][0] = QuadScalar::one();
        g[1][2] = QuadScalar::from_int(-1);
        g[2][1] = QuadScalar::from_int(-1);
        Metric3 { g }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.g
    }

    pub fn entry(&self, i: usize, j: usize) -> &QuadScalar {
        &self.g[i][j]
    }

    pub fn inner(&self, u: &Vec3, v: &Vec3) -> QuadScalar {
        let gu = mat_vec(&self.g, v);
        let mut s = QuadScalar::zero();
        for i in 0..3 {
            s = s + &u[i] * &gu[i];
        }
        s
    }

    pub fn inverse(&self) -> Mat3 {
        inverse3(&self.g).expect("metric nondegenerate by construction")
    }

    pub fn is_orthonormal_ppm(&self) -> bool {
        *self == Metric3::orthonormal_ppm()
    }
}

/// A 3D Lie algebra with a Lorentzian inner product on its basis.
///
/// Brackets are stored as the full antisymmetric table `[e_i, e_j]`; the
/// family tag and parameter map are advisory metadata, every computation
/// consumes only the brackets and the metric.
#[derive(Debug, Clone)]
pub struct LieAlgebra3 {
    brackets: [[Vec3; 3]; 3],
    metric: Metric3,
    family: Option<Family>,
    params: BTreeMap<String, QuadScalar>,
}

impl LieAlgebra3 {
    /// Build from the brackets `[e_i, e_j]` for i < j: entries (0,1), (0,2), (1,2).
    pub fn from_upper_brackets(upper: [Vec3; 3], metric: Metric3) -> Self {
        let mut brackets: [[Vec3; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| zero_vec3()));
        let idx = [(0usize, 1usize), (0, 2), (1, 2)];
        for (n, &(i, j)) in idx.iter().enumerate() {
            brackets[i][j] = upper[n].clone();
            brackets[j][i] = vec_scale(&QuadScalar::from_int(-1), &upper[n]);
        }
        LieAlgebra3 {
            brackets,
            metric,
            family: None,
            params: BTreeMap::new(),
        }
    }

    pub fn abelian(metric: Metric3) -> Self {
        LieAlgebra3::from_upper_brackets([zero_vec3(), zero_vec3(), zero_vec3()], metric)
    }

    pub fn metric(&self) -> &Metric3 {
        &self.metric
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn params(&self) -> &BTreeMap<String, QuadScalar> {
        &self.params
    }

    pub fn param(&self, name: &str) -> QuadScalar {
        self.params.get(name).cloned().unwrap_or_else(QuadScalar::zero)
    }

    /// Structure constant c_ij^k.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &QuadScalar {
        &self.brackets[i][j][k]
    }

    /// `[e_i, e_j]` as a coefficient vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vec3 {
        &self.brackets[i][j]
    }

    /// Bilinear extension `[u, v]`.
    pub fn bracket(&self, u: &Vec3, v: &Vec3) -> Vec3 {
        let mut out = zero_vec3();
        for i in 0..3 {
            for j in 0..3 {
                if u[i].is_zero() || v[j].is_zero() {
                    continue;
                }
                let f = &u[i] * &v[j];
                out = vec_add(&out, &vec_scale(&f, &self.brackets[i][j]));
            }
        }
        out
    }

    /// Exact Jacobi identity check over all basis triples.
    pub fn jacobi_check(&self) -> bool {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let t1 = self.bracket(&self.brackets[i][j].clone(), &basis_vec3(k));
                    let t2 = self.bracket(&self.brackets[j][k].clone(), &basis_vec3(i));
                    let t3 = self.bracket(&self.brackets[k][i].clone(), &basis_vec3(j));
                    let s = vec_add(&vec_add(&t1, &t2), &t3);
                    if !s.iter().all(|x| x.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Unimodularity: trace(ad_{e_j}) = 0 for every j, exactly.
    pub fn is_unimodular(&self) -> bool {
        for j in 0..3 {
            // (ad_{e_j})_{ki} = c_{j i}^{k}; trace over i = k
            let mut tr = QuadScalar::zero();
            for i in 0..3 {
                tr = tr + self.c(j, i, i);
            }
            if !tr.is_zero() {
                return false;
            }
        }
        true
    }

    /// The operator L with `[Z, Y] = L(Z x Y)`, for unimodular algebras in
    /// the orthonormal (+,+,-) basis. Columns come from
    /// L(e1) = [e2,e3], L(e2) = -[e1,e3], L(e3) = -[e1,e2].
    pub fn structure_operator(&self) -> Result<Mat3, LorsolError> {
        if !self.metric.is_orthonormal_ppm() {
            return Err(LorsolError::NotOrthonormal);
        }
        if !self.is_unimodular() {
            return Err(LorsolError::NotUnimodular);
        }
        let cols = [
            self.brackets[1][2].clone(),
            vec_scale(&QuadScalar::from_int(-1), &self.brackets[0][2]),
            vec_scale(&QuadScalar::from_int(-1), &self.brackets[0][1]),
        ];
        let mut l = crate::linalg::zero_mat3();
        for (j, col) in cols.iter().enumerate() {
            for i in 0..3 {
                l[i][j] = col[i].clone();
            }
        }
        Ok(l)
    }

    /// Express the algebra in a new basis whose j-th vector has coordinates
    /// `t[.][j]` in the old basis. Metric and brackets transform accordingly.
    pub fn change_basis(&self, t: &Mat3) -> Result<LieAlgebra3, LorsolError> {
        let t_inv = inverse3(t).ok_or(LorsolError::InvalidInput(
            "basis change matrix is singular".into(),
        ))?;
        let g_new = mat_mul(&transpose(t), &mat_mul(self.metric.matrix(), t));
        let metric = Metric3::new(g_new)?;
        let col = |j: usize| -> Vec3 { [t[0][j].clone(), t[1][j].clone(), t[2][j].clone()] };
        let mut upper = [zero_vec3(), zero_vec3(), zero_vec3()];
        let idx = [(0usize, 1usize), (0, 2), (1, 2)];
        for (n, &(a, b)) in idx.iter().enumerate() {
            let w = self.bracket(&col(a), &col(b));
            upper[n] = mat_vec(&t_inv, &w);
        }
        let mut out = LieAlgebra3::from_upper_brackets(upper, metric);
        out.family = self.family;
        out.params = self.params.clone();
        Ok(out)
    }
}

/// Lorentzian vector product in the orthonormal (+,+,-) basis:
/// e1 x e2 = -e3, e2 x e3 = e1, e3 x e1 = e2, extended bilinearly.
pub fn lorentz_cross(u: &Vec3, v: &Vec3, metric: &Metric3) -> Result<Vec3, LorsolError> {
    if !metric.is_orthonormal_ppm() {
        return Err(LorsolError::NotOrthonormal);
    }
    let table: [[Option<(usize, i64)>; 3]; 3] = [
        [None, Some((2, -1)), Some((1, -1))],
        [Some((2, 1)), None, Some((0, 1))],
        [Some((1, 1)), Some((0, -1)), None],
    ];
    let mut out = zero_vec3();
    for i in 0..3 {
        for j in 0..3 {
            if let Some((k, s)) = table[i][j] {
                let f = &u[i] * &v[j] * QuadScalar::from_int(s);
                out[k] = &out[k] + &f;
            }
        }
    }
    Ok(out)
}

fn neg(x: &QuadScalar) -> QuadScalar {
    -x.clone()
}

/// Construct a family member from named parameters, enforcing the family's
/// parameter constraints.
pub fn family_constructor(
    family: Family,
    params: &BTreeMap<String, QuadScalar>,
) -> Result<LieAlgebra3, LorsolError> {
    for name in params.keys() {
        if !family.param_names().contains(&name.as_str()) {
            return Err(LorsolError::InvalidInput(format!(
                "family {} does not take parameter '{}'",
                family, name
            )));
        }
    }
    let get = |n: &str| params.get(n).cloned().unwrap_or_else(QuadScalar::zero);
    let alpha = get("alpha");
    let beta = get("beta");
    let gamma = get("gamma");
    let delta = get("delta");
    let zero = QuadScalar::zero;
    let half = || QuadScalar::from_ratio(1, 2);
    let inv_sqrt2 = || QuadScalar::sqrt2() / QuadScalar::from_int(2);

    let mut alg = match family {
        Family::Ia => LieAlgebra3::from_upper_brackets(
            [
                [zero(), zero(), neg(&gamma)],
                [zero(), neg(&beta), zero()],
                [alpha.clone(), zero(), zero()],
            ],
            Metric3::orthonormal_ppm(),
        ),
        Family::Ib => {
            if beta.is_zero() {
                return Err(LorsolError::Constraint("Ib requires beta != 0".into()));
            }
            LieAlgebra3::from_upper_brackets(
                [
                    [zero(), beta.clone(), neg(&gamma)],
                    [zero(), neg(&gamma), neg(&beta)],
                    [alpha.clone(), zero(), zero()],
                ],
                Metric3::orthonormal_ppm(),
            )
        }
        Family::II => LieAlgebra3::from_upper_brackets(
            [
                [zero(), half(), neg(&(&beta - &half()))],
                [zero(), neg(&(&beta + &half())), neg(&half())],
                [alpha.clone(), zero(), zero()],
            ],
            Metric3::orthonormal_ppm(),
        ),
        Family::III => LieAlgebra3::from_upper_brackets(
            [
                [neg(&inv_sqrt2()), zero(), neg(&alpha)],
                [neg(&inv_sqrt2()), neg(&alpha), zero()],
                [alpha.clone(), inv_sqrt2(), neg(&inv_sqrt2())],
            ],
            Metric3::orthonormal_ppm(),
        ),
        Family::IV1 | Family::IV2 | Family::IV3 => {
            if (&alpha + &delta).is_zero() {
                return Err(LorsolError::Constraint("alpha + delta != 0".into()));
            }
            let (metric, relation, label) = match family {
                Family::IV1 => (
                    Metric3::orthonormal_mpp(),
                    &alpha * &gamma - &beta * &delta,
                    "alpha*gamma - beta*delta = 0",
                ),
                Family::IV2 => (
                    Metric3::orthonormal_ppm(),
                    &alpha * &gamma + &beta * &delta,
                    "alpha*gamma + beta*delta = 0",
                ),
                Family::IV3 => (
                    Metric3::pseudo_orthonormal_iv3(),
                    &alpha * &gamma,
                    "alpha*gamma = 0",
                ),
                _ => unreachable!(),
            };
            if !relation.is_zero() {
                return Err(LorsolError::Constraint(label.into()));
            }
            LieAlgebra3::from_upper_brackets(
                [
                    zero_vec3(),
                    [alpha.clone(), beta.clone(), zero()],
                    [gamma.clone(), delta.clone(), zero()],
                ],
                metric,
            )
        }
    };
    alg.family = Some(family);
    alg.params = params.clone();
    Ok(alg)
}

/// Convenience constructor from f64-free exact parameter list in the order
/// of [`Family::param_names`].
pub fn family_from_list(family: Family, values: &[QuadScalar]) -> Result<LieAlgebra3, LorsolError> {
    let names = family.param_names();
    if values.len() != names.len() {
        return Err(LorsolError::InvalidInput(format!(
            "family {} takes {} parameters, got {}",
            family,
            names.len(),
            values.len()
        )));
    }
    let map: BTreeMap<String, QuadScalar> = names
        .iter()
        .zip(values.iter())
        .map(|(n, v)| (n.to_string(), v.clone()))
        .collect();
    family_constructor(family, &map)
}

/// The IV.3 change to the orthonormal basis
/// `e~1 = e1, e~2 = (e2 - e3)/sqrt2, e~3 = (e2 + e3)/sqrt2`.
pub fn orthonormalize_iv3(alg: &LieAlgebra3) -> Result<LieAlgebra3, LorsolError> {
    match alg.family {
        Some(Family::IV3) => {}
        other => {
            return Err(LorsolError::WrongFamily {
                expected: "IV3".into(),
                got: other.map(|f| f.to_string()).unwrap_or_else(|| "none".into()),
            })
        }
    }
    Ok(iv3_basis_change(alg))
}

/// The same basis change without the family-tag gate, for hand-built inputs.
pub fn iv3_basis_change(alg: &LieAlgebra3) -> LieAlgebra3 {
    let s = QuadScalar::sqrt2() / QuadScalar::from_int(2); // 1/sqrt2
    let mut t = identity3();
    t[1][1] = s.clone();
    t[2][1] = -s.clone();
    t[1][2] = s.clone();
    t[2][2] = s;
    alg.change_basis(&t).expect("orthonormalizing change of basis")
}

// ---------------------------------------------------------------------------
// JSON document form
// ---------------------------------------------------------------------------

/// Wire format for one bracket coefficient: `[e_i, e_j]` contains `c * e_k`,
/// with 1-based indices and i < j.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: QuadScalar,
}

/// JSON algebra document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub metric: Vec<Vec<QuadScalar>>,
    pub brackets: Vec<BracketEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<BTreeMap<String, QuadScalar>>,
}

impl AlgebraDoc {
    pub fn to_algebra(&self) -> Result<LieAlgebra3, LorsolError> {
        if self.metric.len() != 3 || self.metric.iter().any(|r| r.len() != 3) {
            return Err(LorsolError::InvalidInput("metric must be 3x3".into()));
        }
        let mut g = crate::linalg::zero_mat3();
        for i in 0..3 {
            for j in 0..3 {
                g[i][j] = self.metric[i][j].clone();
            }
        }
        let metric = Metric3::new(g)?;
        let mut upper = [zero_vec3(), zero_vec3(), zero_vec3()];
        for e in &self.brackets {
            if e.i < 1 || e.j < 1 || e.k < 1 || e.i > 3 || e.j > 3 || e.k > 3 || e.i >= e.j {
                return Err(LorsolError::InvalidInput(format!(
                    "bracket indices must satisfy 1 <= i < j <= 3, 1 <= k <= 3 (got i={}, j={}, k={})",
                    e.i, e.j, e.k
                )));
            }
            let n = match (e.i, e.j) {
                (1, 2) => 0,
                (1, 3) => 1,
                (2, 3) => 2,
                _ => unreachable!(),
            };
            upper[n][e.k - 1] = &upper[n][e.k - 1] + &e.c;
        }
        let mut alg = LieAlgebra3::from_upper_brackets(upper, metric);
        if !alg.jacobi_check() {
            return Err(LorsolError::JacobiFails);
        }
        if let Some(f) = &self.family {
            alg.family = Some(f.parse()?);
        }
        if let Some(p) = &self.params {
            alg.params = p.clone();
        }
        Ok(alg)
    }

    pub fn from_algebra(alg: &LieAlgebra3) -> Self {
        let metric = alg
            .metric
            .matrix()
            .iter()
            .map(|r| r.to_vec())
            .collect::<Vec<_>>();
        let mut brackets = Vec::new();
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            for k in 0..3 {
                let c = alg.c(i, j, k);
                if !c.is_zero() {
                    brackets.push(BracketEntry {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        c: c.clone(),
                    });
                }
            }
        }
        AlgebraDoc {
            metric,
            brackets,
            family: alg.family.map(|f| f.to_string()),
            params: if alg.params.is_empty() {
                None
            } else {
                Some(alg.params.clone())
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(n: i64) -> QuadScalar {
        QuadScalar::from_int(n)
    }

    fn fam(f: Family, vals: &[i64]) -> LieAlgebra3 {
        let v: Vec<QuadScalar> = vals.iter().map(|&n| qi(n)).collect();
        family_from_list(f, &v).unwrap()
    }

    #[test]
    fn jacobi_on_families() {
        assert!(fam(Family::Ia, &[1, 2, 3]).jacobi_check());
        assert!(fam(Family::Ib, &[1, 2, 0]).jacobi_check());
        assert!(fam(Family::II, &[0, 1]).jacobi_check());
        assert!(fam(Family::III, &[5]).jacobi_check());
        assert!(fam(Family::IV1, &[1, 1, 1, 1]).jacobi_check());
        assert!(fam(Family::IV2, &[1, 1, -1, 1]).jacobi_check());
        assert!(fam(Family::IV3, &[1, 1, 0, 1]).jacobi_check());
        assert!(LieAlgebra3::abelian(Metric3::orthonormal_ppm()).jacobi_check());
    }

    #[test]
    fn jacobi_detects_violation() {
        // [e1,e2]=e3, [e1,e3]=e1, [e2,e3]=0: cyclic sum gives -e3 != 0
        let alg = LieAlgebra3::from_upper_brackets(
            [basis_vec3(2), basis_vec3(0), crate::linalg::zero_vec3()],
            Metric3::orthonormal_ppm(),
        );
        assert!(!alg.jacobi_check());
    }

    #[test]
    fn unimodularity_by_family() {
        assert!(fam(Family::II, &[3, -2]).is_unimodular());
        assert!(fam(Family::Ia, &[1, 2, 3]).is_unimodular());
        assert!(fam(Family::III, &[7]).is_unimodular());
        assert!(!fam(Family::IV3, &[1, 0, 0, 1]).is_unimodular());
        assert!(LieAlgebra3::abelian(Metric3::orthonormal_ppm()).is_unimodular());
    }

    #[test]
    fn cross_product_rules() {
        let g = Metric3::orthonormal_ppm();
        let e = |i| basis_vec3(i);
        let m1 = |v: &Vec3| vec_scale(&qi(-1), v);
        assert_eq!(lorentz_cross(&e(0), &e(1), &g).unwrap(), m1(&e(2)));
        assert_eq!(lorentz_cross(&e(1), &e(2), &g).unwrap(), e(0));
        assert_eq!(lorentz_cross(&e(2), &e(0), &g).unwrap(), e(1));
        let u = [qi(2), qi(-3), qi(5)];
        let uu = lorentz_cross(&u, &u, &g).unwrap();
        assert!(uu.iter().all(|x| x.is_zero()));
        assert!(lorentz_cross(&e(0), &e(1), &Metric3::orthonormal_mpp()).is_err());
    }

    #[test]
    fn structure_operator_ia_diagonal() {
        let alg = fam(Family::Ia, &[4, -7, 2]);
        let l = alg.structure_operator().unwrap();
        let mut expect = crate::linalg::zero_mat3();
        expect[0][0] = qi(4);
        expect[1][1] = qi(-7);
        expect[2][2] = qi(2);
        assert_eq!(l, expect);
    }

    #[test]
    fn structure_operator_iii_matches_printed_matrix() {
        let alg = fam(Family::III, &[3]);
        let l = alg.structure_operator().unwrap();
        let s = QuadScalar::sqrt2() / qi(2);
        let mut expect = crate::linalg::zero_mat3();
        expect[0][0] = qi(3);
        expect[0][1] = s.clone();
        expect[0][2] = s.clone();
        expect[1][0] = s.clone();
        expect[1][1] = qi(3);
        expect[2][0] = -s;
        expect[2][2] = qi(3);
        assert_eq!(l, expect);
    }

    #[test]
    fn structure_operator_rejects_nonunimodular() {
        let alg = LieAlgebra3::from_upper_brackets(
            [basis_vec3(0), zero_vec3(), zero_vec3()],
            Metric3::orthonormal_ppm(),
        );
        assert!(matches!(
            alg.structure_operator(),
            Err(LorsolError::NotUnimodular)
        ));
    }

    #[test]
    fn iv1_constraint_enforced() {
        assert!(family_from_list(Family::IV1, &[qi(1), qi(1), qi(1), qi(1)]).is_ok());
        assert!(family_from_list(Family::IV1, &[qi(1), qi(0), qi(1), qi(1)]).is_err());
        assert!(family_from_list(Family::IV1, &[qi(1), qi(0), qi(0), qi(-1)]).is_err());
    }

    #[test]
    fn family_ii_example_brackets() {
        // alpha=0, beta=1: [e1,e2] = e2/2 - e3/2, [e1,e3] = -3/2 e2 - 1/2 e3
        let alg = fam(Family::II, &[0, 1]);
        assert_eq!(
            *alg.basis_bracket(0, 1),
            [qi(0), QuadScalar::from_ratio(1, 2), QuadScalar::from_ratio(-1, 2)]
        );
        assert_eq!(
            *alg.basis_bracket(0, 2),
            [qi(0), QuadScalar::from_ratio(-3, 2), QuadScalar::from_ratio(-1, 2)]
        );
        assert!(alg.basis_bracket(1, 2).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn orthonormalize_iv3_metric_and_products() {
        let alg = fam(Family::IV3, &[1, 2, 0, 1]);
        let on = orthonormalize_iv3(&alg).unwrap();
        assert_eq!(*on.metric(), Metric3::orthonormal_ppm());
        // inner products of mapped vectors agree with the old metric
        let s = QuadScalar::sqrt2() / qi(2);
        let e2_old = [qi(0), s.clone(), -s.clone()]; // e~2 in old coords
        assert_eq!(alg.metric().inner(&e2_old, &e2_old), qi(1));
        assert!(on.jacobi_check());
        // bracket relations preserved: [e~2, e~3] in new basis equals the
        // transported old bracket
        assert!(orthonormalize_iv3(&fam(Family::Ia, &[1, 1, 1])).is_err());
    }

    #[test]
    fn orthonormalize_iv3_abelian_degenerate() {
        // alpha=beta=gamma=delta=0 waiving the family constraint: hand-built
        let alg = LieAlgebra3::abelian(Metric3::pseudo_orthonormal_iv3());
        let on = iv3_basis_change(&alg);
        assert_eq!(*on.metric(), Metric3::orthonormal_ppm());
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert!(on.basis_bracket(i, j).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn algebra_doc_roundtrip() {
        let alg = fam(Family::II, &[1, 2]);
        let doc = AlgebraDoc::from_algebra(&alg);
        let back = doc.to_algebra().unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert_eq!(alg.basis_bracket(i, j), back.basis_bracket(i, j));
        }
        assert_eq!(back.family(), Some(Family::II));
    }

    #[test]
    fn algebra_doc_rejects_bad_input() {
        let json = r#"{"metric": [[{"a":[1,1],"b":[0,1]},{"a":[0,1],"b":[0,1]},{"a":[0,1],"b":[0,1]}],
                        [{"a":[0,1],"b":[0,1]},{"a":[1,1],"b":[0,1]},{"a":[0,1],"b":[0,1]}],
                        [{"a":[0,1],"b":[0,1]},{"a":[0,1],"b":[0,1]},{"a":[-1,1],"b":[0,1]}]],
                      "brackets": [], "unknown_field": 1}"#;
        assert!(serde_json::from_str::<AlgebraDoc>(json).is_err());
    }
}

//! Finite-dimensional algebras by structure constants, with optional Hopf,
//! anti-involution and ribbon data.
//!
//! Construction goes through [`AlgebraParts`] (raw, unvalidated data) and
//! [`Algebra::new`], which runs [`check_algebra`] and refuses anything that
//! violates an axiom. Everything downstream can therefore assume a valid
//! algebra.

mod category;
mod group;
mod hopf;

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactlin::{SparseMatrix, SparseVec};
use crate::field::{FieldTag, Scalar};
use crate::report::ValidationReport;

pub use category::{CategoryError, PresentedCategory};
pub use group::{FiniteGroup, GroupError};
pub use hopf::{coadjoint_invariants_dim, coadjoint_module, drinfeld_double, group_algebra, ModuleAction, RibbonConvention};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("malformed algebra data: {0}")]
    Malformed(String),
    #[error("algebra axioms violated:\n{0}")]
    AxiomViolation(ValidationReport),
    #[error("invalid group: {0}")]
    InvalidGroup(#[from] GroupError),
    #[error("algebra has no Hopf data")]
    HopfDataMissing,
    #[error("dimension must be at least one")]
    ZeroDimension,
}

/// Comultiplication, counit and antipode. `comul[i]` is a vector over
/// `A ⊗ A` indexed by `j * dim + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfData {
    pub comul: Vec<SparseVec>,
    pub counit: Vec<Scalar>,
    pub antipode: SparseMatrix,
}

/// An anti-algebra map squaring to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct AntiInvolution {
    pub w: SparseMatrix,
}

/// A central invertible element and its inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct RibbonData {
    pub v: SparseVec,
    pub v_inv: SparseVec,
}

/// Unvalidated algebra description.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraParts {
    pub field: FieldTag,
    pub basis: Vec<String>,
    /// `mu[i][j]` is the product `e_i e_j`.
    pub mu: Vec<Vec<SparseVec>>,
    pub unit: SparseVec,
    pub hopf: Option<HopfData>,
    pub involution: Option<AntiInvolution>,
    pub ribbon: Option<RibbonData>,
}

/// Options for [`check_algebra_with`].
#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    /// Up to this dimension every basis triple is checked; above it a seeded
    /// random sample of `sample` triples is used.
    pub exhaustive_dim_limit: usize,
    pub sample: usize,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            exhaustive_dim_limit: 40,
            sample: 20_000,
            seed: 0,
        }
    }
}

/// A validated finite-dimensional associative unital algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct Algebra {
    field: FieldTag,
    basis: Vec<String>,
    mu: Vec<Vec<SparseVec>>,
    unit: SparseVec,
    hopf: Option<HopfData>,
    involution: Option<AntiInvolution>,
    ribbon: Option<RibbonData>,
}

impl Algebra {
    pub fn new(parts: AlgebraParts) -> Result<Self, AlgebraError> {
        check_shapes(&parts)?;
        let report = check_algebra(&parts);
        if !report.is_valid() {
            return Err(AlgebraError::AxiomViolation(report));
        }
        Ok(Self::from_parts_unchecked(parts))
    }

    fn from_parts_unchecked(parts: AlgebraParts) -> Self {
        Algebra {
            field: parts.field,
            basis: parts.basis,
            mu: parts.mu,
            unit: parts.unit,
            hopf: parts.hopf,
            involution: parts.involution,
            ribbon: parts.ribbon,
        }
    }

    /// The ground field as a one-dimensional algebra, with its trivial Hopf,
    /// involution and ribbon structure.
    pub fn ground_field(field: FieldTag) -> Self {
        let one = vec![(0, field.one())];
        Algebra::new(AlgebraParts {
            field,
            basis: vec!["1".into()],
            mu: vec![vec![one.clone()]],
            unit: one.clone(),
            hopf: Some(HopfData {
                comul: vec![one.clone()],
                counit: vec![field.one()],
                antipode: SparseMatrix::identity(field, 1),
            }),
            involution: Some(AntiInvolution {
                w: SparseMatrix::identity(field, 1),
            }),
            ribbon: Some(RibbonData {
                v: one.clone(),
                v_inv: one,
            }),
        })
        .expect("ground field is an algebra")
    }

    pub fn to_parts(&self) -> AlgebraParts {
        AlgebraParts {
            field: self.field,
            basis: self.basis.clone(),
            mu: self.mu.clone(),
            unit: self.unit.clone(),
            hopf: self.hopf.clone(),
            involution: self.involution.clone(),
            ribbon: self.ribbon.clone(),
        }
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn hopf(&self) -> Option<&HopfData> {
        self.hopf.as_ref()
    }

    pub fn involution(&self) -> Option<&AntiInvolution> {
        self.involution.as_ref()
    }

    pub fn ribbon(&self) -> Option<&RibbonData> {
        self.ribbon.as_ref()
    }

    /// `e_i e_j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mu[i][j]
    }

    pub fn mul(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        mul_vec(self.field, &self.mu, x, y)
    }

    pub fn basis_vector(&self, i: usize) -> SparseVec {
        vec![(i, self.field.one())]
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mul_matrix(&self, a: &[(usize, Scalar)]) -> SparseMatrix {
        let cols = (0..self.dim()).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        SparseMatrix::from_columns(self.field, self.dim(), cols)
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_mul_matrix(&self, a: &[(usize, Scalar)]) -> SparseMatrix {
        let cols = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), a)).collect();
        SparseMatrix::from_columns(self.field, self.dim(), cols)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| self.mu[i][j] == self.mu[j][i]))
    }

    /// `v^ell` for the ribbon element (negative powers use `v_inv`).
    pub fn ribbon_power(&self, ell: i64) -> Option<SparseVec> {
        let r = self.ribbon.as_ref()?;
        let base = if ell >= 0 { &r.v } else { &r.v_inv };
        let mut acc = self.unit.clone();
        for _ in 0..ell.unsigned_abs() {
            acc = self.mul(&acc, base);
        }
        Some(acc)
    }

    /// The two-sided inverse of `x`, if it exists.
    pub fn inverse_of(&self, x: &[(usize, Scalar)]) -> Option<SparseVec> {
        let d = self.dim();
        let f = self.field;
        let unit_col = SparseMatrix::from_columns(f, d, vec![self.unit.clone()]);
        let aug = SparseMatrix::hstack(f, d, &[&self.left_mul_matrix(x), &unit_col]);
        let kernel = crate::exactlin::kernel_basis(&aug);
        let col = kernel.columns().into_iter().find(|c| c.iter().any(|(i, _)| *i == d))?;
        let last = col.iter().find(|(i, _)| *i == d).map(|(_, c)| c.clone())?;
        let scale = f.neg(&f.inv(&last)?);
        let y: SparseVec = col
            .iter()
            .filter(|(i, _)| *i < d)
            .map(|(i, c)| (*i, f.mul(c, &scale)))
            .collect();
        (self.mul(&y, x) == self.unit).then_some(y)
    }

    /// Replaces the ribbon data.
    pub fn with_ribbon(&self, ribbon: RibbonData) -> Result<Self, AlgebraError> {
        let mut parts = self.to_parts();
        parts.ribbon = Some(ribbon);
        Algebra::new(parts)
    }

    /// Drops the Hopf, involution and ribbon data.
    pub fn plain(&self) -> Self {
        let mut parts = self.to_parts();
        parts.hopf = None;
        parts.involution = None;
        parts.ribbon = None;
        Self::from_parts_unchecked(parts)
    }

    /// Reinterprets the structure constants over another field.
    pub fn change_field(&self, field: FieldTag) -> Result<Self, AlgebraError> {
        let conv = |v: &SparseVec| -> Result<SparseVec, AlgebraError> {
            let mut out = Vec::with_capacity(v.len());
            for (i, x) in v {
                let y = field.normalize(x).map_err(|e| AlgebraError::Malformed(e.to_string()))?;
                if !y.is_zero() {
                    out.push((*i, y));
                }
            }
            Ok(out)
        };
        let conv_mat = |m: &SparseMatrix| -> Result<SparseMatrix, AlgebraError> {
            SparseMatrix::from_triplets(field, m.nrows(), m.ncols(), m.entries().map(|(r, c, v)| (r, c, v.clone())))
                .map_err(|e| AlgebraError::Malformed(e.to_string()))
        };
        let p = self.to_parts();
        let mu = p
            .mu
            .iter()
            .map(|row| row.iter().map(conv).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let hopf = match &p.hopf {
            Some(h) => Some(HopfData {
                comul: h.comul.iter().map(conv).collect::<Result<_, _>>()?,
                counit: h
                    .counit
                    .iter()
                    .map(|x| field.normalize(x).map_err(|e| AlgebraError::Malformed(e.to_string())))
                    .collect::<Result<_, _>>()?,
                antipode: conv_mat(&h.antipode)?,
            }),
            None => None,
        };
        let involution = match &p.involution {
            Some(w) => Some(AntiInvolution { w: conv_mat(&w.w)? }),
            None => None,
        };
        let ribbon = match &p.ribbon {
            Some(r) => Some(RibbonData {
                v: conv(&r.v)?,
                v_inv: conv(&r.v_inv)?,
            }),
            None => None,
        };
        Algebra::new(AlgebraParts {
            field,
            basis: p.basis,
            mu,
            unit: conv(&p.unit)?,
            hopf,
            involution,
            ribbon,
        })
    }
}

/// The same algebra with ribbon element `v = v_inv = 1`.
pub fn with_trivial_ribbon(a: &Algebra) -> Algebra {
    let mut parts = a.to_parts();
    parts.ribbon = Some(RibbonData {
        v: a.unit.clone(),
        v_inv: a.unit.clone(),
    });
    Algebra::from_parts_unchecked(parts)
}

/// `n x n` matrices over `a`. Basis `E_ij ⊗ e_k` at index `(i n + j) dim + k`.
/// An anti-involution `w` of `a` induces `E_ij ⊗ x ↦ E_ji ⊗ w(x)`; a central
/// ribbon element `v` induces the scalar matrix `v I`. Hopf data is dropped.
pub fn matrix_algebra(a: &Algebra, n: usize) -> Algebra {
    assert!(n >= 1, "matrix size must be positive");
    if n == 1 {
        return a.clone();
    }
    let d = a.dim();
    let f = a.field;
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * d + k;
    let lift = |i: usize, j: usize, v: &SparseVec| -> SparseVec { v.iter().map(|(k, x)| (idx(i, j, *k), x.clone())).collect() };
    let mut basis = Vec::with_capacity(n * n * d);
    for i in 0..n {
        for j in 0..n {
            for k in 0..d {
                basis.push(format!("E{}{}⊗{}", i + 1, j + 1, a.basis[k]));
            }
        }
    }
    let dim = n * n * d;
    let mut mu = vec![vec![Vec::new(); dim]; dim];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for x in 0..d {
                    for y in 0..d {
                        mu[idx(i, j, x)][idx(j, l, y)] = lift(i, l, &a.mu[x][y]);
                    }
                }
            }
        }
    }
    let scalar_matrix = |v: &SparseVec| -> SparseVec {
        let mut out: SparseVec = (0..n).flat_map(|i| lift(i, i, v)).collect();
        out.sort_by_key(|(k, _)| *k);
        out
    };
    let involution = a.involution.as_ref().map(|w| {
        let trip = (0..n).flat_map(|i| {
            (0..n).flat_map(move |j| w.w.entries().map(move |(r, c, v)| (idx(j, i, r), idx(i, j, c), v.clone())))
        });
        AntiInvolution {
            w: SparseMatrix::from_triplets(f, dim, dim, trip.collect::<Vec<_>>()).unwrap(),
        }
    });
    let ribbon = a.ribbon.as_ref().map(|r| RibbonData {
        v: scalar_matrix(&r.v),
        v_inv: scalar_matrix(&r.v_inv),
    });
    Algebra::from_parts_unchecked(AlgebraParts {
        field: f,
        basis,
        mu,
        unit: scalar_matrix(&a.unit),
        hopf: None,
        involution,
        ribbon,
    })
}

pub(crate) fn mul_vec(f: FieldTag, mu: &[Vec<SparseVec>], x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, a) in x {
        for (j, b) in y {
            let ab = f.mul(a, b);
            for (k, c) in &mu[*i][*j] {
                let slot = acc.entry(*k).or_insert_with(Scalar::zero);
                *slot = f.add(slot, &f.mul(&ab, c));
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn fmt_vec(v: &[(usize, Scalar)]) -> String {
    let terms: Vec<String> = v
        .iter()
        .map(|(i, x)| format!("{}*e{}", crate::field::format_scalar(x), i))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn check_vec(v: &[(usize, Scalar)], bound: usize, what: &str) -> Result<(), AlgebraError> {
    for w in v.windows(2) {
        if w[0].0 >= w[1].0 {
            return Err(AlgebraError::Malformed(format!("{what}: indices not strictly increasing")));
        }
    }
    if let Some((i, _)) = v.iter().find(|(i, x)| *i >= bound || x.is_zero()) {
        return Err(AlgebraError::Malformed(format!("{what}: bad entry at index {i}")));
    }
    Ok(())
}

fn check_shapes(p: &AlgebraParts) -> Result<(), AlgebraError> {
    let d = p.basis.len();
    if d == 0 {
        return Err(AlgebraError::ZeroDimension);
    }
    if p.mu.len() != d || p.mu.iter().any(|r| r.len() != d) {
        return Err(AlgebraError::Malformed("structure constants must be dim x dim".into()));
    }
    for (i, row) in p.mu.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            check_vec(v, d, &format!("mu[{i}][{j}]"))?;
        }
    }
    check_vec(&p.unit, d, "unit")?;
    if let Some(h) = &p.hopf {
        if h.comul.len() != d || h.counit.len() != d || h.antipode.shape() != (d, d) {
            return Err(AlgebraError::Malformed("Hopf data has wrong shape".into()));
        }
        for (i, v) in h.comul.iter().enumerate() {
            check_vec(v, d * d, &format!("comul[{i}]"))?;
        }
    }
    if let Some(w) = &p.involution {
        if w.w.shape() != (d, d) {
            return Err(AlgebraError::Malformed("involution has wrong shape".into()));
        }
    }
    if let Some(r) = &p.ribbon {
        check_vec(&r.v, d, "ribbon v")?;
        check_vec(&r.v_inv, d, "ribbon v_inv")?;
    }
    Ok(())
}

/// Checks every axiom of the supplied data; see [`check_algebra_with`].
pub fn check_algebra(p: &AlgebraParts) -> ValidationReport {
    check_algebra_with(p, &CheckOptions::default())
}

/// Reports every violated axiom instance: associativity and unit laws; when
/// present, the bialgebra and antipode laws, the anti-involution laws and the
/// ribbon element laws (invertible and central).
pub fn check_algebra_with(p: &AlgebraParts, opts: &CheckOptions) -> ValidationReport {
    let mut report = ValidationReport::new();
    if let Err(e) = check_shapes(p) {
        report.push("shape", e.to_string());
        return report;
    }
    let f = p.field;
    let d = p.basis.len();
    let e = |i: usize| vec![(i, f.one())];
    let mul = |x: &[(usize, Scalar)], y: &[(usize, Scalar)]| mul_vec(f, &p.mu, x, y);

    let triples: Vec<(usize, usize, usize)> = if d <= opts.exhaustive_dim_limit {
        (0..d)
            .flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        (0..opts.sample)
            .map(|_| (rng.random_range(0..d), rng.random_range(0..d), rng.random_range(0..d)))
            .collect()
    };
    for &(i, j, k) in &triples {
        let left = mul(&p.mu[i][j], &e(k));
        let right = mul(&e(i), &p.mu[j][k]);
        report.require(left == right, "associativity", format!("({i},{j},{k})"));
    }
    for i in 0..d {
        report.require(mul(&p.unit, &e(i)) == e(i), "left unit", format!("e{i}"));
        report.require(mul(&e(i), &p.unit) == e(i), "right unit", format!("e{i}"));
    }

    if let Some(h) = &p.hopf {
        hopf::check_hopf(p, h, &mut report);
    }
    if let Some(w) = &p.involution {
        let wm = &w.w;
        for i in 0..d {
            for j in 0..d {
                let lhs = wm.apply(&p.mu[i][j]);
                let rhs = mul(&wm.apply(&e(j)), &wm.apply(&e(i)));
                report.require(lhs == rhs, "involution anti-multiplicative", format!("({i},{j})"));
            }
        }
        report.require(wm.apply(&p.unit) == p.unit, "involution unital", "unit");
        report.require(wm.mul(wm).is_identity(), "involution squares to identity", "w^2");
    }
    if let Some(r) = &p.ribbon {
        report.require(mul(&r.v, &r.v_inv) == p.unit, "ribbon inverse", "v v_inv");
        report.require(mul(&r.v_inv, &r.v) == p.unit, "ribbon inverse", "v_inv v");
        for i in 0..d {
            report.require(
                mul(&r.v, &e(i)) == mul(&e(i), &r.v),
                "ribbon central",
                format!("e{i}: v e = {}, e v = {}", fmt_vec(&mul(&r.v, &e(i))), fmt_vec(&mul(&e(i), &r.v))),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldTag {
        FieldTag::Rationals
    }

    /// Q[x]/(x^2): basis 1, x.
    fn dual_numbers() -> AlgebraParts {
        let one = q().one();
        AlgebraParts {
            field: q(),
            basis: vec!["1".into(), "x".into()],
            mu: vec![
                vec![vec![(0, one.clone())], vec![(1, one.clone())]],
                vec![vec![(1, one.clone())], vec![]],
            ],
            unit: vec![(0, one)],
            hopf: None,
            involution: None,
            ribbon: None,
        }
    }

    #[test]
    fn dual_numbers_are_valid() {
        assert!(check_algebra(&dual_numbers()).is_valid());
        let a = Algebra::new(dual_numbers()).unwrap();
        assert!(a.is_commutative());
    }

    #[test]
    fn broken_associativity_is_reported_with_triple() {
        // Basis 1, x, y with x y = x and every other product of x, y zero:
        // (x y) y = x but x (y y) = 0.
        let one = q().one();
        let mut mu = vec![vec![Vec::new(); 3]; 3];
        for i in 0..3 {
            mu[0][i] = vec![(i, one.clone())];
            mu[i][0] = vec![(i, one.clone())];
        }
        mu[1][2] = vec![(1, one.clone())];
        let p = AlgebraParts {
            field: q(),
            basis: vec!["1".into(), "x".into(), "y".into()],
            mu,
            unit: vec![(0, one)],
            hopf: None,
            involution: None,
            ribbon: None,
        };
        let r = check_algebra(&p);
        assert!(r.violations.iter().any(|v| v.relation == "associativity" && v.location == "(1,2,2)"));
        assert!(matches!(Algebra::new(p), Err(AlgebraError::AxiomViolation(_))));
    }

    #[test]
    fn one_dimensional_field_algebra() {
        let k = Algebra::ground_field(q());
        assert_eq!(k.dim(), 1);
        assert!(check_algebra(&k.to_parts()).is_valid());
    }

    #[test]
    fn malformed_shapes_are_rejected() {
        let mut p = dual_numbers();
        p.mu.pop();
        assert!(matches!(Algebra::new(p), Err(AlgebraError::Malformed(_))));
        let mut p = dual_numbers();
        p.unit = vec![(5, q().one())];
        assert!(matches!(Algebra::new(p), Err(AlgebraError::Malformed(_))));
    }

    #[test]
    fn matrix_algebra_units() {
        let m = matrix_algebra(&Algebra::ground_field(q()), 2);
        assert_eq!(m.dim(), 4);
        let e11 = m.index_of("E11⊗1").unwrap();
        let e12 = m.index_of("E12⊗1").unwrap();
        assert_eq!(m.mul_basis(e11, e12), &vec![(e12, q().one())]);
        assert!(m.mul_basis(e12, e11) != m.mul_basis(e11, e12));
        assert!(check_algebra(&m.to_parts()).is_valid());
        let k = Algebra::ground_field(q());
        assert_eq!(matrix_algebra(&k, 1), k);
    }

    #[test]
    fn trivial_ribbon_is_valid() {
        let a = with_trivial_ribbon(&Algebra::new(dual_numbers()).unwrap());
        assert!(check_algebra(&a.to_parts()).is_valid());
        assert_eq!(a.ribbon_power(3).unwrap(), *a.unit());
    }

    #[test]
    fn non_central_ribbon_is_rejected() {
        let m = matrix_algebra(&Algebra::ground_field(q()), 2);
        let e11 = m.index_of("E11⊗1").unwrap();
        let e22 = m.index_of("E22⊗1").unwrap();
        // diag(1, 2) is invertible but not central.
        let bad = RibbonData {
            v: vec![(e11, q().one()), (e22, q().from_i64(2))],
            v_inv: vec![(e11, q().one()), (e22, q().parse_scalar("1/2").unwrap())],
        };
        let err = m.with_ribbon(bad).unwrap_err();
        match err {
            AlgebraError::AxiomViolation(r) => {
                assert!(r.matching("ribbon central").count() > 0);
                assert_eq!(r.matching("ribbon inverse").count(), 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}

//! The Hochschild cyclic module of an algebra or of a presented linear
//! category, its Hochschild, cyclic and dihedral homology, and the action of
//! the Dehn twist and the reflection on Hochschild homology.
//!
//! Conventions. A chain of degree `n` is a loop of morphisms
//! `a_i ∈ C(X_{i+1}, X_i)` (indices mod `n + 1`); for an algebra it is
//! `a_0 ⊗ … ⊗ a_n`. Basis order: object tuples lexicographically, then
//! tensor basis lexicographically with `a_0` most significant.
//!
//! * `d_i` composes `a_i a_{i+1}` (`i < n`), `d_n` composes `a_n a_0` into
//!   the first slot; `s_j` inserts an identity after slot `j`.
//! * `τ_n(a_0 ⊗ … ⊗ a_n) = a_n ⊗ a_0 ⊗ … ⊗ a_{n−1}` and, for an
//!   anti-involution `w`, `ρ_n(a_0 ⊗ … ⊗ a_n) = w(a_0) ⊗ w(a_n) ⊗ … ⊗ w(a_1)`.
//!   These unsigned maps form the cyclic and dihedral module data.
//! * The complexes use the signed operators `t_n = (−1)^n τ_n`,
//!   `r_n = (−1)^{n(n+1)/2} ρ_n`, `b = Σ (−1)^i d_i` and
//!   `B = (1 − t_{n+1}) s N` with `s(a_0 ⊗ … ⊗ a_n) = 1 ⊗ a_0 ⊗ … ⊗ a_n` and
//!   `N = Σ_i t_n^i`.

mod action;
mod homology;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AntiInvolution, AlgebraError};
use crate::exactlin::{LinAlgError, SparseMatrix, SparseVec};
use crate::field::{FieldTag, Scalar};
use crate::report::ValidationReport;
use crate::simplicial::{CyclicModuleData, DihedralModuleData, SimplicialError};
use crate::{Algebra, PresentedCategory};

pub use action::{
    compare_actions, dehn_twist_action, leg_choice_agrees, leg_exponents, mcg_action_report, multiplicative_order,
    reflection_action, twist_on_homology, twist_on_representatives, ActionReport, ComparisonReport, DegreeAction, Difference, DistinguishVerdict,
};

/// Default cap on the dimension of any chain space.
pub const DEFAULT_MAX_CELLS: usize = 1_000_000;

/// Default number of powers tried when looking for the order of an action.
pub const DEFAULT_ORDER_BOUND: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HochschildError {
    #[error("chain space of degree {degree} has {cells} basis elements, above the bound {bound}")]
    SizeBound { degree: usize, cells: u128, bound: usize },
    #[error("no ribbon element available")]
    RibbonMissing,
    #[error("no dihedral structure available")]
    DihedralMissing,
    #[error("invalid anti-involution:\n{0}")]
    InvolutionInvalid(ValidationReport),
    #[error("quotient-complex models need characteristic 0, field is {0}")]
    CharNotZero(FieldTag),
    #[error("operator is not a chain map: {0}")]
    NotChainMap(String),
    #[error("degree {requested} needs a bundle built through degree {needed}, have {available}")]
    DegreeOutOfRange { requested: usize, needed: usize, available: usize },
    #[error("bundles are over different fields: {0} and {1}")]
    FieldMismatch(FieldTag, FieldTag),
    #[error("wrong number of leg exponents: expected {expected}, got {got}")]
    LegCount { expected: usize, got: usize },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

/// Limits for bundle construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BundleOptions {
    /// Largest admissible chain-space dimension.
    pub max_cells: usize,
}

impl Default for BundleOptions {
    fn default() -> Self {
        BundleOptions {
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

/// The basis of `C_n`, grouped by object tuple.
#[derive(Debug, Clone)]
struct ChainSpace {
    degree: usize,
    objects: usize,
    /// Indexed by the object tuple read as a base-`objects` number.
    offsets: Vec<usize>,
    leg_dims: Vec<Vec<usize>>,
    dim: usize,
}

impl ChainSpace {
    fn tuple(&self, mut code: usize) -> Vec<usize> {
        let mut objs = vec![0; self.degree + 1];
        for slot in objs.iter_mut().rev() {
            *slot = code % self.objects;
            code /= self.objects;
        }
        objs
    }

    fn code(&self, objs: &[usize]) -> usize {
        objs.iter().fold(0, |acc, &x| acc * self.objects + x)
    }

    /// Dimension of `C_n` without building anything.
    fn count(cat: &PresentedCategory, degree: usize) -> u128 {
        let k = cat.num_objects();
        let mut total: u128 = 0;
        let mut objs = vec![0usize; degree + 1];
        loop {
            total += (0..=degree)
                .map(|i| cat.hom_dim(objs[(i + 1) % (degree + 1)], objs[i]) as u128)
                .product::<u128>();
            if !next_tuple(&mut objs, k) {
                return total;
            }
        }
    }

    fn new(cat: &PresentedCategory, degree: usize) -> Self {
        let k = cat.num_objects();
        let tuples = k.pow(degree as u32 + 1);
        let mut space = ChainSpace {
            degree,
            objects: k,
            offsets: Vec::with_capacity(tuples),
            leg_dims: Vec::with_capacity(tuples),
            dim: 0,
        };
        for code in 0..tuples {
            let objs = space.tuple(code);
            let dims: Vec<usize> = (0..=degree).map(|i| cat.hom_dim(objs[(i + 1) % (degree + 1)], objs[i])).collect();
            space.offsets.push(space.dim);
            space.dim += dims.iter().product::<usize>();
            space.leg_dims.push(dims);
        }
        space
    }

    fn index(&self, objs: &[usize], legs: &[usize]) -> usize {
        let code = self.code(objs);
        let dims = &self.leg_dims[code];
        self.offsets[code] + legs.iter().zip(dims).fold(0, |acc, (&l, &d)| acc * d + l)
    }

    /// Calls `visit(objs, legs)` for every basis chain in index order.
    fn for_each(&self, mut visit: impl FnMut(&[usize], &[usize])) {
        for (code, dims) in self.leg_dims.iter().enumerate() {
            if dims.contains(&0) {
                continue;
            }
            let objs = self.tuple(code);
            let mut legs = vec![0usize; self.degree + 1];
            loop {
                visit(&objs, &legs);
                if !next_mixed(&mut legs, dims) {
                    break;
                }
            }
        }
    }

    /// Expands `coeff · (v_0 ⊗ … ⊗ v_n)` over the objects `objs`.
    fn expand(&self, field: FieldTag, objs: &[usize], legs: &[SparseVec], coeff: &Scalar, out: &mut SparseVec) {
        let code = self.code(objs);
        let dims = &self.leg_dims[code];
        let mut partial: Vec<(usize, Scalar)> = vec![(0, coeff.clone())];
        for (v, &d) in legs.iter().zip(dims) {
            let mut next = Vec::with_capacity(partial.len() * v.len());
            for (idx, c) in &partial {
                for (k, x) in v {
                    next.push((idx * d + k, field.mul(c, x)));
                }
            }
            partial = next;
            if partial.is_empty() {
                return;
            }
        }
        let base = self.offsets[code];
        out.extend(partial.into_iter().map(|(i, c)| (base + i, c)));
    }
}

fn next_tuple(objs: &mut [usize], k: usize) -> bool {
    for slot in objs.iter_mut().rev() {
        *slot += 1;
        if *slot < k {
            return true;
        }
        *slot = 0;
    }
    false
}

fn next_mixed(legs: &mut [usize], dims: &[usize]) -> bool {
    for (slot, &d) in legs.iter_mut().zip(dims).rev() {
        *slot += 1;
        if *slot < d {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Sums duplicate indices and drops zeros.
fn canonical(field: FieldTag, mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = field.add(y, &x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

fn unit_vec(field: FieldTag, i: usize) -> SparseVec {
    vec![(i, field.one())]
}

/// Builds the matrix `source → target` whose column for each basis chain is
/// produced by `image`.
fn operator(
    field: FieldTag,
    source: &ChainSpace,
    target: &ChainSpace,
    mut image: impl FnMut(&[usize], &[usize], &mut SparseVec),
) -> SparseMatrix {
    let mut cols = vec![Vec::new(); source.dim];
    source.for_each(|objs, legs| {
        let mut out = Vec::new();
        image(objs, legs, &mut out);
        cols[source.index(objs, legs)] = canonical(field, out);
    });
    SparseMatrix::from_columns(field, target.dim, cols)
}

fn sign(field: FieldTag, negative: bool) -> Scalar {
    if negative {
        field.from_i64(-1)
    } else {
        field.one()
    }
}

/// Everything needed to compute Hochschild, cyclic and dihedral homology and
/// the mapping class group action, in degrees `0..=N`.
#[derive(Debug, Clone)]
pub struct HochschildComplexBundle {
    category: PresentedCategory,
    algebra: Option<Algebra>,
    spaces: Vec<ChainSpace>,
    cyclic: CyclicModuleData,
    dihedral: Option<DihedralModuleData>,
    t: Vec<SparseMatrix>,
    r: Option<Vec<SparseMatrix>>,
    b: Vec<SparseMatrix>,
    connes: Vec<SparseMatrix>,
}

/// Cyclic module of `a` through degree `max_degree`, with the dihedral
/// structure of its anti-involution when present.
pub fn hochschild_cyclic_module(a: &Algebra, max_degree: usize) -> Result<HochschildComplexBundle, HochschildError> {
    hochschild_cyclic_module_with(a, max_degree, &BundleOptions::default())
}

pub fn hochschild_cyclic_module_with(
    a: &Algebra,
    max_degree: usize,
    opts: &BundleOptions,
) -> Result<HochschildComplexBundle, HochschildError> {
    let mut bundle = build(PresentedCategory::from_algebra(a), Some(a.clone()), max_degree, opts)?;
    if let Some(w) = a.involution() {
        let data = dihedral_structure_from_involution(&bundle, w)?;
        bundle.attach_dihedral(data);
    }
    Ok(bundle)
}

/// Cyclic module of the loops of morphisms of `p`.
pub fn category_cyclic_module(p: &PresentedCategory, max_degree: usize) -> Result<HochschildComplexBundle, HochschildError> {
    category_cyclic_module_with(p, max_degree, &BundleOptions::default())
}

pub fn category_cyclic_module_with(
    p: &PresentedCategory,
    max_degree: usize,
    opts: &BundleOptions,
) -> Result<HochschildComplexBundle, HochschildError> {
    build(p.clone(), None, max_degree, opts)
}

/// Dimension of each chain space `C_0..=C_N` without building them.
pub fn chain_dims(p: &PresentedCategory, max_degree: usize) -> Vec<u128> {
    (0..=max_degree).map(|n| ChainSpace::count(p, n)).collect()
}

fn build(
    cat: PresentedCategory,
    algebra: Option<Algebra>,
    top: usize,
    opts: &BundleOptions,
) -> Result<HochschildComplexBundle, HochschildError> {
    for (degree, cells) in chain_dims(&cat, top).into_iter().enumerate() {
        if cells > opts.max_cells as u128 {
            return Err(HochschildError::SizeBound {
                degree,
                cells,
                bound: opts.max_cells,
            });
        }
    }
    let field = cat.field();
    let one = field.one();
    let spaces: Vec<ChainSpace> = (0..=top).map(|n| ChainSpace::new(&cat, n)).collect();

    let mut faces = vec![Vec::new()];
    for n in 1..=top {
        let (src, tgt) = (&spaces[n], &spaces[n - 1]);
        let mut level = Vec::with_capacity(n + 1);
        for i in 0..=n {
            level.push(operator(field, src, tgt, |objs, legs, out| {
                let e: Vec<SparseVec> = legs.iter().map(|&l| unit_vec(field, l)).collect();
                if i < n {
                    // a_i ∘ a_{i+1}: X_{i+2} → X_{i+1} → X_i.
                    let x = objs[(i + 2) % (n + 1)];
                    let merged = cat.compose(x, objs[i + 1], objs[i], &e[i], &e[i + 1]);
                    let mut new_objs = objs.to_vec();
                    new_objs.remove(i + 1);
                    let mut new_legs = e.clone();
                    new_legs[i] = merged;
                    new_legs.remove(i + 1);
                    tgt.expand(field, &new_objs, &new_legs, &one, out);
                } else {
                    // a_n ∘ a_0: X_1 → X_0 → X_n, placed first.
                    let merged = cat.compose(objs[1], objs[0], objs[n], &e[n], &e[0]);
                    let mut new_objs = objs[..n].to_vec();
                    new_objs[0] = objs[n];
                    let mut new_legs: Vec<SparseVec> = e[..n].to_vec();
                    new_legs[0] = merged;
                    tgt.expand(field, &new_objs, &new_legs, &one, out);
                }
            }));
        }
        faces.push(level);
    }

    let mut degeneracies = Vec::with_capacity(top + 1);
    for n in 0..=top {
        if n == top {
            degeneracies.push(Vec::new());
            continue;
        }
        let (src, tgt) = (&spaces[n], &spaces[n + 1]);
        let level = (0..=n)
            .map(|j| {
                operator(field, src, tgt, |objs, legs, out| {
                    let x = objs[(j + 1) % (n + 1)];
                    let mut new_objs = objs.to_vec();
                    new_objs.insert(j + 1, x);
                    let mut new_legs: Vec<SparseVec> = legs.iter().map(|&l| unit_vec(field, l)).collect();
                    new_legs.insert(j + 1, cat.identity(x).clone());
                    tgt.expand(field, &new_objs, &new_legs, &one, out);
                })
            })
            .collect();
        degeneracies.push(level);
    }

    let tau: Vec<SparseMatrix> = spaces
        .iter()
        .map(|sp| {
            let n = sp.degree;
            operator(field, sp, sp, |objs, legs, out| {
                let mut new_objs = vec![objs[n]];
                new_objs.extend_from_slice(&objs[..n]);
                let mut new_legs = vec![unit_vec(field, legs[n])];
                new_legs.extend(legs[..n].iter().map(|&l| unit_vec(field, l)));
                sp.expand(field, &new_objs, &new_legs, &one, out);
            })
        })
        .collect();

    let cyclic = CyclicModuleData::new(
        field,
        spaces.iter().map(|s| s.dim).collect(),
        faces,
        degeneracies,
        tau.clone(),
    )?;

    let t: Vec<SparseMatrix> = tau
        .iter()
        .enumerate()
        .map(|(n, m)| if n % 2 == 1 { m.scale(&sign(field, true)) } else { m.clone() })
        .collect();

    let mut b = vec![SparseMatrix::zeros(field, 0, spaces[0].dim)];
    for n in 1..=top {
        let mut acc = SparseMatrix::zeros(field, spaces[n - 1].dim, spaces[n].dim);
        for i in 0..=n {
            let d = cyclic.face(n, i);
            acc = if i % 2 == 0 { acc.add(d) } else { acc.sub(d) };
        }
        b.push(acc);
    }

    let mut connes = Vec::with_capacity(top);
    for n in 0..top {
        let dim = spaces[n].dim;
        let mut norm = SparseMatrix::zeros(field, dim, dim);
        let mut power = SparseMatrix::identity(field, dim);
        for _ in 0..=n {
            norm = norm.add(&power);
            power = t[n].mul(&power);
        }
        let extra = tau[n + 1].mul(cyclic.degeneracy(n, n));
        let up = spaces[n + 1].dim;
        let one_minus_t = SparseMatrix::identity(field, up).sub(&t[n + 1]);
        connes.push(one_minus_t.mul(&extra).mul(&norm));
    }

    Ok(HochschildComplexBundle {
        category: cat,
        algebra,
        spaces,
        cyclic,
        dihedral: None,
        t,
        r: None,
        b,
        connes,
    })
}

/// The reflections `ρ_n` of the anti-involution `w` (unsigned; the signed
/// versions enter the complexes).
pub fn dihedral_structure_from_involution(
    bundle: &HochschildComplexBundle,
    w: &AntiInvolution,
) -> Result<DihedralModuleData, HochschildError> {
    let a = bundle.algebra.as_ref().ok_or(HochschildError::DihedralMissing)?;
    let mut parts = a.to_parts();
    parts.involution = Some(w.clone());
    parts.ribbon = None;
    parts.hopf = None;
    match Algebra::new(parts) {
        Ok(_) => {}
        Err(AlgebraError::AxiomViolation(report)) => return Err(HochschildError::InvolutionInvalid(report)),
        Err(e) => {
            let mut report = ValidationReport::new();
            report.push("anti-involution shape", e.to_string());
            return Err(HochschildError::InvolutionInvalid(report));
        }
    }
    let field = a.field();
    let one = field.one();
    let wcols = w.w.columns();
    let rho = bundle
        .spaces
        .iter()
        .map(|sp| {
            operator(field, sp, sp, |objs, legs, out| {
                let mut new_legs = vec![wcols[legs[0]].clone()];
                new_legs.extend(legs[1..].iter().rev().map(|&l| wcols[l].clone()));
                sp.expand(field, objs, &new_legs, &one, out);
            })
        })
        .collect();
    Ok(DihedralModuleData::new(bundle.cyclic.clone(), rho)?)
}

impl HochschildComplexBundle {
    /// Installs reflections, replacing any present ones.
    pub fn attach_dihedral(&mut self, data: DihedralModuleData) {
        let field = self.field();
        let r = (0..self.spaces.len())
            .map(|n| {
                let m = data.reflection(n);
                if (n * (n + 1) / 2) % 2 == 1 {
                    m.scale(&sign(field, true))
                } else {
                    m.clone()
                }
            })
            .collect();
        self.r = Some(r);
        self.dihedral = Some(data);
    }

    pub fn field(&self) -> FieldTag {
        self.category.field()
    }

    pub fn max_degree(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn algebra(&self) -> Option<&Algebra> {
        self.algebra.as_ref()
    }

    pub fn category(&self) -> &PresentedCategory {
        &self.category
    }

    pub fn chain_dim(&self, n: usize) -> usize {
        self.spaces[n].dim
    }

    pub fn cyclic_data(&self) -> &CyclicModuleData {
        &self.cyclic
    }

    pub fn dihedral_data(&self) -> Option<&DihedralModuleData> {
        self.dihedral.as_ref()
    }

    /// `b: C_n → C_{n−1}`; `b_0` is the zero map to the zero space.
    pub fn b(&self, n: usize) -> &SparseMatrix {
        &self.b[n]
    }

    /// Connes' operator `B: C_n → C_{n+1}` for `n < N`.
    pub fn connes_b(&self, n: usize) -> &SparseMatrix {
        &self.connes[n]
    }

    /// Signed cyclic operator `t_n = (−1)^n τ_n`.
    pub fn t(&self, n: usize) -> &SparseMatrix {
        &self.t[n]
    }

    /// Signed reflection `r_n = (−1)^{n(n+1)/2} ρ_n`.
    pub fn r(&self, n: usize) -> Option<&SparseMatrix> {
        self.r.as_ref().map(|r| &r[n])
    }

    /// `b' = Σ_{i<n} (−1)^i d_i`.
    pub fn b_prime(&self, n: usize) -> SparseMatrix {
        let field = self.field();
        let mut acc = SparseMatrix::zeros(field, self.spaces[n - 1].dim, self.spaces[n].dim);
        for i in 0..n {
            let d = self.cyclic.face(n, i);
            acc = if i % 2 == 0 { acc.add(d) } else { acc.sub(d) };
        }
        acc
    }

    /// Checks `b² = 0`, `B² = 0`, `bB + Bb = 0` and `(1 − t) b' = b (1 − t)`
    /// in every degree where the terms exist.
    pub fn check_differentials(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let top = self.max_degree();
        let field = self.field();
        for n in 0..=top {
            let loc = format!("degree {n}");
            if n >= 2 {
                report.require(self.b[n - 1].mul(&self.b[n]).is_zero(), "b b = 0", loc.clone());
            }
            if n + 2 <= top {
                report.require(self.connes[n + 1].mul(&self.connes[n]).is_zero(), "B B = 0", loc.clone());
            }
            if n < top {
                let bb = self.b[n + 1].mul(&self.connes[n]);
                let total = if n >= 1 { bb.add(&self.connes[n - 1].mul(&self.b[n])) } else { bb };
                report.require(total.is_zero(), "b B + B b = 0", loc.clone());
            }
            if n >= 1 {
                let id_n = SparseMatrix::identity(field, self.spaces[n].dim);
                let id_m = SparseMatrix::identity(field, self.spaces[n - 1].dim);
                let left = id_m.sub(&self.t[n - 1]).mul(&self.b_prime(n));
                let right = self.b[n].mul(&id_n.sub(&self.t[n]));
                report.require(left == right, "(1 - t) b' = b (1 - t)", loc);
            }
        }
        report
    }

    /// `L_n`: tensor leg `i` multiplied on the left by `v^{ells[i]}`.
    pub fn balancing_endomorphism(&self, n: usize, ells: &[i64]) -> Result<SparseMatrix, HochschildError> {
        let a = self.algebra.as_ref().ok_or(HochschildError::RibbonMissing)?;
        if a.ribbon().is_none() {
            return Err(HochschildError::RibbonMissing);
        }
        self.check_degree(n, n)?;
        if ells.len() != n + 1 {
            return Err(HochschildError::LegCount {
                expected: n + 1,
                got: ells.len(),
            });
        }
        let field = self.field();
        let one = field.one();
        let legs_maps: Vec<Vec<SparseVec>> = ells
            .iter()
            .map(|&l| a.left_mul_matrix(&a.ribbon_power(l).expect("ribbon present")).columns())
            .collect();
        let sp = &self.spaces[n];
        Ok(operator(field, sp, sp, |objs, legs, out| {
            let images: Vec<SparseVec> = legs.iter().enumerate().map(|(i, &l)| legs_maps[i][l].clone()).collect();
            sp.expand(field, objs, &images, &one, out);
        }))
    }

    fn check_degree(&self, requested: usize, needed: usize) -> Result<(), HochschildError> {
        if needed > self.max_degree() {
            return Err(HochschildError::DegreeOutOfRange {
                requested,
                needed,
                available: self.max_degree(),
            });
        }
        Ok(())
    }

    fn require_char_zero(&self) -> Result<(), HochschildError> {
        match self.field() {
            FieldTag::Rationals => Ok(()),
            f => Err(HochschildError::CharNotZero(f)),
        }
    }
}

pub use homology::{hc, hd, hh, hh_basis};

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{mul_vec, AlgebraError, AlgebraParts, AntiInvolution, FiniteGroup, HopfData, RibbonData};
use crate::exactlin::{self, SparseMatrix, SparseVec};
use crate::field::{FieldTag, Scalar};
use crate::report::ValidationReport;
use crate::Algebra;

/// Which of the two mutually inverse central elements of `D(G)` is the
/// diagonal sum `Σ_g δ_g ⊗ g`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum RibbonConvention {
    /// `v_inv = Σ_g δ_g ⊗ g`, so `v = Σ_g δ_g ⊗ g^{-1}`.
    #[default]
    VInv,
    /// `v = Σ_g δ_g ⊗ g`.
    V,
}

/// `k[G]` with `Δg = g ⊗ g`, `ε(g) = 1`, `S(g) = g^{-1}` and the
/// anti-involution `w = S`.
pub fn group_algebra(g: &FiniteGroup, field: FieldTag) -> Result<Algebra, AlgebraError> {
    let n = g.order();
    let one = field.one();
    let mu = (0..n)
        .map(|a| (0..n).map(|b| vec![(g.mul(a, b), one.clone())]).collect())
        .collect();
    let antipode = SparseMatrix::from_triplets(field, n, n, (0..n).map(|a| (g.inv(a), a, one.clone())))
        .expect("permutation matrix");
    Algebra::new(AlgebraParts {
        field,
        basis: g.labels().to_vec(),
        mu,
        unit: vec![(g.identity(), one.clone())],
        hopf: Some(HopfData {
            comul: (0..n).map(|a| vec![(a * n + a, one.clone())]).collect(),
            counit: vec![one.clone(); n],
            antipode: antipode.clone(),
        }),
        involution: Some(AntiInvolution { w: antipode }),
        ribbon: None,
    })
}

/// The Drinfeld double `D(G)` on the basis `δ_g ⊗ h` (index `g |G| + h`):
///
/// * `(δ_g ⊗ h)(δ_g' ⊗ h') = [g = h g' h^{-1}] δ_g ⊗ h h'`, unit `Σ_g δ_g ⊗ e`;
/// * `Δ(δ_g ⊗ h) = Σ_{g1 g2 = g} (δ_g1 ⊗ h) ⊗ (δ_g2 ⊗ h)`, `ε(δ_g ⊗ h) = [g = e]`;
/// * `S(δ_g ⊗ h) = δ_{h^{-1} g^{-1} h} ⊗ h^{-1}`, also used as anti-involution;
/// * ribbon element per `convention`.
///
/// The construction is valid in any characteristic; the double is only
/// semisimple when the characteristic does not divide `|G|`.
pub fn drinfeld_double(g: &FiniteGroup, field: FieldTag, convention: RibbonConvention) -> Result<Algebra, AlgebraError> {
    let n = g.order();
    let e = g.identity();
    let idx = |x: usize, h: usize| x * n + h;
    let one = field.one();
    let dim = n * n;

    let mut basis = Vec::with_capacity(dim);
    for x in 0..n {
        for h in 0..n {
            basis.push(format!("δ_{}⊗{}", g.label(x), g.label(h)));
        }
    }
    let mut mu = vec![vec![Vec::new(); dim]; dim];
    for x in 0..n {
        for h in 0..n {
            for y in 0..n {
                if g.conjugate(y, h) != x {
                    continue;
                }
                for h2 in 0..n {
                    mu[idx(x, h)][idx(y, h2)] = vec![(idx(x, g.mul(h, h2)), one.clone())];
                }
            }
        }
    }
    let unit = (0..n).map(|x| (idx(x, e), one.clone())).collect();
    let comul = (0..n)
        .flat_map(|x| (0..n).map(move |h| (x, h)))
        .map(|(x, h)| {
            let mut terms: SparseVec = (0..n)
                .map(|x1| {
                    let x2 = g.mul(g.inv(x1), x);
                    (idx(x1, h) * dim + idx(x2, h), one.clone())
                })
                .collect();
            terms.sort_by_key(|(k, _)| *k);
            terms
        })
        .collect();
    let counit = (0..dim).map(|i| if i / n == e { one.clone() } else { Scalar::zero() }).collect();
    let antipode = SparseMatrix::from_triplets(
        field,
        dim,
        dim,
        (0..n).flat_map(|x| {
            let one = one.clone();
            (0..n).map(move |h| {
                let hi = g.inv(h);
                let target = idx(g.mul(g.mul(hi, g.inv(x)), h), hi);
                (target, idx(x, h), one.clone())
            })
        }),
    )
    .expect("antipode in range");
    let diag: SparseVec = (0..n).map(|x| (idx(x, x), one.clone())).collect();
    let anti_diag: SparseVec = (0..n).map(|x| (idx(x, g.inv(x)), one.clone())).collect();
    let ribbon = match convention {
        RibbonConvention::VInv => RibbonData {
            v: anti_diag,
            v_inv: diag,
        },
        RibbonConvention::V => RibbonData {
            v: diag,
            v_inv: anti_diag,
        },
    };
    Algebra::new(AlgebraParts {
        field,
        basis,
        mu,
        unit,
        hopf: Some(HopfData {
            comul,
            counit,
            antipode: antipode.clone(),
        }),
        involution: Some(AntiInvolution { w: antipode }),
        ribbon: Some(ribbon),
    })
}

fn tensor_mul(f: FieldTag, mu: &[Vec<SparseVec>], d: usize, x: &SparseVec, y: &SparseVec) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (p, a) in x {
        for (q, b) in y {
            let ab = f.mul(a, b);
            let left = &mu[p / d][q / d];
            let right = &mu[p % d][q % d];
            for (l, c) in left {
                for (r, c2) in right {
                    let slot = acc.entry(l * d + r).or_insert_with(Scalar::zero);
                    *slot = f.add(slot, &f.mul(&ab, &f.mul(c, c2)));
                }
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn accumulate(f: FieldTag, acc: &mut BTreeMap<usize, Scalar>, k: usize, v: &Scalar) {
    let slot = acc.entry(k).or_insert_with(Scalar::zero);
    *slot = f.add(slot, v);
}

fn finish(acc: BTreeMap<usize, Scalar>) -> SparseVec {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub(super) fn check_hopf(p: &AlgebraParts, h: &HopfData, report: &mut ValidationReport) {
    let f = p.field;
    let d = p.basis.len();
    let e = |i: usize| vec![(i, f.one())];
    let mul = |x: &[(usize, Scalar)], y: &[(usize, Scalar)]| mul_vec(f, &p.mu, x, y);
    let comul = |x: &[(usize, Scalar)]| -> SparseVec {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            for (k, c) in &h.comul[*i] {
                accumulate(f, &mut acc, *k, &f.mul(a, c));
            }
        }
        finish(acc)
    };
    let counit = |x: &[(usize, Scalar)]| -> Scalar {
        x.iter().fold(Scalar::zero(), |s, (i, a)| f.add(&s, &f.mul(a, &h.counit[*i])))
    };
    let s = &h.antipode;

    for i in 0..d {
        let delta = &h.comul[i];
        // Coassociativity in A⊗A⊗A, index (a d + b) d + c.
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (k, c) in delta {
            let (a, b) = (k / d, k % d);
            for (k2, c2) in &h.comul[a] {
                accumulate(f, &mut left, k2 * d + b, &f.mul(c, c2));
            }
            for (k2, c2) in &h.comul[b] {
                accumulate(f, &mut right, a * d * d + k2, &f.mul(c, c2));
            }
        }
        report.require(finish(left) == finish(right), "coassociativity", format!("e{i}"));

        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (k, c) in delta {
            let (a, b) = (k / d, k % d);
            accumulate(f, &mut left, b, &f.mul(c, &h.counit[a]));
            accumulate(f, &mut right, a, &f.mul(c, &h.counit[b]));
        }
        report.require(finish(left) == e(i), "left counit", format!("e{i}"));
        report.require(finish(right) == e(i), "right counit", format!("e{i}"));

        // m(S ⊗ id)Δ = ε 1 = m(id ⊗ S)Δ.
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (k, c) in delta {
            let (a, b) = (k / d, k % d);
            let l = mul(&s.apply(&e(a)), &e(b));
            let r = mul(&e(a), &s.apply(&e(b)));
            left = exactlin::sparse_axpy(f, &left, c, &l);
            right = exactlin::sparse_axpy(f, &right, c, &r);
        }
        let target: SparseVec = p
            .unit
            .iter()
            .map(|(k, u)| (*k, f.mul(u, &h.counit[i])))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        report.require(left == target, "antipode m(S⊗id)Δ = uε", format!("e{i}"));
        report.require(right == target, "antipode m(id⊗S)Δ = uε", format!("e{i}"));
    }

    for i in 0..d {
        for j in 0..d {
            let prod = &p.mu[i][j];
            let lhs = comul(prod);
            let rhs = tensor_mul(f, &p.mu, d, &h.comul[i], &h.comul[j]);
            report.require(lhs == rhs, "comultiplication multiplicative", format!("({i},{j})"));
            report.require(
                counit(prod) == f.mul(&h.counit[i], &h.counit[j]),
                "counit multiplicative",
                format!("({i},{j})"),
            );
            report.require(
                s.apply(prod) == mul(&s.apply(&e(j)), &s.apply(&e(i))),
                "antipode anti-multiplicative",
                format!("({i},{j})"),
            );
        }
    }
    let unit_tensor: SparseVec = {
        let mut acc = BTreeMap::new();
        for (a, x) in &p.unit {
            for (b, y) in &p.unit {
                accumulate(f, &mut acc, a * d + b, &f.mul(x, y));
            }
        }
        finish(acc)
    };
    report.require(comul(&p.unit) == unit_tensor, "comultiplication unital", "unit");
    report.require(counit(&p.unit) == f.one(), "counit unital", "unit");
}

/// A left module structure: `action[i]` is the matrix of `e_i` acting on
/// the module.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleAction {
    pub field: FieldTag,
    pub module_dim: usize,
    pub action: Vec<SparseMatrix>,
}

impl ModuleAction {
    /// Matrix of an arbitrary algebra element.
    pub fn act(&self, x: &[(usize, Scalar)]) -> SparseMatrix {
        x.iter().fold(SparseMatrix::zeros(self.field, self.module_dim, self.module_dim), |acc, (i, c)| {
            acc.add(&self.action[*i].scale(c))
        })
    }

    /// Unit acts as the identity and `(ab)·m = a·(b·m)` on all basis pairs.
    pub fn validate(&self, a: &Algebra) -> ValidationReport {
        let mut report = ValidationReport::new();
        report.require(self.act(a.unit()).is_identity(), "module unit", "1·m = m");
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.act(a.mul_basis(i, j));
                let rhs = self.action[i].mul(&self.action[j]);
                report.require(lhs == rhs, "module associativity", format!("({i},{j})"));
            }
        }
        report
    }
}

/// The dual `A*` with the coadjoint action `(a·α)(b) = α(S(a') b a'')`, in
/// the dual basis: entry `(j, k)` of `action[i]` is the `e_k`-coefficient of
/// `S(e_i') e_j e_i''`.
pub fn coadjoint_module(a: &Algebra) -> Result<ModuleAction, AlgebraError> {
    let h = a.hopf().ok_or(AlgebraError::HopfDataMissing)?;
    let f = a.field();
    let d = a.dim();
    let antipode_cols = h.antipode.columns();
    let mut action = Vec::with_capacity(d);
    for i in 0..d {
        let mut trip = Vec::new();
        for j in 0..d {
            let ej = a.basis_vector(j);
            let mut x: SparseVec = Vec::new();
            for (k, c) in &h.comul[i] {
                let (p, q) = (k / d, k % d);
                let term = a.mul(&a.mul(&antipode_cols[p], &ej), &a.basis_vector(q));
                x = exactlin::sparse_axpy(f, &x, c, &term);
            }
            trip.extend(x.into_iter().map(|(k, v)| (j, k, v)));
        }
        action.push(SparseMatrix::from_triplets(f, d, d, trip).expect("in range"));
    }
    let module = ModuleAction {
        field: f,
        module_dim: d,
        action,
    };
    let report = module.validate(a);
    if !report.is_valid() {
        return Err(AlgebraError::AxiomViolation(report));
    }
    Ok(module)
}

/// `dim {α ∈ A* : a·α = ε(a) α for all a}` for the coadjoint action.
pub fn coadjoint_invariants_dim(a: &Algebra) -> Result<usize, AlgebraError> {
    let module = coadjoint_module(a)?;
    let h = a.hopf().ok_or(AlgebraError::HopfDataMissing)?;
    let f = a.field();
    let d = a.dim();
    let blocks: Vec<SparseMatrix> = (0..d)
        .map(|i| module.action[i].sub(&SparseMatrix::identity(f, d).scale(&h.counit[i])))
        .collect();
    let refs: Vec<&SparseMatrix> = blocks.iter().collect();
    let stacked = SparseMatrix::vstack(f, d, &refs);
    Ok(d - exactlin::rank(&stacked))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_algebra;

    fn q() -> FieldTag {
        FieldTag::Rationals
    }

    #[test]
    fn z2_group_algebra() {
        let z2 = FiniteGroup::cyclic(2);
        let a = group_algebra(&z2, q()).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.mul_basis(1, 1), &vec![(0, q().one())]);
        let h = a.hopf().unwrap();
        let total: Scalar = h.counit.iter().sum();
        assert_eq!(total, q().from_i64(2));
    }

    #[test]
    fn s3_antipode_inverts() {
        let s3 = FiniteGroup::symmetric(3);
        let a = group_algebra(&s3, q()).unwrap();
        let c = a.index_of("(123)").unwrap();
        let c_inv = a.index_of("(132)").unwrap();
        assert_eq!(a.hopf().unwrap().antipode.apply(&a.basis_vector(c)), a.basis_vector(c_inv));
        let s = &a.hopf().unwrap().antipode;
        assert!(s.mul(s).is_identity());
    }

    #[test]
    fn double_of_z2_products() {
        let z2 = FiniteGroup::cyclic(2);
        let d = drinfeld_double(&z2, q(), RibbonConvention::VInv).unwrap();
        assert_eq!(d.dim(), 4);
        let da_e = d.basis_vector(d.index_of("δ_a⊗e").unwrap());
        let da_a = d.basis_vector(d.index_of("δ_a⊗a").unwrap());
        assert_eq!(d.mul(&d.ribbon().unwrap().v_inv, &da_e), da_a);
        for i in 0..4 {
            assert_eq!(d.mul(d.unit(), &d.basis_vector(i)), d.basis_vector(i));
        }
        assert!(d.is_commutative());
    }

    #[test]
    fn double_of_s3_conjugation_rule() {
        let s3 = FiniteGroup::symmetric(3);
        let d = drinfeld_double(&s3, q(), RibbonConvention::VInv).unwrap();
        assert_eq!(d.dim(), 36);
        let x = d.basis_vector(d.index_of("δ_(13)⊗(123)").unwrap());
        let y = d.basis_vector(d.index_of("δ_(23)⊗e").unwrap());
        assert_eq!(d.mul(&x, &y), x);
        let s = &d.hopf().unwrap().antipode;
        assert!(s.mul(s).is_identity());
        assert!(check_algebra(&d.to_parts()).is_valid());
    }

    #[test]
    fn ribbon_conventions_swap_v_and_inverse() {
        let s3 = FiniteGroup::symmetric(3);
        let a = drinfeld_double(&s3, q(), RibbonConvention::VInv).unwrap();
        let b = drinfeld_double(&s3, q(), RibbonConvention::V).unwrap();
        assert_eq!(a.ribbon().unwrap().v, b.ribbon().unwrap().v_inv);
        // w(v) = v for the antipode involution.
        let r = a.ribbon().unwrap();
        assert_eq!(a.involution().unwrap().w.apply(&r.v), r.v);
    }

    #[test]
    fn broken_antipode_is_reported() {
        let z3 = FiniteGroup::cyclic(3);
        let mut parts = group_algebra(&z3, q()).unwrap().to_parts();
        parts.involution = None;
        parts.hopf.as_mut().unwrap().antipode = SparseMatrix::identity(q(), 3);
        let r = check_algebra(&parts);
        assert!(r.matching("antipode m(S⊗id)Δ").count() > 0);
    }

    #[test]
    fn coadjoint_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let a = group_algebra(&z2, q()).unwrap();
        let m = coadjoint_module(&a).unwrap();
        // Conjugation is trivial for abelian groups.
        assert!(m.action[1].is_identity());
        assert!(m.act(a.unit()).is_identity());
        assert_eq!(coadjoint_invariants_dim(&a).unwrap(), 2);

        let s3 = FiniteGroup::symmetric(3);
        let a = group_algebra(&s3, q()).unwrap();
        let m = coadjoint_module(&a).unwrap();
        let t12 = a.index_of("(12)").unwrap();
        let c = a.index_of("(123)").unwrap();
        let c2 = a.index_of("(132)").unwrap();
        // (12)·δ*_(123) = δ*_(132).
        assert_eq!(m.action[t12].apply(&a.basis_vector(c)), a.basis_vector(c2));
        assert_eq!(coadjoint_invariants_dim(&a).unwrap(), 3);
    }

    #[test]
    fn coadjoint_needs_hopf() {
        let a = crate::algebra::matrix_algebra(&Algebra::ground_field(q()), 2);
        assert_eq!(coadjoint_module(&a), Err(AlgebraError::HopfDataMissing));
    }
}

use serde::{Deserialize, Serialize};

use super::{hh, HochschildComplexBundle, HochschildError};
use crate::exactlin::{charpoly, homology_basis, homology_coordinates, induced_map_on_quotient, rank, LinAlgError, SparseMatrix};
use crate::field::{format_scalar, FieldTag};
use crate::report::ValidationReport;

/// Dehn twist on `HH_n`: leg 0 multiplied by the ribbon element, pushed to
/// homology in the basis of [`super::hh_basis`].
pub fn dehn_twist_action(bundle: &HochschildComplexBundle, n: usize) -> Result<SparseMatrix, HochschildError> {
    twist_on_homology(bundle, n, &leg_exponents(n, 0, 1))
}

/// `(0, …, ell, …, 0)` with `ell` at position `leg`.
pub fn leg_exponents(n: usize, leg: usize, ell: i64) -> Vec<i64> {
    let mut ells = vec![0; n + 1];
    ells[leg] = ell;
    ells
}

/// The map induced on `HH_n` by [`HochschildComplexBundle::balancing_endomorphism`].
/// The chain-map property `b L = L' b` is checked in degrees `n` and `n + 1`,
/// where `L'` uses the exponents merged by each face.
pub fn twist_on_homology(bundle: &HochschildComplexBundle, n: usize, ells: &[i64]) -> Result<SparseMatrix, HochschildError> {
    bundle.check_degree(n, n + 1)?;
    let here = bundle.balancing_endomorphism(n, ells)?;
    if n >= 1 {
        check_faces(bundle, n, ells, &here)?;
    }
    let mut up_ells = ells.to_vec();
    up_ells.push(0);
    let up = bundle.balancing_endomorphism(n + 1, &up_ells)?;
    check_faces(bundle, n + 1, &up_ells, &up)?;
    Ok(induced_map_on_quotient(&here, bundle.b(n + 1), bundle.b(n))?)
}

/// Evaluates the balancing with exponents `ells` on the cycle representatives
/// of the basis of `HH_n` and returns the classes of the images.
///
/// Only exponents supported on leg 0 give chain maps; for other legs this is
/// the map on the chosen representatives, and fails with
/// [`HochschildError::NotChainMap`] when an image is not a cycle.
pub fn twist_on_representatives(
    bundle: &HochschildComplexBundle,
    n: usize,
    ells: &[i64],
) -> Result<SparseMatrix, HochschildError> {
    bundle.check_degree(n, n + 1)?;
    let l = bundle.balancing_endomorphism(n, ells)?;
    let reps = homology_basis(bundle.b(n + 1), bundle.b(n))?;
    let images = l.apply_all(&reps.columns());
    homology_coordinates(bundle.b(n + 1), bundle.b(n), &images).map_err(|e| match e {
        LinAlgError::NotChainEndomorphism(m) => HochschildError::NotChainMap(format!("balancing {ells:?}: {m}")),
        e => e.into(),
    })
}

/// Whether the balancing on `leg` and on leg 0 give the same classes on the
/// basis representatives of `HH_n`.
pub fn leg_choice_agrees(bundle: &HochschildComplexBundle, n: usize, leg: usize) -> Result<bool, HochschildError> {
    let reference = twist_on_representatives(bundle, n, &leg_exponents(n, 0, 1))?;
    match twist_on_representatives(bundle, n, &leg_exponents(n, leg, 1)) {
        Ok(m) => Ok(m == reference),
        Err(HochschildError::NotChainMap(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// `d_i L = L_i d_i` for every face, with `L_i` the balancing of the merged
/// exponents.
fn check_faces(bundle: &HochschildComplexBundle, n: usize, ells: &[i64], l: &SparseMatrix) -> Result<(), HochschildError> {
    for i in 0..=n {
        let mut merged: Vec<i64> = ells.to_vec();
        if i < n {
            merged[i] += merged[i + 1];
            merged.remove(i + 1);
        } else {
            merged[0] += merged[n];
            merged.pop();
        }
        let below = bundle.balancing_endomorphism(n - 1, &merged)?;
        let d = bundle.cyclic_data().face(n, i);
        if d.mul(l) != below.mul(d) {
            return Err(HochschildError::NotChainMap(format!(
                "balancing {ells:?} does not commute with d_{i} in degree {n}"
            )));
        }
    }
    Ok(())
}

/// Reflection on `HH_n` induced by the signed `r_n`.
pub fn reflection_action(bundle: &HochschildComplexBundle, n: usize) -> Result<SparseMatrix, HochschildError> {
    bundle.check_degree(n, n + 1)?;
    let r = bundle.r(n).ok_or(HochschildError::DihedralMissing)?;
    for m in [n, n + 1] {
        if m >= 1 {
            let (rm, rl) = (bundle.r(m).unwrap(), bundle.r(m - 1).unwrap());
            if bundle.b(m).mul(rm) != rl.mul(bundle.b(m)) {
                return Err(HochschildError::NotChainMap(format!("r does not commute with b in degree {m}")));
            }
        }
    }
    Ok(induced_map_on_quotient(r, bundle.b(n + 1), bundle.b(n))?)
}

/// Smallest `k` in `1..=bound` with `m^k = id`.
pub fn multiplicative_order(m: &SparseMatrix, bound: u32) -> Option<u32> {
    let id = SparseMatrix::identity(m.field(), m.nrows());
    let mut p = m.clone();
    for k in 1..=bound {
        if p == id {
            return Some(k);
        }
        p = p.mul(m);
    }
    None
}

/// Action data on one `HH_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeAction {
    pub degree: usize,
    pub hh_dim: usize,
    pub twist: SparseMatrix,
    pub twist_is_identity: bool,
    pub twist_invertible: bool,
    /// Whether the twist built from `v^{-1}` inverts it.
    pub twist_inverse_from_v_inv: bool,
    /// `None` when no power up to the bound is the identity.
    pub twist_order: Option<u32>,
    /// Coefficients of `det(xI − T)`, leading coefficient first.
    pub twist_charpoly: Vec<String>,
    /// Legs 0 and 1 give the same classes on the basis representatives.
    pub leg_independent: bool,
    pub reflection: Option<SparseMatrix>,
    pub reflection_squares_to_identity: Option<bool>,
    pub twist_commutes_with_reflection: Option<bool>,
}

/// The action of `Map(H_{1,0}) ≅ ℤ × ℤ₂` on `HH_0..=HH_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionReport {
    pub field: FieldTag,
    pub hh_dims: Vec<usize>,
    pub degrees: Vec<DegreeAction>,
    pub violations: ValidationReport,
}

impl ActionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_valid()
    }
}

fn poly_strings(m: &SparseMatrix) -> Result<Vec<String>, HochschildError> {
    Ok(charpoly(m)?.iter().map(format_scalar).collect())
}

pub fn mcg_action_report(
    bundle: &HochschildComplexBundle,
    through_degree: usize,
    order_bound: u32,
) -> Result<ActionReport, HochschildError> {
    let field = bundle.field();
    let dims = hh(bundle, through_degree)?;
    let mut violations = ValidationReport::new();
    let mut degrees = Vec::with_capacity(dims.len());
    for (n, &dim) in dims.iter().enumerate() {
        let loc = format!("HH_{n}");
        let id = SparseMatrix::identity(field, dim);
        let twist = dehn_twist_action(bundle, n)?;
        let inverse = twist_on_homology(bundle, n, &leg_exponents(n, 0, -1))?;
        let twist_inverse_from_v_inv = twist.mul(&inverse) == id && inverse.mul(&twist) == id;
        let twist_invertible = rank(&twist) == dim;
        let leg_independent = n == 0 || leg_choice_agrees(bundle, n, 1)?;
        violations.require(twist_invertible, "T invertible", loc.clone());
        violations.require(twist_inverse_from_v_inv, "T T^-1 = id with T^-1 from v^-1", loc.clone());
        violations.require(leg_independent, "T independent of the leg", loc.clone());

        let (reflection, r_sq, commute) = match bundle.r(n) {
            Some(_) => {
                let r = reflection_action(bundle, n)?;
                let sq = r.mul(&r) == id;
                let comm = twist.mul(&r) == r.mul(&twist);
                violations.require(sq, "R^2 = id", loc.clone());
                violations.require(comm, "T R = R T", loc.clone());
                (Some(r), Some(sq), Some(comm))
            }
            None => (None, None, None),
        };
        degrees.push(DegreeAction {
            degree: n,
            hh_dim: dim,
            twist_is_identity: twist == id,
            twist_invertible,
            twist_inverse_from_v_inv,
            twist_order: multiplicative_order(&twist, order_bound),
            twist_charpoly: poly_strings(&twist)?,
            leg_independent,
            twist,
            reflection,
            reflection_squares_to_identity: r_sq,
            twist_commutes_with_reflection: commute,
        });
    }
    Ok(ActionReport {
        field,
        hh_dims: dims,
        degrees,
        violations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DistinguishVerdict {
    Distinguished,
    Indistinguishable,
}

/// An invariant on which two bundles differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Difference {
    HochschildDims { left: Vec<usize>, right: Vec<usize> },
    ChainDims { degree: usize },
    CyclicRanks { degree: usize },
    RibbonAvailability,
    DehnTwist { degree: usize },
    ReflectionAvailability,
    Reflection { degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub verdict: DistinguishVerdict,
    pub hh_dims: (Vec<usize>, Vec<usize>),
    /// The cyclic module data agree matrix for matrix.
    pub same_cyclic_matrices: bool,
    pub differences: Vec<Difference>,
}

/// Ranks of `b_n` and of `t_n^j − 1` for `1 ≤ j ≤ n + 1`: invariants of the
/// cyclic structure under change of basis.
fn cyclic_invariants(bundle: &HochschildComplexBundle, n: usize) -> Vec<usize> {
    let field = bundle.field();
    let id = SparseMatrix::identity(field, bundle.chain_dim(n));
    let t = bundle.cyclic_data().cyclic(n);
    let mut out = vec![rank(bundle.b(n))];
    let mut p = t.clone();
    for _ in 0..=n {
        out.push(rank(&p.sub(&id)));
        p = p.mul(t);
    }
    out
}

/// Conjugation invariants of an operator on homology.
fn operator_invariants(m: &SparseMatrix) -> Result<(Vec<String>, usize), HochschildError> {
    let id = SparseMatrix::identity(m.field(), m.nrows());
    Ok((poly_strings(m)?, rank(&m.sub(&id))))
}

/// Compares HH dimensions, cyclic data, and the conjugacy invariants of the
/// twist and reflection on `HH_0..=HH_k`.
pub fn compare_actions(
    left: &HochschildComplexBundle,
    right: &HochschildComplexBundle,
    through_degree: usize,
) -> Result<ComparisonReport, HochschildError> {
    if left.field() != right.field() {
        return Err(HochschildError::FieldMismatch(left.field(), right.field()));
    }
    let dims = (hh(left, through_degree)?, hh(right, through_degree)?);
    let mut differences = Vec::new();
    if dims.0 != dims.1 {
        differences.push(Difference::HochschildDims {
            left: dims.0.clone(),
            right: dims.1.clone(),
        });
    }
    let same_cyclic_matrices = left.cyclic_data() == right.cyclic_data();
    if !same_cyclic_matrices {
        for n in 0..=through_degree + 1 {
            if left.chain_dim(n) != right.chain_dim(n) {
                differences.push(Difference::ChainDims { degree: n });
            } else if cyclic_invariants(left, n) != cyclic_invariants(right, n) {
                differences.push(Difference::CyclicRanks { degree: n });
            }
        }
    }
    let has_ribbon = |b: &HochschildComplexBundle| b.algebra().is_some_and(|a| a.ribbon().is_some());
    match (has_ribbon(left), has_ribbon(right)) {
        (true, true) => {
            for n in 0..=through_degree {
                if dims.0[n] == dims.1[n]
                    && operator_invariants(&dehn_twist_action(left, n)?)? != operator_invariants(&dehn_twist_action(right, n)?)?
                {
                    differences.push(Difference::DehnTwist { degree: n });
                }
            }
        }
        (false, false) => {}
        _ => differences.push(Difference::RibbonAvailability),
    }
    match (left.r(0).is_some(), right.r(0).is_some()) {
        (true, true) => {
            for n in 0..=through_degree {
                if dims.0[n] == dims.1[n]
                    && operator_invariants(&reflection_action(left, n)?)? != operator_invariants(&reflection_action(right, n)?)?
                {
                    differences.push(Difference::Reflection { degree: n });
                }
            }
        }
        (false, false) => {}
        _ => differences.push(Difference::ReflectionAvailability),
    }
    let verdict = if differences.is_empty() {
        DistinguishVerdict::Indistinguishable
    } else {
        DistinguishVerdict::Distinguished
    };
    Ok(ComparisonReport {
        verdict,
        hh_dims: dims,
        same_cyclic_matrices,
        differences,
    })
}

//! JSON spec files for algebras and finite groups.
//!
//! Algebra spec (unknown keys are rejected everywhere):
//!
//! ```text
//! {
//!   "field": "Q" | "Fp:<p>",
//!   "dim": d,
//!   "basis": ["label", ...],                 optional, defaults to e0..e{d-1}
//!   "mu": [[i, j, k, c], ...],               e_i e_j has coefficient c on e_k
//!   "unit": [[k, c], ...],
//!   "hopf": {                                optional
//!     "comul": [[i, j, k, c], ...],          Δ(e_i) has coefficient c on e_j ⊗ e_k
//!     "counit": [[i, c], ...],               ε(e_i) = c
//!     "antipode": [[i, j, c], ...]           S(e_j) has coefficient c on e_i
//!   },
//!   "ribbon": { "v": [[k, c], ...],          optional
//!               "v_inv": [[k, c], ...] },    optional, computed when absent
//!   "involution": { "w": [[i, j, c], ...] }  optional, same layout as the antipode
//! }
//! ```
//!
//! A coefficient `c` is a string `"n"` or `"n/d"`, or a JSON integer. Entries
//! not listed are zero; listing the same position twice is an error.
//!
//! Group spec: `{"order": n, "table": [...], "labels": [...]}` where `table`
//! is the multiplication table flattened row-major (`table[a n + b]` is the
//! index of `ab`) and `labels` is optional.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, AntiInvolution, FiniteGroup, GroupError, HopfData, RibbonData};
use crate::exactlin::{SparseMatrix, SparseVec};
use crate::field::{format_scalar, FieldTag, Scalar};
use crate::{Algebra, AlgebraParts};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecError {
    #[error("cannot parse spec file: {0}")]
    Syntax(String),
    #[error("malformed spec: {0}")]
    Shape(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A coefficient as written in a spec file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coef {
    Int(i64),
    Text(String),
}

impl Coef {
    fn value(&self, field: FieldTag) -> Result<Scalar, SpecError> {
        let text = match self {
            Coef::Int(v) => v.to_string(),
            Coef::Text(s) => s.clone(),
        };
        field.parse_scalar(&text).map_err(|e| SpecError::Shape(e.to_string()))
    }

    fn from_scalar(v: &Scalar) -> Self {
        Coef::Text(format_scalar(v))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfSpec {
    pub comul: Vec<(usize, usize, usize, Coef)>,
    pub counit: Vec<(usize, Coef)>,
    pub antipode: Vec<(usize, usize, Coef)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RibbonSpec {
    pub v: Vec<(usize, Coef)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_inv: Option<Vec<(usize, Coef)>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionSpec {
    pub w: Vec<(usize, usize, Coef)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub field: FieldTag,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    pub mu: Vec<(usize, usize, usize, Coef)>,
    pub unit: Vec<(usize, Coef)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf: Option<HopfSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ribbon: Option<RibbonSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<InvolutionSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub order: usize,
    pub table: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// Either kind of spec file.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecFile {
    Algebra(AlgebraSpec),
    Group(GroupSpec),
}

/// Parses a spec file; the presence of a `table` key selects the group format.
pub fn parse_spec(text: &str) -> Result<SpecFile, SpecError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| SpecError::Syntax(e.to_string()))?;
    let is_group = value.as_object().is_some_and(|o| o.contains_key("table"));
    let err = |e: serde_json::Error| SpecError::Syntax(e.to_string());
    if is_group {
        Ok(SpecFile::Group(serde_json::from_value(value).map_err(err)?))
    } else {
        Ok(SpecFile::Algebra(serde_json::from_value(value).map_err(err)?))
    }
}

fn collect<const K: usize>(
    field: FieldTag,
    entries: impl Iterator<Item = ([usize; K], Coef)>,
    bounds: [usize; K],
    what: &str,
) -> Result<BTreeMap<[usize; K], Scalar>, SpecError> {
    let mut out = BTreeMap::new();
    for (key, c) in entries {
        if key.iter().zip(bounds.iter()).any(|(i, b)| i >= b) {
            return Err(SpecError::Shape(format!("{what}: index {key:?} out of range")));
        }
        let v = c.value(field)?;
        if out.insert(key, v).is_some() {
            return Err(SpecError::Shape(format!("{what}: duplicate entry {key:?}")));
        }
    }
    out.retain(|_, v: &mut Scalar| !v.is_zero());
    Ok(out)
}

fn vector(field: FieldTag, entries: &[(usize, Coef)], dim: usize, what: &str) -> Result<SparseVec, SpecError> {
    let m = collect(field, entries.iter().map(|(i, c)| ([*i], c.clone())), [dim], what)?;
    Ok(m.into_iter().map(|([i], v)| (i, v)).collect())
}

fn matrix(field: FieldTag, entries: &[(usize, usize, Coef)], dim: usize, what: &str) -> Result<SparseMatrix, SpecError> {
    let m = collect(field, entries.iter().map(|(i, j, c)| ([*i, *j], c.clone())), [dim, dim], what)?;
    SparseMatrix::from_triplets(field, dim, dim, m.into_iter().map(|([i, j], v)| (i, j, v)))
        .map_err(|e| SpecError::Shape(e.to_string()))
}

fn vec_entries(v: &[(usize, Scalar)]) -> Vec<(usize, Coef)> {
    v.iter().map(|(i, c)| (*i, Coef::from_scalar(c))).collect()
}

fn mat_entries(m: &SparseMatrix) -> Vec<(usize, usize, Coef)> {
    m.entries().map(|(i, j, c)| (i, j, Coef::from_scalar(c))).collect()
}

impl AlgebraSpec {
    /// Unvalidated algebra data, for [`crate::algebra::check_algebra`].
    pub fn to_parts(&self) -> Result<AlgebraParts, SpecError> {
        let (f, d) = (self.field, self.dim);
        if d == 0 {
            return Err(SpecError::Algebra(AlgebraError::ZeroDimension));
        }
        let basis = match &self.basis {
            Some(b) if b.len() != d => {
                return Err(SpecError::Shape(format!("basis has {} labels, dim is {d}", b.len())));
            }
            Some(b) => b.clone(),
            None => (0..d).map(|i| format!("e{i}")).collect(),
        };
        let entries = collect(f, self.mu.iter().map(|(i, j, k, c)| ([*i, *j, *k], c.clone())), [d, d, d], "mu")?;
        let mut mu = vec![vec![SparseVec::new(); d]; d];
        for ([i, j, k], v) in entries {
            mu[i][j].push((k, v));
        }
        let hopf = match &self.hopf {
            Some(h) => {
                let entries = collect(
                    f,
                    h.comul.iter().map(|(i, j, k, c)| ([*i, *j, *k], c.clone())),
                    [d, d, d],
                    "comul",
                )?;
                let mut comul = vec![SparseVec::new(); d];
                for ([i, j, k], v) in entries {
                    comul[i].push((j * d + k, v));
                }
                let mut counit = vec![f.zero(); d];
                for (i, v) in vector(f, &h.counit, d, "counit")? {
                    counit[i] = v;
                }
                Some(HopfData {
                    comul,
                    counit,
                    antipode: matrix(f, &h.antipode, d, "antipode")?,
                })
            }
            None => None,
        };
        let involution = match &self.involution {
            Some(w) => Some(AntiInvolution {
                w: matrix(f, &w.w, d, "involution")?,
            }),
            None => None,
        };
        let mut parts = AlgebraParts {
            field: f,
            basis,
            mu,
            unit: vector(f, &self.unit, d, "unit")?,
            hopf,
            involution,
            ribbon: None,
        };
        if let Some(r) = &self.ribbon {
            let v = vector(f, &r.v, d, "ribbon v")?;
            let v_inv = match &r.v_inv {
                Some(vi) => vector(f, vi, d, "ribbon v_inv")?,
                None => {
                    // The inverse needs a valid multiplication to be meaningful.
                    let plain = Algebra::new(AlgebraParts {
                        hopf: None,
                        involution: None,
                        ..parts.clone()
                    })?;
                    plain
                        .inverse_of(&v)
                        .ok_or_else(|| SpecError::Shape("ribbon element is not invertible".into()))?
                }
            };
            parts.ribbon = Some(RibbonData { v, v_inv });
        }
        Ok(parts)
    }

    pub fn to_algebra(&self) -> Result<Algebra, SpecError> {
        Ok(Algebra::new(self.to_parts()?)?)
    }

    pub fn from_algebra(a: &Algebra) -> Self {
        let d = a.dim();
        let mut mu = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in a.mul_basis(i, j) {
                    mu.push((i, j, *k, Coef::from_scalar(c)));
                }
            }
        }
        let hopf = a.hopf().map(|h| HopfSpec {
            comul: h
                .comul
                .iter()
                .enumerate()
                .flat_map(|(i, v)| v.iter().map(move |(jk, c)| (i, jk / d, jk % d, Coef::from_scalar(c))))
                .collect(),
            counit: h
                .counit
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, Coef::from_scalar(c)))
                .collect(),
            antipode: mat_entries(&h.antipode),
        });
        AlgebraSpec {
            field: a.field(),
            dim: d,
            basis: Some(a.basis().to_vec()),
            mu,
            unit: vec_entries(a.unit()),
            hopf,
            ribbon: a.ribbon().map(|r| RibbonSpec {
                v: vec_entries(&r.v),
                v_inv: Some(vec_entries(&r.v_inv)),
            }),
            involution: a.involution().map(|w| InvolutionSpec { w: mat_entries(&w.w) }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}

impl GroupSpec {
    pub fn to_group(&self) -> Result<FiniteGroup, SpecError> {
        let n = self.order;
        if self.table.len() != n * n {
            return Err(SpecError::Shape(format!(
                "table has {} entries, order {n} needs {}",
                self.table.len(),
                n * n
            )));
        }
        let rows = self.table.chunks(n.max(1)).map(|r| r.to_vec()).collect();
        Ok(FiniteGroup::from_table(rows, self.labels.clone())?)
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupSpec {
            order: g.order(),
            table: g.table().iter().flatten().copied().collect(),
            labels: Some(g.labels().to_vec()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}

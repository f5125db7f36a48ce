//! Exact sparse linear algebra over the rationals and prime fields.
//!
//! Ranks, kernels, quotient spaces and homology of composable pairs of
//! linear maps. Every basis handed back is chosen by a pivot convention
//! (pivot columns left to right), so repeated runs return bit-identical
//! matrices.

pub(crate) mod elim;
mod sparse;

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::field::{FieldTag, Scalar};
use elim::{convert_rows, convert_vec, with_arith, Arith, Echelon};

pub(crate) use sparse::merge_axpy as sparse_axpy;
pub use sparse::{SparseMatrix, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("shape mismatch: {left:?} against {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("entry ({row}, {col}) outside a {nrows}x{ncols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        nrows: usize,
        ncols: usize,
    },
    #[error("fields differ: {0} vs {1}")]
    FieldMismatch(FieldTag, FieldTag),
    #[error("composite of the two differentials is not zero")]
    CompositionNotZero,
    #[error("map does not preserve the subquotient: {0}")]
    NotChainEndomorphism(String),
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Tuning for elimination. Never changes results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElimConfig {
    /// Density (stored entries / cells) above which dense elimination is used.
    pub dense_threshold: f64,
}

impl Default for ElimConfig {
    fn default() -> Self {
        ElimConfig { dense_threshold: 0.35 }
    }
}

/// Reduced row echelon form of the row space: `(pivot column, row)` pairs.
pub fn row_echelon_with(m: &SparseMatrix, cfg: &ElimConfig) -> Vec<(usize, SparseVec)> {
    with_arith!(m.field(), a => {
        let rows = convert_rows(a, m);
        elim::rref(a, m.ncols(), rows, cfg.dense_threshold)
            .into_iter()
            .map(|(c, r)| (c, elim::back_to_scalars(a, &r)))
            .collect()
    })
}

pub fn row_echelon(m: &SparseMatrix) -> Vec<(usize, SparseVec)> {
    row_echelon_with(m, &ElimConfig::default())
}

pub fn rank_with(m: &SparseMatrix, cfg: &ElimConfig) -> usize {
    with_arith!(m.field(), a => {
        // Rank only needs a (non-reduced) echelon form.
        let nnz = m.nnz();
        let cells = m.nrows().saturating_mul(m.ncols()).max(1);
        let rows = convert_rows(a, m);
        if (nnz as f64) / (cells as f64) > cfg.dense_threshold {
            elim::dense_rref(a, m.ncols(), rows).len()
        } else {
            let mut order: Vec<usize> = (0..rows.len()).collect();
            order.sort_by_key(|&i| (rows[i].len(), i));
            let mut rows: Vec<Option<_>> = rows.into_iter().map(Some).collect();
            let mut ech = Echelon::new(a);
            for i in order {
                ech.insert(rows[i].take().unwrap(), None);
            }
            ech.rank()
        }
    })
}

/// Rank over the matrix's field.
pub fn rank(m: &SparseMatrix) -> usize {
    rank_with(m, &ElimConfig::default())
}

/// Columns form a basis of `ker(m)`; one column per free column of the RREF.
pub fn kernel_basis(m: &SparseMatrix) -> SparseMatrix {
    let field = m.field();
    with_arith!(field, a => {
        let rows = convert_rows(a, m);
        let rref = elim::rref(a, m.ncols(), rows, ElimConfig::default().dense_threshold);
        let kernel = elim::kernel_from_rref(a, m.ncols(), &rref);
        let cols = kernel.iter().map(|v| elim::back_to_scalars(a, v)).collect();
        SparseMatrix::from_columns(field, m.ncols(), cols)
    })
}

/// Columns form a basis of the column space of `m` (reduced echelon vectors).
pub fn image_basis(m: &SparseMatrix) -> SparseMatrix {
    let cols = row_echelon(&m.transpose()).into_iter().map(|(_, r)| r).collect();
    SparseMatrix::from_columns(m.field(), m.nrows(), cols)
}

fn check_pair(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<(), LinAlgError> {
    if d_in.field() != d_out.field() {
        return Err(LinAlgError::FieldMismatch(d_in.field(), d_out.field()));
    }
    if d_out.ncols() != d_in.nrows() {
        return Err(LinAlgError::ShapeMismatch {
            left: d_out.shape(),
            right: d_in.shape(),
        });
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(LinAlgError::CompositionNotZero);
    }
    Ok(())
}

/// `dim ker(d_out) - rank(d_in)` for `d_in: U -> V`, `d_out: V -> W`.
pub fn homology_dim(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<usize, LinAlgError> {
    check_pair(d_in, d_out)?;
    let kernel = d_out.ncols() - rank(d_out);
    Ok(kernel - rank(d_in))
}

/// Representatives of a basis of `ker(d_out) / im(d_in)`, as columns.
///
/// Kernel basis vectors are scanned in order and kept when independent of the
/// image and of the vectors kept before them.
pub fn homology_basis(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<SparseMatrix, LinAlgError> {
    check_pair(d_in, d_out)?;
    let field = d_in.field();
    let kernel = kernel_basis(d_out).columns();
    with_arith!(field, a => {
        let mut ech = Echelon::new(a);
        for col in d_in.columns() {
            ech.insert(convert_vec(a, &col), None);
        }
        let reps: Vec<SparseVec> = kernel
            .into_iter()
            .filter(|k| ech.insert(convert_vec(a, k), None).is_some())
            .collect();
        Ok(SparseMatrix::from_columns(field, d_in.nrows(), reps))
    })
}

/// Matrix of the map induced by `f` on `ker(d_out) / im(d_in)` in the basis
/// of [`homology_basis`].
pub fn induced_map_on_quotient(f: &SparseMatrix, d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<SparseMatrix, LinAlgError> {
    check_pair(d_in, d_out)?;
    let n = d_in.nrows();
    if f.shape() != (n, n) {
        return Err(LinAlgError::ShapeMismatch {
            left: f.shape(),
            right: (n, n),
        });
    }
    if f.field() != d_in.field() {
        return Err(LinAlgError::FieldMismatch(f.field(), d_in.field()));
    }
    let field = f.field();
    let kernel = kernel_basis(d_out).columns();
    with_arith!(field, a => {
        // Image first, untagged: coordinates are then taken modulo im(d_in).
        let mut image = Echelon::new(a);
        let image_cols = d_in.columns();
        for col in &image_cols {
            image.insert(convert_vec(a, col), None);
        }
        for (j, col) in f.apply_all(&image_cols).iter().enumerate() {
            let (res, _) = image.reduce(convert_vec(a, col));
            if !res.is_empty() {
                return Err(LinAlgError::NotChainEndomorphism(format!(
                    "image of boundary column {j} leaves the boundaries"
                )));
            }
        }
        let mut full = image;
        let mut reps = Vec::new();
        for k in kernel {
            let tag = reps.len();
            if full.insert(convert_vec(a, &k), Some(tag)).is_some() {
                reps.push(k);
            }
        }
        let images = f.apply_all(&reps);
        let mut cols = Vec::with_capacity(reps.len());
        for (i, (y, dy)) in images.iter().zip(d_out.apply_all(&images)).enumerate() {
            if !dy.is_empty() {
                return Err(LinAlgError::NotChainEndomorphism(format!(
                    "image of cycle {i} is not a cycle"
                )));
            }
            let (res, coords) = full.reduce(convert_vec(a, y));
            debug_assert!(res.is_empty(), "cycle outside ker span");
            cols.push(elim::back_to_scalars(a, &coords));
        }
        Ok(SparseMatrix::from_columns(field, reps.len(), cols))
    })
}

/// Coordinates, in the basis of [`homology_basis`], of the classes of the
/// given cycles (one output column per input vector).
pub fn homology_coordinates(d_in: &SparseMatrix, d_out: &SparseMatrix, cycles: &[SparseVec]) -> Result<SparseMatrix, LinAlgError> {
    check_pair(d_in, d_out)?;
    let field = d_in.field();
    let kernel = kernel_basis(d_out).columns();
    with_arith!(field, a => {
        let mut full = Echelon::new(a);
        for col in d_in.columns() {
            full.insert(convert_vec(a, &col), None);
        }
        let mut count = 0;
        for k in kernel {
            if full.insert(convert_vec(a, &k), Some(count)).is_some() {
                count += 1;
            }
        }
        let mut cols = Vec::with_capacity(cycles.len());
        for (i, (y, dy)) in cycles.iter().zip(d_out.apply_all(cycles)).enumerate() {
            if !dy.is_empty() {
                return Err(LinAlgError::NotChainEndomorphism(format!("vector {i} is not a cycle")));
            }
            let (res, coords) = full.reduce(convert_vec(a, y));
            debug_assert!(res.is_empty(), "cycle outside ker span");
            cols.push(elim::back_to_scalars(a, &coords));
        }
        Ok(SparseMatrix::from_columns(field, count, cols))
    })
}

/// Characteristic polynomial `[1, c_1, ..., c_n]` of a square matrix, with
/// `det(xI - M) = x^n + c_1 x^{n-1} + ... + c_n`.
pub fn charpoly(m: &SparseMatrix) -> Result<Vec<Scalar>, LinAlgError> {
    if m.nrows() != m.ncols() {
        return Err(LinAlgError::NotSquare(m.nrows(), m.ncols()));
    }
    with_arith!(m.field(), a => {
        let dense: Vec<Vec<_>> = m
            .to_dense()
            .iter()
            .map(|r| r.iter().map(|x| a.from_scalar(x)).collect())
            .collect();
        Ok(elim::charpoly(a, &dense).iter().map(|x| a.to_scalar(x)).collect())
    })
}

/// The quotient `V / U` of a coordinate space by a subspace, presented by the
/// RREF of `U`. The quotient basis is the images of the standard basis
/// vectors at the non-pivot coordinates.
#[derive(Debug, Clone)]
pub struct QuotientSpace {
    field: FieldTag,
    ambient: usize,
    rows: BTreeMap<usize, SparseVec>,
    complement: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl QuotientSpace {
    /// Quotient of `field^ambient` by the span of `generators`.
    pub fn new<I>(field: FieldTag, ambient: usize, generators: I) -> Self
    where
        I: IntoIterator<Item = SparseVec>,
    {
        let gens: Vec<SparseVec> = generators.into_iter().collect();
        let m = SparseMatrix::from_rows_unchecked(field, gens.len(), ambient, gens);
        let rows: BTreeMap<usize, SparseVec> = row_echelon(&m).into_iter().collect();
        let complement: Vec<usize> = (0..ambient).filter(|c| !rows.contains_key(c)).collect();
        let mut position = vec![None; ambient];
        for (i, &c) in complement.iter().enumerate() {
            position[c] = Some(i);
        }
        QuotientSpace {
            field,
            ambient,
            rows,
            complement,
            position,
        }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Ambient coordinates whose classes form the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// Coordinates of the class of `v` in the quotient basis.
    pub fn project(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let f = self.field;
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, x) in v {
            match self.rows.get(c) {
                Some(row) => {
                    for (k, y) in row.iter().filter(|(k, _)| k != c) {
                        let slot = acc.entry(self.position[*k].unwrap()).or_insert_with(Scalar::zero);
                        *slot = f.sub(slot, &f.mul(x, y));
                    }
                }
                None => {
                    let slot = acc.entry(self.position[*c].unwrap()).or_insert_with(Scalar::zero);
                    *slot = f.add(slot, x);
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Matrix of the map `self -> target` induced by `f: V -> V'`. Fails when
    /// `f` does not carry the subspace into the target's subspace.
    pub fn induced(&self, f: &SparseMatrix, target: &QuotientSpace) -> Result<SparseMatrix, LinAlgError> {
        if f.shape() != (target.ambient, self.ambient) {
            return Err(LinAlgError::ShapeMismatch {
                left: f.shape(),
                right: (target.ambient, self.ambient),
            });
        }
        let gens: Vec<SparseVec> = self.rows.iter().map(|(_, row)| row.clone()).collect();
        for ((c, _), image) in self.rows.iter().zip(f.apply_all(&gens)) {
            if !target.project(&image).is_empty() {
                return Err(LinAlgError::NotChainEndomorphism(format!(
                    "subspace generator with pivot {c} maps outside the target subspace"
                )));
            }
        }
        let fcols = f.columns();
        let cols = self.complement.iter().map(|&c| target.project(&fcols[c])).collect();
        Ok(SparseMatrix::from_columns(self.field, target.dim(), cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldTag {
        FieldTag::Rationals
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::identity(q(), 2)), 2);
        assert_eq!(rank(&SparseMatrix::zeros(q(), 3, 4)), 0);
        assert_eq!(rank(&SparseMatrix::from_dense_i64(q(), &[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&SparseMatrix::identity(q(), 2)).ncols(), 0);
        let k = kernel_basis(&SparseMatrix::zeros(q(), 2, 2));
        assert_eq!(k.ncols(), 2);
        assert_eq!(rank(&k), 2);
        let k = kernel_basis(&SparseMatrix::from_dense_i64(q(), &[vec![1, 1]]));
        assert_eq!(k, SparseMatrix::from_dense_i64(q(), &[vec![-1], vec![1]]));
    }

    #[test]
    fn homology_dim_examples() {
        let z_in = SparseMatrix::zeros(q(), 2, 1);
        let z_out = SparseMatrix::zeros(q(), 1, 2);
        assert_eq!(homology_dim(&z_in, &z_out).unwrap(), 2);
        assert_eq!(homology_dim(&SparseMatrix::identity(q(), 2), &z_out).unwrap(), 0);
        let d_out = SparseMatrix::from_dense_i64(q(), &[vec![0, 1], vec![0, 0]]);
        assert_eq!(homology_dim(&z_in, &d_out).unwrap(), 1);
    }

    #[test]
    fn homology_dim_errors() {
        let id = SparseMatrix::identity(q(), 2);
        assert_eq!(homology_dim(&id, &id), Err(LinAlgError::CompositionNotZero));
        let bad = SparseMatrix::zeros(q(), 1, 3);
        assert!(matches!(homology_dim(&id, &bad), Err(LinAlgError::ShapeMismatch { .. })));
    }

    #[test]
    fn induced_map_examples() {
        let d_in = SparseMatrix::zeros(q(), 2, 1);
        let d_out = SparseMatrix::from_dense_i64(q(), &[vec![1, 1]]);
        let swap = SparseMatrix::from_dense_i64(q(), &[vec![0, 1], vec![1, 0]]);
        let m = induced_map_on_quotient(&swap, &d_in, &d_out).unwrap();
        assert_eq!(m, SparseMatrix::from_dense_i64(q(), &[vec![-1]]));
        let id = induced_map_on_quotient(&SparseMatrix::identity(q(), 2), &d_in, &d_out).unwrap();
        assert!(id.is_identity());
        let zero = induced_map_on_quotient(&SparseMatrix::zeros(q(), 2, 2), &d_in, &d_out).unwrap();
        assert!(zero.is_zero() && zero.shape() == (1, 1));
    }

    #[test]
    fn induced_map_rejects_non_chain_maps() {
        // Homology of 0 -> Q^2 -> Q, d_out = [1, 0]: classes spanned by e1.
        let d_in = SparseMatrix::zeros(q(), 2, 1);
        let d_out = SparseMatrix::from_dense_i64(q(), &[vec![1, 0]]);
        let swap = SparseMatrix::from_dense_i64(q(), &[vec![0, 1], vec![1, 0]]);
        assert!(matches!(
            induced_map_on_quotient(&swap, &d_in, &d_out),
            Err(LinAlgError::NotChainEndomorphism(_))
        ));
        // Boundaries spanned by e0 in Q^2 with d_out = 0; swap moves e0 to e1.
        let d_in = SparseMatrix::from_dense_i64(q(), &[vec![1], vec![0]]);
        let d_out = SparseMatrix::zeros(q(), 1, 2);
        assert!(matches!(
            induced_map_on_quotient(&swap, &d_in, &d_out),
            Err(LinAlgError::NotChainEndomorphism(_))
        ));
    }

    #[test]
    fn induced_map_works_modulo_boundaries() {
        // V = Q^3, boundaries span e0 - e1, cycles everything: H has basis {e1, e2}.
        let d_in = SparseMatrix::from_dense_i64(q(), &[vec![1], vec![-1], vec![0]]);
        let d_out = SparseMatrix::zeros(q(), 1, 3);
        let basis = homology_basis(&d_in, &d_out).unwrap();
        assert_eq!(basis.ncols(), 2);
        // f swaps e0 <-> e1 (preserves span(e0 - e1) up to sign) and fixes e2.
        let f = SparseMatrix::from_dense_i64(q(), &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        let m = induced_map_on_quotient(&f, &d_in, &d_out).unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn charpoly_small() {
        let m = SparseMatrix::from_dense_i64(q(), &[vec![2, 1], vec![1, 2]]);
        let p = charpoly(&m).unwrap();
        let expect: Vec<Scalar> = [1, -4, 3].iter().map(|&x| q().from_i64(x)).collect();
        assert_eq!(p, expect);
        let m = SparseMatrix::from_dense_i64(q(), &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        let expect: Vec<Scalar> = [1, 0, 0, -1].iter().map(|&x| q().from_i64(x)).collect();
        assert_eq!(charpoly(&m).unwrap(), expect);
        assert_eq!(charpoly(&SparseMatrix::zeros(q(), 0, 0)).unwrap(), vec![q().one()]);
    }

    #[test]
    fn quotient_projection() {
        let u = vec![vec![(0, q().one()), (1, q().from_i64(-1))]];
        let qs = QuotientSpace::new(q(), 3, u);
        assert_eq!(qs.dim(), 2);
        assert_eq!(qs.complement(), &[1, 2]);
        // e0 is congruent to e1.
        assert_eq!(qs.project(&[(0, q().one())]), vec![(0, q().one())]);
        assert!(qs.project(&[(0, q().one()), (1, q().from_i64(-1))]).is_empty());
    }

    #[test]
    fn dense_and_sparse_paths_agree() {
        let m = SparseMatrix::from_dense_i64(
            q(),
            &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0], vec![1, 0, 1, 5]],
        );
        let sparse = row_echelon_with(&m, &ElimConfig { dense_threshold: 2.0 });
        let dense = row_echelon_with(&m, &ElimConfig { dense_threshold: -1.0 });
        assert_eq!(sparse, dense);
        assert_eq!(rank_with(&m, &ElimConfig { dense_threshold: 2.0 }), 3);
        assert_eq!(rank_with(&m, &ElimConfig { dense_threshold: -1.0 }), 3);
    }
}

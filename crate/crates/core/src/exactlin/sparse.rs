use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LinAlgError;
use crate::field::{format_scalar, parse_rational, FieldTag, Scalar};

/// Sparse vector: entries sorted by index, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Row-compressed sparse matrix over an exact field.
///
/// Invariants: every row is sorted by column, holds no duplicate columns and
/// no stored zero, and every scalar is canonical for `field`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    field: FieldTag,
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(field: FieldTag, nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            field,
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(field: FieldTag, n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, field.one())]).collect();
        SparseMatrix {
            field,
            nrows: n,
            ncols: n,
            rows,
        }
    }

    /// Builds a matrix from `(row, col, value)` triples. Values at a repeated
    /// position are summed; zeros are dropped.
    pub fn from_triplets<I>(field: FieldTag, nrows: usize, ncols: usize, triplets: I) -> Result<Self, LinAlgError>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); nrows];
        for (r, c, v) in triplets {
            if r >= nrows || c >= ncols {
                return Err(LinAlgError::IndexOutOfRange { row: r, col: c, nrows, ncols });
            }
            let v = field.normalize(&v).map_err(|e| LinAlgError::Parse(e.to_string()))?;
            let slot = acc[r].entry(c).or_insert_with(Scalar::zero);
            *slot = field.add(slot, &v);
        }
        let rows = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(SparseMatrix { field, nrows, ncols, rows })
    }

    /// Convenience constructor from small integer rows.
    pub fn from_dense_i64(field: FieldTag, rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let trip = rows.iter().enumerate().flat_map(|(r, row)| {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            row.iter()
                .enumerate()
                .map(move |(c, &v)| (r, c, field.from_i64(v)))
        });
        Self::from_triplets(field, nrows, ncols, trip).expect("in range")
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`. Column entries must
    /// be canonical and nonzero.
    pub fn from_columns(field: FieldTag, nrows: usize, columns: Vec<SparseVec>) -> Self {
        let ncols = columns.len();
        let mut rows: Vec<SparseVec> = vec![Vec::new(); nrows];
        for (c, col) in columns.into_iter().enumerate() {
            for (r, v) in col {
                assert!(r < nrows, "column entry out of range");
                debug_assert!(!v.is_zero());
                rows[r].push((c, v));
            }
        }
        SparseMatrix { field, nrows, ncols, rows }
    }

    pub(crate) fn from_rows_unchecked(field: FieldTag, nrows: usize, ncols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert_eq!(rows.len(), nrows);
        SparseMatrix { field, nrows, ncols, rows }
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.rows[r].binary_search_by_key(&c, |(k, _)| *k) {
            Ok(i) => self.rows[r][i].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    /// All stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c.to_owned(), v)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(r, row)| row.len() == 1 && row[0].0 == r && row[0].1 == self.field.one())
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                rows[*c].push((r, v.clone()));
            }
        }
        SparseMatrix {
            field: self.field,
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    /// Column `j` as a sparse vector.
    pub fn column(&self, j: usize) -> SparseVec {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                row.binary_search_by_key(&j, |(k, _)| *k)
                    .ok()
                    .map(|i| (r, row[i].1.clone()))
            })
            .collect()
    }

    /// All columns, computed in one pass.
    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().rows
    }

    fn check_same_field(&self, other: &Self) -> Result<(), LinAlgError> {
        if self.field != other.field {
            return Err(LinAlgError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// Matrix product `self * other`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.check_same_field(other)?;
        if self.ncols != other.nrows {
            return Err(LinAlgError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let f = self.field;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &other.rows[*k] {
                        let slot = acc.entry(*c).or_insert_with(Scalar::zero);
                        *slot = f.add(slot, &f.mul(a, b));
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseMatrix {
            field: f,
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        })
    }

    /// Matrix product; panics on shape or field mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("matrix product")
    }

    fn combine(&self, other: &Self, sign: i64) -> Result<Self, LinAlgError> {
        self.check_same_field(other)?;
        if self.shape() != other.shape() {
            return Err(LinAlgError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let f = self.field;
        let s = f.from_i64(sign);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| merge_axpy(f, a, &s, b))
            .collect();
        Ok(SparseMatrix {
            field: f,
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.combine(other, 1)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.combine(other, -1)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("matrix sum")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("matrix difference")
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let f = self.field;
        let s = f.normalize(s).expect("scalar in field");
        if s.is_zero() {
            return Self::zeros(f, self.nrows, self.ncols);
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, f.mul(v, &s))).collect())
            .collect();
        SparseMatrix {
            field: f,
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        assert_eq!(self.nrows, self.ncols, "power of non-square matrix");
        let mut acc = Self::identity(self.field, self.nrows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self * v` for a sparse column vector.
    pub fn apply(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let f = self.field;
        let dense: BTreeMap<usize, &Scalar> = v.iter().map(|(i, x)| (*i, x)).collect();
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let mut acc = Scalar::zero();
                for (c, a) in row {
                    if let Some(x) = dense.get(c) {
                        acc = f.add(&acc, &f.mul(a, x));
                    }
                }
                (!acc.is_zero()).then_some((r, acc))
            })
            .collect()
    }

    /// `self * v` for each `v`, as one sparse product. Prefer this to repeated
    /// [`SparseMatrix::apply`], which scans every row per call.
    pub fn apply_all(&self, vs: &[SparseVec]) -> Vec<SparseVec> {
        let m = SparseMatrix::from_columns(self.field, self.ncols, vs.to_vec());
        self.mul(&m).columns()
    }

    /// Stacks `blocks` vertically.
    pub fn vstack(field: FieldTag, ncols: usize, blocks: &[&SparseMatrix]) -> Self {
        let mut rows = Vec::new();
        for b in blocks {
            assert_eq!(b.ncols, ncols);
            rows.extend(b.rows.iter().cloned());
        }
        SparseMatrix {
            field,
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    /// Places `blocks` side by side.
    pub fn hstack(field: FieldTag, nrows: usize, blocks: &[&SparseMatrix]) -> Self {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); nrows];
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.nrows, nrows);
            for (r, row) in b.rows.iter().enumerate() {
                rows[r].extend(row.iter().map(|(c, v)| (c + offset, v.clone())));
            }
            offset += b.ncols;
        }
        SparseMatrix {
            field,
            nrows,
            ncols: offset,
            rows,
        }
    }

    /// Dense copy, row-major.
    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.ncols]; self.nrows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }

    /// Debug dump: a `rows cols` header line, then one `r c num/den` line per
    /// stored entry in row-major order.
    pub fn to_dump(&self) -> String {
        let mut s = format!("{} {}\n", self.nrows, self.ncols);
        for (r, c, v) in self.entries() {
            let _ = writeln!(s, "{r} {c} {}", format_scalar(v));
        }
        s
    }

    pub fn from_dump(field: FieldTag, text: &str) -> Result<Self, LinAlgError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let bad = |l: &str| LinAlgError::Parse(format!("bad dump line `{l}`"));
        let header = lines.next().ok_or_else(|| LinAlgError::Parse("empty dump".into()))?;
        let mut it = header.split_whitespace();
        let nrows: usize = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad(header))?;
        let ncols: usize = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad(header))?;
        if it.next().is_some() {
            return Err(bad(header));
        }
        let mut trip = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(bad(line));
            }
            let r: usize = parts[0].parse().map_err(|_| bad(line))?;
            let c: usize = parts[1].parse().map_err(|_| bad(line))?;
            let v = parse_rational(parts[2]).map_err(|_| bad(line))?;
            if !seen.insert((r, c)) || v.is_zero() {
                return Err(bad(line));
            }
            trip.push((r, c, v));
        }
        Self::from_triplets(field, nrows, ncols, trip)
    }
}

/// Serialized form: field, shape and `[row, col, "num/den"]` triples.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixRepr {
    field: FieldTag,
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
}

impl Serialize for SparseMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            field: self.field,
            rows: self.nrows,
            cols: self.ncols,
            entries: self.entries().map(|(r, c, v)| (r, c, format_scalar(v))).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SparseMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        let mut trip = Vec::with_capacity(repr.entries.len());
        for (r, c, v) in repr.entries {
            let v = repr.field.parse_scalar(&v).map_err(serde::de::Error::custom)?;
            trip.push((r, c, v));
        }
        SparseMatrix::from_triplets(repr.field, repr.rows, repr.cols, trip).map_err(serde::de::Error::custom)
    }
}

/// `a + s * b` for sorted sparse vectors.
pub(crate) fn merge_axpy(f: FieldTag, a: &[(usize, Scalar)], s: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = f.mul(s, &b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = f.add(&a[i].1, &f.mul(s, &b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dump_round_trip() {
        let q = FieldTag::Rationals;
        let m = SparseMatrix::from_triplets(
            q,
            2,
            3,
            vec![(0, 2, q.parse_scalar("3/4").unwrap()), (1, 0, q.from_i64(-2))],
        )
        .unwrap();
        let text = m.to_dump();
        assert_eq!(text, "2 3\n0 2 3/4\n1 0 -2\n");
        assert_eq!(SparseMatrix::from_dump(q, &text).unwrap(), m);
    }

    #[test]
    fn dump_rejects_duplicates_and_zeros() {
        let q = FieldTag::Rationals;
        assert!(SparseMatrix::from_dump(q, "1 1\n0 0 1\n0 0 2\n").is_err());
        assert!(SparseMatrix::from_dump(q, "1 1\n0 0 0\n").is_err());
        assert!(SparseMatrix::from_dump(q, "1 1\n1 0 1\n").is_err());
    }

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let q = FieldTag::Rationals;
        let m = SparseMatrix::from_triplets(q, 1, 1, vec![(0, 0, q.from_i64(1)), (0, 0, q.from_i64(-1))]).unwrap();
        assert!(m.is_zero());
        assert_eq!(m.nnz(), 0);
    }

    #[test]
    fn product_and_transpose() {
        let q = FieldTag::Rationals;
        let a = SparseMatrix::from_dense_i64(q, &[vec![1, 2], vec![0, 1]]);
        let b = SparseMatrix::from_dense_i64(q, &[vec![1, -2], vec![0, 1]]);
        assert!(a.mul(&b).is_identity());
        assert_eq!(a.transpose().get(1, 0), q.from_i64(2));
        assert!(a.try_mul(&SparseMatrix::zeros(q, 3, 1)).is_err());
    }

    #[test]
    fn prime_field_entries_are_reduced() {
        let f = FieldTag::PrimeField(5);
        let m = SparseMatrix::from_dense_i64(f, &[vec![7, -1]]);
        assert_eq!(m.get(0, 0), f.from_i64(2));
        assert_eq!(m.get(0, 1), f.from_i64(4));
        assert!(m.scale(&f.from_i64(5)).is_zero());
    }
}

//! Exact Gaussian elimination kernels.
//!
//! The public routines in [`super`] convert a [`SparseMatrix`] into the
//! native element type of its field (`BigRational` or a `u64` residue) and run
//! the generic kernels below. All echelon forms produced here are reduced
//! (RREF), which is unique, so results never depend on the order in which
//! rows were processed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactlin::SparseMatrix;
use crate::field::Scalar;

pub(crate) trait Arith {
    type E: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn from_scalar(&self, s: &Scalar) -> Self::E;
    fn to_scalar(&self, e: &Self::E) -> Scalar;
}

pub(crate) struct RatArith;

impl Arith for RatArith {
    type E = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn inv(&self, a: &Scalar) -> Scalar {
        a.recip()
    }
    fn from_scalar(&self, s: &Scalar) -> Scalar {
        s.clone()
    }
    fn to_scalar(&self, e: &Scalar) -> Scalar {
        e.clone()
    }
}

pub(crate) struct ModArith {
    p: u64,
}

impl ModArith {
    pub(crate) fn new(p: u64) -> Self {
        ModArith { p }
    }
}

impl Arith for ModArith {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        crate::field::mod_inverse(*a, self.p)
    }
    fn from_scalar(&self, s: &Scalar) -> u64 {
        // Stored prime-field scalars are canonical residues.
        s.to_integer().to_u64().expect("canonical residue")
    }
    fn to_scalar(&self, e: &u64) -> Scalar {
        Scalar::from_integer(BigInt::from(*e))
    }
}

/// Runs `$body` with `$a` bound to the arithmetic of `$field`.
macro_rules! with_arith {
    ($field:expr, $a:ident => $body:expr) => {
        match $field {
            $crate::field::FieldTag::Rationals => {
                let $a = &$crate::exactlin::elim::RatArith;
                $body
            }
            $crate::field::FieldTag::PrimeField(p) => {
                let $a = &$crate::exactlin::elim::ModArith::new(p);
                $body
            }
        }
    };
}
pub(crate) use with_arith;

pub(crate) type Row<E> = Vec<(usize, E)>;

pub(crate) fn convert_rows<A: Arith>(a: &A, m: &SparseMatrix) -> Vec<Row<A::E>> {
    m.rows()
        .iter()
        .map(|r| r.iter().map(|(c, v)| (*c, a.from_scalar(v))).collect())
        .collect()
}

pub(crate) fn convert_vec<A: Arith>(a: &A, v: &[(usize, Scalar)]) -> Row<A::E> {
    v.iter().map(|(c, x)| (*c, a.from_scalar(x))).collect()
}

pub(crate) fn back_to_scalars<A: Arith>(a: &A, v: &[(usize, A::E)]) -> Vec<(usize, Scalar)> {
    v.iter().map(|(c, x)| (*c, a.to_scalar(x))).collect()
}

/// `x - s * y` on sorted sparse rows.
pub(crate) fn axpy<A: Arith>(a: &A, x: &[(usize, A::E)], s: &A::E, y: &[(usize, A::E)]) -> Row<A::E> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i >= x.len() || y[j].0 < x[i].0 {
            let v = a.neg(&a.mul(s, &y[j].1));
            if !a.is_zero(&v) {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = a.sub(&x[i].1, &a.mul(s, &y[j].1));
            if !a.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale_row<A: Arith>(a: &A, x: &mut [(usize, A::E)], s: &A::E) {
    for (_, v) in x.iter_mut() {
        *v = a.mul(v, s);
    }
}

fn lookup<'r, E>(row: &'r [(usize, E)], col: usize) -> Option<&'r E> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// Incrementally built echelon basis of a subspace.
///
/// Rows have a leading one at their pivot column and no entry at any other
/// pivot column that existed when they were inserted. Optionally each row
/// carries a coordinate vector expressing it in terms of tagged inserted
/// vectors (untagged inserts contribute nothing to the coordinates, which is
/// how computations modulo a subspace are done).
pub(crate) struct Echelon<'a, A: Arith> {
    a: &'a A,
    pivots: BTreeMap<usize, (Row<A::E>, Row<A::E>)>,
}

impl<'a, A: Arith> Echelon<'a, A> {
    pub(crate) fn new(a: &'a A) -> Self {
        Echelon {
            a,
            pivots: BTreeMap::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against all pivots. Returns the residual (supported off
    /// the pivot columns) and the accumulated coordinates of the subtracted
    /// part.
    pub(crate) fn reduce(&self, v: Row<A::E>) -> (Row<A::E>, Row<A::E>) {
        let a = self.a;
        let mut v = v;
        let mut coords: Row<A::E> = Vec::new();
        let mut cursor = 0usize;
        loop {
            let next = v
                .iter()
                .find(|(c, _)| *c >= cursor && self.pivots.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, coef)) = next else { break };
            let (row, combo) = &self.pivots[&c];
            v = axpy(a, &v, &coef, row);
            if !combo.is_empty() {
                coords = axpy(a, &coords, &a.neg(&coef), combo);
            }
            cursor = c + 1;
        }
        (v, coords)
    }

    /// Inserts `v`; `tag` names the vector in coordinate tracking. Returns the
    /// new pivot column if `v` was independent.
    pub(crate) fn insert(&mut self, v: Row<A::E>, tag: Option<usize>) -> Option<usize> {
        let a = self.a;
        let (mut res, coords) = self.reduce(v);
        if res.is_empty() {
            return None;
        }
        // res = v - (subtracted part), so its coordinates are e_tag - coords.
        let base = match tag {
            Some(t) => vec![(t, a.one())],
            None => Vec::new(),
        };
        let mut combo = axpy(a, &base, &a.one(), &coords);
        let lead = res[0].0;
        let inv = a.inv(&res[0].1);
        scale_row(a, &mut res, &inv);
        scale_row(a, &mut combo, &inv);
        self.pivots.insert(lead, (res, combo));
        Some(lead)
    }

    /// Reduces every row at every other pivot column, yielding the RREF.
    pub(crate) fn make_reduced(&mut self) {
        let a = self.a;
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        for &pc in cols.iter().rev() {
            let (prow, pcombo) = self.pivots[&pc].clone();
            for &other in cols.iter().filter(|&&c| c < pc) {
                let entry = self.pivots.get_mut(&other).unwrap();
                if let Some(coef) = lookup(&entry.0, pc).cloned() {
                    entry.0 = axpy(a, &entry.0, &coef, &prow);
                    if !pcombo.is_empty() {
                        entry.1 = axpy(a, &entry.1, &coef, &pcombo);
                    }
                }
            }
        }
    }

    pub(crate) fn into_rows(self) -> Vec<(usize, Row<A::E>)> {
        self.pivots.into_iter().map(|(c, (r, _))| (c, r)).collect()
    }
}

/// Reduced row echelon form of the row space of `rows`: pivot columns in
/// increasing order, each with its reduced row.
///
/// Rows are fed sparsest-first (a Markowitz-style ordering that limits
/// fill-in). When the input density exceeds `dense_threshold` a dense
/// Gauss-Jordan sweep is used instead; the output is identical either way.
pub(crate) fn rref<A: Arith>(a: &A, ncols: usize, rows: Vec<Row<A::E>>, dense_threshold: f64) -> Vec<(usize, Row<A::E>)> {
    let nnz: usize = rows.iter().map(Vec::len).sum();
    let cells = rows.len().saturating_mul(ncols).max(1);
    if (nnz as f64) / (cells as f64) > dense_threshold {
        return dense_rref(a, ncols, rows);
    }
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| (rows[i].len(), i));
    let mut rows: Vec<Option<Row<A::E>>> = rows.into_iter().map(Some).collect();
    let mut ech = Echelon::new(a);
    for i in order {
        let r = rows[i].take().unwrap();
        ech.insert(r, None);
    }
    ech.make_reduced();
    ech.into_rows()
}

pub(crate) fn dense_rref<A: Arith>(a: &A, ncols: usize, rows: Vec<Row<A::E>>) -> Vec<(usize, Row<A::E>)> {
    let mut m: Vec<Vec<A::E>> = rows
        .into_iter()
        .map(|r| {
            let mut d = vec![a.zero(); ncols];
            for (c, v) in r {
                d[c] = v;
            }
            d
        })
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0usize;
    for col in 0..ncols {
        let Some(p) = (next..m.len()).find(|&r| !a.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(next, p);
        let inv = a.inv(&m[next][col]);
        for x in m[next].iter_mut() {
            *x = a.mul(x, &inv);
        }
        let prow = m[next].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == next || a.is_zero(&row[col]) {
                continue;
            }
            let coef = row[col].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !a.is_zero(y) {
                    *x = a.sub(x, &a.mul(&coef, y));
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == m.len() {
            break;
        }
    }
    pivots
        .into_iter()
        .zip(m)
        .map(|(c, row)| {
            let sparse = row
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !a.is_zero(v))
                .collect();
            (c, sparse)
        })
        .collect()
}

/// Null space basis from an RREF: one vector per free column, in increasing
/// free-column order, with a one at the free column.
pub(crate) fn kernel_from_rref<A: Arith>(a: &A, ncols: usize, rref: &[(usize, Row<A::E>)]) -> Vec<Row<A::E>> {
    let pivot_set: std::collections::BTreeSet<usize> = rref.iter().map(|(c, _)| *c).collect();
    let mut per_free: BTreeMap<usize, Row<A::E>> = (0..ncols)
        .filter(|c| !pivot_set.contains(c))
        .map(|c| (c, vec![(c, a.one())]))
        .collect();
    for (pc, row) in rref {
        for (c, v) in row {
            if *c != *pc {
                per_free.get_mut(c).expect("RREF row entry off a free column").push((*pc, a.neg(v)));
            }
        }
    }
    per_free
        .into_values()
        .map(|mut v| {
            v.sort_by_key(|(c, _)| *c);
            v
        })
        .collect()
}

/// Characteristic polynomial coefficients `[1, c_1, ..., c_n]` of a square
/// dense matrix (`det(xI - M) = x^n + c_1 x^{n-1} + ... + c_n`), computed by
/// the division-free Samuelson-Berkowitz recursion.
pub(crate) fn charpoly<A: Arith>(a: &A, m: &[Vec<A::E>]) -> Vec<A::E> {
    let n = m.len();
    let mut poly = vec![a.one()];
    // Grow from the bottom-right corner: at step k the trailing k x k block
    // is known and the block of size k+1 is formed by adding row/col n-k-1.
    for k in 0..n {
        let top = n - k - 1;
        let a11 = m[top][top].clone();
        let r: Vec<A::E> = (top + 1..n).map(|j| m[top][j].clone()).collect();
        let c: Vec<A::E> = (top + 1..n).map(|i| m[i][top].clone()).collect();
        let sub: Vec<Vec<A::E>> = (top + 1..n)
            .map(|i| (top + 1..n).map(|j| m[i][j].clone()).collect())
            .collect();
        // Toeplitz column: 1, -a11, -R C, -R A C, ..., -R A^{k-1} C.
        let mut col = vec![a.one(), a.neg(&a11)];
        let mut v = c.clone();
        for _ in 0..k {
            let dot = r.iter().zip(&v).fold(a.zero(), |acc, (x, y)| a.add(&acc, &a.mul(x, y)));
            col.push(a.neg(&dot));
            v = sub
                .iter()
                .map(|row| row.iter().zip(&v).fold(a.zero(), |acc, (x, y)| a.add(&acc, &a.mul(x, y))))
                .collect();
        }
        let mut next = vec![a.zero(); k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in poly.iter().enumerate() {
                if i >= j && i - j < col.len() {
                    *slot = a.add(slot, &a.mul(&col[i - j], pj));
                }
            }
        }
        poly = next;
    }
    poly
}

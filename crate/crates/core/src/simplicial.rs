//! The simplex, cyclic and dihedral categories, and validators for cyclic and
//! dihedral modules given as matrices.
//!
//! A morphism `[n] → [m]` of the cyclic category is stored as the values
//! `f(0), …, f(n)` of a nondecreasing map `ℤ → ℤ` with
//! `f(i + n + 1) = f(i) + m + 1`, normalized so that `0 ≤ f(0) ≤ m`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exactlin::SparseMatrix;
use crate::field::FieldTag;
use crate::report::ValidationReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("cannot compose: source [{0}] does not match target [{1}]")]
    DomainMismatch(usize, usize),
    #[error("invalid morphism values: {0}")]
    InvalidValues(String),
    #[error("shape mismatch in module data: {0}")]
    ShapeMismatch(String),
    #[error("cannot parse morphism: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaMorphism {
    n: usize,
    m: usize,
    values: Vec<i64>,
}

impl LambdaMorphism {
    /// Any representative is accepted; it is shifted by a multiple of `m + 1`.
    pub fn new(n: usize, m: usize, values: Vec<i64>) -> Result<Self, SimplicialError> {
        if values.len() != n + 1 {
            return Err(SimplicialError::InvalidValues(format!(
                "expected {} values, got {}",
                n + 1,
                values.len()
            )));
        }
        let period = m as i64 + 1;
        let shift = values[0].div_euclid(period) * period;
        let values: Vec<i64> = values.into_iter().map(|v| v - shift).collect();
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(SimplicialError::InvalidValues("not nondecreasing".into()));
        }
        if values[n] > values[0] + period {
            return Err(SimplicialError::InvalidValues(format!(
                "f({n}) exceeds f(0) + {period}"
            )));
        }
        Ok(LambdaMorphism { n, m, values })
    }

    pub fn identity(n: usize) -> Self {
        LambdaMorphism {
            n,
            m: n,
            values: (0..=n as i64).collect(),
        }
    }

    /// The cyclic generator `τ_n`, the shift `i ↦ i + 1`.
    pub fn tau(n: usize) -> Self {
        Self::new(n, n, (1..=n as i64 + 1).collect()).expect("shift is a morphism")
    }

    /// `τ_n^k` for any integer `k`.
    pub fn tau_pow(n: usize, k: i64) -> Self {
        Self::new(n, n, (0..=n as i64).map(|i| i + k).collect()).expect("shift is a morphism")
    }

    /// The coface `[n−1] → [n]` skipping `i`.
    pub fn face(n: usize, i: usize) -> Result<Self, SimplicialError> {
        if n == 0 || i > n {
            return Err(SimplicialError::IndexOutOfRange { index: i, degree: n });
        }
        let values = (0..n as i64).map(|j| if j < i as i64 { j } else { j + 1 }).collect();
        Self::new(n - 1, n, values)
    }

    /// The codegeneracy `[n+1] → [n]` hitting `j` twice.
    pub fn degeneracy(n: usize, j: usize) -> Result<Self, SimplicialError> {
        if j > n {
            return Err(SimplicialError::IndexOutOfRange { index: j, degree: n });
        }
        let values = (0..=n as i64 + 1).map(|k| if k <= j as i64 { k } else { k - 1 }).collect();
        Self::new(n + 1, n, values)
    }

    pub fn src(&self) -> usize {
        self.n
    }

    pub fn tgt(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Value of the equivariant extension at any integer.
    pub fn eval(&self, i: i64) -> i64 {
        let p = self.n as i64 + 1;
        let q = i.div_euclid(p);
        self.values[i.rem_euclid(p) as usize] + q * (self.m as i64 + 1)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &LambdaMorphism) -> Result<Self, SimplicialError> {
        if f.m != self.n {
            return Err(SimplicialError::DomainMismatch(self.n, f.m));
        }
        let values = f.values.iter().map(|&v| self.eval(v)).collect();
        Self::new(f.n, self.m, values)
    }

    /// The reversal functor, `p ↦ m − f(n − p)`.
    pub fn reversal(&self) -> Self {
        let values = (0..=self.n).map(|p| self.m as i64 - self.values[self.n - p]).collect();
        Self::new(self.n, self.m, values).expect("reversal preserves morphisms")
    }

    /// Whether this lies in the simplex category: `f(n) ≤ m`.
    pub fn is_simplicial(&self) -> bool {
        self.values[self.n] <= self.m as i64
    }

    /// The unique `k ∈ {0..n}` and simplicial `g` with `self = g ∘ τ_n^k`.
    pub fn normal_form(&self) -> (usize, LambdaMorphism) {
        for k in 0..=self.n {
            let values = (0..=self.n as i64).map(|i| self.eval(i - k as i64)).collect();
            let g = Self::new(self.n, self.m, values).expect("rotation preserves morphisms");
            if g.is_simplicial() {
                return (k, g);
            }
        }
        unreachable!("every cyclic morphism has a normal form")
    }

    /// All morphisms `[n] → [m]`, in lexicographic order of their values.
    pub fn enumerate(n: usize, m: usize) -> Vec<LambdaMorphism> {
        fn rec(n: usize, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if cur.len() == n + 1 {
                out.push(cur.clone());
                return;
            }
            let lo = *cur.last().unwrap();
            for v in lo..=hi {
                cur.push(v);
                rec(n, hi, cur, out);
                cur.pop();
            }
        }
        let mut raw = Vec::new();
        for f0 in 0..=m as i64 {
            rec(n, f0 + m as i64 + 1, &mut vec![f0], &mut raw);
        }
        raw.into_iter().map(|values| LambdaMorphism { n, m, values }).collect()
    }
}

impl fmt::Display for LambdaMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}:", self.n, self.m)?;
        for v in &self.values {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

impl FromStr for LambdaMorphism {
    type Err = SimplicialError;

    /// Parses `n m: f(0) … f(n)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SimplicialError::Parse(s.to_string());
        let (head, tail) = s.split_once(':').ok_or_else(bad)?;
        let dims: Vec<usize> = head
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        let [n, m] = dims[..] else { return Err(bad()) };
        let values = tail
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        Self::new(n, m, values)
    }
}

/// A morphism of `Λ ⋊ ℤ₂`: a cyclic morphism followed by an optional flip.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DihedralMorphism {
    pub lambda_part: LambdaMorphism,
    pub flip: bool,
}

impl DihedralMorphism {
    pub fn identity(n: usize) -> Self {
        DihedralMorphism {
            lambda_part: LambdaMorphism::identity(n),
            flip: false,
        }
    }

    /// The reflection of `[n]`.
    pub fn reflection(n: usize) -> Self {
        DihedralMorphism {
            lambda_part: LambdaMorphism::identity(n),
            flip: true,
        }
    }

    /// `(g, ε) ∘ (f, ε') = (g ∘ r^ε(f), εε')`.
    pub fn compose(&self, f: &DihedralMorphism) -> Result<Self, SimplicialError> {
        let twisted = if self.flip { f.lambda_part.reversal() } else { f.lambda_part.clone() };
        Ok(DihedralMorphism {
            lambda_part: self.lambda_part.compose(&twisted)?,
            flip: self.flip != f.flip,
        })
    }
}

/// Matrices of a cyclic module in degrees `0..=N`.
///
/// All maps act on column vectors: `faces[n][i]: C_n → C_{n−1}` for `n ≥ 1`,
/// `degeneracies[n][j]: C_n → C_{n+1}` for `n < N`, `cyclic[n]: C_n → C_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicModuleData {
    field: FieldTag,
    dims: Vec<usize>,
    faces: Vec<Vec<SparseMatrix>>,
    degeneracies: Vec<Vec<SparseMatrix>>,
    cyclic: Vec<SparseMatrix>,
}

fn check_shape(m: &SparseMatrix, rows: usize, cols: usize, what: String) -> Result<(), SimplicialError> {
    if m.shape() != (rows, cols) {
        return Err(SimplicialError::ShapeMismatch(format!(
            "{what} is {:?}, expected {:?}",
            m.shape(),
            (rows, cols)
        )));
    }
    Ok(())
}

impl CyclicModuleData {
    /// `faces[0]` and `degeneracies[N]` must be empty.
    pub fn new(
        field: FieldTag,
        dims: Vec<usize>,
        faces: Vec<Vec<SparseMatrix>>,
        degeneracies: Vec<Vec<SparseMatrix>>,
        cyclic: Vec<SparseMatrix>,
    ) -> Result<Self, SimplicialError> {
        let levels = dims.len();
        if levels == 0 || faces.len() != levels || degeneracies.len() != levels || cyclic.len() != levels {
            return Err(SimplicialError::ShapeMismatch("per-degree lists differ in length".into()));
        }
        for n in 0..levels {
            let nf = if n == 0 { 0 } else { n + 1 };
            let ns = if n + 1 == levels { 0 } else { n + 1 };
            if faces[n].len() != nf || degeneracies[n].len() != ns {
                return Err(SimplicialError::ShapeMismatch(format!("wrong operator count in degree {n}")));
            }
            for (i, d) in faces[n].iter().enumerate() {
                check_shape(d, dims[n - 1], dims[n], format!("d_{i} in degree {n}"))?;
            }
            for (j, s) in degeneracies[n].iter().enumerate() {
                check_shape(s, dims[n + 1], dims[n], format!("s_{j} in degree {n}"))?;
            }
            check_shape(&cyclic[n], dims[n], dims[n], format!("t_{n}"))?;
        }
        Ok(CyclicModuleData {
            field,
            dims,
            faces,
            degeneracies,
            cyclic,
        })
    }

    /// The module with all spaces zero.
    pub fn trivial(field: FieldTag, max_degree: usize) -> Self {
        let z = SparseMatrix::zeros(field, 0, 0);
        let levels = max_degree + 1;
        Self::new(
            field,
            vec![0; levels],
            (0..levels).map(|n| vec![z.clone(); if n == 0 { 0 } else { n + 1 }]).collect(),
            (0..levels).map(|n| vec![z.clone(); if n + 1 == levels { 0 } else { n + 1 }]).collect(),
            vec![z; levels],
        )
        .expect("zero module")
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn face(&self, n: usize, i: usize) -> &SparseMatrix {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &SparseMatrix {
        &self.degeneracies[n][j]
    }

    pub fn cyclic(&self, n: usize) -> &SparseMatrix {
        &self.cyclic[n]
    }

    /// Replaces `t_n`; used to build counterexamples.
    pub fn set_cyclic(&mut self, n: usize, t: SparseMatrix) -> Result<(), SimplicialError> {
        check_shape(&t, self.dims[n], self.dims[n], format!("t_{n}"))?;
        self.cyclic[n] = t;
        Ok(())
    }
}

/// A cyclic module together with reflections `r_n: C_n → C_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DihedralModuleData {
    cyclic: CyclicModuleData,
    reflections: Vec<SparseMatrix>,
}

impl DihedralModuleData {
    pub fn new(cyclic: CyclicModuleData, reflections: Vec<SparseMatrix>) -> Result<Self, SimplicialError> {
        if reflections.len() != cyclic.dims.len() {
            return Err(SimplicialError::ShapeMismatch("one reflection per degree required".into()));
        }
        for (n, r) in reflections.iter().enumerate() {
            check_shape(r, cyclic.dims[n], cyclic.dims[n], format!("r_{n}"))?;
        }
        Ok(DihedralModuleData { cyclic, reflections })
    }

    pub fn cyclic_data(&self) -> &CyclicModuleData {
        &self.cyclic
    }

    pub fn reflection(&self, n: usize) -> &SparseMatrix {
        &self.reflections[n]
    }

    pub fn set_reflection(&mut self, n: usize, r: SparseMatrix) -> Result<(), SimplicialError> {
        let d = self.cyclic.dims[n];
        check_shape(&r, d, d, format!("r_{n}"))?;
        self.reflections[n] = r;
        Ok(())
    }
}

/// Checks the simplicial identities and
/// `d_i t_n = t_{n−1} d_{i−1}` (1 ≤ i ≤ n), `d_0 t_n = d_n`,
/// `s_i t_n = t_{n+1} s_{i−1}` (1 ≤ i ≤ n), `s_0 t_n = t_{n+1}² s_n`,
/// `t_n^{n+1} = id`, in every degree where all terms are defined.
pub fn check_cyclic_module(data: &CyclicModuleData) -> ValidationReport {
    let mut report = ValidationReport::new();
    let top = data.max_degree();
    let d = |n: usize, i: usize| &data.faces[n][i];
    let s = |n: usize, j: usize| &data.degeneracies[n][j];
    let t = |n: usize| &data.cyclic[n];

    for n in 0..=top {
        let loc = format!("degree {n}");
        // Simplicial identities with source C_n.
        if n >= 2 {
            for j in 1..=n {
                for i in 0..j {
                    report.require(
                        d(n - 1, i).mul(d(n, j)) == d(n - 1, j - 1).mul(d(n, i)),
                        format!("d_{i} d_{j} = d_{} d_{i}", j - 1),
                        loc.clone(),
                    );
                }
            }
        }
        if n + 2 <= top {
            for j in 0..=n {
                for i in 0..=j {
                    report.require(
                        s(n + 1, i).mul(s(n, j)) == s(n + 1, j + 1).mul(s(n, i)),
                        format!("s_{i} s_{j} = s_{} s_{i}", j + 1),
                        loc.clone(),
                    );
                }
            }
        }
        if n < top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let left = d(n + 1, i).mul(s(n, j));
                    let (ok, rel) = if i < j {
                        (left == s(n - 1, j - 1).mul(d(n, i)), format!("d_{i} s_{j} = s_{} d_{i}", j - 1))
                    } else if i == j || i == j + 1 {
                        (left.is_identity(), format!("d_{i} s_{j} = id"))
                    } else {
                        (left == s(n - 1, j).mul(d(n, i - 1)), format!("d_{i} s_{j} = s_{j} d_{}", i - 1))
                    };
                    report.require(ok, rel, loc.clone());
                }
            }
        }

        // Cyclic relations.
        report.require(t(n).pow(n as u32 + 1).is_identity(), format!("t_{n}^{} = id", n + 1), loc.clone());
        if n >= 1 {
            report.require(d(n, 0).mul(t(n)) == *d(n, n), format!("d_0 t_{n} = d_{n}"), loc.clone());
            for i in 1..=n {
                report.require(
                    d(n, i).mul(t(n)) == t(n - 1).mul(d(n, i - 1)),
                    format!("d_{i} t_{n} = t_{} d_{}", n - 1, i - 1),
                    loc.clone(),
                );
            }
        }
        if n < top {
            let t_up = t(n + 1);
            report.require(
                s(n, 0).mul(t(n)) == t_up.mul(t_up).mul(s(n, n)),
                format!("s_0 t_{n} = t_{}^2 s_{n}", n + 1),
                loc.clone(),
            );
            for i in 1..=n {
                report.require(
                    s(n, i).mul(t(n)) == t_up.mul(s(n, i - 1)),
                    format!("s_{i} t_{n} = t_{} s_{}", n + 1, i - 1),
                    loc.clone(),
                );
            }
        }
    }
    report
}

/// Checks the cyclic relations plus `r_n² = id`, `r_n t_n r_n = t_n^{-1}`,
/// `d_i r_n = r_{n−1} d_{n−i}` and `s_i r_n = r_{n+1} s_{n−i}`.
pub fn check_dihedral_module(data: &DihedralModuleData) -> ValidationReport {
    let mut report = check_cyclic_module(&data.cyclic);
    let c = &data.cyclic;
    let r = |n: usize| &data.reflections[n];
    let top = c.max_degree();
    for n in 0..=top {
        let loc = format!("degree {n}");
        let rn = r(n);
        report.require(rn.mul(rn).is_identity(), format!("r_{n}^2 = id"), loc.clone());
        report.require(
            rn.mul(c.cyclic(n)).mul(rn) == c.cyclic(n).pow(n as u32),
            format!("r_{n} t_{n} r_{n} = t_{n}^-1"),
            loc.clone(),
        );
        if n >= 1 {
            for i in 0..=n {
                report.require(
                    c.face(n, i).mul(rn) == r(n - 1).mul(c.face(n, n - i)),
                    format!("d_{i} r_{n} = r_{} d_{}", n - 1, n - i),
                    loc.clone(),
                );
            }
        }
        if n < top {
            for i in 0..=n {
                report.require(
                    c.degeneracy(n, i).mul(rn) == r(n + 1).mul(c.degeneracy(n, n - i)),
                    format!("s_{i} r_{n} = r_{} s_{}", n + 1, n - i),
                    loc.clone(),
                );
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn tau_values_and_order() {
        assert_eq!(LambdaMorphism::tau(2).values(), &[1, 2, 3]);
        assert_eq!(LambdaMorphism::tau(0), LambdaMorphism::identity(0));
        let t1 = LambdaMorphism::tau(1);
        assert_eq!(t1.compose(&t1).unwrap(), LambdaMorphism::identity(1));
        let t2 = LambdaMorphism::tau(2);
        assert_eq!(t2.compose(&t2).unwrap().compose(&t2).unwrap(), LambdaMorphism::identity(2));
        for n in 0..7 {
            let t = LambdaMorphism::tau(n);
            let mut p = LambdaMorphism::identity(n);
            for k in 1..=n + 1 {
                p = t.compose(&p).unwrap();
                assert_eq!(p == LambdaMorphism::identity(n), k == n + 1, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn cofaces_satisfy_simplicial_identity() {
        let lhs = LambdaMorphism::face(2, 1).unwrap().compose(&LambdaMorphism::face(1, 0).unwrap()).unwrap();
        let rhs = LambdaMorphism::face(2, 0).unwrap().compose(&LambdaMorphism::face(1, 0).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(matches!(LambdaMorphism::face(2, 3), Err(SimplicialError::IndexOutOfRange { .. })));
        assert!(LambdaMorphism::face(0, 0).is_err());
        assert!(LambdaMorphism::degeneracy(1, 2).is_err());
    }

    #[test]
    fn reversal_inverts_tau() {
        for n in 0..6 {
            let t = LambdaMorphism::tau(n);
            assert_eq!(t.reversal(), LambdaMorphism::tau_pow(n, n as i64));
            assert_eq!(t.reversal().compose(&t).unwrap(), LambdaMorphism::identity(n));
            assert_eq!(LambdaMorphism::identity(n).reversal(), LambdaMorphism::identity(n));
        }
    }

    #[test]
    fn reversal_maps_faces_to_reversed_faces() {
        for n in 1..5 {
            for i in 0..=n {
                let f = LambdaMorphism::face(n, i).unwrap();
                assert_eq!(f.reversal(), LambdaMorphism::face(n, n - i).unwrap());
            }
        }
    }

    #[test]
    fn normal_form_examples() {
        let (k, g) = LambdaMorphism::tau(2).normal_form();
        assert_eq!((k, g), (1, LambdaMorphism::identity(2)));
        let d = LambdaMorphism::face(3, 1).unwrap();
        assert_eq!(d.normal_form(), (0, d.clone()));
    }

    #[test]
    fn enumeration_counts_and_unique_factorization() {
        for n in 0..=3 {
            for m in 0..=3 {
                let all = LambdaMorphism::enumerate(n, m);
                let expected = (n as u64 + 1) * binom((m + n + 1) as u64, (n + 1) as u64);
                assert_eq!(all.len() as u64, expected, "n={n} m={m}");
                let simplicial = all.iter().filter(|f| f.is_simplicial()).count() as u64;
                assert_eq!(simplicial, binom((m + n + 1) as u64, (n + 1) as u64));
                let mut seen = std::collections::HashSet::new();
                for f in &all {
                    let (k, g) = f.normal_form();
                    let back = g.compose(&LambdaMorphism::tau_pow(n, k as i64)).unwrap();
                    assert_eq!(&back, f);
                    let hits = (0..=n)
                        .filter(|&j| {
                            let v = (0..=n as i64).map(|i| f.eval(i - j as i64)).collect();
                            LambdaMorphism::new(n, m, v).unwrap().is_simplicial()
                        })
                        .count();
                    assert_eq!(hits, 1);
                    assert!(seen.insert((k, g)));
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let f: LambdaMorphism = "2 3: 1 2 4".parse().unwrap();
        assert_eq!(f.to_string(), "2 3: 1 2 4");
        assert_eq!("2 1: 5 6 7".parse::<LambdaMorphism>().unwrap().values(), &[1, 2, 3]);
        assert!("2 3: 3 2 1".parse::<LambdaMorphism>().is_err());
        assert!("2: 1".parse::<LambdaMorphism>().is_err());
        assert!("1 1: 0 5".parse::<LambdaMorphism>().is_err());
    }

    #[test]
    fn dihedral_composition() {
        let r = DihedralMorphism::reflection(3);
        assert_eq!(r.compose(&r).unwrap(), DihedralMorphism::identity(3));
        let t = DihedralMorphism {
            lambda_part: LambdaMorphism::tau(3),
            flip: false,
        };
        let rtr = r.compose(&t).unwrap().compose(&r).unwrap();
        assert_eq!(rtr.lambda_part, LambdaMorphism::tau_pow(3, -1));
        assert!(!rtr.flip);
    }

    #[test]
    fn trivial_module_is_valid() {
        let data = CyclicModuleData::trivial(FieldTag::Rationals, 3);
        assert!(check_cyclic_module(&data).is_valid());
        let refl = vec![SparseMatrix::zeros(FieldTag::Rationals, 0, 0); 4];
        assert!(check_dihedral_module(&DihedralModuleData::new(data, refl).unwrap()).is_valid());
    }

    fn morphism(max_dim: usize) -> impl Strategy<Value = (usize, usize)> {
        (0..=max_dim, 0..=max_dim)
    }

    fn lambda(n: usize, m: usize) -> impl Strategy<Value = LambdaMorphism> {
        let hi = m as i64 + 1;
        (0..=m as i64, proptest::collection::vec(0..=hi, n)).prop_map(move |(f0, mut rest)| {
            rest.sort_unstable();
            let mut values = vec![f0];
            values.extend(rest.into_iter().map(|v| v + f0));
            LambdaMorphism::new(n, m, values).unwrap()
        })
    }

    proptest! {
        #[test]
        fn composition_is_associative(dims in (0..=6usize, 0..=6usize, 0..=6usize, 0..=6usize)
            .prop_flat_map(|(a, b, c, d)| (lambda(a, b), lambda(b, c), lambda(c, d))))
        {
            let (f, g, h) = dims;
            let left = h.compose(&g).unwrap().compose(&f).unwrap();
            let right = h.compose(&g.compose(&f).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn identities_are_neutral(f in morphism(6).prop_flat_map(|(n, m)| lambda(n, m))) {
            prop_assert_eq!(LambdaMorphism::identity(f.tgt()).compose(&f).unwrap(), f.clone());
            prop_assert_eq!(f.compose(&LambdaMorphism::identity(f.src())).unwrap(), f.clone());
        }

        #[test]
        fn reversal_is_an_involutive_functor(pair in (0..=6usize, 0..=6usize, 0..=6usize)
            .prop_flat_map(|(a, b, c)| (lambda(a, b), lambda(b, c))))
        {
            let (f, g) = pair;
            prop_assert_eq!(f.reversal().reversal(), f.clone());
            prop_assert_eq!(g.compose(&f).unwrap().reversal(), g.reversal().compose(&f.reversal()).unwrap());
        }

        #[test]
        fn normal_form_reassembles(f in morphism(6).prop_flat_map(|(n, m)| lambda(n, m))) {
            let (k, g) = f.normal_form();
            prop_assert!(k <= f.src());
            prop_assert!(g.is_simplicial());
            prop_assert_eq!(g.compose(&LambdaMorphism::tau_pow(f.src(), k as i64)).unwrap(), f);
        }

        #[test]
        fn dihedral_composition_is_associative(triple in (0..=4usize, 0..=4usize, 0..=4usize, 0..=4usize)
            .prop_flat_map(|(a, b, c, d)| (lambda(a, b), lambda(b, c), lambda(c, d), any::<[bool; 3]>())))
        {
            let (f, g, h, flips) = triple;
            let f = DihedralMorphism { lambda_part: f, flip: flips[0] };
            let g = DihedralMorphism { lambda_part: g, flip: flips[1] };
            let h = DihedralMorphism { lambda_part: h, flip: flips[2] };
            let left = h.compose(&g).unwrap().compose(&f).unwrap();
            let right = h.compose(&g.compose(&f).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}

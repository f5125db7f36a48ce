use thiserror::Error;

use super::{mul_vec, Algebra, AlgebraParts};
use crate::exactlin::SparseVec;
use crate::field::{FieldTag, Scalar};
use crate::report::ValidationReport;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CategoryError {
    #[error("malformed category data: {0}")]
    Malformed(String),
    #[error("category axioms violated:\n{0}")]
    AxiomViolation(ValidationReport),
}

/// A linear category with finitely many objects and finite-dimensional hom
/// spaces, given by bases and composition constants.
///
/// `hom_dims[x][y]` is `dim C(x, y)` (morphisms `x → y`).
/// `compose(x, y, z)[g][f]` is `g ∘ f ∈ C(x, z)` for `f ∈ C(x, y)`,
/// `g ∈ C(y, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PresentedCategory {
    field: FieldTag,
    objects: Vec<String>,
    hom_dims: Vec<Vec<usize>>,
    composition: Vec<Vec<Vec<SparseVec>>>,
    identities: Vec<SparseVec>,
}

impl PresentedCategory {
    /// `composition` is indexed by `(x n + y) n + z`.
    pub fn new(
        field: FieldTag,
        objects: Vec<String>,
        hom_dims: Vec<Vec<usize>>,
        composition: Vec<Vec<Vec<SparseVec>>>,
        identities: Vec<SparseVec>,
    ) -> Result<Self, CategoryError> {
        let n = objects.len();
        let malformed = |m: &str| Err(CategoryError::Malformed(m.to_string()));
        if n == 0 {
            return malformed("no objects");
        }
        if hom_dims.len() != n || hom_dims.iter().any(|r| r.len() != n) {
            return malformed("hom_dims must be objects x objects");
        }
        if identities.len() != n || composition.len() != n * n * n {
            return malformed("wrong number of identities or composition tensors");
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t = &composition[(x * n + y) * n + z];
                    if t.len() != hom_dims[y][z] || t.iter().any(|r| r.len() != hom_dims[x][y]) {
                        return malformed(&format!("composition ({x},{y},{z}) has wrong shape"));
                    }
                    if t.iter().flatten().flatten().any(|(k, _)| *k >= hom_dims[x][z]) {
                        return malformed(&format!("composition ({x},{y},{z}) out of range"));
                    }
                }
            }
            if identities[x].iter().any(|(k, _)| *k >= hom_dims[x][x]) {
                return malformed(&format!("identity of object {x} out of range"));
            }
        }
        let cat = PresentedCategory {
            field,
            objects,
            hom_dims,
            composition,
            identities,
        };
        let report = cat.check();
        if !report.is_valid() {
            return Err(CategoryError::AxiomViolation(report));
        }
        Ok(cat)
    }

    /// `k` objects, every hom space equal to `a`, composition the product of
    /// `a`. Equivalent to the one-object category of `a` (all objects are
    /// isomorphic through the unit).
    pub fn replicated(a: &Algebra, k: usize) -> Self {
        assert!(k >= 1);
        let d = a.dim();
        let mu: Vec<Vec<SparseVec>> = (0..d).map(|i| (0..d).map(|j| a.mul_basis(i, j).clone()).collect()).collect();
        let objects = if k == 1 { vec!["X".to_string()] } else { (0..k).map(|i| format!("X{i}")).collect() };
        PresentedCategory::new(
            a.field(),
            objects,
            vec![vec![d; k]; k],
            vec![mu; k * k * k],
            vec![a.unit().clone(); k],
        )
        .expect("replicated algebra is a category")
    }

    /// The algebra viewed as a category with one object.
    pub fn from_algebra(a: &Algebra) -> Self {
        Self::replicated(a, 1)
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.hom_dims[x][y]
    }

    pub fn identity(&self, x: usize) -> &SparseVec {
        &self.identities[x]
    }

    /// Basis constants of `C(y, z) ⊗ C(x, y) → C(x, z)`.
    pub fn compose_tensor(&self, x: usize, y: usize, z: usize) -> &[Vec<SparseVec>] {
        let n = self.num_objects();
        &self.composition[(x * n + y) * n + z]
    }

    /// `g ∘ f` for `f ∈ C(x, y)` and `g ∈ C(y, z)`.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: &[(usize, Scalar)], f: &[(usize, Scalar)]) -> SparseVec {
        mul_vec(self.field, self.compose_tensor(x, y, z), g, f)
    }

    /// Associativity and unit laws on all basis triples.
    pub fn check(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.num_objects();
        let one = self.field.one();
        let e = |i: usize| vec![(i, one.clone())];
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        // f: w→x, g: x→y, h: y→z.
                        for f in 0..self.hom_dims[w][x] {
                            for g in 0..self.hom_dims[x][y] {
                                let gf = self.compose(w, x, y, &e(g), &e(f));
                                for h in 0..self.hom_dims[y][z] {
                                    let hg = self.compose(x, y, z, &e(h), &e(g));
                                    let left = self.compose(w, y, z, &e(h), &gf);
                                    let right = self.compose(w, x, z, &hg, &e(f));
                                    report.require(
                                        left == right,
                                        "composition associativity",
                                        format!("objects ({w},{x},{y},{z}) morphisms ({f},{g},{h})"),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for f in 0..self.hom_dims[x][y] {
                    report.require(
                        self.compose(x, y, y, &self.identities[y], &e(f)) == e(f),
                        "left identity",
                        format!("object {y} morphism {f}"),
                    );
                    report.require(
                        self.compose(x, x, y, &e(f), &self.identities[x]) == e(f),
                        "right identity",
                        format!("object {x} morphism {f}"),
                    );
                }
            }
        }
        report
    }

    /// The algebra `⊕_{x,y} C(x, y)` with product `g · f = g ∘ f` when
    /// composable and zero otherwise.
    pub fn total_algebra(&self) -> Algebra {
        let n = self.num_objects();
        let mut offset = vec![vec![0usize; n]; n];
        let mut basis = Vec::new();
        for x in 0..n {
            for y in 0..n {
                offset[x][y] = basis.len();
                for i in 0..self.hom_dims[x][y] {
                    basis.push(format!("{}→{}#{}", self.objects[x], self.objects[y], i));
                }
            }
        }
        let dim = basis.len();
        let mut mu = vec![vec![Vec::new(); dim]; dim];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t = self.compose_tensor(x, y, z);
                    for (g, row) in t.iter().enumerate() {
                        for (f, v) in row.iter().enumerate() {
                            mu[offset[y][z] + g][offset[x][y] + f] =
                                v.iter().map(|(k, c)| (offset[x][z] + k, c.clone())).collect();
                        }
                    }
                }
            }
        }
        let mut unit: SparseVec = (0..n)
            .flat_map(|x| {
                let o = offset[x][x];
                self.identities[x].iter().map(move |(k, c)| (o + k, c.clone()))
            })
            .collect();
        unit.sort_by_key(|(k, _)| *k);
        Algebra::new(AlgebraParts {
            field: self.field,
            basis,
            mu,
            unit,
            hopf: None,
            involution: None,
            ribbon: None,
        })
        .expect("total algebra of a category is an algebra")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Objects 1, 2 with identities and one arrow 1 → 2.
    pub(crate) fn a2_quiver() -> PresentedCategory {
        let q = FieldTag::Rationals;
        let one = q.one();
        let e = |i: usize| vec![(i, one.clone())];
        let hom = vec![vec![1, 1], vec![0, 1]];
        let n = 2;
        let mut comp = vec![Vec::new(); 8];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t: Vec<Vec<SparseVec>> = (0..hom[y][z])
                        .map(|_| (0..hom[x][y]).map(|_| e(0)).collect())
                        .collect();
                    comp[(x * n + y) * n + z] = t;
                }
            }
        }
        PresentedCategory::new(q, vec!["1".into(), "2".into()], hom, comp, vec![e(0), e(0)]).unwrap()
    }

    #[test]
    fn quiver_category_is_valid() {
        let c = a2_quiver();
        assert!(c.check().is_valid());
        let t = c.total_algebra();
        assert_eq!(t.dim(), 3);
        assert!(!t.is_commutative());
    }

    #[test]
    fn replicated_total_algebra_is_matrix_algebra_sized() {
        let a = Algebra::ground_field(FieldTag::Rationals);
        let c = PresentedCategory::replicated(&a, 2);
        assert_eq!(c.total_algebra().dim(), 4);
    }

    #[test]
    fn bad_identity_is_reported() {
        let q = FieldTag::Rationals;
        let two = vec![(0, q.from_i64(2))];
        let err = PresentedCategory::new(q, vec!["X".into()], vec![vec![1]], vec![vec![vec![two.clone()]]], vec![two]);
        // 2 * 2 = 2 fails, and 2 is not an identity for e0 * e0 = 2 e0.
        assert!(matches!(err, Err(CategoryError::AxiomViolation(_))));
    }
}

//! Exact Hochschild, cyclic and dihedral homology of finite-dimensional
//! algebras and small linear categories, with the action of the handlebody
//! mapping class group (Dehn twist through a ribbon element, reflection
//! through an anti-involution) and an exact model of the diffeomorphism
//! group of the solid torus.
//!
//! Module map:
//!
//! * [`field`], [`exactlin`]: exact scalars and sparse linear algebra.
//! * [`algebra`]: algebras, Hopf data, group algebras, Drinfeld doubles,
//!   presented linear categories, the coadjoint module.
//! * [`simplicial`]: the cyclic category, its reversal functor and validators
//!   for cyclic and dihedral modules.
//! * [`hochschild`]: Hochschild cyclic modules, HH/HC/HD, twist and reflection
//!   actions.
//! * [`torusdiff`]: the group `(S^1 x Z) x| (S^1 x| Z_2)` and its SL(2,Z) image.
//! * [`specfile`]: the JSON spec-file formats for algebras and groups.
//! * [`fixtures`]: named example algebras.

pub mod algebra;
pub mod exactlin;
pub mod field;
pub mod fixtures;
pub mod hochschild;
pub mod report;
pub mod simplicial;
pub mod specfile;
pub mod torusdiff;

pub use algebra::{Algebra, AlgebraParts, FiniteGroup, PresentedCategory};
pub use exactlin::{SparseMatrix, SparseVec};
pub use field::{FieldTag, Scalar};
pub use report::{ValidationReport, Violation};

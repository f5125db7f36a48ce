//! Shared inputs for the benchmarks in `benches/`.

use hochcyc_core::algebra::RibbonConvention;
use hochcyc_core::fixtures::fixture;
use hochcyc_core::hochschild::{hochschild_cyclic_module, HochschildComplexBundle};
use hochcyc_core::{Algebra, FieldTag};

/// A named fixture over ℚ with the default ribbon convention.
pub fn algebra(name: &str) -> Algebra {
    fixture(name, FieldTag::Rationals, RibbonConvention::VInv)
        .expect("fixture builds")
        .expect("known fixture")
}

/// The cyclic module of a named fixture through degree `top`.
pub fn bundle(name: &str, top: usize) -> HochschildComplexBundle {
    hochschild_cyclic_module(&algebra(name), top).expect("bundle fits the default bound")
}

//! Named example algebras.
//!
//! Group algebras carry the anti-involution `g ↦ g^{-1}` and the trivial
//! ribbon element; Drinfeld doubles carry their antipode as anti-involution
//! and the ribbon element of the chosen convention. The `-trivial-ribbon`
//! twins have the same linear data with `v = 1`.

use crate::algebra::{drinfeld_double, group_algebra, with_trivial_ribbon, AlgebraError, FiniteGroup, RibbonConvention};
use crate::field::FieldTag;
use crate::Algebra;

pub const FIXTURE_NAMES: [&str; 8] = [
    "Q",
    "Q[Z2]",
    "Q[Z3]",
    "Q[S3]",
    "D(Z2)",
    "D(S3)",
    "D(Z2)-trivial-ribbon",
    "D(S3)-trivial-ribbon",
];

/// Builds a named fixture over `field`. The leading `Q` of a name refers to
/// the ground field, so `Q[Z2]` over `Fp:3` is `F_3[Z2]`.
pub fn fixture(name: &str, field: FieldTag, convention: RibbonConvention) -> Result<Option<Algebra>, AlgebraError> {
    let group = |n: &str| match n {
        "Z2" => Some(FiniteGroup::cyclic(2)),
        "Z3" => Some(FiniteGroup::cyclic(3)),
        "S3" => Some(FiniteGroup::symmetric(3)),
        _ => None,
    };
    if name == "Q" {
        return Ok(Some(Algebra::ground_field(field)));
    }
    if let Some(g) = name.strip_prefix("Q[").and_then(|r| r.strip_suffix(']')).and_then(group) {
        return Ok(Some(with_trivial_ribbon(&group_algebra(&g, field)?)));
    }
    let (base, twin) = match name.strip_suffix("-trivial-ribbon") {
        Some(b) => (b, true),
        None => (name, false),
    };
    if let Some(g) = base.strip_prefix("D(").and_then(|r| r.strip_suffix(')')).and_then(group) {
        let d = drinfeld_double(&g, field, convention)?;
        return Ok(Some(if twin { with_trivial_ribbon(&d) } else { d }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_builds() {
        for name in FIXTURE_NAMES {
            let a = fixture(name, FieldTag::Rationals, RibbonConvention::VInv).unwrap().unwrap();
            assert!(a.ribbon().is_some() && a.involution().is_some(), "{name}");
        }
        assert!(fixture("Q[Z5]", FieldTag::Rationals, RibbonConvention::VInv).unwrap().is_none());
    }
}

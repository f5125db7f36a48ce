use std::fs;

use hochcyc_core::algebra::{drinfeld_double, group_algebra, with_trivial_ribbon, FiniteGroup, RibbonConvention};
use hochcyc_core::fixtures::{fixture, FIXTURE_NAMES};
use hochcyc_core::specfile::{parse_spec, AlgebraSpec, SpecFile};
use hochcyc_core::{Algebra, AlgebraParts, FieldTag};

use crate::args::{GlobalArgs, RibbonFlag};
use crate::error::CliError;

/// An input after parsing, before validation.
pub enum Loaded {
    Parts(AlgebraParts),
    Group(FiniteGroup, FieldTag),
}

pub fn field_override(g: &GlobalArgs) -> Result<Option<FieldTag>, CliError> {
    g.field
        .as_deref()
        .map(|s| s.parse::<FieldTag>().map_err(|e| CliError::Usage(e.to_string())))
        .transpose()
}

pub fn convention(g: &GlobalArgs) -> RibbonConvention {
    match g.ribbon_convention {
        RibbonFlag::V => RibbonConvention::V,
        RibbonFlag::VInv => RibbonConvention::VInv,
    }
}

fn fixture_group_order(name: &str) -> Option<usize> {
    ["Z2", "Z3", "S3"]
        .iter()
        .zip([2, 3, 6])
        .find(|(g, _)| name.contains(*g))
        .map(|(_, n)| n)
}

fn warn_modular(field: FieldTag, order: usize) {
    let p = field.characteristic() as usize;
    if p != 0 && order % p == 0 {
        eprintln!("warning: characteristic {p} divides |G| = {order}; the algebra is not semisimple");
    }
}

/// Reads `fixture:NAME` or a spec file without validating the algebra axioms.
pub fn load(input: &str, g: &GlobalArgs) -> Result<Loaded, CliError> {
    let over = field_override(g)?;
    if let Some(name) = input.strip_prefix("fixture:") {
        let field = over.unwrap_or_default();
        let a = fixture(name, field, convention(g))
            .map_err(|e| CliError::Math(e.to_string()))?
            .ok_or_else(|| CliError::Usage(format!("unknown fixture `{name}`; known: {}", FIXTURE_NAMES.join(", "))))?;
        if let Some(order) = fixture_group_order(name) {
            warn_modular(field, order);
        }
        return Ok(Loaded::Parts(a.to_parts()));
    }
    let text = fs::read_to_string(input).map_err(|e| CliError::Usage(format!("{input}: {e}")))?;
    match parse_spec(&text)? {
        SpecFile::Algebra(mut spec) => {
            if let Some(f) = over {
                if f != spec.field {
                    // Reparse the coefficients in the requested field.
                    spec.field = f;
                }
            }
            Ok(Loaded::Parts(spec.to_parts()?))
        }
        SpecFile::Group(spec) => {
            let group = spec.to_group()?;
            Ok(Loaded::Group(group, over.unwrap_or_default()))
        }
    }
}

/// Reads and validates an input as an algebra.
pub fn load_algebra(input: &str, g: &GlobalArgs) -> Result<Algebra, CliError> {
    match load(input, g)? {
        Loaded::Parts(parts) => Ok(Algebra::new(parts)?),
        Loaded::Group(group, field) => {
            warn_modular(field, group.order());
            let a = if g.double {
                drinfeld_double(&group, field, convention(g))?
            } else {
                with_trivial_ribbon(&group_algebra(&group, field)?)
            };
            Ok(a)
        }
    }
}

pub fn export(a: &Algebra) -> String {
    AlgebraSpec::from_algebra(a).to_json()
}

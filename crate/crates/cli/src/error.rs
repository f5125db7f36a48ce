use hochcyc_core::algebra::AlgebraError;
use hochcyc_core::hochschild::HochschildError;
use hochcyc_core::specfile::SpecError;
use hochcyc_core::torusdiff::TorusError;

/// A failed job, classified by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit 1: an axiom or relation does not hold.
    Math(String),
    /// Exit 2: bad arguments, unreadable input, unmet preconditions.
    Usage(String),
    /// Exit 3: a size bound was hit.
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Math(m) | CliError::Usage(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Malformed(_) | AlgebraError::ZeroDimension => CliError::Usage(e.to_string()),
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Syntax(_) | SpecError::Shape(_) => CliError::Usage(e.to_string()),
            SpecError::Algebra(a) => a.into(),
            SpecError::Group(_) => CliError::Math(e.to_string()),
        }
    }
}

impl From<HochschildError> for CliError {
    fn from(e: HochschildError) -> Self {
        use HochschildError::*;
        match e {
            SizeBound { .. } => CliError::Resource(format!("{e}; raise --max-cells together with --accept-large")),
            RibbonMissing | DihedralMissing | CharNotZero(_) | DegreeOutOfRange { .. } | FieldMismatch(..) | LegCount { .. } => {
                CliError::Usage(e.to_string())
            }
            InvolutionInvalid(_) | NotChainMap(_) | LinAlg(_) | Simplicial(_) => CliError::Math(e.to_string()),
        }
    }
}

impl From<TorusError> for CliError {
    fn from(e: TorusError) -> Self {
        CliError::Usage(e.to_string())
    }
}

use clap::{Args, Parser, Subcommand, ValueEnum};
use hochcyc_core::hochschild::DEFAULT_MAX_CELLS;

/// Exact Hochschild, cyclic and dihedral homology of finite-dimensional
/// algebras, and the mapping class group action of the solid torus.
///
/// INPUT is a JSON spec file or `fixture:NAME` with NAME one of
/// Q, Q[Z2], Q[Z3], Q[S3], D(Z2), D(S3), D(Z2)-trivial-ribbon,
/// D(S3)-trivial-ribbon.
#[derive(Debug, Parser)]
#[command(name = "hochcyc", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Ground field `Q` or `Fp:<p>`; defaults to the spec's field.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Highest homological degree reported.
    #[arg(long, global = true, default_value_t = 2)]
    pub max_degree: usize,
    /// Which central element of D(G) is the diagonal sum Σ δ_g ⊗ g.
    #[arg(long, global = true, value_enum, default_value_t = RibbonFlag::VInv)]
    pub ribbon_convention: RibbonFlag,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest admissible chain-space dimension.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CELLS)]
    pub max_cells: usize,
    /// Required to raise --max-cells above its default.
    #[arg(long, global = true)]
    pub accept_large: bool,
    /// Build the Drinfeld double instead of the group algebra from a group spec.
    #[arg(long, global = true)]
    pub double: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RibbonFlag {
    /// v = Σ δ_g ⊗ g.
    V,
    /// v^{-1} = Σ δ_g ⊗ g.
    VInv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate every axiom of a spec.
    Check { input: String },
    /// Hochschild homology dimensions.
    Hh { input: String },
    /// Cyclic homology dimensions (characteristic 0).
    Hc { input: String },
    /// Dihedral homology dimensions (characteristic 0, needs an involution).
    Hd { input: String },
    /// Dehn twist and reflection on Hochschild homology.
    Action { input: String },
    /// Decide whether the actions on two inputs can be told apart.
    Compare { left: String, right: String },
    /// Arithmetic in the diffeomorphism group of the solid torus.
    Torus {
        #[command(subcommand)]
        op: TorusOp,
    },
    /// Print the algebra spec of an input as JSON.
    Export { input: String },
}

/// Elements are written `(a=p/q, n=k; x=r/s, eps=±1)`, or `T`, `R`, `id`.
#[derive(Debug, Subcommand)]
pub enum TorusOp {
    Mul { left: String, right: String },
    Inv { element: String },
    Pi0 { element: String },
    /// Randomized group-law check plus the SL(2,Z) and section checks.
    Selfcheck {
        #[arg(long, default_value_t = 10_000)]
        n: usize,
    },
}

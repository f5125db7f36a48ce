use rayon::prelude::*;

use super::{HochschildComplexBundle, HochschildError};
use crate::exactlin::{homology_basis, homology_dim, rank, LinAlgError, QuotientSpace, SparseMatrix, SparseVec};

/// `dim HH_n` for `0 ≤ n ≤ through_degree`; needs the bundle through
/// `through_degree + 1`.
pub fn hh(bundle: &HochschildComplexBundle, through_degree: usize) -> Result<Vec<usize>, HochschildError> {
    bundle.check_degree(through_degree, through_degree + 1)?;
    let dims: Result<Vec<usize>, LinAlgError> = (0..=through_degree)
        .into_par_iter()
        .map(|n| homology_dim(bundle.b(n + 1), bundle.b(n)))
        .collect();
    Ok(dims?)
}

/// Cycle representatives of a basis of `HH_n`, as columns.
pub fn hh_basis(bundle: &HochschildComplexBundle, n: usize) -> Result<SparseMatrix, HochschildError> {
    bundle.check_degree(n, n + 1)?;
    Ok(homology_basis(bundle.b(n + 1), bundle.b(n))?)
}

/// Cyclic homology as the homology of `C_n / im(1 − t_n)`.
pub fn hc(bundle: &HochschildComplexBundle, through_degree: usize) -> Result<Vec<usize>, HochschildError> {
    bundle.require_char_zero()?;
    bundle.check_degree(through_degree, through_degree + 1)?;
    coinvariant_homology(bundle, through_degree, |n| one_minus(bundle, bundle.t(n)))
}

/// Dihedral homology as the homology of
/// `C_n / (im(1 − t_n) + im(1 − r_n))`.
pub fn hd(bundle: &HochschildComplexBundle, through_degree: usize) -> Result<Vec<usize>, HochschildError> {
    bundle.require_char_zero()?;
    if bundle.r(0).is_none() {
        return Err(HochschildError::DihedralMissing);
    }
    bundle.check_degree(through_degree, through_degree + 1)?;
    coinvariant_homology(bundle, through_degree, |n| {
        let mut gens = one_minus(bundle, bundle.t(n));
        gens.extend(one_minus(bundle, bundle.r(n).expect("dihedral data present")));
        gens
    })
}

fn one_minus(bundle: &HochschildComplexBundle, m: &SparseMatrix) -> Vec<SparseVec> {
    SparseMatrix::identity(bundle.field(), m.nrows())
        .sub(m)
        .columns()
        .into_iter()
        .filter(|c| !c.is_empty())
        .collect()
}

fn coinvariant_homology<G>(bundle: &HochschildComplexBundle, k: usize, generators: G) -> Result<Vec<usize>, HochschildError>
where
    G: Fn(usize) -> Vec<SparseVec> + Sync,
{
    let field = bundle.field();
    let quotients: Vec<QuotientSpace> = (0..=k + 1)
        .into_par_iter()
        .map(|n| QuotientSpace::new(field, bundle.chain_dim(n), generators(n)))
        .collect();
    let mut ranks = vec![0usize; k + 2];
    for n in 1..=k + 1 {
        let induced = quotients[n]
            .induced(bundle.b(n), &quotients[n - 1])
            .map_err(|e| HochschildError::NotChainMap(format!("b in degree {n}: {e}")))?;
        ranks[n] = rank(&induced);
    }
    Ok((0..=k).map(|n| quotients[n].dim() - ranks[n] - ranks[n + 1]).collect())
}

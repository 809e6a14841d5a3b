//! Group oracles: canonical forms and right multiplication by generators
//! for a family of composable finitely generated groups.

mod finite;
mod free;
mod normal_form;
mod oracle;
mod product;
mod quotient;
mod semidirect;
mod word;

pub use finite::FiniteGroup;
pub use free::{FreeAbelian, FreeGroup};
pub use normal_form::{AmalgamForm, HnnForm, NormalForm};
pub use oracle::{Group, GroupError, Oracle};
pub use product::DirectProduct;
pub use quotient::QuotientGroup;
pub use semidirect::{SemidirectFiniteByZ, SemidirectZByFinite};
pub use word::{generator_name, Gen, Word};

pub(crate) use oracle::{check_gen, malformed};

use std::sync::Arc;

pub fn free(rank: usize) -> Oracle {
    Arc::new(FreeGroup::new(rank))
}

pub fn free_abelian(rank: usize) -> Oracle {
    Arc::new(FreeAbelian::new(rank))
}

pub fn cyclic(n: usize) -> Oracle {
    Arc::new(FiniteGroup::cyclic(n))
}

pub fn product(left: Oracle, right: Oracle) -> Oracle {
    Arc::new(DirectProduct::new(left, right))
}

/// `cyclic(n) ⋊ ℤ` with `t` acting by `x ↦ x^k`.
pub fn semidirect_fz(n: usize, k: i64) -> Result<Oracle, GroupError> {
    Ok(Arc::new(SemidirectFiniteByZ::with_power(
        Arc::new(FiniteGroup::cyclic(n)),
        k,
    )?))
}

/// `ℤ ⋊ cyclic(n)` with the default sign character (the infinite dihedral
/// group for `n = 2`).
pub fn semidirect_zf(n: usize) -> Result<Oracle, GroupError> {
    let k = Arc::new(FiniteGroup::cyclic(n));
    let signs = SemidirectZByFinite::default_action(&k);
    Ok(Arc::new(SemidirectZByFinite::new(k, signs)?))
}

pub fn quotient(base: Oracle, subgroup: Vec<NormalForm>) -> Result<Oracle, GroupError> {
    Ok(Arc::new(QuotientGroup::new(base, subgroup)?))
}

//! Finite computations: the action of `⟨σ, τ⟩` on `F_p²`, the identity
//! `Σ_{u∈E} u^{pʳ−1} = Π_{u≠0} u`, and nilpotency classes of translation
//! groups `E ⋉ M`.

mod gf;
mod group;
mod perm;
mod sumprod;

use thiserror::Error;

pub use gf::{GaloisField, MAX_FIELD_ORDER};
pub use group::{
    build_em, build_g_r, check_axioms, enumerate, lower_central_series, nilpotency_class, normal_closure,
    subgroup_closure, FiniteGroup, TranslationGroup, TranslationElem, GROUP_ORDER_CAP,
};
pub use perm::{bs_action, separate, BsWord, FinitePerm, Gen};
pub use sumprod::{sum_product_check, Algebra, SumProductReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsionError {
    #[error("p = 2 is not allowed here; an odd prime is required")]
    EvenPrime,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("lower central series stabilizes at a nontrivial subgroup of order {0}")]
    NotNilpotent(usize),
    #[error("bad word token '{0}'")]
    BadWord(String),
}

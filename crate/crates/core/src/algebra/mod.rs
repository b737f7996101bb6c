//! Exact arithmetic: Eisenstein integers, integer matrices, Smith normal
//! form, linear algebra over prime fields and finite abelian groups.

mod abelian;
mod eisenstein;
mod matrix;
pub mod modp;
mod snf;

pub use abelian::{factors_from_torsion_counts, CoordinateModel, FiniteAbelianGroup};
pub use eisenstein::{EisensteinInt, Valuation};
pub use matrix::IntMatrix;
pub use modp::kernel_mod_p;
pub use snf::{smith_normal_form, SmithForm};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("cannot parse `{0}` as an Eisenstein integer")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invariant factors {0:?} do not form a divisibility chain")]
    NotAChain(Vec<u64>),
    #[error("group is infinite (free rank {0})")]
    Infinite(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

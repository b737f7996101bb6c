//! Exact verification toolkit for the Fano surface of the Fermat cubic
//! threefold, its quotient by the diagonal torsion group, Namba's
//! classification of abelian covers, the Eisenstein congruence lattice and
//! Deligne–Mostow hypergeometric data.

pub mod algebra;
pub mod dm;
pub mod fano;
pub mod namba;
pub mod picard;
pub mod surface;

pub use algebra::{EisensteinInt, FiniteAbelianGroup, IntMatrix, Valuation};

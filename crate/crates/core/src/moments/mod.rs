//! Moment calculus for V-monotone independent algebras.

pub mod clt;
pub mod mixed;
pub mod product;
pub mod space;
pub mod symbolic;

pub use clt::{clt_moment, moment_table, nk_recurrence, MomentTableEntry, NkTable};
pub use mixed::{
    free_moment_combinatorial, free_polynomial, kappa_star, kappa_star_partition,
    mixed_moment_combinatorial, mixed_moment_recursive, universal_polynomial,
    universal_polynomial_combinatorial,
};
pub use product::{product_state_moment, Grouping};
pub use space::{MatrixState, RationalMatrixState, Ring, StateSpace};
pub use symbolic::{SymPoly, SymbolicState};

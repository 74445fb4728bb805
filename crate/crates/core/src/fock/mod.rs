//! Sparse Fock spaces over valley words.
//!
//! Two bases are used. [`FockBasisIndex`] words have plain letters and carry
//! the discrete space of creation and annihilation operators. [`ProductWord`]
//! letters also record a basis vector of the letter's algebra; these span the
//! V-monotone product of finite-dimensional Hilbert spaces on which `λ̃_i` acts.

mod clt;
mod product;
mod vector;

pub use clt::{
    a_pi_moment, a_pi_operator, annihilation_sum, convergence_scan, creation_sum, epsilon_word,
    fit_decay_exponent, omega_n_moment, omega_n_moment_sparse, omega_sum, partition_from_epsilon,
    ConvergenceRow, Epsilon,
};
pub use product::{lambda_tilde, operator_moment, u_projection, ProductWord};
pub use vector::{BasisWord, FockBasisIndex, FockOperator, FockVector};

//! Dense linear-algebra substrate: matrices, symmetric eigensolver, kernels,
//! subspace arithmetic and tolerance-based PSD decisions.

pub mod eigen;
pub mod matrix;
pub mod subspace;
pub mod tolerance;

pub use eigen::{
    is_psd, kernel_basis, kernel_basis_scaled, least_squares, min_eig_sym, numerical_rank, sym_eigen, sym_pinv_apply,
    PsdVerdict, SymEigen,
};
pub use matrix::{dot, norm, Matrix};
pub use subspace::Subspace;
pub use tolerance::Tolerance;

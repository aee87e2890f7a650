//! Classification of monotone linear operators and monotone linear
//! relations into five monotone classes: paramonotone (PM), strictly
//! monotone (SM), 3-cyclic monotone (3CM), maximal monotone (MM) and
//! 3*-monotone, reported as a five-character class code in that order.
//!
//! Matrices are handled in [`operators`], graph subspaces of `R^{2d}` in
//! [`relations`]. Every verdict comes with a certificate (extreme
//! eigenvalues, kernels, Brézis–Haraux constant, negative cycles) and the
//! [`oracle`] module provides sampling-based falsifiers that share no code
//! with the decision procedures.

pub mod catalog;
pub mod code;
pub mod error;
pub mod numerics;
pub mod operators;
pub mod oracle;
pub mod products;
pub mod random;
pub mod relations;
pub mod report;

pub use code::ClassCode;
pub use error::{Error, Result};
pub use numerics::{Matrix, Subspace, Tolerance};
pub use operators::{classify, MatrixOperator};
pub use relations::{classify_relation, LinearRelation};
pub use report::{AlphaStar, ClassificationReport, CycleWitness};

//! Products `T₁ × T₂` acting on `R^{d₁} × R^{d₂}`, and the AND law their
//! class codes obey.

use crate::code::ClassCode;
use crate::numerics::{Subspace, Tolerance};
use crate::operators::MatrixOperator;
use crate::relations::LinearRelation;

/// `diag(A, B)`.
pub fn product_op(a: &MatrixOperator, b: &MatrixOperator) -> MatrixOperator {
    MatrixOperator::new(a.matrix().block_diag(b.matrix())).expect("block diagonal of square blocks")
}

/// Product relation on `R^{d_A + d_B}`. Points are laid out as
/// `(x_A, x_B, x_A*, x_B*)`: the first `d_A` coordinates of each half
/// belong to `A`.
pub fn product_relation(a: &LinearRelation, b: &LinearRelation, tol: &Tolerance) -> LinearRelation {
    let (da, db) = (a.ambient_dim(), b.ambient_dim());
    let d = da + db;
    let mut basis = Vec::with_capacity(a.graph_dim() + b.graph_dim());
    for g in a.graph().basis() {
        let mut v = vec![0.0; 2 * d];
        v[..da].copy_from_slice(&g[..da]);
        v[d..d + da].copy_from_slice(&g[da..]);
        basis.push(v);
    }
    for g in b.graph().basis() {
        let mut v = vec![0.0; 2 * d];
        v[da..d].copy_from_slice(&g[..db]);
        v[d + da..].copy_from_slice(&g[db..]);
        basis.push(v);
    }
    // The two blocks are orthogonal, so the union stays orthonormal.
    LinearRelation::from_subspace(d, Subspace::from_raw(2 * d, basis), tol).expect("dimensions add up")
}

/// Componentwise AND of the five flags.
pub fn class_and(c1: ClassCode, c2: ClassCode) -> ClassCode {
    c1.and(&c2)
}

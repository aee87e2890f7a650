//! Symmetric eigendecomposition (cyclic Jacobi), one-sided Jacobi SVD, and
//! the PSD / kernel decisions built on them.

use crate::error::Result;
use crate::numerics::matrix::{dot, Matrix};
use crate::numerics::subspace::Subspace;
use crate::numerics::tolerance::Tolerance;

/// Off-diagonal Frobenius mass, relative to the full norm, at which the
/// Jacobi sweeps stop.
const JACOBI_OFF_REL: f64 = 1e-12;

/// Eigenpairs of a symmetric matrix, eigenvalues ascending; eigenvector `i`
/// is column `i` of `vectors`.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl SymEigen {
    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.vectors.column(i)
    }
}

/// Eigendecomposition of `(M + Mᵀ)/2` by cyclic Jacobi rotations.
pub fn sym_eigen(m: &Matrix, tol: &Tolerance) -> Result<SymEigen> {
    let mut a = m.symmetrize()?;
    let n = a.rows();
    let mut v = Matrix::identity(n);
    let target = JACOBI_OFF_REL * a.frobenius();

    for _sweep in 0..tol.max_iter.max(1) {
        if off_diagonal(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() < f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate_columns(&mut a, p, q, c, s);
                rotate_rows(&mut a, p, q, c, s);
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                rotate_columns(&mut v, p, q, c, s);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(SymEigen { values, vectors })
}

fn off_diagonal(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

fn rotate_columns(a: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..a.rows() {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
}

fn rotate_rows(a: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..a.cols() {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
}

/// Smallest eigenvalue of the symmetric part. Empty matrices report 0.
pub fn min_eig_sym(m: &Matrix, tol: &Tolerance) -> Result<f64> {
    let eig = sym_eigen(m, tol)?;
    Ok(eig.values.first().copied().unwrap_or(0.0))
}

/// Outcome of a PSD decision.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdVerdict {
    pub psd: bool,
    pub min_eigenvalue: f64,
    /// Unit eigenvector with `wᵀMw < 0`, present iff `psd` is false.
    pub witness: Option<Vec<f64>>,
}

/// PSD test on `(M + Mᵀ)/2` with floor `-eig_rel * max(1, |M|_max)`.
pub fn is_psd(m: &Matrix, tol: &Tolerance) -> Result<PsdVerdict> {
    let eig = sym_eigen(m, tol)?;
    let Some(&min) = eig.values.first() else {
        return Ok(PsdVerdict {
            psd: true,
            min_eigenvalue: 0.0,
            witness: None,
        });
    };
    let psd = min >= tol.psd_floor(m.max_abs());
    Ok(PsdVerdict {
        psd,
        min_eigenvalue: min,
        witness: (!psd).then(|| eig.vector(0)),
    })
}

/// Singular values and right singular vectors from one-sided Jacobi.
/// Column `j` of `right` pairs with `values[j]`; values are unsorted.
#[derive(Debug, Clone)]
pub struct RightSvd {
    pub values: Vec<f64>,
    pub right: Matrix,
}

/// One-sided (Hestenes) Jacobi SVD. Small singular values come out with
/// absolute accuracy near machine precision times the matrix norm, which a
/// Gram-matrix eigensolve would lose.
pub fn right_svd(m: &Matrix, tol: &Tolerance) -> RightSvd {
    let n = m.cols();
    let mut g = m.columns();
    let mut w = Matrix::identity(n);

    for _sweep in 0..tol.max_iter.max(1) {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let alpha = dot(&g[i], &g[i]);
                let beta = dot(&g[j], &g[j]);
                let gamma = dot(&g[i], &g[j]);
                if gamma == 0.0 || gamma.abs() <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = if zeta.abs() > 1e150 {
                    0.5 / zeta
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (gi, gj) = (g[i].clone(), g[j].clone());
                for k in 0..gi.len() {
                    g[i][k] = c * gi[k] - s * gj[k];
                    g[j][k] = s * gi[k] + c * gj[k];
                }
                rotate_columns(&mut w, i, j, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    RightSvd {
        values: g.iter().map(|c| dot(c, c).sqrt()).collect(),
        right: w,
    }
}

/// Orthonormal basis of `{x : |Mx| <= eig_rel * |M|_max * |x|}`.
///
/// Symmetric input is handled by the eigensolver so kernel and PSD
/// decisions share one numeric regime; anything else goes through the
/// one-sided Jacobi SVD.
pub fn kernel_basis(m: &Matrix, tol: &Tolerance) -> Result<Subspace> {
    kernel_basis_scaled(m, m.max_abs(), tol)
}

/// [`kernel_basis`] with the cutoff `eig_rel * scale` measured against an
/// outside reference, e.g. `|A|_max` when `M` is the symmetric part of `A`.
pub fn kernel_basis_scaled(m: &Matrix, scale: f64, tol: &Tolerance) -> Result<Subspace> {
    let n = m.cols();
    let cutoff = tol.eig_rel * scale;
    let vectors: Vec<Vec<f64>> = if m.is_symmetric(0.0) {
        let eig = sym_eigen(m, tol)?;
        (0..n)
            .filter(|&i| eig.values[i].abs() <= cutoff)
            .map(|i| eig.vector(i))
            .collect()
    } else {
        let svd = right_svd(m, tol);
        (0..n)
            .filter(|&i| svd.values[i] <= cutoff)
            .map(|i| svd.right.column(i))
            .collect()
    };
    Subspace::span_of(n, &vectors, tol)
}

/// `cols - dim ker M`.
pub fn numerical_rank(m: &Matrix, tol: &Tolerance) -> Result<usize> {
    Ok(m.cols() - kernel_basis(m, tol)?.dim())
}

/// `M⁺ b` for symmetric `M`, inverting only eigenvalues above
/// `eig_rel * |M|_max` in magnitude.
pub fn sym_pinv_apply(m: &Matrix, b: &[f64], tol: &Tolerance) -> Result<Vec<f64>> {
    let eig = sym_eigen(m, tol)?;
    let cutoff = tol.eig_rel * m.max_abs();
    let mut out = vec![0.0; m.rows()];
    for (i, &lambda) in eig.values.iter().enumerate() {
        if lambda.abs() > cutoff {
            let v = eig.vector(i);
            let coef = dot(&v, b) / lambda;
            out.iter_mut().zip(&v).for_each(|(o, vi)| *o += coef * vi);
        }
    }
    Ok(out)
}

/// Minimum-norm least-squares solution of `Mc = b`.
pub fn least_squares(m: &Matrix, b: &[f64], tol: &Tolerance) -> Result<Vec<f64>> {
    let svd = right_svd(m, tol);
    let cutoff = tol.eig_rel * m.max_abs();
    let mut c = vec![0.0; m.cols()];
    for (i, &sigma) in svd.values.iter().enumerate() {
        if sigma > cutoff {
            let w = svd.right.column(i);
            let mw = m.mul_vec(&w)?;
            let coef = dot(&mw, b) / (sigma * sigma);
            c.iter_mut().zip(&w).for_each(|(ci, wi)| *ci += coef * wi);
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::norm;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn diagonal_and_swap_spectra() {
        let e = sym_eigen(&Matrix::diagonal(&[3.0, 2.0]), &tol()).unwrap();
        assert_eq!(e.values, vec![2.0, 3.0]);
        let e = sym_eigen(&Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap(), &tol()).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn symmetric_part_of_three_by_three_example() {
        let t = Matrix::from_rows(&[[1.0, -2.0, 1.0], [3.0, 1.0, 3.0], [1.0, -2.0, 1.0]]).unwrap();
        let e = sym_eigen(&t, &tol()).unwrap();
        let s3 = 3f64.sqrt();
        let expected = [0.0, 0.5 * (3.0 - s3), 0.5 * (3.0 + s3)];
        for (got, want) in e.values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        let ker = kernel_basis(&t.symmetrize().unwrap(), &tol()).unwrap();
        assert_eq!(ker.dim(), 1);
        let v = &ker.basis()[0];
        let r = 1.0 / 2f64.sqrt();
        assert!((v[0].abs() - r).abs() < 1e-12 && v[1].abs() < 1e-12);
        assert!((v[0] + v[2]).abs() < 1e-12);
    }

    #[test]
    fn min_eig_examples() {
        assert_eq!(min_eig_sym(&Matrix::identity(2), &tol()).unwrap(), 1.0);
        assert_eq!(min_eig_sym(&Matrix::zeros(3, 3), &tol()).unwrap(), 0.0);
        let m = Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!((min_eig_sym(&m, &tol()).unwrap() + 0.5).abs() < 1e-15);
        assert!(min_eig_sym(&Matrix::zeros(2, 3), &tol()).is_err());
    }

    #[test]
    fn psd_examples() {
        assert!(is_psd(&Matrix::identity(3), &tol()).unwrap().psd);
        assert!(is_psd(&Matrix::zeros(2, 2), &tol()).unwrap().psd);
        let v = is_psd(&Matrix::from_rows(&[[1.0, 2.0], [2.0, 1.0]]).unwrap(), &tol()).unwrap();
        assert!(!v.psd);
        assert!((v.min_eigenvalue + 1.0).abs() < 1e-14);
        let w = v.witness.unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert!((w[0].abs() - r).abs() < 1e-12 && (w[0] + w[1]).abs() < 1e-12);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(3), &tol()).unwrap().dim(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(2, 2), &tol()).unwrap().dim(), 2);
        let m = Matrix::from_rows(&[[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]]).unwrap();
        let ker = kernel_basis(&m, &tol()).unwrap();
        assert_eq!(ker.dim(), 2);
        for v in ker.basis() {
            assert!(norm(&m.mul_vec(v).unwrap()) < 1e-12);
        }
        assert_eq!(numerical_rank(&m, &tol()).unwrap(), 1);
    }

    #[test]
    fn pseudo_inverse_solves() {
        let m = Matrix::diagonal(&[2.0, 0.0, -4.0]);
        assert_eq!(
            sym_pinv_apply(&m, &[1.0, 5.0, 1.0], &tol()).unwrap(),
            vec![0.5, 0.0, -0.25]
        );
        let x = Matrix::from_rows(&[[1.0, 0.0], [0.0, 0.0], [1.0, 1.0]]).unwrap();
        let c = least_squares(&x, &[2.0, 0.0, 3.0], &tol()).unwrap();
        assert!((c[0] - 2.0).abs() < 1e-12 && (c[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nonsymmetric_kernel_resolves_exact_rank_deficiency() {
        // rank 2, with a kernel the Gram-matrix route would blur
        let m = Matrix::from_rows(&[[1.0, -2.0, 1.0], [3.0, 1.0, 3.0], [1.0, -2.0, 1.0]]).unwrap();
        let ker = kernel_basis(&m, &tol()).unwrap();
        assert_eq!(ker.dim(), 1);
        assert!(norm(&m.mul_vec(&ker.basis()[0]).unwrap()) < 1e-13);
    }
}

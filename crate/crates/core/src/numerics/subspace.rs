use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::matrix::{axpy, dot, norm, sub_vec, Matrix};
use crate::numerics::tolerance::Tolerance;

/// Linear subspace of `R^n` held as an orthonormal basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<f64>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| unit(ambient_dim, i)).collect();
        Self { ambient_dim, basis }
    }

    /// Span of coordinate axes `indices`.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Result<Self> {
        let vectors: Vec<Vec<f64>> = indices
            .iter()
            .map(|&i| {
                if i < ambient_dim {
                    Ok(unit(ambient_dim, i))
                } else {
                    Err(Error::Dimension(format!("axis {i} outside R^{ambient_dim}")))
                }
            })
            .collect::<Result<_>>()?;
        Self::span_of(ambient_dim, &vectors, &Tolerance::default())
    }

    /// Orthonormal basis for the span of `vectors`, by Gram-Schmidt with
    /// column pivoting and one reorthogonalization pass. A candidate whose
    /// residual falls to `abs * max(1, largest input norm)` is dropped as
    /// dependent.
    pub fn span_of<V: AsRef<[f64]>>(ambient_dim: usize, vectors: &[V], tol: &Tolerance) -> Result<Self> {
        for v in vectors {
            if v.as_ref().len() != ambient_dim {
                return Err(Error::Dimension(format!(
                    "vector of length {} in R^{ambient_dim}",
                    v.as_ref().len()
                )));
            }
        }
        let mut pending: Vec<Vec<f64>> = vectors.iter().map(|v| v.as_ref().to_vec()).collect();
        let reference = pending.iter().map(|v| norm(v)).fold(0.0, f64::max);
        let cutoff = tol.abs * reference.max(1.0);
        let mut basis: Vec<Vec<f64>> = Vec::new();

        while !pending.is_empty() && basis.len() < ambient_dim {
            let (best, best_norm) = pending
                .iter()
                .enumerate()
                .map(|(i, v)| (i, norm(v)))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("pending is nonempty");
            if best_norm <= cutoff {
                break;
            }
            let mut q = pending.swap_remove(best);
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(b, &q);
                    axpy(-c, b, &mut q);
                }
            }
            let n = norm(&q);
            if n <= cutoff {
                continue;
            }
            q.iter_mut().for_each(|x| *x /= n);
            for v in pending.iter_mut() {
                let c = dot(&q, v);
                axpy(-c, &q, v);
            }
            basis.push(q);
        }
        Ok(Self { ambient_dim, basis })
    }

    /// Wraps a basis that is already orthonormal, without checking it.
    pub fn from_raw(ambient_dim: usize, basis: Vec<Vec<f64>>) -> Self {
        Self { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    /// `ambient × dim` matrix with the basis as columns.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.basis).expect("basis lengths match")
    }

    pub fn project(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_vector(x)?;
        let mut p = vec![0.0; self.ambient_dim];
        for b in &self.basis {
            axpy(dot(b, x), b, &mut p);
        }
        Ok(p)
    }

    /// Distance from `x` to the subspace.
    pub fn residual(&self, x: &[f64]) -> Result<f64> {
        Ok(norm(&sub_vec(x, &self.project(x)?)))
    }

    pub fn contains(&self, x: &[f64], tol: &Tolerance) -> Result<bool> {
        Ok(tol.negligible(self.residual(x)?, norm(x)))
    }

    pub fn is_subset(&self, other: &Self, tol: &Tolerance) -> Result<bool> {
        self.check_ambient(other)?;
        for b in &self.basis {
            if !other.contains(b, tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Self, tol: &Tolerance) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.is_subset(other, tol)?)
    }

    /// Completes the basis with coordinate axes, always taking the axis with
    /// the largest residual; that residual is at least `1/sqrt(n)`, so the
    /// complement always has dimension `n - dim`.
    pub fn orth_complement(&self) -> Self {
        let n = self.ambient_dim;
        let mut all = self.basis.clone();
        let mut complement = Vec::with_capacity(n - self.dim());
        let mut candidates: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut e = unit(n, i);
                for _ in 0..2 {
                    for b in &all {
                        let c = dot(b, &e);
                        axpy(-c, b, &mut e);
                    }
                }
                e
            })
            .collect();
        while all.len() < n {
            let (best, _) = candidates
                .iter()
                .enumerate()
                .map(|(i, v)| (i, norm(v)))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("complement is nonempty");
            let mut q = candidates.swap_remove(best);
            for b in all.iter() {
                let c = dot(b, &q);
                axpy(-c, b, &mut q);
            }
            let nq = norm(&q);
            q.iter_mut().for_each(|x| *x /= nq);
            for v in candidates.iter_mut() {
                let c = dot(&q, v);
                axpy(-c, &q, v);
            }
            all.push(q.clone());
            complement.push(q);
        }
        Self {
            ambient_dim: n,
            basis: complement,
        }
    }

    /// `S1 + S2`.
    pub fn sum(&self, other: &Self, tol: &Tolerance) -> Result<Self> {
        self.check_ambient(other)?;
        let vectors: Vec<&Vec<f64>> = self.basis.iter().chain(&other.basis).collect();
        let vectors: Vec<&[f64]> = vectors.iter().map(|v| v.as_slice()).collect();
        Self::span_of(self.ambient_dim, &vectors, tol)
    }

    /// `S1 ∩ S2 = (S1⊥ + S2⊥)⊥`.
    pub fn intersect(&self, other: &Self, tol: &Tolerance) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(self
            .orth_complement()
            .sum(&other.orth_complement(), tol)?
            .orth_complement())
    }

    fn check_vector(&self, x: &[f64]) -> Result<()> {
        if x.len() == self.ambient_dim {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "vector of length {} against subspace of R^{}",
                x.len(),
                self.ambient_dim
            )))
        }
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim == other.ambient_dim {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "subspaces of R^{} and R^{}",
                self.ambient_dim, other.ambient_dim
            )))
        }
    }
}

pub fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

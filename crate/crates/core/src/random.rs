//! Seeded generators for property suites. Every generator keeps its
//! outputs well away from class boundaries so that verdicts are not at the
//! mercy of tolerances.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::numerics::eigen::right_svd;
use crate::numerics::matrix::axpy;
use crate::numerics::{Matrix, Subspace, Tolerance};
use crate::operators::MatrixOperator;
use crate::relations::{embed, LinearRelation};

pub fn gaussian_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Haar-like random orthonormal basis of `R^n`.
pub fn random_orthonormal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Vec<f64>> {
    loop {
        let vs: Vec<Vec<f64>> = (0..n).map(|_| gaussian_vec(rng, n)).collect();
        let s = Subspace::span_of(n, &vs, &Tolerance::default()).expect("lengths match");
        if s.dim() == n {
            return s.basis().to_vec();
        }
    }
}

/// `Σ λ_i u_i u_iᵀ` over the given columns.
fn outer_sum(n: usize, vectors: &[Vec<f64>], weights: &[f64]) -> Matrix {
    Matrix::from_fn(n, n, |i, j| {
        vectors.iter().zip(weights).map(|(u, w)| w * u[i] * u[j]).sum()
    })
}

fn random_skew<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let g = gaussian_matrix(rng, n, n);
    g.sub(&g.transpose()).expect("square").scale(0.5)
}

fn log_uniform_scale<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    10f64.powf(rng.random_range(-2.0..2.0))
}

/// Random monotone 2×2 matrix drawn from one of five families:
/// positive definite plus skew, rank-one symmetric, rank-one symmetric plus
/// a nonzero skew part, pure nonzero skew, and zero.
pub fn random_monotone_2x2<R: Rng + ?Sized>(rng: &mut R) -> MatrixOperator {
    let scale = log_uniform_scale(rng);
    let basis = random_orthonormal(rng, 2);
    let skew_strength = rng.random_range(0.1..2.0) * if rng.random::<bool>() { 1.0 } else { -1.0 };
    let skew = Matrix::from_rows(&[[0.0, -skew_strength], [skew_strength, 0.0]]).expect("2x2");
    let m = match rng.random_range(0..5) {
        0 => {
            let sym = outer_sum(2, &basis, &[rng.random_range(0.1..2.0), rng.random_range(0.1..2.0)]);
            if rng.random::<bool>() {
                sym.add(&skew).expect("2x2")
            } else {
                sym
            }
        }
        1 => outer_sum(2, &basis[..1], &[rng.random_range(0.1..2.0)]),
        2 => outer_sum(2, &basis[..1], &[rng.random_range(0.1..2.0)])
            .add(&skew)
            .expect("2x2"),
        3 => skew,
        _ => Matrix::zeros(2, 2),
    };
    MatrixOperator::new(m.scale(scale)).expect("square")
}

/// Random monotone `n×n` matrix `P + S` with `P ⪰ 0` of random rank and
/// `S` skew. About half the time `S` is compressed to `(ker P)⊥`, which
/// makes the result paramonotone; otherwise `S` moves some unit vector of
/// `ker P` by at least 0.1, and the result is paramonotone only when `P`
/// is nonsingular. A small share is zero.
pub fn random_monotone_nxn<R: Rng + ?Sized>(rng: &mut R, n: usize) -> MatrixOperator {
    if rng.random_range(0..20) == 0 {
        return MatrixOperator::zero(n);
    }
    let scale = log_uniform_scale(rng);
    let basis = random_orthonormal(rng, n);
    let rank = rng.random_range(0..=n);
    let weights: Vec<f64> = (0..rank).map(|_| rng.random_range(0.2..2.0)).collect();
    let p = outer_sum(n, &basis[..rank], &weights);
    let s = if rng.random::<bool>() {
        let q = outer_sum(n, &basis[..rank], &vec![1.0; rank]);
        let s = random_skew(rng, n);
        q.matmul(&s).and_then(|qs| qs.matmul(&q)).expect("square")
    } else {
        skew_off_kernel(rng, n, &basis[rank..])
    };
    MatrixOperator::new(p.add(&s).expect("square").scale(scale)).expect("square")
}

/// Random skew `S` moving some unit `v` in the span of `kernel`
/// (orthonormal) by at least 0.1, so that `P + S` is clearly not
/// paramonotone.
fn skew_off_kernel<R: Rng + ?Sized>(rng: &mut R, n: usize, kernel: &[Vec<f64>]) -> Matrix {
    let tol = Tolerance::default();
    loop {
        let s = random_skew(rng, n);
        // Skew maps on R^1 vanish, so there is nothing to enforce there.
        if kernel.is_empty() || n == 1 {
            return s;
        }
        let k = Matrix::from_columns(n, kernel).expect("kernel vectors have length n");
        let sk = s.matmul(&k).expect("shapes agree");
        let largest = right_svd(&sk, &tol).values.into_iter().fold(0.0, f64::max);
        if largest >= 0.1 {
            return s;
        }
    }
}

/// 2×2 matrix with standard normal entries, monotone or not.
pub fn random_general_2x2<R: Rng + ?Sized>(rng: &mut R) -> MatrixOperator {
    MatrixOperator::new(gaussian_matrix(rng, 2, 2)).expect("square")
}

/// Random monotone relation on `R^d`.
///
/// Picks a domain `D`, a subspace `Z ⊆ D⊥` and a monotone matrix `M` acting
/// on `D`. Half the time an extra map `N : D → (D + Z)⊥` is added, which
/// leaves `⟨x, x*⟩` unchanged because `Nx ⊥ D`. The graph is
/// `{(x, Mx + Nx) : x ∈ D} + {0} × Z`; it is maximal exactly when
/// `dim D + dim Z = d`.
pub fn random_monotone_relation<R: Rng + ?Sized>(rng: &mut R, d: usize) -> LinearRelation {
    let tol = Tolerance::default();
    let basis = random_orthonormal(rng, d);
    let k = rng.random_range(0..=d);
    let z = rng.random_range(0..=d - k);
    let (dom_basis, rest) = basis.split_at(k);
    let (z_basis, w_basis) = rest.split_at(z);

    let m = if k > 0 {
        random_monotone_nxn(rng, k).matrix().clone()
    } else {
        Matrix::zeros(0, 0)
    };
    let n = if rng.random::<bool>() && !w_basis.is_empty() && k > 0 {
        Some(gaussian_matrix(rng, w_basis.len(), k))
    } else {
        None
    };

    let mut vectors = Vec::with_capacity(k + z);
    for j in 0..k {
        let x = &dom_basis[j];
        let mut image = vec![0.0; d];
        for (i, di) in dom_basis.iter().enumerate() {
            axpy(m[(i, j)], di, &mut image);
        }
        if let Some(n) = &n {
            for (i, wi) in w_basis.iter().enumerate() {
                axpy(n[(i, j)], wi, &mut image);
            }
        }
        vectors.push(embed(x, &image));
    }
    for zi in z_basis {
        vectors.push(embed(&vec![0.0; d], zi));
    }
    LinearRelation::from_graph(d, &vectors, &tol).expect("lengths match")
}

//! Single-valued linear operators with full domain, given as square
//! matrices, and their five-class classification.
//!
//! For a linear operator the monotone quantity `⟨x − y, Ax − Ay⟩` reduces to
//! the quadratic form of the symmetric part `A₊ = (A + Aᵀ)/2` at `x − y`, so
//! most decisions are eigenvalue questions about `A₊` or about the block
//! form carrying the n-cycle sum.

use crate::code::ClassCode;
use crate::error::{Error, Result};
use crate::numerics::matrix::norm;
use crate::numerics::{
    is_psd, kernel_basis, kernel_basis_scaled, min_eig_sym, Matrix, PsdVerdict, Subspace, Tolerance,
};
use crate::report::{AlphaStar, ClassificationReport, CycleWitness};

/// Square real matrix acting on `R^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixOperator {
    matrix: Matrix,
}

/// Result of an n-cyclic monotonicity decision.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicVerdict {
    pub n: usize,
    pub cyclic: bool,
    pub min_eigenvalue: f64,
    /// Cycle with negative sum, present iff `cyclic` is false.
    pub witness: Option<CycleWitness>,
}

impl MatrixOperator {
    pub fn new(matrix: Matrix) -> Result<Self> {
        matrix.require_square()?;
        if matrix.rows() == 0 {
            return Err(Error::Dimension("operator dimension must be positive".into()));
        }
        Ok(Self { matrix })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(Matrix::identity(dim)).expect("identity of positive dimension")
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(Matrix::zeros(dim, dim)).expect("zero of positive dimension")
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.matrix.mul_vec(x)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            matrix: self.matrix.scale(s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.max_abs() == 0.0
    }

    /// `A₊ = (A + Aᵀ)/2`.
    pub fn symmetric_part(&self) -> Matrix {
        self.matrix.symmetrize().expect("operators are square")
    }

    /// PSD verdict on `A₊`, carrying `λ_min` and a descent direction.
    pub fn monotonicity(&self, tol: &Tolerance) -> PsdVerdict {
        is_psd(&self.symmetric_part(), tol).expect("operators are square")
    }

    pub fn is_monotone(&self, tol: &Tolerance) -> bool {
        self.monotonicity(tol).psd
    }

    /// Kernel of `A₊`: the directions where `⟨x, Ax⟩` vanishes. The cutoff
    /// is relative to `|A|_max`, so a skew matrix rounded to a tiny
    /// symmetric part still has full `ker A₊`.
    pub fn ker_sym(&self, tol: &Tolerance) -> Subspace {
        kernel_basis_scaled(&self.symmetric_part(), self.matrix.max_abs(), tol).expect("operators are square")
    }

    pub fn ker(&self, tol: &Tolerance) -> Subspace {
        kernel_basis(&self.matrix, tol).expect("operators are square")
    }

    /// Monotone with `ker A₊ = {0}`.
    pub fn is_strictly_monotone(&self, tol: &Tolerance) -> bool {
        self.is_monotone(tol) && self.ker_sym(tol).is_trivial()
    }

    /// Monotone with `ker A₊ ⊆ ker A`.
    pub fn is_paramonotone(&self, tol: &Tolerance) -> bool {
        if !self.is_monotone(tol) {
            return false;
        }
        let scale = self.matrix.max_abs();
        self.ker_sym(tol).basis().iter().all(|v| {
            let image = self.apply(v).expect("kernel vectors have operator length");
            norm(&image) <= tol.eig_rel * scale
        })
    }

    /// Brézis–Haraux constant `α* = sup{α ≥ 0 : A₊ − α AᵀA ⪰ 0}`, found by
    /// doubling from `1/|AᵀA|_max` and then bisecting to relative width
    /// `tol.bisect_rel`. Returns the largest feasible α seen.
    ///
    /// The search runs on `A/|A|_max` and rescales, using `α*(cA) = α*(A)/c`.
    /// Feasibility uses a rounding-level floor of `64·dim·ε` rather than the
    /// `eig_rel` floor of [`is_psd`]: a loose floor lets α creep above zero
    /// on non-paramonotone input by about `floor/|Av|²`.
    pub fn brezis_haraux_alpha(&self, tol: &Tolerance) -> Result<AlphaStar> {
        if !self.is_monotone(tol) {
            return Err(Error::Precondition(
                "Brézis–Haraux constant needs a monotone operator".into(),
            ));
        }
        if self.is_zero() {
            return Ok(AlphaStar::Unbounded);
        }
        let scale = self.matrix.max_abs();
        let unit = self.matrix.scale(1.0 / scale);
        let sym = unit.symmetrize()?;
        let gram = unit.transpose().matmul(&unit)?;
        let rounding = 64.0 * self.dim() as f64 * f64::EPSILON;
        let feasible = |alpha: f64| -> Result<bool> {
            let m = sym.sub(&gram.scale(alpha))?;
            Ok(min_eig_sym(&m, tol)? >= -rounding * m.max_abs().max(1.0))
        };

        let mut lo = 0.0;
        let mut hi = 1.0 / gram.max_abs();
        let mut iter = 0;
        while feasible(hi)? {
            lo = hi;
            hi *= 2.0;
            iter += 1;
            if iter >= tol.max_iter {
                return Ok(AlphaStar::Finite(lo / scale));
            }
        }
        while hi - lo > tol.bisect_rel * hi && iter < tol.max_iter {
            let mid = 0.5 * (lo + hi);
            if feasible(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
            iter += 1;
        }
        Ok(AlphaStar::Finite(lo / scale))
    }

    /// Smallest α* still read as positive: `sqrt(eig_rel) / |A|_max`.
    ///
    /// A non-paramonotone operator has exact α* = 0, but rounding lets
    /// bisection creep up to about `64·dim·ε·|A|/|Av|²`. The threshold sits
    /// far above that creep unless `|Av|` is below roughly `1e-4·|A|_max` for
    /// every `v ∈ ker A₊`, while staying scale invariant.
    pub fn alpha_threshold(&self, tol: &Tolerance) -> f64 {
        tol.eig_rel.sqrt() / self.matrix.max_abs()
    }

    /// Monotone and either zero or with α* above [`Self::alpha_threshold`].
    pub fn is_3star(&self, tol: &Tolerance) -> bool {
        if !self.is_monotone(tol) {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        match self.brezis_haraux_alpha(tol) {
            Ok(AlphaStar::Finite(a)) => a > self.alpha_threshold(tol),
            Ok(AlphaStar::Unbounded) => true,
            Err(_) => false,
        }
    }

    /// Symmetrized block form whose quadratic form is the n-cycle sum.
    ///
    /// With stacked `x = (x_1, …, x_n)` and `x_i* = Ax_i`, the cycle sum
    /// `Σ ⟨x_i − x_{i+1}, Ax_i⟩` is `xᵀCx` where `C` carries `A` on the
    /// diagonal blocks and `−A` on block `(i+1 mod n, i)`. Returns
    /// `(C + Cᵀ)/2`.
    pub fn cyclic_gram(&self, n: usize) -> Result<Matrix> {
        cyclic_block_form(&self.matrix, n)
    }

    /// n-cyclic monotonicity as PSD-ness of [`Self::cyclic_gram`]. A failing
    /// verdict carries the most negative eigenvector, unstacked into a cycle.
    pub fn is_n_cyclic(&self, n: usize, tol: &Tolerance) -> Result<CyclicVerdict> {
        let gram = self.cyclic_gram(n)?;
        let verdict = is_psd(&gram, tol)?;
        let witness = match &verdict.witness {
            Some(w) => {
                let d = self.dim();
                let points: Vec<Vec<f64>> = w.chunks(d).map(<[f64]>::to_vec).collect();
                let images = points.iter().map(|p| self.apply(p)).collect::<Result<Vec<_>>>()?;
                Some(CycleWitness::new(points, images))
            }
            None => None,
        };
        Ok(CyclicVerdict {
            n,
            cyclic: verdict.psd,
            min_eigenvalue: verdict.min_eigenvalue,
            witness,
        })
    }

    /// Necessary condition for 3-cyclic monotonicity of a 2×2 operator
    /// `[[a, c], [b, d]]`: `max{|b|, |c|} ≤ a + d`.
    pub fn necessary_3cm_2x2(&self) -> Result<bool> {
        let [a, c, b, d] = self.entries_2x2()?;
        Ok(b.abs().max(c.abs()) <= a + d)
    }

    /// A monotone linear operator with full domain is maximal monotone.
    pub fn is_maximal(&self, tol: &Tolerance) -> bool {
        self.is_monotone(tol)
    }

    /// Entries of a 2×2 operator in row-major order `[a, c, b, d]`.
    pub fn entries_2x2(&self) -> Result<[f64; 4]> {
        if self.dim() != 2 {
            return Err(Error::Argument(format!(
                "expected a 2x2 operator, got dimension {}",
                self.dim()
            )));
        }
        let m = &self.matrix;
        Ok([m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]])
    }
}

/// `(C + Cᵀ)/2` for the n-cycle block matrix built from a square `d` block.
pub(crate) fn cyclic_block_form(block: &Matrix, n: usize) -> Result<Matrix> {
    block.require_square()?;
    if n < 2 {
        return Err(Error::Argument(format!("cycle length must be at least 2, got {n}")));
    }
    let d = block.rows();
    let mut c = Matrix::zeros(n * d, n * d);
    for i in 0..n {
        let next = (i + 1) % n;
        for r in 0..d {
            for s in 0..d {
                c[(i * d + r, i * d + s)] += block[(r, s)];
                c[(next * d + r, i * d + s)] -= block[(r, s)];
            }
        }
    }
    c.symmetrize()
}

/// Closed-form monotonicity of `[[a, c], [b, d]]`:
/// `a + d ≥ 0` and `4ad ≥ (b + c)²`.
pub fn closed_form_monotone_2x2(entries: [f64; 4]) -> bool {
    let [a, c, b, d] = entries;
    a + d >= 0.0 && 4.0 * a * d >= (b + c) * (b + c)
}

/// Runs the five class tests and gathers their certificates.
///
/// Non-monotone input is not rejected: it gets the all-zero code, its
/// negative eigenvalue and a negative 3-cycle.
pub fn classify(a: &MatrixOperator, tol: &Tolerance) -> ClassificationReport {
    let mono = a.monotonicity(tol);
    let ker_sym = a.ker_sym(tol);
    let ker_full = a.ker(tol);
    let cycle = a.is_n_cyclic(3, tol).expect("3 is a valid cycle length");
    let mut notes = Vec::new();

    if !mono.psd {
        notes.push(format!(
            "not monotone: symmetric part has eigenvalue {:.6e}",
            mono.min_eigenvalue
        ));
        return ClassificationReport {
            code: ClassCode::NONE,
            monotone: false,
            dim: a.dim(),
            lambda_min_sym: mono.min_eigenvalue,
            ker_sym,
            ker_full,
            alpha_star: None,
            cycle_witness: cycle.witness,
            relation: None,
            notes,
        };
    }

    let alpha = a.brezis_haraux_alpha(tol).ok();
    let code = ClassCode {
        pm: a.is_paramonotone(tol),
        sm: ker_sym.is_trivial(),
        cm3: cycle.cyclic,
        mm: a.is_maximal(tol),
        star3: a.is_3star(tol),
    };
    if code.pm != code.star3 {
        notes.push("PM and 3* verdicts differ; the input sits near the numerical boundary of both classes".into());
    }
    if a.dim() == 2 {
        let entries = a.entries_2x2().expect("dimension checked");
        if !closed_form_monotone_2x2(entries) {
            notes.push("monotone only within tolerance of the closed-form 2x2 criterion".into());
        }
    }
    ClassificationReport {
        code,
        monotone: true,
        dim: a.dim(),
        lambda_min_sym: mono.min_eigenvalue,
        ker_sym,
        ker_full,
        alpha_star: alpha,
        cycle_witness: cycle.witness,
        relation: None,
        notes,
    }
}

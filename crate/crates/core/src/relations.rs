//! Linear relations: set-valued maps on `R^d` whose graph is a linear
//! subspace of `R^{2d}`.
//!
//! A graph with orthonormal basis columns `(X; Y)` is parameterized by
//! coefficients `c ↦ (Xc, Yc)`. Differences of graph points stay in the
//! graph, so every monotone-class condition becomes a statement about the
//! form `B = (XᵀY + YᵀX)/2` on coefficients: `cᵀBc = ⟨Xc, Yc⟩`.

use crate::code::ClassCode;
use crate::error::{Error, Result};
use crate::numerics::matrix::{dot, norm, sub_vec};
use crate::numerics::{
    is_psd, kernel_basis_scaled, least_squares, sym_pinv_apply, Matrix, PsdVerdict, Subspace, Tolerance,
};
use crate::operators::{cyclic_block_form, CyclicVerdict, MatrixOperator};
use crate::report::{ClassificationReport, CycleWitness, RelationSummary};

/// Linear relation on `R^d` with cached domain, range, `A0` and kernel.
#[derive(Debug, Clone)]
pub struct LinearRelation {
    d: usize,
    graph: Subspace,
    x_part: Matrix,
    y_part: Matrix,
    dom: Subspace,
    ran: Subspace,
    a0: Subspace,
    ker: Subspace,
}

impl LinearRelation {
    /// Relation whose graph is the span of `vectors`, each `(x, x*)` of
    /// length `2d`. Numerically dependent vectors are dropped.
    pub fn from_graph<V: AsRef<[f64]>>(d: usize, vectors: &[V], tol: &Tolerance) -> Result<Self> {
        if d == 0 {
            return Err(Error::Dimension("relation dimension must be positive".into()));
        }
        let graph = Subspace::span_of(2 * d, vectors, tol)?;
        Self::from_subspace(d, graph, tol)
    }

    /// Wraps an existing graph subspace of `R^{2d}`.
    pub fn from_subspace(d: usize, graph: Subspace, tol: &Tolerance) -> Result<Self> {
        if d == 0 || graph.ambient_dim() != 2 * d {
            return Err(Error::Dimension(format!(
                "graph lives in R^{}, expected R^{}",
                graph.ambient_dim(),
                2 * d
            )));
        }
        let basis = graph.basis();
        let x_cols: Vec<&[f64]> = basis.iter().map(|g| &g[..d]).collect();
        let y_cols: Vec<&[f64]> = basis.iter().map(|g| &g[d..]).collect();
        let x_part = Matrix::from_columns(d, &x_cols)?;
        let y_part = Matrix::from_columns(d, &y_cols)?;
        let dom = Subspace::span_of(d, &x_cols, tol)?;
        let ran = Subspace::span_of(d, &y_cols, tol)?;

        let image_axis = Subspace::coordinate(2 * d, &(d..2 * d).collect::<Vec<_>>())?;
        let source_axis = Subspace::coordinate(2 * d, &(0..d).collect::<Vec<_>>())?;
        let at_zero = graph.intersect(&image_axis, tol)?;
        let to_zero = graph.intersect(&source_axis, tol)?;
        let a0 = Subspace::span_of(d, &at_zero.basis().iter().map(|g| &g[d..]).collect::<Vec<_>>(), tol)?;
        let ker = Subspace::span_of(d, &to_zero.basis().iter().map(|g| &g[..d]).collect::<Vec<_>>(), tol)?;

        Ok(Self {
            d,
            graph,
            x_part,
            y_part,
            dom,
            ran,
            a0,
            ker,
        })
    }

    /// Graph `{(x, Ax)}` of a matrix operator.
    pub fn from_operator(a: &MatrixOperator, tol: &Tolerance) -> Self {
        let d = a.dim();
        let vectors: Vec<Vec<f64>> = Subspace::full(d)
            .basis()
            .iter()
            .map(|e| embed(e, &a.apply(e).expect("unit vectors match")))
            .collect();
        Self::from_graph(d, &vectors, tol).expect("operator graph has matching lengths")
    }

    /// The relation with graph `{0}`.
    pub fn trivial(d: usize) -> Result<Self> {
        Self::from_subspace(d, Subspace::zero(2 * d), &Tolerance::default())
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    pub fn graph_dim(&self) -> usize {
        self.graph.dim()
    }

    pub fn dom(&self) -> &Subspace {
        &self.dom
    }

    pub fn ran(&self) -> &Subspace {
        &self.ran
    }

    /// `A0`, the image of the origin.
    pub fn a0(&self) -> &Subspace {
        &self.a0
    }

    /// `{x : 0 ∈ Ax}`.
    pub fn ker(&self) -> &Subspace {
        &self.ker
    }

    pub fn x_part(&self) -> &Matrix {
        &self.x_part
    }

    pub fn y_part(&self) -> &Matrix {
        &self.y_part
    }

    /// Graph point `(Xc, Yc)` for coefficients `c`.
    pub fn graph_point(&self, c: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        Ok((self.x_part.mul_vec(c)?, self.y_part.mul_vec(c)?))
    }

    /// `B = (XᵀY + YᵀX)/2`.
    pub fn monotone_form(&self) -> Matrix {
        self.cross_form().symmetrize().expect("square")
    }

    /// `XᵀY`, the unsymmetrized pairing of graph coefficients.
    fn cross_form(&self) -> Matrix {
        self.x_part.transpose().matmul(&self.y_part).expect("shapes agree")
    }

    /// Coefficient directions on which `⟨x, x*⟩` vanishes. The graph basis
    /// is orthonormal, so the cutoff is measured against 1.
    pub fn form_kernel(&self, tol: &Tolerance) -> Subspace {
        let form = self.monotone_form();
        let scale = form.max_abs().max(1.0);
        kernel_basis_scaled(&form, scale, tol).expect("square")
    }

    /// Representative `x₀* = P_{A0⊥}(Ax)`, unique because `Ax = x* + A0`;
    /// the full image is the affine set `x₀* + A0`.
    pub fn image_of(&self, x: &[f64], tol: &Tolerance) -> Result<(Vec<f64>, Subspace)> {
        if x.len() != self.d {
            return Err(Error::Dimension(format!(
                "point of length {} for a relation on R^{}",
                x.len(),
                self.d
            )));
        }
        if !self.dom.contains(x, tol)? {
            return Err(Error::Domain(format!("{x:?}")));
        }
        let c = least_squares(&self.x_part, x, tol)?;
        let image = self.y_part.mul_vec(&c)?;
        let rep = sub_vec(&image, &self.a0.project(&image)?);
        Ok((rep, self.a0.clone()))
    }

    pub fn monotonicity(&self, tol: &Tolerance) -> PsdVerdict {
        is_psd(&self.monotone_form(), tol).expect("square")
    }

    pub fn is_monotone(&self, tol: &Tolerance) -> bool {
        self.monotonicity(tol).psd
    }

    fn require_monotone(&self, tol: &Tolerance, what: &str) -> Result<()> {
        if self.is_monotone(tol) {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{what} needs a monotone relation")))
        }
    }

    /// Every graph point with `⟨y, y*⟩ = 0` has `y = 0`.
    pub fn is_strict(&self, tol: &Tolerance) -> Result<bool> {
        self.require_monotone(tol, "strict monotonicity")?;
        for c in self.form_kernel(tol).basis() {
            if !tol.negligible(norm(&self.x_part.mul_vec(c)?), 1.0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every graph point `(y, y*)` with `⟨y, y*⟩ = 0` has `(y, 0)` in the
    /// graph, i.e. `0 ∈ Ay` and hence `Ay = A0`.
    pub fn is_paramonotone(&self, tol: &Tolerance) -> Result<bool> {
        self.require_monotone(tol, "paramonotonicity")?;
        for c in self.form_kernel(tol).basis() {
            let x = self.x_part.mul_vec(c)?;
            if !self.graph.contains(&embed(&x, &vec![0.0; self.d]), tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `sup_{(y,y*)} ⟨z − y, y* − x*⟩` over the graph is a concave quadratic
    /// in the coefficients with quadratic part `−B`; it is bounded for all
    /// `z ∈ dom`, `x* ∈ ran` iff every kernel point `(y, y*)` of `B` has
    /// `y* ⊥ dom` and `y ⊥ ran`.
    pub fn is_3star(&self, tol: &Tolerance) -> Result<bool> {
        self.require_monotone(tol, "3*-monotonicity")?;
        let dom_perp = self.dom.orth_complement();
        let ran_perp = self.ran.orth_complement();
        for c in self.form_kernel(tol).basis() {
            let (y, ystar) = self.graph_point(c)?;
            if !dom_perp.contains(&ystar, tol)? || !ran_perp.contains(&y, tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Block form of the n-cycle sum over graph coefficients, with `XᵀY` on
    /// the diagonal and `−XᵀY` on the cyclic subdiagonal, symmetrized.
    pub fn cyclic_gram(&self, n: usize) -> Result<Matrix> {
        cyclic_block_form(&self.cross_form(), n)
    }

    pub fn is_n_cyclic(&self, n: usize, tol: &Tolerance) -> Result<CyclicVerdict> {
        let gram = self.cyclic_gram(n)?;
        let verdict = is_psd(&gram, tol)?;
        let witness = match &verdict.witness {
            Some(w) => {
                let k = self.graph_dim();
                let (points, images) = w
                    .chunks(k)
                    .map(|c| self.graph_point(c))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .unzip();
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

    /// Whether `(u, u*)` is monotonically related to every graph point.
    ///
    /// `inf_c ⟨u − Xc, u* − Yc⟩ = ⟨u, u*⟩ − cᵀb + cᵀBc` with
    /// `b = Xᵀu* + Yᵀu`. The infimum is finite iff `b ⊥ ker B`, and then
    /// equals `⟨u, u*⟩ − bᵀB⁺b/4`.
    pub fn monotonically_related(&self, u: &[f64], ustar: &[f64], tol: &Tolerance) -> Result<bool> {
        if u.len() != self.d || ustar.len() != self.d {
            return Err(Error::Dimension(format!(
                "candidate of lengths ({}, {}) for a relation on R^{}",
                u.len(),
                ustar.len(),
                self.d
            )));
        }
        self.require_monotone(tol, "monotone relatedness")?;
        let v = embed(u, ustar);
        let scale = norm(&v);
        if self.graph.contains(&v, tol)? {
            return Ok(true);
        }
        let b: Vec<f64> = self
            .x_part
            .transpose()
            .mul_vec(ustar)?
            .iter()
            .zip(self.y_part.transpose().mul_vec(u)?)
            .map(|(p, q)| p + q)
            .collect();
        let kernel = self.form_kernel(tol);
        if kernel.dim() > 0 && !tol.negligible(norm(&kernel.project(&b)?), scale) {
            return Ok(false);
        }
        let form = self.monotone_form();
        let minimum = dot(u, ustar) - 0.25 * dot(&b, &sym_pinv_apply(&form, &b, tol)?);
        Ok(minimum >= -tol.abs * (scale * scale).max(1.0))
    }

    /// Monotone with graph dimension `d`.
    ///
    /// When this holds, `(dom A)⊥ = A0` and `A0⊥ = dom A` must hold too;
    /// [`Self::maximality_identities_hold`] checks them.
    pub fn is_maximal(&self, tol: &Tolerance) -> bool {
        let maximal = self.is_monotone(tol) && self.graph_dim() == self.d;
        debug_assert!(!maximal || self.maximality_identities_hold(tol));
        maximal
    }

    /// `(dom A)⊥ = A0` and `(A0)⊥ = dom A`.
    pub fn maximality_identities_hold(&self, tol: &Tolerance) -> bool {
        let dom_perp = self.dom.orth_complement();
        let a0_perp = self.a0.orth_complement();
        dom_perp.equals(&self.a0, tol).unwrap_or(false) && a0_perp.equals(&self.dom, tol).unwrap_or(false)
    }

    /// `Ãx = P_V(Ax)`: graph `{(x, P_V x*)}`. Needs `dom A ⊆ V` and
    /// `A0 ⊆ V⊥`; the result is single valued.
    pub fn selection(&self, v: &Subspace, tol: &Tolerance) -> Result<Self> {
        if v.ambient_dim() != self.d {
            return Err(Error::Dimension(format!(
                "selection subspace in R^{}, relation on R^{}",
                v.ambient_dim(),
                self.d
            )));
        }
        if !self.dom.is_subset(v, tol)? {
            return Err(Error::Precondition("selection needs dom A ⊆ V".into()));
        }
        if !self.a0.is_subset(&v.orth_complement(), tol)? {
            return Err(Error::Precondition("selection needs A0 ⊆ V⊥".into()));
        }
        let vectors = self
            .graph
            .basis()
            .iter()
            .map(|g| Ok(embed(&g[..self.d], &v.project(&g[self.d..])?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_graph(self.d, &vectors, tol)
    }

    /// Selection at `V = A0⊥`, whose graph lies inside the original graph.
    pub fn canonical_selection(&self, tol: &Tolerance) -> Result<Self> {
        self.selection(&self.a0.orth_complement(), tol)
    }

    /// `Ãx = Ax + (dom A)⊥`.
    pub fn extend_by_domain_perp(&self, tol: &Tolerance) -> Self {
        let zero = vec![0.0; self.d];
        let extra: Vec<Vec<f64>> = self
            .dom
            .orth_complement()
            .basis()
            .iter()
            .map(|w| embed(&zero, w))
            .collect();
        let graph = self
            .graph
            .sum(&Subspace::from_raw(2 * self.d, extra), tol)
            .expect("ambient dimensions agree");
        Self::from_subspace(self.d, graph, tol).expect("ambient dimensions agree")
    }

    pub fn summary(&self, tol: &Tolerance) -> RelationSummary {
        RelationSummary {
            graph_dim: self.graph_dim(),
            dom_dim: self.dom.dim(),
            ran_dim: self.ran.dim(),
            a0_dim: self.a0.dim(),
            ker_dim: self.ker.dim(),
            maximal: self.is_maximal(tol),
        }
    }
}

/// Concatenates `(x, x*)` into a point of `R^{2d}`.
pub fn embed(x: &[f64], xstar: &[f64]) -> Vec<f64> {
    let mut v = Vec::with_capacity(x.len() + xstar.len());
    v.extend_from_slice(x);
    v.extend_from_slice(xstar);
    v
}

/// Five class tests for a relation, with MM from the graph dimension rule.
pub fn classify_relation(a: &LinearRelation, tol: &Tolerance) -> ClassificationReport {
    let mono = a.monotonicity(tol);
    let form_ker = a.form_kernel(tol);
    let x_parts: Vec<Vec<f64>> = form_ker
        .basis()
        .iter()
        .map(|c| a.x_part.mul_vec(c).expect("coefficient length"))
        .collect();
    let ker_sym = Subspace::span_of(a.d, &x_parts, tol).expect("x-parts live in R^d");
    let cycle = a.is_n_cyclic(3, tol).expect("3 is a valid cycle length");
    let summary = a.summary(tol);
    let mut notes = Vec::new();

    let code = if mono.psd {
        let code = ClassCode {
            pm: a.is_paramonotone(tol).expect("monotone"),
            sm: a.is_strict(tol).expect("monotone"),
            cm3: cycle.cyclic,
            mm: summary.maximal,
            star3: a.is_3star(tol).expect("monotone"),
        };
        if code.mm && !a.maximality_identities_hold(tol) {
            notes.push("maximal by dimension count but (dom A)⊥ ≠ A0 numerically".into());
        }
        code
    } else {
        notes.push(format!(
            "not monotone: graph form has eigenvalue {:.6e}",
            mono.min_eigenvalue
        ));
        ClassCode::NONE
    };

    ClassificationReport {
        code,
        monotone: mono.psd,
        dim: a.d,
        lambda_min_sym: mono.min_eigenvalue,
        ker_sym,
        ker_full: a.ker.clone(),
        alpha_star: None,
        cycle_witness: cycle.witness,
        relation: Some(summary),
        notes,
    }
}

//! Named example operators and relations, each with the class code it is
//! known to have.

use std::f64::consts::FRAC_PI_2;

use crate::code::ClassCode;
use crate::error::{Error, Result};
use crate::numerics::{Matrix, Tolerance};
use crate::operators::MatrixOperator;
use crate::relations::LinearRelation;

/// Rotation `[[cos θ, −sin θ], [sin θ, cos θ]]`.
pub fn rotation(theta: f64) -> MatrixOperator {
    let (s, c) = theta.sin_cos();
    MatrixOperator::from_rows(&[[c, -s], [s, c]]).expect("2x2")
}

/// `[[1, −2], [3, 1]]`: strictly monotone, not 3-cyclic monotone.
pub fn tilde_r() -> MatrixOperator {
    MatrixOperator::from_rows(&[[1.0, -2.0], [3.0, 1.0]]).expect("2x2")
}

/// Keeps the first `k` of `d` coordinates and zeroes the rest.
pub fn coordinate_projection(d: usize, k: usize) -> Result<MatrixOperator> {
    if k > d {
        return Err(Error::Argument(format!("cannot keep {k} of {d} coordinates")));
    }
    let diag: Vec<f64> = (0..d).map(|i| if i < k { 1.0 } else { 0.0 }).collect();
    MatrixOperator::new(Matrix::diagonal(&diag))
}

/// Rows `(1, −2, 1), (3, 1, 3), (1, −2, 1)`.
pub fn example_3x3() -> MatrixOperator {
    MatrixOperator::from_rows(&[[1.0, -2.0, 1.0], [3.0, 1.0, 3.0], [1.0, -2.0, 1.0]]).expect("3x3")
}

/// Rank-one symmetric `[[a, b], [b, b²/a]]`.
pub fn symmetric_pm_family(a: f64, b: f64) -> Result<MatrixOperator> {
    if a.is_nan() || a <= 0.0 {
        return Err(Error::Argument(format!("symmetric_pm_family needs a > 0, got {a}")));
    }
    MatrixOperator::from_rows(&[[a, b], [b, b * b / a]])
}

/// Angle of block `k` in [`rotation_chain`]: `π/2 − 1/k⁴`.
pub fn chain_angle(k: usize) -> f64 {
    FRAC_PI_2 - 1.0 / (k as f64).powi(4)
}

/// Block diagonal of `R_{θ_k}` for `k = 1..N`, size `2N`.
pub fn rotation_chain(n: usize) -> Result<MatrixOperator> {
    if n < 1 {
        return Err(Error::Argument("rotation_chain needs N >= 1".into()));
    }
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for k in 1..=n {
        let (s, c) = chain_angle(k).sin_cos();
        let o = 2 * (k - 1);
        m[(o, o)] = c;
        m[(o, o + 1)] = -s;
        m[(o + 1, o)] = s;
        m[(o + 1, o + 1)] = c;
    }
    MatrixOperator::new(m)
}

/// Closed form of the Brézis–Haraux constant of [`rotation_chain`]:
/// the smallest block value `cos θ_N = sin(1/N⁴)`.
pub fn rotation_chain_alpha(n: usize) -> f64 {
    (1.0 / (n as f64).powi(4)).sin()
}

pub fn zero(d: usize) -> MatrixOperator {
    MatrixOperator::zero(d)
}

pub fn identity(d: usize) -> MatrixOperator {
    MatrixOperator::identity(d)
}

/// Graph `{(e1, e1), (0, e2)}` on `R²`.
pub fn max_r2() -> LinearRelation {
    LinearRelation::from_graph(2, &[[1.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]], &Tolerance::default())
        .expect("fixed graph")
}

/// Graph `{(e1, e2), (0, e3)}` on `R³`: 3*-monotone, not paramonotone, not
/// maximal.
pub fn star_not_pm() -> LinearRelation {
    LinearRelation::from_graph(
        3,
        &[[1.0, 0.0, 0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 0.0, 0.0, 1.0]],
        &Tolerance::default(),
    )
    .expect("fixed graph")
}

/// Graph `{(e1, e1)}` on `R²`: monotone but not maximal.
pub fn non_max() -> LinearRelation {
    LinearRelation::from_graph(2, &[[1.0, 0.0, 1.0, 0.0]], &Tolerance::default()).expect("fixed graph")
}

#[derive(Debug, Clone)]
pub enum CatalogObject {
    Operator(MatrixOperator),
    Relation(Box<LinearRelation>),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub object: CatalogObject,
    pub expected: ClassCode,
    pub provenance: String,
}

impl CatalogEntry {
    fn new(name: &str, object: CatalogObject, expected: &str, provenance: &str) -> Self {
        Self {
            name: name.into(),
            object,
            expected: expected.parse().expect("catalog codes are well formed"),
            provenance: provenance.into(),
        }
    }

    pub fn operator(&self) -> Option<&MatrixOperator> {
        match &self.object {
            CatalogObject::Operator(a) => Some(a),
            CatalogObject::Relation(_) => None,
        }
    }

    /// The entry as a relation; operators are lifted to their graphs.
    pub fn relation(&self, tol: &Tolerance) -> LinearRelation {
        match &self.object {
            CatalogObject::Operator(a) => LinearRelation::from_operator(a, tol),
            CatalogObject::Relation(r) => (**r).clone(),
        }
    }
}

fn op(name: &str, a: MatrixOperator, code: &str, provenance: &str) -> CatalogEntry {
    CatalogEntry::new(name, CatalogObject::Operator(a), code, provenance)
}

fn rel(name: &str, a: LinearRelation, code: &str, provenance: &str) -> CatalogEntry {
    CatalogEntry::new(name, CatalogObject::Relation(Box::new(a)), code, provenance)
}

/// Matrix examples with their expected codes.
pub fn operator_catalog() -> Vec<CatalogEntry> {
    let chain3 = rotation_chain(3).expect("N >= 1");
    let zero_chain3 =
        MatrixOperator::new(MatrixOperator::zero(1).matrix().block_diag(chain3.matrix())).expect("square");
    vec![
        op(
            "identity",
            identity(2),
            "11111",
            "identity on R^2; symmetric positive definite",
        ),
        op("zero", zero(2), "10111", "zero operator; PM, 3CM, MM and 3* but not SM"),
        op(
            "rotation_pi_2",
            rotation(FRAC_PI_2),
            "00010",
            "rotation by pi/2; skew, maximal monotone only",
        ),
        op(
            "rotation_1_3",
            rotation(1.3),
            "11011",
            "rotation with pi/3 < theta < pi/2; strict but not 3-cyclic",
        ),
        op(
            "projection",
            coordinate_projection(2, 1).expect("k <= d"),
            "10111",
            "coordinate projection (x1, x2) -> (x1, 0)",
        ),
        op(
            "tilde_r",
            tilde_r(),
            "11011",
            "[[1,-2],[3,1]]; strict, fails the 2x2 necessary 3-cyclic condition",
        ),
        op(
            "example_3x3",
            example_3x3(),
            "10011",
            "3x3 operator; PM and 3* but neither SM nor 3CM",
        ),
        op(
            "symmetric_pm_1_1",
            symmetric_pm_family(1.0, 1.0).expect("a > 0"),
            "10111",
            "rank-one symmetric [[a,b],[b,b^2/a]] at a = b = 1",
        ),
        op(
            "rotation_chain_1",
            rotation_chain(1).expect("N >= 1"),
            "11111",
            "single block at pi/2 - 1 < pi/3",
        ),
        op(
            "rotation_chain_3",
            chain3,
            "11011",
            "blocks at pi/2 - 1/k^4, k = 1..3; strict, not 3-cyclic",
        ),
        op(
            "zero_x_rotation_chain_3",
            zero_chain3,
            "10011",
            "finite truncation of 0 x rotation chain; loses SM, keeps PM and 3*",
        ),
    ]
}

/// Relation examples with their expected codes.
pub fn relation_catalog() -> Vec<CatalogEntry> {
    let tol = Tolerance::default();
    vec![
        rel(
            "max_r2",
            max_r2(),
            "11111",
            "graph {(e1,e1),(0,e2)} on R^2; maximal, dim graph = 2",
        ),
        rel(
            "star_not_pm",
            star_not_pm(),
            "00101",
            "graph {(e1,e2),(0,e3)} on R^3; 3* without paramonotonicity",
        ),
        rel(
            "star_not_pm_extended",
            star_not_pm().extend_by_domain_perp(&tol),
            "10111",
            "star_not_pm + {0} x (dom A)^perp; becomes paramonotone and maximal",
        ),
        rel(
            "non_max",
            non_max(),
            "11101",
            "graph {(e1,e1)} on R^2; monotone, dim graph 1 < 2",
        ),
    ]
}

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::code::ClassCode;
use crate::numerics::matrix::{dot, sub_vec};
use crate::numerics::Subspace;

/// Brézis–Haraux constant `sup{α ≥ 0 : ⟨x, Ax⟩ ≥ α|Ax|² ∀x}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaStar {
    Finite(f64),
    /// Only the zero operator: every α qualifies.
    Unbounded,
}

impl AlphaStar {
    pub fn value(&self) -> f64 {
        match self {
            AlphaStar::Finite(a) => *a,
            AlphaStar::Unbounded => f64::INFINITY,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AlphaRepr {
    Finite(f64),
    Marker(String),
}

impl Serialize for AlphaStar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            AlphaStar::Finite(a) => AlphaRepr::Finite(*a),
            AlphaStar::Unbounded => AlphaRepr::Marker("unbounded".into()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlphaStar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match AlphaRepr::deserialize(d)? {
            AlphaRepr::Finite(a) => Ok(AlphaStar::Finite(a)),
            AlphaRepr::Marker(m) if m == "unbounded" => Ok(AlphaStar::Unbounded),
            AlphaRepr::Marker(m) => Err(serde::de::Error::custom(format!("unknown alpha_star marker {m:?}"))),
        }
    }
}

/// A cycle of graph points `(x_i, x_i*)` and its cycle sum
/// `Σ ⟨x_i − x_{i+1}, x_i*⟩` with `x_{n+1} = x_1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub points: Vec<Vec<f64>>,
    pub images: Vec<Vec<f64>>,
    pub sum: f64,
}

impl CycleWitness {
    pub fn new(points: Vec<Vec<f64>>, images: Vec<Vec<f64>>) -> Self {
        let sum = cycle_sum(&points, &images);
        Self { points, images, sum }
    }

    /// Re-evaluates the cycle sum from the stored points.
    pub fn recompute(&self) -> f64 {
        cycle_sum(&self.points, &self.images)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `Σ ⟨x_i − x_{i+1}, x_i*⟩` evaluated term by term.
pub fn cycle_sum(points: &[Vec<f64>], images: &[Vec<f64>]) -> f64 {
    let n = points.len();
    (0..n)
        .map(|i| dot(&sub_vec(&points[i], &points[(i + 1) % n]), &images[i]))
        .sum()
}

/// Structural data reported for linear relations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationSummary {
    pub graph_dim: usize,
    pub dom_dim: usize,
    pub ran_dim: usize,
    pub a0_dim: usize,
    pub ker_dim: usize,
    pub maximal: bool,
}

/// Class code plus the certificates behind each bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub code: ClassCode,
    pub monotone: bool,
    pub dim: usize,
    /// Smallest eigenvalue of the symmetric part (operators) or of the
    /// monotone form on graph coefficients (relations).
    pub lambda_min_sym: f64,
    /// Kernel of the symmetric part; for relations, the x-parts of graph
    /// points on which `⟨x, x*⟩` vanishes.
    pub ker_sym: Subspace,
    pub ker_full: Subspace,
    pub alpha_star: Option<AlphaStar>,
    pub cycle_witness: Option<CycleWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<RelationSummary>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    /// Copy with every real number rounded to `digits` significant digits,
    /// the precision used for printed output.
    pub fn rounded(&self, digits: usize) -> Self {
        let r = |x: f64| round_sig(x, digits);
        let rv = |v: &Vec<f64>| v.iter().map(|x| r(*x)).collect::<Vec<_>>();
        let rs = |s: &Subspace| Subspace::from_raw(s.ambient_dim(), s.basis().iter().map(rv).collect());
        Self {
            code: self.code,
            monotone: self.monotone,
            dim: self.dim,
            lambda_min_sym: r(self.lambda_min_sym),
            ker_sym: rs(&self.ker_sym),
            ker_full: rs(&self.ker_full),
            alpha_star: self.alpha_star.map(|a| match a {
                AlphaStar::Finite(v) => AlphaStar::Finite(r(v)),
                AlphaStar::Unbounded => AlphaStar::Unbounded,
            }),
            cycle_witness: self.cycle_witness.as_ref().map(|w| CycleWitness {
                points: w.points.iter().map(rv).collect(),
                images: w.images.iter().map(rv).collect(),
                sum: r(w.sum),
            }),
            relation: self.relation.clone(),
            notes: self.notes.clone(),
        }
    }
}

/// Rounds to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x)
}

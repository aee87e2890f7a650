//! Sampling falsifiers that evaluate the defining inequalities directly on
//! random graph points, as an independent check on the decision
//! procedures.
//!
//! Trial `i` draws from its own ChaCha8 stream (`seed`, stream `i`), and
//! trials run in parallel with the lowest-index hit winning, so results do
//! not depend on scheduling. A miss is evidence, not proof.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::matrix::{dot, norm, scaled, sub_vec};
use crate::numerics::Tolerance;
use crate::operators::MatrixOperator;
use crate::relations::{embed, LinearRelation};
use crate::report::{cycle_sum, CycleWitness};

/// Largest radial scale exponent: points are scaled by `2^(trial % 11)`.
const MAX_SCALE_EXP: usize = 10;

/// Candidates closer than this (relative) to the graph are not extensions.
const GRAPH_GAP: f64 = 1e-3;

/// Something whose graph can be sampled.
pub trait GraphSampler: Sync {
    fn ambient_dim(&self) -> usize;
    /// A random graph point `(x, x*)`.
    fn graph_point(&self, rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>);
    /// A random point of the domain.
    fn dom_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64>;
    /// A random point of the range.
    fn ran_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64>;
}

fn normal(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

impl GraphSampler for MatrixOperator {
    fn ambient_dim(&self) -> usize {
        self.dim()
    }

    fn graph_point(&self, rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
        let x = normal(rng, self.dim());
        let image = self.apply(&x).expect("length matches");
        (x, image)
    }

    fn dom_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        normal(rng, self.dim())
    }

    fn ran_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        self.apply(&normal(rng, self.dim())).expect("length matches")
    }
}

impl GraphSampler for LinearRelation {
    fn ambient_dim(&self) -> usize {
        LinearRelation::ambient_dim(self)
    }

    fn graph_point(&self, rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
        let c = normal(rng, self.graph_dim());
        self.graph_point(&c).expect("coefficient length matches")
    }

    fn dom_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let c = normal(rng, self.graph_dim());
        self.x_part().mul_vec(&c).expect("coefficient length matches")
    }

    fn ran_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let c = normal(rng, self.graph_dim());
        self.y_part().mul_vec(&c).expect("coefficient length matches")
    }
}

/// Searches for an n-cycle of graph points with negative cycle sum. A sum
/// counts as negative below `−abs·max(1, Σ|x_i||x_i*|)`.
pub fn sample_cycle<T: GraphSampler + ?Sized>(
    t: &T,
    n: usize,
    trials: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<Option<CycleWitness>> {
    if n < 2 {
        return Err(Error::Argument(format!("cycle length must be at least 2, got {n}")));
    }
    Ok((0..trials).into_par_iter().find_map_first(|trial| {
        let mut rng = trial_rng(seed, trial);
        let s = (1u64 << (trial % (MAX_SCALE_EXP + 1))) as f64;
        let (points, images): (Vec<_>, Vec<_>) = (0..n)
            .map(|_| {
                let (x, xs) = t.graph_point(&mut rng);
                (scaled(&x, s), scaled(&xs, s))
            })
            .unzip();
        let sum = cycle_sum(&points, &images);
        let magnitude: f64 = points.iter().zip(&images).map(|(x, xs)| norm(x) * norm(xs)).sum();
        (sum < -tol.abs * magnitude.max(1.0)).then_some(CycleWitness { points, images, sum })
    }))
}

/// Evidence that `sup ⟨z − y, y* − x*⟩` over the graph is unbounded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthWitness {
    pub z: Vec<f64>,
    pub xstar: Vec<f64>,
    /// Direction `(y, y*)` in the graph, scaled by `t` along the probe.
    pub y: Vec<f64>,
    pub ystar: Vec<f64>,
    pub t_final: f64,
    pub initial: f64,
    pub last: f64,
}

impl GrowthWitness {
    /// `⟨z − ty, ty* − x*⟩`.
    pub fn evaluate(&self, t: f64) -> f64 {
        rectangle_value(&self.z, &self.xstar, &self.y, &self.ystar, t)
    }
}

fn rectangle_value(z: &[f64], xstar: &[f64], y: &[f64], ystar: &[f64], t: f64) -> f64 {
    dot(&sub_vec(z, &scaled(y, t)), &sub_vec(&scaled(ystar, t), xstar))
}

/// Samples `z ∈ dom`, `x* ∈ ran` and a graph direction `(y, y*)`, then
/// follows `⟨z − ty, ty* − x*⟩` for `t = 1, 2, 4, …, scale_max`. Reports a
/// witness once the last value exceeds `10⁶·(1 + |value at t = 1|)`.
/// Meaningful only for monotone input.
pub fn probe_3star_growth<T: GraphSampler + ?Sized>(
    t: &T,
    trials: usize,
    seed: u64,
    scale_max: f64,
) -> Option<GrowthWitness> {
    (0..trials).into_par_iter().find_map_first(|trial| {
        let mut rng = trial_rng(seed, trial);
        let z = t.dom_point(&mut rng);
        let xstar = t.ran_point(&mut rng);
        let (y, ystar) = t.graph_point(&mut rng);
        let initial = rectangle_value(&z, &xstar, &y, &ystar, 1.0);
        let mut s = 1.0;
        let mut last = initial;
        while s * 2.0 <= scale_max {
            s *= 2.0;
            last = rectangle_value(&z, &xstar, &y, &ystar, s);
        }
        (last > 1e6 * (1.0 + initial.abs())).then_some(GrowthWitness {
            z,
            xstar,
            y,
            ystar,
            t_final: s,
            initial,
            last,
        })
    })
}

/// A point outside the graph that is monotonically related to it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtensionWitness {
    pub u: Vec<f64>,
    pub ustar: Vec<f64>,
    /// Distance of `(u, u*)` from the graph.
    pub gap: f64,
}

/// Searches for `(u, u*)` outside the graph with `⟨u − x, u* − x*⟩ ≥ 0` for
/// every graph point. Trials cycle through three candidate families:
/// Gaussian `(u, u*)`, `(0, w)` with `w ⊥ dom A` and `(w, 0)` with
/// `w ⊥ ran A`. The last two are always related to a monotone graph, and
/// `(0, w)` leaves the graph whenever `dom A + A0` misses some direction,
/// which is the case for every non-maximal monotone relation.
pub fn probe_extension(
    a: &LinearRelation,
    trials: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<Option<ExtensionWitness>> {
    if !a.is_monotone(tol) {
        return Err(Error::Precondition(
            "extension probing needs a monotone relation".into(),
        ));
    }
    let d = LinearRelation::ambient_dim(a);
    let dom_perp = a.dom().orth_complement();
    let ran_perp = a.ran().orth_complement();
    let found = (0..trials).into_par_iter().find_map_first(|trial| {
        let mut rng = trial_rng(seed, trial);
        let (u, ustar) = match trial % 3 {
            0 => (normal(&mut rng, d), normal(&mut rng, d)),
            1 => (vec![0.0; d], dom_perp.project(&normal(&mut rng, d)).expect("length d")),
            _ => (ran_perp.project(&normal(&mut rng, d)).expect("length d"), vec![0.0; d]),
        };
        let v = embed(&u, &ustar);
        let gap = a.graph().residual(&v).expect("length 2d");
        if gap <= GRAPH_GAP * norm(&v) || norm(&v) == 0.0 {
            return None;
        }
        match a.monotonically_related(&u, &ustar, tol) {
            Ok(true) => Some(ExtensionWitness { u, ustar, gap }),
            _ => None,
        }
    });
    Ok(found)
}

//! n-cyclic monotonicity of the rotation family `R_θ` on a grid of angles
//! plus probes just inside and outside `π/n`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use anyhow::{ensure, Result};
use monoclass::catalog::rotation;
use monoclass::Tolerance;
use serde::Serialize;

use crate::output::{num, Format};

/// Offset of the probes around `π/n`.
pub const PROBE: f64 = 1e-4;

#[derive(Debug, Clone, Serialize)]
pub struct Point {
    pub theta: f64,
    pub n: usize,
    pub cyclic: bool,
}

pub fn run(n_max: usize, grid: usize, tol: &Tolerance) -> Result<Vec<Point>> {
    ensure!(n_max >= 2, "--n-max must be at least 2, got {n_max}");
    ensure!(grid >= 2, "--grid must be at least 2, got {grid}");
    let mut points = Vec::new();
    for n in 2..=n_max {
        let edge = PI / n as f64;
        let mut thetas: Vec<f64> = (0..grid).map(|i| FRAC_PI_2 * i as f64 / (grid - 1) as f64).collect();
        thetas.extend(
            [edge - PROBE, edge + PROBE]
                .into_iter()
                .filter(|t| (0.0..=FRAC_PI_2).contains(t)),
        );
        thetas.sort_by(f64::total_cmp);
        for theta in thetas {
            let cyclic = rotation(theta).is_n_cyclic(n, tol)?.cyclic;
            points.push(Point { theta, n, cyclic });
        }
    }
    Ok(points)
}

pub fn render(points: &[Point], format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string(points)?),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["theta", "n", "cyclic"])?;
            for p in points {
                w.write_record([num(p.theta), p.n.to_string(), p.cyclic.to_string()])?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        Format::Text => {
            let mut out = format!("{:<16}  {:>2}  cyclic\n", "theta", "n");
            for p in points {
                let _ = writeln!(out, "{:<16}  {:>2}  {}", num(p.theta), p.n, p.cyclic);
            }
            Ok(out)
        }
        Format::Dot => anyhow::bail!("sweep output supports json, text and csv"),
    }
}

use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use monoclass::report::round_sig;
use monoclass::{AlphaStar, ClassificationReport, Subspace};

/// Significant digits of every printed real.
pub const DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
    Dot,
}

pub fn num(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig(x, DIGITS);
    if r == 0.0 || (1e-4..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

fn vector(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| num(*x)).collect();
    format!("[{}]", parts.join(", "))
}

fn subspace(s: &Subspace) -> String {
    if s.dim() == 0 {
        return "{0}".into();
    }
    let parts: Vec<String> = s.basis().iter().map(|b| vector(b)).collect();
    format!("span{{{}}}", parts.join(", "))
}

fn alpha(a: &Option<AlphaStar>) -> String {
    match a {
        Some(AlphaStar::Finite(v)) => num(*v),
        Some(AlphaStar::Unbounded) => "unbounded".into(),
        None => "n/a".into(),
    }
}

pub fn report_json(r: &ClassificationReport) -> Result<String> {
    Ok(serde_json::to_string(&r.rounded(DIGITS))?)
}

pub fn report_text(r: &ClassificationReport) -> String {
    let c = r.code;
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut rows: Vec<(&str, String)> = vec![
        ("code", c.to_string()),
        ("monotone", yes(r.monotone).into()),
        ("paramonotone", yes(c.pm).into()),
        ("strictly monotone", yes(c.sm).into()),
        ("3-cyclic monotone", yes(c.cm3).into()),
        ("maximal monotone", yes(c.mm).into()),
        ("3*-monotone", yes(c.star3).into()),
        ("dimension", r.dim.to_string()),
        ("lambda_min", num(r.lambda_min_sym)),
        ("ker sym", subspace(&r.ker_sym)),
        ("ker", subspace(&r.ker_full)),
        ("alpha*", alpha(&r.alpha_star)),
    ];
    if let Some(s) = &r.relation {
        rows.push(("graph dim", s.graph_dim.to_string()));
        rows.push(("dom dim", s.dom_dim.to_string()));
        rows.push(("ran dim", s.ran_dim.to_string()));
        rows.push(("A0 dim", s.a0_dim.to_string()));
        rows.push(("ker dim", s.ker_dim.to_string()));
        rows.push(("maximal", yes(s.maximal).into()));
    }
    if let Some(w) = &r.cycle_witness {
        rows.push(("cycle sum", num(w.sum)));
        for (i, (p, q)) in w.points.iter().zip(&w.images).enumerate() {
            rows.push((
                "cycle point",
                format!("x{} = {}, x{}* = {}", i + 1, vector(p), i + 1, vector(q)),
            ));
        }
    }
    for n in &r.notes {
        rows.push(("note", n.clone()));
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

pub fn report_csv(r: &ClassificationReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![
        "code",
        "pm",
        "sm",
        "cm3",
        "mm",
        "star3",
        "monotone",
        "dim",
        "lambda_min_sym",
    ];
    header.extend(["ker_sym_dim", "ker_dim", "alpha_star", "cycle_sum"]);
    let bit = |b: bool| if b { "1" } else { "0" }.to_string();
    let c = r.code;
    let mut row = vec![c.to_string(), bit(c.pm), bit(c.sm), bit(c.cm3), bit(c.mm), bit(c.star3)];
    row.extend([bit(r.monotone), r.dim.to_string(), num(r.lambda_min_sym)]);
    row.extend([
        r.ker_sym.dim().to_string(),
        r.ker_full.dim().to_string(),
        alpha(&r.alpha_star),
        r.cycle_witness.as_ref().map_or(String::new(), |w| num(w.sum)),
    ]);
    if let Some(s) = &r.relation {
        header.extend(["graph_dim", "dom_dim", "ran_dim", "a0_dim", "maximal"]);
        row.extend([
            s.graph_dim.to_string(),
            s.dom_dim.to_string(),
            s.ran_dim.to_string(),
            s.a0_dim.to_string(),
            bit(s.maximal),
        ]);
    }
    w.write_record(&header)?;
    w.write_record(&row)?;
    Ok(String::from_utf8(w.into_inner()?)?)
}

//! Class-relationship tables for monotone linear operators, with every
//! example row classified live and every impossible row checked against
//! random draws.

use std::fmt::Write as _;

use anyhow::{ensure, Result};
use clap::ValueEnum;
use monoclass::catalog::{self, operator_catalog, rotation_chain, rotation_chain_alpha};
use monoclass::products::product_op;
use monoclass::random::{random_monotone_2x2, random_monotone_nxn};
use monoclass::{classify, AlphaStar, ClassCode, MatrixOperator, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::output::{num, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// Monotone linear operators on R^2.
    R2,
    /// Monotone linear operators on a general Hilbert space.
    Hilbert,
}

/// Random draws used to check each impossible row.
const IMPOSSIBLE_SAMPLES: usize = 2_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Exists,
    Impossible,
    InfiniteDimensionalOnly,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Exists => "exists",
            Status::Impossible => "impossible",
            Status::InfiniteDimensionalOnly => "infinite-dimensional only",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaPoint {
    pub n: usize,
    pub computed: f64,
    pub closed_form: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    /// `PM SM 3CM MM 3*`; `None` stands for either value.
    pub pattern: [Option<bool>; 5],
    pub status: Status,
    pub example: Option<String>,
    /// Live class code of the example.
    pub code: Option<ClassCode>,
    pub matches: Option<bool>,
    /// Random draws that landed in an impossible row.
    pub hits: Option<usize>,
    pub samples: Option<usize>,
    pub alpha_series: Vec<AlphaPoint>,
    pub citation: String,
}

fn pattern(s: &str) -> [Option<bool>; 5] {
    let c: Vec<Option<bool>> = s
        .chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect();
    // Every linear operator with full domain is maximal monotone.
    [c[0], c[1], c[2], Some(true), c[3]]
}

fn fits(p: &[Option<bool>; 5], code: ClassCode) -> bool {
    p.iter().zip(code.bits()).all(|(p, b)| p.is_none_or(|p| p == b))
}

fn pattern_string(p: &[Option<bool>; 5]) -> String {
    p.iter()
        .map(|b| match b {
            Some(true) => '1',
            Some(false) => '0',
            None => '*',
        })
        .collect()
}

fn catalog_operator(name: &str) -> MatrixOperator {
    operator_catalog()
        .into_iter()
        .find(|e| e.name == name)
        .and_then(|e| e.operator().cloned())
        .unwrap_or_else(|| panic!("catalog entry {name} is an operator"))
}

fn exists(pat: &str, example: &str, citation: &str, tol: &Tolerance) -> Row {
    let p = pattern(pat);
    let code = classify(&catalog_operator(example), tol).code;
    Row {
        pattern: p,
        status: Status::Exists,
        example: Some(example.into()),
        code: Some(code),
        matches: Some(fits(&p, code)),
        hits: None,
        samples: None,
        alpha_series: Vec::new(),
        citation: citation.into(),
    }
}

fn impossible(pat: &str, citation: &str, codes: &[ClassCode]) -> Row {
    let p = pattern(pat);
    Row {
        pattern: p,
        status: Status::Impossible,
        example: None,
        code: None,
        matches: None,
        hits: Some(codes.iter().filter(|c| fits(&p, **c)).count()),
        samples: Some(codes.len()),
        alpha_series: Vec::new(),
        citation: citation.into(),
    }
}

/// Finite truncations `A_N` of an infinite block operator; the row carries
/// `α*(A_N)` for `N = 1..=decay` next to `sin(1/N⁴)`.
fn infinite_only(
    pat: &str,
    example: &str,
    citation: &str,
    decay: usize,
    truncation: impl Fn(usize) -> MatrixOperator,
    tol: &Tolerance,
) -> Row {
    let alpha_series = (1..=decay)
        .map(|n| {
            let computed = match classify(&truncation(n), tol).alpha_star {
                Some(AlphaStar::Finite(a)) => a,
                _ => f64::NAN,
            };
            AlphaPoint {
                n,
                computed,
                closed_form: rotation_chain_alpha(n),
            }
        })
        .collect();
    Row {
        pattern: pattern(pat),
        status: Status::InfiniteDimensionalOnly,
        example: Some(example.into()),
        code: None,
        matches: None,
        hits: None,
        samples: None,
        alpha_series,
        citation: citation.into(),
    }
}

fn sampled_codes(which: Which, tol: &Tolerance) -> Vec<ClassCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..IMPOSSIBLE_SAMPLES)
        .map(|_| {
            let a = match which {
                Which::R2 => random_monotone_2x2(&mut rng),
                Which::Hilbert => {
                    let n = rng.random_range(2..=4);
                    random_monotone_nxn(&mut rng, n)
                }
            };
            classify(&a, tol).code
        })
        .collect()
}

pub fn build(which: Which, alpha_decay: Option<usize>, tol: &Tolerance) -> Result<Vec<Row>> {
    let codes = sampled_codes(which, tol);
    let common_impossible = [
        ("0**1", "for linear operators 3* implies paramonotone"),
        ("**10", "3-cyclic monotone implies 3*-monotone"),
        ("0*1*", "3-cyclic and maximal monotone implies paramonotone"),
        ("01**", "strictly monotone implies paramonotone"),
    ];
    let mut rows = vec![exists("0000", "rotation_pi_2", "rotation by pi/2", tol)];
    rows.extend(common_impossible.iter().map(|(p, c)| impossible(p, c, &codes)));
    match which {
        Which::R2 => {
            ensure!(alpha_decay.is_none(), "--alpha-decay applies to the hilbert table only");
            rows.push(impossible(
                "1**0",
                "for linear operators paramonotone implies 3*",
                &codes,
            ));
            rows.push(impossible(
                "100*",
                "on R^2 paramonotone but not strict implies 3-cyclic",
                &codes,
            ));
            rows.push(exists(
                "1011",
                "projection",
                "coordinate projection (x1, x2) -> (x1, 0)",
                tol,
            ));
            rows.push(exists("1101", "rotation_1_3", "rotation with pi/3 < theta < pi/2", tol));
            rows.push(exists("1111", "identity", "identity", tol));
        }
        Which::Hilbert => {
            let decay = alpha_decay.unwrap_or(5);
            ensure!(decay >= 1, "--alpha-decay needs N >= 1");
            let chain = |n: usize| rotation_chain(n).expect("N >= 1");
            rows.push(infinite_only(
                "1000",
                "zero_x_rotation_chain",
                "0 x rotation chain with angles pi/2 - 1/k^4 on l2",
                decay,
                |n| product_op(&catalog::zero(1), &chain(n)),
                tol,
            ));
            rows.push(exists(
                "1001",
                "example_3x3",
                "3x3 operator [[1,-2,1],[3,1,3],[1,-2,1]]",
                tol,
            ));
            rows.push(exists("1011", "zero", "zero operator", tol));
            rows.push(infinite_only(
                "1100",
                "rotation_chain",
                "rotation chain with angles pi/2 - 1/k^4 on l2",
                decay,
                chain,
                tol,
            ));
            rows.push(exists("1101", "rotation_1_3", "rotation with pi/3 < theta < pi/2", tol));
            rows.push(exists("1111", "identity", "identity", tol));
        }
    }
    Ok(rows)
}

const HEADER: [&str; 12] = [
    "PM",
    "SM",
    "3CM",
    "MM",
    "3*",
    "status",
    "example",
    "code",
    "matches",
    "sampled_hits",
    "alpha_star",
    "citation",
];

fn cells(r: &Row) -> Vec<String> {
    let mut cells: Vec<String> = pattern_string(&r.pattern).chars().map(String::from).collect();
    let series: Vec<String> = r.alpha_series.iter().map(|a| num(a.computed)).collect();
    cells.extend([
        r.status.label().to_string(),
        r.example.clone().unwrap_or_default(),
        r.code.map(|c| c.to_string()).unwrap_or_default(),
        r.matches.map(|m| m.to_string()).unwrap_or_default(),
        match (r.hits, r.samples) {
            (Some(h), Some(s)) => format!("{h}/{s}"),
            _ => String::new(),
        },
        series.join(";"),
        r.citation.clone(),
    ]);
    cells
}

pub fn render(rows: &[Row], format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string(rows)?),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(HEADER)?;
            for r in rows {
                w.write_record(cells(r))?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        Format::Text => Ok(text(rows)),
        Format::Dot => Ok(dot(rows)),
    }
}

fn text(rows: &[Row]) -> String {
    let table: Vec<Vec<String>> = std::iter::once(HEADER.iter().map(|h| h.to_string()).collect())
        .chain(rows.iter().map(cells))
        .collect();
    let widths: Vec<usize> = (0..HEADER.len())
        .map(|j| table.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &table {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

/// Membership summary: one node per class, one node per row, and an edge
/// from a row to each class its pattern includes for certain.
fn dot(rows: &[Row]) -> String {
    let classes = ["PM", "SM", "3CM", "MM", "3*"];
    let mut out = String::from("graph membership {\n  node [shape=ellipse];\n");
    for c in classes {
        let _ = writeln!(out, "  \"{c}\";");
    }
    out.push_str("  node [shape=box];\n");
    for (i, r) in rows.iter().enumerate() {
        let id = format!("row{i}");
        let name = r.example.as_deref().unwrap_or("none");
        let style = match r.status {
            Status::Exists => "solid",
            Status::Impossible => "dashed",
            Status::InfiniteDimensionalOnly => "dotted",
        };
        let _ = writeln!(
            out,
            "  {id} [label=\"{}\\n{}\\n{}\", style={style}];",
            pattern_string(&r.pattern),
            r.status.label(),
            name
        );
        for (c, b) in classes.iter().zip(&r.pattern) {
            if *b == Some(true) {
                let _ = writeln!(out, "  {id} -- \"{c}\";");
            }
        }
    }
    out.push_str("}\n");
    out
}

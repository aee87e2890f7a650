//! Matrix and graph-basis readers. Both accept JSON arrays of arrays or
//! CSV rows; JSON is detected by a leading `[`.

use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use monoclass::{LinearRelation, MatrixOperator, Tolerance};

/// Where a table of reals comes from.
pub enum Source<'a> {
    Inline(&'a str),
    File(&'a Path),
}

impl Source<'_> {
    fn read(&self) -> Result<String> {
        match self {
            Source::Inline(s) => Ok((*s).to_owned()),
            Source::File(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        }
    }
}

pub fn parse_rows(text: &str) -> Result<Vec<Vec<f64>>> {
    let trimmed = text.trim();
    ensure!(!trimmed.is_empty(), "empty input");
    let rows: Vec<Vec<f64>> = if trimmed.starts_with('[') {
        serde_json::from_str(trimmed).context("expected a JSON array of arrays of numbers")?
    } else {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .flexible(true)
            .comment(Some(b'#'))
            .from_reader(trimmed.as_bytes());
        let mut rows = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let record = record.with_context(|| format!("CSV row {}", i + 1))?;
            let row = record
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .with_context(|| format!("CSV row {}: {f:?} is not a number", i + 1))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        rows
    };
    ensure!(!rows.is_empty(), "no rows in input");
    for (i, r) in rows.iter().enumerate() {
        if let Some(x) = r.iter().find(|x| !x.is_finite()) {
            bail!("row {} contains a non-finite value {x}", i + 1);
        }
    }
    Ok(rows)
}

pub fn read_matrix(src: &Source) -> Result<MatrixOperator> {
    let rows = parse_rows(&src.read()?)?;
    let n = rows.len();
    for (i, r) in rows.iter().enumerate() {
        ensure!(
            r.len() == n,
            "matrix must be square: row {} has {} entries, expected {n}",
            i + 1,
            r.len()
        );
    }
    Ok(MatrixOperator::from_rows(&rows)?)
}

/// Rows of `2d` reals, each a graph vector `(x, x*)`.
pub fn read_relation(src: &Source, tol: &Tolerance) -> Result<LinearRelation> {
    let rows = parse_rows(&src.read()?)?;
    let len = rows[0].len();
    ensure!(
        len > 0 && len % 2 == 0,
        "graph rows need an even, positive length 2d; got {len}"
    );
    for (i, r) in rows.iter().enumerate() {
        ensure!(r.len() == len, "row {} has {} entries, expected {len}", i + 1, r.len());
    }
    Ok(LinearRelation::from_graph(len / 2, &rows, tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_and_csv_agree() {
        let a = parse_rows("[[1, -2], [3, 1]]").unwrap();
        let b = parse_rows("1,-2\n 3, 1\n").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_ragged_and_odd_input() {
        assert!(read_matrix(&Source::Inline("[[1,2],[3]]")).is_err());
        assert!(read_matrix(&Source::Inline("[]")).is_err());
        let tol = Tolerance::default();
        assert!(read_relation(&Source::Inline("1,0,1"), &tol).is_err());
        assert!(read_relation(&Source::Inline("1,0,1,0\n1,0"), &tol).is_err());
        assert!(read_relation(&Source::Inline("1,0,1,0\n0,0,0,1"), &tol).is_ok());
    }
}

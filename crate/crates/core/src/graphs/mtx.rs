//! Matrix Market coordinate files for real symmetric matrices.
//!
//! Writing always produces `%%MatrixMarket matrix coordinate real symmetric` with
//! the lower triangle, 1-based indices and shortest round-trip float formatting.
//! Reading accepts `real` or `integer` fields with `symmetric` or `general`
//! symmetry; a `general` file must describe a symmetric matrix.

use std::fmt::Write as _;
use std::path::Path;

use super::SparseSymMatrix;
use crate::error::{Error, Result};

/// Largest dimension accepted from a file header.
pub const MAX_DIMENSION: usize = 1 << 24;

const HEADER: &str = "%%MatrixMarket matrix coordinate real symmetric";

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

#[derive(Clone, Copy, PartialEq)]
enum Symmetry {
    Symmetric,
    General,
}

/// Parse Matrix Market text into a symmetric matrix.
pub fn parse_matrix_market(text: &str) -> Result<SparseSymMatrix> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));

    let (hline, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let tokens: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" {
        return Err(perr(
            hline,
            "expected '%%MatrixMarket matrix coordinate <field> <symmetry>'",
        ));
    }
    if tokens[1] != "matrix" || tokens[2] != "coordinate" {
        return Err(perr(hline, "only 'matrix coordinate' files are supported"));
    }
    match tokens[3].as_str() {
        "real" | "integer" => {}
        other => return Err(perr(hline, format!("unsupported field '{other}'"))),
    }
    let symmetry = match tokens[4].as_str() {
        "symmetric" => Symmetry::Symmetric,
        "general" => Symmetry::General,
        other => return Err(perr(hline, format!("unsupported symmetry '{other}'"))),
    };

    let mut data = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });

    let (sline, size) = data.next().ok_or_else(|| perr(hline + 1, "missing size line"))?;
    let dims: Vec<&str> = size.split_whitespace().collect();
    if dims.len() != 3 {
        return Err(perr(sline, "size line must hold 'rows cols entries'"));
    }
    let parse_count = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| perr(sline, format!("invalid count '{s}'")))
    };
    let (rows, cols, nnz) = (parse_count(dims[0])?, parse_count(dims[1])?, parse_count(dims[2])?);
    if rows != cols {
        return Err(perr(sline, format!("matrix must be square, got {rows} x {cols}")));
    }
    if rows == 0 || rows > MAX_DIMENSION {
        return Err(perr(sline, format!("dimension {rows} outside 1..={MAX_DIMENSION}")));
    }
    let n = rows;

    let mut seen = std::collections::HashSet::new();
    let mut triplets = Vec::with_capacity(nnz.min(1 << 20));
    let mut count = 0usize;
    for (lno, line) in data {
        count += 1;
        if count > nnz {
            return Err(perr(lno, format!("more entries than the {nnz} declared")));
        }
        let mut it = line.split_whitespace();
        let (Some(si), Some(sj), Some(sv), None) = (it.next(), it.next(), it.next(), it.next()) else {
            return Err(perr(lno, "entry line must hold 'row col value'"));
        };
        let index = |s: &str| -> Result<usize> {
            let k = s
                .parse::<usize>()
                .map_err(|_| perr(lno, format!("invalid index '{s}'")))?;
            if k == 0 || k > n {
                return Err(perr(lno, format!("index {k} outside 1..={n}")));
            }
            Ok(k - 1)
        };
        let (i, j) = (index(si)?, index(sj)?);
        let v: f64 = sv.parse().map_err(|_| perr(lno, format!("invalid value '{sv}'")))?;
        if !v.is_finite() {
            return Err(perr(lno, "non-finite value"));
        }
        let key = match symmetry {
            Symmetry::Symmetric => (i.max(j), i.min(j)),
            Symmetry::General => (i, j),
        };
        if !seen.insert(key) {
            return Err(perr(lno, format!("duplicate entry ({}, {})", i + 1, j + 1)));
        }
        triplets.push((i, j, v));
    }
    if count != nnz {
        return Err(perr(0, format!("declared {nnz} entries, found {count}")));
    }
    let result = match symmetry {
        Symmetry::Symmetric => SparseSymMatrix::from_triangle(n, triplets),
        Symmetry::General => SparseSymMatrix::from_triplets(n, triplets),
    };
    result.map_err(|e| match e {
        Error::Domain { msg, .. } => perr(0, msg),
        other => other,
    })
}

/// Render `a` as Matrix Market text (lower triangle, 1-based).
pub fn to_matrix_market(a: &SparseSymMatrix, comment: Option<&str>) -> String {
    let lower: Vec<_> = a.lower_triplets().collect();
    let mut out = String::with_capacity(32 * lower.len() + 128);
    out.push_str(HEADER);
    out.push('\n');
    if let Some(c) = comment {
        for l in c.lines() {
            let _ = writeln!(out, "% {l}");
        }
    }
    let _ = writeln!(out, "{} {} {}", a.n(), a.n(), lower.len());
    for (i, j, v) in lower {
        let _ = writeln!(out, "{} {} {:?}", i + 1, j + 1, v);
    }
    out
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<SparseSymMatrix> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix_market(&text)
}

pub fn write_matrix_market(path: impl AsRef<Path>, a: &SparseSymMatrix, comment: Option<&str>) -> Result<()> {
    std::fs::write(path, to_matrix_market(a, comment))?;
    Ok(())
}

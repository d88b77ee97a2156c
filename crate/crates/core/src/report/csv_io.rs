use std::fmt::Write as _;

use crate::densefun::cycle_sqrt_entry;
use crate::error::{Error, Result};

use super::DecayReport;

fn float(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV with header `j,distance,abs_entry,<kinds>` and, with trivial capping,
/// `<kind>_capped` columns; absent bounds are empty fields, unreachable nodes have
/// distance `inf`.
pub fn emit_csv(report: &DecayReport) -> String {
    let mut header = vec!["j".to_string(), "distance".into(), "abs_entry".into()];
    header.extend(report.bound_kinds.iter().map(|k| k.name().to_string()));
    if report.cap_trivial {
        header.extend(report.bound_kinds.iter().map(|k| format!("{}_capped", k.name())));
    }
    let mut out = header.join(",");
    out.push('\n');
    for r in &report.records {
        let _ = write!(
            out,
            "{},{},{}",
            r.j,
            r.distance.map_or_else(|| "inf".to_string(), |d| d.to_string()),
            float(r.abs_entry)
        );
        for k in &report.bound_kinds {
            out.push(',');
            if let Some(b) = r.bounds.get(k) {
                out.push_str(&float(b.value));
            }
        }
        if report.cap_trivial {
            for k in &report.bound_kinds {
                out.push(',');
                if let Some(c) = r.capped.get(k) {
                    out.push_str(&float(*c));
                }
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub j: usize,
    pub distance: Option<usize>,
    /// One entry per header after `j` and `distance`.
    pub values: Vec<Option<f64>>,
}

/// A parsed decay CSV: the leading `j,distance` columns plus numeric columns.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub headers: Vec<String>,
    pub rows: Vec<CsvRow>,
}

impl CsvTable {
    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.headers[2..]
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Parse {
                line: 1,
                msg: format!("no column '{name}'; available: {}", self.headers[2..].join(", ")),
            })
    }

    /// `(distance, value)` pairs of column `name`, skipping unreachable nodes and empty fields.
    pub fn series(&self, name: &str) -> Result<Vec<(f64, f64)>> {
        let c = self.column_index(name)?;
        Ok(self
            .rows
            .iter()
            .filter_map(|r| Some((r.distance? as f64, r.values[c]?)))
            .collect())
    }
}

pub fn parse_csv(text: &str) -> Result<CsvTable> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let csv_err = |e: csv::Error| Error::Parse {
        line: e.position().map_or(0, |p| p.line() as usize),
        msg: e.to_string(),
    };
    let headers: Vec<String> = reader
        .headers()
        .map_err(csv_err)?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    if headers.len() < 2 || headers[0] != "j" || headers[1] != "distance" {
        return Err(Error::Parse {
            line: 1,
            msg: "header must start with 'j,distance'".into(),
        });
    }
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let perr = |msg: String| Error::Parse { line, msg };
        let j = rec[0]
            .trim()
            .parse::<usize>()
            .map_err(|_| perr(format!("invalid node number '{}'", &rec[0])))?;
        let distance = match rec[1].trim() {
            "inf" => None,
            s => Some(
                s.parse::<usize>()
                    .map_err(|_| perr(format!("invalid distance '{s}'")))?,
            ),
        };
        let values = rec
            .iter()
            .skip(2)
            .map(|f| match f.trim() {
                "" => Ok(None),
                s => s
                    .parse::<f64>()
                    .map(Some)
                    .map_err(|_| perr(format!("invalid number '{s}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(CsvRow { j, distance, values });
    }
    Ok(CsvTable { headers, rows })
}

/// Column `source` (1-based) of the square root of the odd cycle Laplacian, from the
/// closed form: `j,distance,value,abs_entry`.
pub fn cycle_exact_csv(n: usize, source: usize) -> Result<String> {
    if source == 0 || source > n {
        return Err(Error::Index { index: source, n });
    }
    let mut out = String::from("j,distance,value,abs_entry\n");
    for j in (1..=n).filter(|&j| j != source) {
        let v = cycle_sqrt_entry(n, j - 1, source - 1)?;
        let gap = j.abs_diff(source);
        let _ = writeln!(out, "{j},{},{},{}", gap.min(n - gap), float(v), float(v.abs()));
    }
    Ok(out)
}

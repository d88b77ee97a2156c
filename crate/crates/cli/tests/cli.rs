use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bernstein_decay::report::{parse_csv, DecayReport};

fn bdecay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdecay"))
        .args(args)
        .output()
        .expect("failed to run bdecay")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen(dir: &Path, name: &str, extra: &[&str]) -> PathBuf {
    let out = dir.join(name);
    let mut args = vec!["gen"];
    args.extend_from_slice(extra);
    args.extend_from_slice(&["--out", path_str(&out)]);
    let o = bdecay(&args);
    assert!(o.status.success(), "gen failed: {}", stderr(&o));
    out
}

#[test]
fn constants_match_the_worked_example() {
    let o = bdecay(&["constants", "--alpha", "0.5", "--rho", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "asymptotic_constant = 3.43\njackson_constant = 8.39\n");
    let o = bdecay(&["constants", "--alpha", "0.25", "--rho", "4"]);
    assert_eq!(stdout(&o), "asymptotic_constant = 2.18\njackson_constant = 7.06\n");
}

#[test]
fn domain_and_usage_errors_exit_2() {
    let o = bdecay(&["constants", "--alpha", "1.5", "--rho", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("alpha"));
    assert!(stdout(&o).is_empty());

    assert_eq!(bdecay(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(bdecay(&["constants", "--alpha", "0.5"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.mtx");
    let o = bdecay(&["gen", "--kind", "geometric", "--n", "50", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--radius"));
}

#[test]
fn grid_check_passes_for_definite_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let m = gen(
        dir.path(),
        "grid.mtx",
        &["--kind", "grid2d", "--n", "31", "--sigma", "0.1"],
    );
    let o = bdecay(&[
        "check",
        "--matrix",
        path_str(&m),
        "--source",
        "481",
        "--func",
        "frac:0.5",
        "--bounds",
        "quadposdef,stieltjes",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains(" 0 violations"));
}

#[test]
fn singular_matrix_rejects_definite_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let m = gen(dir.path(), "chain.mtx", &["--kind", "chain", "--n", "40"]);
    let o = bdecay(&[
        "check",
        "--matrix",
        path_str(&m),
        "--source",
        "1",
        "--func",
        "frac:0.5",
        "--bounds",
        "stieltjes",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("requires lambda_min > 0"), "{}", stderr(&o));
}

#[test]
fn corrupted_report_fails_check() {
    let dir = tempfile::tempdir().unwrap();
    let m = gen(dir.path(), "chain.mtx", &["--kind", "chain", "--n", "60"]);
    let json = dir.path().join("r.json");
    let o = bdecay(&[
        "report",
        "--matrix",
        path_str(&m),
        "--source",
        "1",
        "--func",
        "frac:0.5",
        "--bounds",
        "closedfrac,jackson",
        "--format",
        "json",
        "--out",
        path_str(&json),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = bdecay(&["check", "--report", path_str(&json)]);
    assert_eq!(o.status.code(), Some(0));

    let mut report = DecayReport::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
    let r = report.records.iter_mut().find(|r| r.distance == Some(5)).unwrap();
    r.abs_entry = r.bounds.values().map(|b| b.value).fold(0.0, f64::max) * 10.0;
    fs::write(&json, report.to_json().unwrap()).unwrap();
    let o = bdecay(&["check", "--report", path_str(&json)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("violation: j = 6, distance 5"), "{}", stderr(&o));
}

#[test]
fn report_is_deterministic_and_formats_agree() {
    let dir = tempfile::tempdir().unwrap();
    let m = gen(
        dir.path(),
        "geo.mtx",
        &["--kind", "geometric", "--n", "120", "--radius", "0.2", "--seed", "5"],
    );
    let m2 = gen(
        dir.path(),
        "geo2.mtx",
        &["--kind", "geometric", "--n", "120", "--radius", "0.2", "--seed", "5"],
    );
    assert_eq!(fs::read(&m).unwrap(), fs::read(&m2).unwrap());

    let run = |format: &str, out: &Path| {
        let o = bdecay(&[
            "report",
            "--matrix",
            path_str(&m),
            "--source",
            "3",
            "--func",
            "frac:0.25",
            "--bounds",
            "closedfrac,quadsemidef,jackson",
            "--format",
            format,
            "--out",
            path_str(out),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        fs::read_to_string(out).unwrap()
    };
    let a = run("csv", &dir.path().join("a.csv"));
    let b = run("csv", &dir.path().join("b.csv"));
    assert_eq!(a, b);
    let report = DecayReport::from_json(&run("json", &dir.path().join("r.json"))).unwrap();
    let table = parse_csv(&a).unwrap();
    assert_eq!(table.rows.len(), 119);
    let entry_col = table.column_index("abs_entry").unwrap();
    let closed_col = table.column_index("closedfrac").unwrap();
    for (row, rec) in table.rows.iter().zip(&report.records) {
        assert_eq!(row.j, rec.j);
        assert_eq!(row.distance, rec.distance);
        assert_eq!(row.values[entry_col].unwrap().to_bits(), rec.abs_entry.to_bits());
        let closed = rec
            .bounds
            .get(&"closedfrac".parse().unwrap())
            .map(|b| b.value.to_bits());
        assert_eq!(row.values[closed_col].map(f64::to_bits), closed);
    }
}

#[test]
fn cycle_exact_matches_report_entries() {
    let dir = tempfile::tempdir().unwrap();
    let m = gen(dir.path(), "cycle.mtx", &["--kind", "cycle", "--n", "101"]);
    let exact = dir.path().join("exact.csv");
    let o = bdecay(&["cycle-exact", "--n", "101", "--source", "1", "--out", path_str(&exact)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = bdecay(&[
        "report",
        "--matrix",
        path_str(&m),
        "--source",
        "1",
        "--func",
        "frac:0.5",
        "--bounds",
        "jackson",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));

    let exact = parse_csv(&fs::read_to_string(&exact).unwrap()).unwrap();
    let report = parse_csv(&stdout(&o)).unwrap();
    let ev = exact.column_index("abs_entry").unwrap();
    let rv = report.column_index("abs_entry").unwrap();
    let mut compared = 0;
    for row in &report.rows {
        let e = exact.rows.iter().find(|r| r.j == row.j).unwrap();
        assert!((e.values[ev].unwrap() - row.values[rv].unwrap()).abs() < 1e-10);
        compared += 1;
    }
    assert_eq!(compared, 100);
}

#[test]
fn slope_of_closed_sqrt_bound() {
    let dir = tempfile::tempdir().unwrap();
    let m = gen(dir.path(), "chain.mtx", &["--kind", "chain", "--n", "1001"]);
    let csv = dir.path().join("sqrt.csv");
    let o = bdecay(&[
        "report",
        "--matrix",
        path_str(&m),
        "--source",
        "1",
        "--func",
        "frac:0.5",
        "--bounds",
        "closedsqrt",
        "--out",
        path_str(&csv),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = bdecay(&[
        "slope",
        "--in",
        path_str(&csv),
        "--column",
        "closedsqrt",
        "--dmin",
        "100",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let slope: f64 = stdout(&o).trim().parse().unwrap();
    assert!((slope + 1.0).abs() <= 0.02, "slope {slope}");

    let o = bdecay(&["slope", "--in", path_str(&csv), "--column", "nope", "--dmin", "100"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cap_trivial_adds_columns() {
    let dir = tempfile::tempdir().unwrap();
    let m = gen(dir.path(), "chain.mtx", &["--kind", "chain", "--n", "30"]);
    let o = bdecay(&[
        "report",
        "--matrix",
        path_str(&m),
        "--source",
        "2",
        "--func",
        "frac:0.75",
        "--bounds",
        "closedfrac",
        "--cap-trivial",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("j,distance,abs_entry,closedfrac,closedfrac_capped\n"));
    let table = parse_csv(&text).unwrap();
    let (b, c) = (
        table.column_index("closedfrac").unwrap(),
        table.column_index("closedfrac_capped").unwrap(),
    );
    for row in table.rows.iter().filter(|r| r.distance.is_some_and(|d| d >= 2)) {
        assert!(row.values[c].unwrap() <= row.values[b].unwrap());
    }
}

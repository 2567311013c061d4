use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

const EXPECTED: &str = include_str!("../../core/data/table1_expected.tsv");

fn sp4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sp4"))
        .args(args)
        .output()
        .expect("spawn sp4")
}

fn sp4_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sp4"))
        .args(args)
        .env(key, value)
        .output()
        .expect("spawn sp4")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn data_rows(s: &str) -> Vec<&str> {
    s.lines().skip(1).filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn classify_prints_fourteen_rows() {
    let o = sp4(&["classify"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(data_rows(&stdout(&o)).len(), 14);
}

#[test]
fn lattices_for_quintic_and_mc_filter() {
    let o = sp4(&["lattices", "--m", "5", "--a", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(data_rows(&stdout(&o)).len(), 2);

    let o = sp4(&["lattices", "--m", "16", "--a", "8", "--mirror-consistent"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.contains("\ttrue\t")));
}

#[test]
fn unknown_pair_exits_2_and_lists_valid_pairs() {
    let o = sp4(&["lattices", "--m", "7", "--a", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("(5,5)"));
}

#[test]
fn series_quintic_leading_terms() {
    let o = sp4(&["series", "quintic", "--order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for c in ["24/625", "4536/390625"] {
        assert!(out.contains(c), "missing {c} in\n{out}");
    }
}

#[test]
fn bad_exponent_exits_2() {
    let o = sp4(&["series", "hypergeom", "--exponents", "0,1/2,1/2,1/2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn restriction_reports_kappa() {
    let o = sp4(&["series", "restrict-212", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("2985984"));
}

#[test]
fn twin_span_index_is_5() {
    let o = sp4(&["polytope", "span-index", &fixture("quintic-twin.poly")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# index\t5"));
}

#[test]
fn reflexive_fixtures() {
    for f in [
        "quintic.poly",
        "quintic-dual.poly",
        "quintic-twin.poly",
        "quintic-twin-dual.poly",
        "kreuzer-scheidegger-212.poly",
    ] {
        let o = sp4(&["polytope", "reflexive", &fixture(f)]);
        assert_eq!(o.status.code(), Some(0), "{f}");
        assert!(stdout(&o).contains("# reflexive\ttrue"), "{f}");
    }
}

#[test]
fn malformed_polytope_exits_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.poly");
    fs::write(&p, "dim 2\n0 0\n1 x\n").unwrap();
    let o = sp4(&["polytope", "polar", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn boundary_origin_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("tri.poly");
    fs::write(&p, "dim 2\n0 0\n1 0\n0 1\n").unwrap();
    let o = sp4(&["polytope", "polar", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn invalid_thread_count_exits_2() {
    let o = sp4_env(&["classify"], "SP4_THREADS", "abc");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    for args in [
        &["table1"][..],
        &["lattices", "--m", "16", "--a", "8"][..],
        &["--format", "json", "lattices", "--m", "4", "--a", "4"][..],
    ] {
        let a = sp4(args);
        let b = sp4(args);
        let c = sp4_env(args, "SP4_THREADS", "1");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, c.stdout, "{args:?}");
        assert_eq!(a.status.code(), c.status.code());
    }
}

#[test]
fn json_and_tsv_carry_the_same_rows() {
    let tsv = sp4(&["lattices", "--m", "16", "--a", "8"]);
    let json = sp4(&["--format", "json", "lattices", "--m", "16", "--a", "8"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let out = stdout(&tsv);
    let tsv_rows = data_rows(&out);
    assert_eq!(rows.len(), tsv_rows.len());
    let header: Vec<&str> = out.lines().next().unwrap().split('\t').collect();
    for (row, line) in rows.iter().zip(&tsv_rows) {
        for (col, cell) in header.iter().zip(line.split('\t')) {
            let j = &row[*col];
            let as_text = match j {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            assert_eq!(as_text, cell, "column {col}");
        }
    }
}

fn perturbed_expectations() -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("expected.tsv");
    let text: String = EXPECTED
        .lines()
        .map(|l| {
            if l.starts_with("1\t4\t") {
                let mut f: Vec<&str> = l.split('\t').collect();
                f[3] = "2";
                f.join("\t")
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    fs::write(&p, text + "\n").unwrap();
    (dir, p)
}

#[test]
fn perturbed_expectations_fail_table1_and_name_row() {
    let (_dir, p) = perturbed_expectations();
    let o = sp4(&["table1", "--expected", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("(1,4)"), "{}", stderr(&o));
}

#[test]
fn perturbed_expectations_fail_verify_and_name_row() {
    let (_dir, p) = perturbed_expectations();
    let o = sp4(&["verify", "--expected", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(1,4)"), "{}", stdout(&o));
}

#[test]
fn malformed_expectations_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("expected.tsv");
    fs::write(&p, "1\t4\tnope\n").unwrap();
    let o = sp4(&["table1", "--expected", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

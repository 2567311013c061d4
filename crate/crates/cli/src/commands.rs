//! One function per subcommand; each returns a report or a coded failure.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_traits::{One, Signed};
use sha2::{Digest, Sha256};
use sp4_core::exact::rat::{fmt_rat, parse_rat};
use sp4_core::exact::{Rat, RatMatrix};
use sp4_core::lattices::{
    enumerate_lattices, invariants_rst, mirror_consistent, n1_content, parse_expected, table1_with, ExpectedRow,
    Table1Report, EXPECTED_TABLE1,
};
use sp4_core::monodromy::{enumerate_real_classes, MonodromyClass};
use sp4_core::periods::{hypergeom_series, quintic_series, restriction_matches, two_param_coeff, RationalSeries};
use sp4_core::polytopes::{is_reflexive, lattice_points, parse_polytope, points_span_index, polar_dual};

use crate::report::{Cell, Report};

/// A failure with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<sp4_core::Error> for Failure {
    fn from(e: sp4_core::Error) -> Self {
        use sp4_core::Error::*;
        let code = match e {
            Parse { .. } | Dimension(_) => 2,
            Internal(_) => 1,
            _ => 3,
        };
        Self { code, message: e.to_string() }
    }
}

/// A report plus an optional failure that should set the exit code after printing.
pub struct Outcome {
    pub report: Report,
    pub failure: Option<Failure>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Self { report, failure: None }
    }
}

pub fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn load_expected(path: Option<&Path>) -> Result<Vec<ExpectedRow>, Failure> {
    let text = match path {
        Some(p) => read_file(p)?,
        None => EXPECTED_TABLE1.to_string(),
    };
    parse_expected(&text).map_err(|e| Failure::usage(format!("expectation file: {e}")))
}

fn cyclotomic_label(cls: &MonodromyClass) -> String {
    match &cls.cyclotomic_indices {
        Some(ix) => ix.iter().map(|n| format!("Phi{n}")).collect::<Vec<_>>().join("*"),
        None => "-".into(),
    }
}

pub fn classify() -> Result<Outcome, Failure> {
    let mut report = Report::new("classify", &["m", "a", "exponents", "cyclotomic", "char_poly"]);
    for cls in enumerate_real_classes()? {
        report.push(vec![
            Cell::int(cls.m()),
            Cell::int(cls.a()),
            Cell::Rats(cls.exponents()?),
            Cell::text(cyclotomic_label(&cls)),
            Cell::text(cls.char_poly.to_string()),
        ]);
    }
    report.note("classes", Cell::int(report.rows.len() as i64));
    Ok(report.into())
}

pub fn find_class(m: i64, a: i64) -> Result<MonodromyClass, Failure> {
    let classes = enumerate_real_classes()?;
    let valid: Vec<String> = classes.iter().map(|c| format!("({},{})", c.m(), c.a())).collect();
    classes.into_iter().find(|c| c.m() == m && c.a() == a).ok_or_else(|| {
        Failure::usage(format!("(m, a) = ({m}, {a}) is not a real class; valid pairs: {}", valid.join(" ")))
    })
}

pub fn canonical_hash(m: &RatMatrix) -> String {
    let text = m.entries().iter().map(fmt_rat).collect::<Vec<_>>().join(",");
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn lattices(m: i64, a: i64, only_mirror_consistent: bool) -> Result<Outcome, Failure> {
    let cls = Arc::new(find_class(m, a)?);
    let mut report = Report::new(
        "lattices",
        &["t", "r", "s", "alpha", "beta", "gamma", "delta", "mu", "n1_content", "mirror_consistent", "canonical_sha256"],
    );
    let all = enumerate_lattices(&cls)?;
    for l in &all {
        let mc = mirror_consistent(l)?;
        if only_mirror_consistent && !mc {
            continue;
        }
        let rst = invariants_rst(l)?;
        let p = l.params;
        report.push(vec![
            Cell::int(rst.t),
            Cell::int(rst.r),
            Cell::int(rst.s),
            Cell::int(p.alpha),
            Cell::int(p.beta),
            Cell::int(p.gamma),
            Cell::int(p.delta),
            Cell::int(p.mu),
            Cell::Int(n1_content(l)?),
            Cell::Bool(mc),
            Cell::text(canonical_hash(&l.canonical)),
        ]);
    }
    report.note("rows", Cell::int(report.rows.len() as i64));
    report.note("lattices", Cell::int(all.len() as i64));
    Ok(report.into())
}

pub fn table1_report(expected: &[ExpectedRow]) -> Result<Table1Report, Failure> {
    Ok(table1_with(&enumerate_real_classes()?, expected)?)
}

fn opt_count(x: Option<usize>) -> Cell {
    x.map_or(Cell::text("-"), |n| Cell::int(n as i64))
}

pub fn table1(expected_path: Option<&Path>) -> Result<Outcome, Failure> {
    let expected = load_expected(expected_path)?;
    let t = table1_report(&expected)?;
    let mut report = Report::new(
        "table1",
        &[
            "m",
            "a",
            "exponents",
            "lattices",
            "expected_lattices",
            "mirror_consistent",
            "expected_mirror_consistent",
            "t_values",
            "expected_t_values",
            "status",
            "strata",
            "sign_orbits",
            "examples",
        ],
    );
    for row in &t.rows {
        let e = row.expected.as_ref();
        let mut status = Vec::new();
        if !row.exponents_match() {
            status.push("exponents");
        }
        if !row.lattices_match() {
            status.push("lattices");
        }
        if !row.mirror_consistent_match() {
            status.push("mirror_consistent");
        }
        let status = if status.is_empty() { "match".to_string() } else { format!("MISMATCH:{}", status.join("+")) };
        let strata = row.strata.iter().map(|(k, n)| format!("{k}={n}")).collect::<Vec<_>>().join(" ");
        report.push(vec![
            Cell::int(row.m),
            Cell::int(row.a),
            Cell::Rats(row.exponents.clone()),
            Cell::int(row.lattices as i64),
            opt_count(e.map(|e| e.lattices)),
            Cell::int(row.mirror_consistent as i64),
            opt_count(e.map(|e| e.mirror_consistent)),
            Cell::ints(&row.t_values),
            e.map_or(Cell::text("-"), |e| Cell::ints(&e.t_values)),
            Cell::text(status),
            Cell::text(strata),
            Cell::int(row.sign_orbits as i64),
            Cell::text(row.examples().join(";")),
        ]);
    }
    report.note("total_lattices", Cell::int(t.total_lattices as i64));
    report.note("expected_total_lattices", Cell::int(t.expected_totals.0 as i64));
    report.note("total_mirror_consistent", Cell::int(t.total_mirror_consistent as i64));
    report.note("expected_total_mirror_consistent", Cell::int(t.expected_totals.1 as i64));
    let bad: Vec<String> = t.mismatches().iter().map(|r| format!("({},{})", r.m, r.a)).collect();
    report.note("mismatched_rows", Cell::text(if bad.is_empty() { "none".to_string() } else { bad.join(" ") }));
    let failure = (!t.matches()).then(|| {
        Failure::verification(format!(
            "table1 differs from expectations in rows {}; totals {}/{} vs expected {}/{}",
            bad.join(" "),
            t.total_lattices,
            t.total_mirror_consistent,
            t.expected_totals.0,
            t.expected_totals.1
        ))
    });
    Ok(Outcome { report, failure })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SeriesKind {
    Quintic,
    Hypergeom,
    #[value(name = "restrict-212")]
    Restrict212,
}

pub fn parse_exponents(s: &str) -> Result<[Rat; 4], Failure> {
    let values = s
        .split(',')
        .map(|x| parse_rat(x.trim()).map_err(|_| Failure::usage(format!("bad exponent {x:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let arr: [Rat; 4] = values
        .try_into()
        .map_err(|v: Vec<Rat>| Failure::usage(format!("expected 4 exponents, got {}", v.len())))?;
    if let Some(bad) = arr.iter().find(|x| !x.is_positive() || **x > Rat::one()) {
        return Err(Failure::usage(format!("exponent {} is outside (0, 1]", fmt_rat(bad))));
    }
    Ok(arr)
}

fn series_rows(report: &mut Report, s: &RationalSeries) {
    for (n, c) in s.coeffs().iter().enumerate() {
        report.push(vec![Cell::int(n as i64), Cell::Rat(c.clone())]);
    }
}

pub fn series(kind: SeriesKind, order: usize, exponents: Option<&str>) -> Result<Outcome, Failure> {
    let mut report = Report::new("series", &["n", "coefficient"]);
    match kind {
        SeriesKind::Quintic => series_rows(&mut report, &quintic_series(order)),
        SeriesKind::Hypergeom => {
            let e = parse_exponents(exponents.ok_or_else(|| Failure::usage("hypergeom needs --exponents a1,a2,a3,a4"))?)?;
            series_rows(&mut report, &hypergeom_series(&e, order));
            report.note("exponents", Cell::Rats(e.to_vec()));
        }
        SeriesKind::Restrict212 => {
            if order < 1 {
                return Err(Failure::usage("restrict-212 needs --order at least 1"));
            }
            let slice = RationalSeries::new((0..=order as u64).map(|m| two_param_coeff(0, m)).collect());
            series_rows(&mut report, &slice);
            let (ok, kappa) = restriction_matches(order)?;
            report.note("match", Cell::Bool(ok));
            report.note("kappa", Cell::Rat(kappa));
        }
    }
    Ok(report.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum PolytopeOp {
    Polar,
    Reflexive,
    Points,
    #[value(name = "span-index")]
    SpanIndex,
}

pub fn polytope(op: PolytopeOp, file: &Path) -> Result<Outcome, Failure> {
    let parsed = parse_polytope(&read_file(file)?).map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
    let p = &parsed.polytope;
    let outcome = match op {
        PolytopeOp::Polar => {
            let mut report = Report::new("polytope-polar", &["vertex"]);
            let d = polar_dual(p)?;
            for v in d.vertices() {
                report.push(vec![Cell::Rats(v.clone())]);
            }
            report.note("vertices", Cell::int(d.vertices().len() as i64));
            report.note("lattice", Cell::Bool(d.is_lattice()));
            report
        }
        PolytopeOp::Reflexive => {
            let mut report = Report::new("polytope-reflexive", &[]);
            report.note("reflexive", Cell::Bool(is_reflexive(p)?));
            report
        }
        PolytopeOp::Points => {
            let mut report = Report::new("polytope-points", &["point"]);
            let pts = lattice_points(p)?;
            for x in &pts {
                report.push(vec![Cell::Ints(x.clone())]);
            }
            report.note("count", Cell::int(pts.len() as i64));
            report
        }
        PolytopeOp::SpanIndex => {
            let mut report = Report::new("polytope-span-index", &[]);
            report.note("index", Cell::Int(points_span_index(p)?));
            report
        }
    };
    Ok(outcome.into())
}


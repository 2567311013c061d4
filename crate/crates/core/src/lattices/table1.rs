//! Per-class lattice counts against the expected table.

use std::sync::Arc;

use super::{enumerate_lattices, invariants_rst, mirror_consistent, sign_convention_orbits, Rst};
use crate::error::{Error, Result};
use crate::exact::rat::parse_rat;
use crate::exact::Rat;
use crate::monodromy::MonodromyClass;

pub const EXPECTED_TABLE1: &str = include_str!("../../data/table1_expected.tsv");

/// One row of the expectation file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedRow {
    pub m: i64,
    pub a: i64,
    pub exponents: Vec<Rat>,
    pub lattices: usize,
    pub mirror_consistent: usize,
    pub t_values: Vec<u64>,
    pub examples: Vec<String>,
}

fn field<T: std::str::FromStr>(s: &str, line: usize, name: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse { line, msg: format!("bad {name} {s:?}") })
}

/// Tab-separated rows `m a exponents lattices mirror_consistent t_values [examples]`; `#` starts a comment.
pub fn parse_expected(text: &str) -> Result<Vec<ExpectedRow>> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim_end();
        if body.trim().is_empty() || body.trim_start().starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = body.split('\t').collect();
        if cols.len() < 6 {
            return Err(Error::Parse { line, msg: format!("expected at least 6 tab-separated fields, got {}", cols.len()) });
        }
        let exponents = cols[2]
            .split(',')
            .map(|x| parse_rat(x.trim()).map_err(|_| Error::Parse { line, msg: format!("bad exponent {x:?}") }))
            .collect::<Result<Vec<_>>>()?;
        let t_values = cols[5].split(',').map(|x| field(x, line, "t value")).collect::<Result<Vec<u64>>>()?;
        let examples = cols.get(6).map(|e| e.split(';').map(str::to_string).collect()).unwrap_or_default();
        rows.push(ExpectedRow {
            m: field(cols[0], line, "m")?,
            a: field(cols[1], line, "a")?,
            exponents,
            lattices: field(cols[3], line, "lattice count")?,
            mirror_consistent: field(cols[4], line, "mirror-consistent count")?,
            t_values,
            examples,
        });
    }
    Ok(rows)
}

/// Computed data for one real class, with its expectation when one exists.
#[derive(Clone, Debug)]
pub struct Table1Row {
    pub m: i64,
    pub a: i64,
    pub exponents: Vec<Rat>,
    pub lattices: usize,
    pub mirror_consistent: usize,
    pub t_values: Vec<u64>,
    /// Lattice count per `(r, s, t)`.
    pub strata: Vec<(Rst, usize)>,
    pub sign_orbits: usize,
    pub expected: Option<ExpectedRow>,
}

impl Table1Row {
    pub fn exponents_match(&self) -> bool {
        self.expected.as_ref().is_some_and(|e| e.exponents == self.exponents)
    }

    pub fn lattices_match(&self) -> bool {
        self.expected.as_ref().is_some_and(|e| e.lattices == self.lattices)
    }

    pub fn mirror_consistent_match(&self) -> bool {
        self.expected
            .as_ref()
            .is_some_and(|e| e.mirror_consistent == self.mirror_consistent && e.t_values == self.t_values)
    }

    pub fn matches(&self) -> bool {
        self.exponents_match() && self.lattices_match() && self.mirror_consistent_match()
    }

    pub fn examples(&self) -> &[String] {
        self.expected.as_ref().map(|e| e.examples.as_slice()).unwrap_or(&[])
    }
}

#[derive(Clone, Debug)]
pub struct Table1Report {
    pub rows: Vec<Table1Row>,
    pub total_lattices: usize,
    pub total_mirror_consistent: usize,
    pub expected_totals: (usize, usize),
}

impl Table1Report {
    pub fn matches(&self) -> bool {
        self.rows.iter().all(Table1Row::matches)
            && (self.total_lattices, self.total_mirror_consistent) == self.expected_totals
    }

    pub fn mismatches(&self) -> Vec<&Table1Row> {
        self.rows.iter().filter(|r| !r.matches()).collect()
    }
}

fn compute_row(cls: &MonodromyClass) -> Result<Table1Row> {
    let cls = Arc::new(cls.clone());
    let lattices = enumerate_lattices(&cls)?;
    let mut strata: Vec<(Rst, usize)> = Vec::new();
    let mut t_values = Vec::new();
    for l in &lattices {
        let rst = invariants_rst(l)?;
        match strata.iter_mut().find(|(k, _)| *k == rst) {
            Some((_, n)) => *n += 1,
            None => strata.push((rst, 1)),
        }
        if mirror_consistent(l)? {
            t_values.push(rst.t);
        }
    }
    strata.sort();
    t_values.sort_unstable();
    Ok(Table1Row {
        m: cls.m(),
        a: cls.a(),
        exponents: cls.exponents()?,
        lattices: lattices.len(),
        mirror_consistent: t_values.len(),
        t_values,
        strata,
        sign_orbits: sign_convention_orbits(&lattices)?,
        expected: None,
    })
}

/// The report against the bundled expectations.
pub fn table1(classes: &[MonodromyClass]) -> Result<Table1Report> {
    table1_with(classes, &parse_expected(EXPECTED_TABLE1)?)
}

/// The report against `expected`; rows follow the order of `expected`, unmatched classes last.
pub fn table1_with(classes: &[MonodromyClass], expected: &[ExpectedRow]) -> Result<Table1Report> {
    let mut computed = classes.iter().map(compute_row).collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(computed.len());
    for e in expected {
        if let Some(pos) = computed.iter().position(|r| r.m == e.m && r.a == e.a) {
            let mut row = computed.remove(pos);
            row.expected = Some(e.clone());
            rows.push(row);
        }
    }
    rows.extend(computed);
    Ok(Table1Report {
        total_lattices: rows.iter().map(|r| r.lattices).sum(),
        total_mirror_consistent: rows.iter().map(|r| r.mirror_consistent).sum(),
        expected_totals: (
            expected.iter().map(|e| e.lattices).sum(),
            expected.iter().map(|e| e.mirror_consistent).sum(),
        ),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    #[test]
    fn bundled_expectations_parse() {
        let rows = parse_expected(EXPECTED_TABLE1).unwrap();
        assert_eq!(rows.len(), 14);
        assert_eq!(rows.iter().map(|r| r.lattices).sum::<usize>(), 112);
        assert_eq!(rows.iter().map(|r| r.mirror_consistent).sum::<usize>(), 23);
        assert!(rows.iter().all(|r| r.t_values.len() == r.mirror_consistent));
        assert_eq!(rows[3].exponents, vec![rat(1, 5), rat(2, 5), rat(3, 5), rat(4, 5)]);
        assert_eq!(rows[13].examples.len(), 4);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_expected("# header\n1\t4\t1/12\tx\t1\t1\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, msg: "bad lattice count \"x\"".into() });
        assert!(matches!(parse_expected("1\t2\n"), Err(Error::Parse { line: 1, .. })));
    }
}

//! Tabular command output, rendered as TSV or JSON.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use sp4_core::exact::rat::fmt_rat;
use sp4_core::exact::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Int(BigInt),
    Bool(bool),
    Text(String),
    Rat(Rat),
    Rats(Vec<Rat>),
    Ints(Vec<BigInt>),
}

impl Cell {
    pub fn int(x: impl Into<BigInt>) -> Self {
        Cell::Int(x.into())
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn ints<T: Into<BigInt> + Clone>(xs: &[T]) -> Self {
        Cell::Ints(xs.iter().cloned().map(Into::into).collect())
    }

    fn tsv(&self) -> String {
        match self {
            Cell::Int(x) => x.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.replace(['\t', '\n'], " "),
            Cell::Rat(r) => fmt_rat(r),
            Cell::Rats(rs) => rs.iter().map(fmt_rat).collect::<Vec<_>>().join(","),
            Cell::Ints(xs) => xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
        }
    }

    fn json(&self) -> Value {
        fn big(x: &BigInt) -> Value {
            i64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::from(x.to_string()))
        }
        fn rat(r: &Rat) -> Value {
            json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
        }
        match self {
            Cell::Int(x) => big(x),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Rat(r) => rat(r),
            Cell::Rats(rs) => Value::Array(rs.iter().map(rat).collect()),
            Cell::Ints(xs) => Value::Array(xs.iter().map(big).collect()),
        }
    }
}

/// Named columns, data rows, and trailing summary fields.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(&'static str, Cell)>,
}

impl Report {
    pub fn new(command: &str, columns: &[&'static str]) -> Self {
        Self { command: command.to_string(), columns: columns.to_vec(), rows: Vec::new(), summary: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &'static str, value: Cell) {
        self.summary.push((key, value));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => self.tsv(),
            Format::Json => self.json(),
        }
    }

    fn tsv(&self) -> String {
        let mut out = String::new();
        if !self.columns.is_empty() {
            out.push_str(&self.columns.join("\t"));
            out.push('\n');
        }
        for row in &self.rows {
            out.push_str(&row.iter().map(Cell::tsv).collect::<Vec<_>>().join("\t"));
            out.push('\n');
        }
        for (k, v) in &self.summary {
            out.push_str(&format!("# {k}\t{}\n", v.tsv()));
        }
        out
    }

    fn json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect();
                Value::Object(obj)
            })
            .collect();
        let summary: Map<String, Value> = self.summary.iter().map(|(k, v)| (k.to_string(), v.json())).collect();
        let doc = json!({ "command": self.command, "rows": rows, "summary": summary });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}

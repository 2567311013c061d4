//! Plain-text polytope files.
//!
//! ```text
//! # comment
//! dim 4
//! 1 0 0 0
//! 0 1 0 0
//! ...
//! part A: 1,3
//! ```
//!
//! Vertex coordinates are integers or `p/q` rationals; `part` lines name a
//! group of vertices by 1-based index.

use std::fmt::Write;

use super::LatticePolytope;
use crate::error::{Error, Result};
use crate::exact::rat::{fmt_rat, parse_rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeFile {
    pub polytope: LatticePolytope,
    /// Named vertex groups, 0-based.
    pub parts: Vec<(String, Vec<usize>)>,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_polytope(text: &str) -> Result<PolytopeFile> {
    let mut dim: Option<usize> = None;
    let mut vertices = Vec::new();
    let mut parts = Vec::new();
    let mut part_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("dim") {
            if dim.is_some() {
                return Err(err(line, "repeated dim line"));
            }
            let n: usize = rest.trim().parse().map_err(|_| err(line, format!("bad dimension {:?}", rest.trim())))?;
            if n == 0 {
                return Err(err(line, "dimension must be positive"));
            }
            dim = Some(n);
            continue;
        }
        let Some(n) = dim else {
            return Err(err(line, "expected \"dim n\" before any other line"));
        };
        if let Some(rest) = body.strip_prefix("part") {
            let (name, list) = rest.split_once(':').ok_or_else(|| err(line, "expected \"part NAME: i,j,...\""))?;
            let indices = list
                .split(',')
                .map(|s| s.trim())
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k - 1),
                    _ => Err(err(line, format!("bad vertex index {s:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            parts.push((name.trim().to_string(), indices));
            part_lines.push(line);
            continue;
        }
        let coords = body
            .split_whitespace()
            .map(|s| parse_rat(s).map_err(|_| err(line, format!("bad coordinate {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != n {
            return Err(err(line, format!("expected {n} coordinates, got {}", coords.len())));
        }
        if vertices.contains(&coords) {
            return Err(err(line, "repeated vertex"));
        }
        vertices.push(coords);
    }
    let n = dim.ok_or_else(|| err(text.lines().count().max(1), "missing \"dim n\" line"))?;
    for ((_, ix), &line) in parts.iter().zip(&part_lines) {
        if let Some(&bad) = ix.iter().find(|&&k| k >= vertices.len()) {
            return Err(err(line, format!("vertex index {} out of range (have {})", bad + 1, vertices.len())));
        }
    }
    let polytope = LatticePolytope::new(n, vertices)?;
    Ok(PolytopeFile { polytope, parts })
}

pub fn render_polytope(file: &PolytopeFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim {}", file.polytope.dim());
    for v in file.polytope.vertices() {
        let _ = writeln!(out, "{}", v.iter().map(fmt_rat).collect::<Vec<_>>().join(" "));
    }
    for (name, ix) in &file.parts {
        let _ = writeln!(out, "part {name}: {}", ix.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(","));
    }
    out
}

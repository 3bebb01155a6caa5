//! Text and JSON formats for graphs, connections, gauge transformations,
//! Higgs fields and reports.
//!
//! Floating-point numbers are written with 17 significant digits so that every
//! `f64` survives a write/read cycle unchanged.

use std::collections::HashSet;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Value};

use crate::calculus::hodge_laplacian_matrix;
use crate::error::{Error, Result};
use crate::gauge::{Connection, GaugeTransformation, Group, GroupKind, VectorForm};
use crate::graph::{CliqueComplex, Graph, Orientation};
use crate::linalg::{self, CMat, CVec};
use crate::yangmills::{holonomy_signature, TriangleIndex, YmReport};

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Parses an edge list: one `u v` pair per line, `#` comment lines, blank
/// lines ignored, and an optional `vertices N` header. Without the header the
/// vertex count is the largest id plus one.
pub fn parse_graph(text: &str, orientation: Orientation) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut lines: Vec<usize> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens[0] == "vertices" {
            if declared.is_some() {
                return Err(err("repeated \"vertices\" header".into()));
            }
            if !pairs.is_empty() {
                return Err(err("\"vertices\" header must precede the edges".into()));
            }
            if tokens.len() != 2 {
                return Err(err("expected \"vertices N\"".into()));
            }
            let n = tokens[1]
                .parse::<usize>()
                .map_err(|_| err(format!("invalid vertex count {:?}", tokens[1])))?;
            declared = Some(n);
            continue;
        }
        if tokens.len() != 2 {
            return Err(err(format!("expected two vertex ids, found {:?}", body)));
        }
        let id = |t: &str| t.parse::<usize>().map_err(|_| err(format!("invalid vertex id {t:?}")));
        let (u, v) = (id(tokens[0])?, id(tokens[1])?);
        if u == v {
            return Err(err(format!("self-loop at vertex {u}")));
        }
        if let Some(n) = declared {
            if u.max(v) >= n {
                return Err(err(format!("vertex {} exceeds the declared count {n}", u.max(v))));
            }
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(format!("duplicate edge {{{u}, {v}}}")));
        }
        pairs.push((u, v));
        lines.push(line);
    }
    let n = declared.unwrap_or_else(|| pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::with_orientation(n, pairs, orientation)
}

pub fn read_graph(path: &Path, orientation: Orientation) -> Result<Graph> {
    parse_graph(&read_text(path)?, orientation)
}

/// Edge list in the text format, edges in their oriented direction.
pub fn graph_to_text(graph: &Graph) -> String {
    let mut out = format!("vertices {}\n", graph.num_vertices());
    for &(u, v) in graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// `%.17g` rendering of a finite double.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    } else {
        trim_fraction(&format!("{x:.*}", (16 - exp) as usize)).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Pretty printer that writes floats with [`format_g17`].
struct G17Formatter(PrettyFormatter<'static>);

impl Formatter for G17Formatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        writer.write_all(format_g17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()> {
        self.write_f64(writer, value as f64)
    }

    fn begin_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.0.begin_array(writer)
    }

    fn end_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.0.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, writer: &mut W, first: bool) -> std::io::Result<()> {
        self.0.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.0.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.0.begin_object(writer)
    }

    fn end_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.0.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, writer: &mut W, first: bool) -> std::io::Result<()> {
        self.0.begin_object_key(writer, first)
    }

    fn end_object_key<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.0.end_object_key(writer)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.0.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.0.end_object_value(writer)
    }
}

/// Pretty-printed JSON with 17-digit floats and a trailing newline.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, G17Formatter(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// Non-finite values become `null`, as JSON has no representation for them.
fn num(x: f64) -> Value {
    Value::from(x)
}

pub fn complex_to_json(z: Complex64) -> Value {
    json!([num(z.re), num(z.im)])
}

/// Row-major nested `[[[re, im], ...], ...]`.
pub fn matrix_to_json(m: &CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|r| Value::Array((0..m.ncols()).map(|c| complex_to_json(m[(r, c)])).collect()))
            .collect(),
    )
}

pub fn vector_to_json(v: &CVec) -> Value {
    Value::Array(v.iter().map(|&z| complex_to_json(z)).collect())
}

fn matrix_from_rows(rows: &[Vec<[f64; 2]>], n: usize, what: &str) -> Result<CMat> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Validation(format!("{what}: matrix must be {n}x{n}")));
    }
    Ok(CMat::from_fn(n, n, |r, c| Complex64::new(rows[r][c][0], rows[r][c][1])))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeEntry {
    u: usize,
    v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<[f64; 2]>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConnectionFile {
    group: String,
    n: usize,
    edges: Vec<EdgeEntry>,
}

/// Connection file: one entry per edge in its oriented direction, always
/// carrying the full matrix so that values round-trip exactly.
pub fn connection_to_json(cx: &CliqueComplex, a: &Connection) -> Value {
    let edges: Vec<Value> = cx
        .simplices(1)
        .iter()
        .zip(a.values())
        .map(|(s, m)| json!({"u": s[0], "v": s[1], "matrix": matrix_to_json(m)}))
        .collect();
    json!({"group": a.group().kind().name(), "n": a.dim(), "edges": edges})
}

/// Parses a connection file against the complex. Every edge must appear
/// exactly once in its oriented direction and every value must be a group
/// element within [`crate::gauge::UNITARITY_TOL`].
pub fn connection_from_json(cx: &CliqueComplex, text: &str) -> Result<Connection> {
    let file: ConnectionFile = serde_json::from_str(text)?;
    let kind: GroupKind = file.group.parse()?;
    let group = Group::new(kind, file.n)?;
    let mut values: Vec<Option<CMat>> = vec![None; cx.count(1)];
    for entry in &file.edges {
        let (u, v) = (entry.u, entry.v);
        let (e, forward) = cx
            .edge(u, v)
            .ok_or_else(|| Error::Validation(format!("({u}, {v}) is not an edge of the graph")))?;
        if !forward {
            return Err(Error::Validation(format!(
                "edge ({u}, {v}) is given against its orientation {v} -> {u}"
            )));
        }
        if values[e].is_some() {
            return Err(Error::Validation(format!("edge ({u}, {v}) appears more than once")));
        }
        let m = match (entry.theta, &entry.matrix) {
            (Some(t), None) if kind == GroupKind::U1 => group.phase(t),
            (Some(_), None) => {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}): theta is only valid for U1"
                )))
            }
            (None, Some(rows)) => matrix_from_rows(rows, group.dim(), &format!("edge ({u}, {v})"))?,
            _ => {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) needs exactly one of theta or matrix"
                )))
            }
        };
        let m = group
            .element(m)
            .map_err(|err| Error::Validation(format!("edge ({u}, {v}): {err}")))?;
        values[e] = Some(m);
    }
    if let Some(e) = values.iter().position(Option::is_none) {
        let s = cx.simplex(1, e);
        return Err(Error::Validation(format!("edge ({}, {}) is missing", s[0], s[1])));
    }
    Connection::from_values(cx, group, values.into_iter().map(Option::unwrap).collect())
}

pub fn read_connection(cx: &CliqueComplex, path: &Path) -> Result<Connection> {
    connection_from_json(cx, &read_text(path)?)
}

pub fn gauge_to_json(g: &GaugeTransformation) -> Value {
    let vertices: Vec<Value> = g
        .values()
        .iter()
        .enumerate()
        .map(|(v, m)| json!({"v": v, "matrix": matrix_to_json(m)}))
        .collect();
    json!({"group": g.group().kind().name(), "n": g.group().dim(), "vertices": vertices})
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HiggsEntry {
    v: usize,
    value: Vec<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HiggsFile {
    n: usize,
    vertices: Vec<HiggsEntry>,
}

pub fn higgs_to_json(phi: &VectorForm) -> Value {
    let vertices: Vec<Value> = phi
        .values()
        .iter()
        .enumerate()
        .map(|(v, x)| json!({"v": v, "value": vector_to_json(x)}))
        .collect();
    json!({"n": phi.dim(), "vertices": vertices})
}

/// Parses a Higgs field file: every vertex exactly once, each value of
/// length `n`.
pub fn higgs_from_json(cx: &CliqueComplex, text: &str) -> Result<VectorForm> {
    let file: HiggsFile = serde_json::from_str(text)?;
    let mut values: Vec<Option<CVec>> = vec![None; cx.num_vertices()];
    for entry in &file.vertices {
        let v = entry.v;
        if v >= values.len() {
            return Err(Error::Validation(format!("vertex {v} is not in the graph")));
        }
        if values[v].is_some() {
            return Err(Error::Validation(format!("vertex {v} appears more than once")));
        }
        if entry.value.len() != file.n {
            return Err(Error::Validation(format!(
                "vertex {v}: value has length {}, expected {}",
                entry.value.len(),
                file.n
            )));
        }
        if entry.value.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Validation(format!("vertex {v}: non-finite value")));
        }
        values[v] = Some(CVec::from_iterator(file.n, entry.value.iter().map(|z| Complex64::new(z[0], z[1]))));
    }
    if let Some(v) = values.iter().position(Option::is_none) {
        return Err(Error::Validation(format!("vertex {v} is missing")));
    }
    VectorForm::from_values(cx, 0, file.n, values.into_iter().map(Option::unwrap).collect())
}

pub fn read_higgs(cx: &CliqueComplex, path: &Path) -> Result<VectorForm> {
    higgs_from_json(cx, &read_text(path)?)
}

/// Clique census `{counts, clique_number, truncated, cliques: [[tuples]]}`,
/// with `cliques[k]` listing the `(k+1)`-cliques.
pub fn cliques_report(cx: &CliqueComplex) -> Value {
    let cliques: Vec<Value> = (0..cx.num_degrees()).map(|k| json!(cx.simplices(k))).collect();
    json!({
        "num_vertices": cx.num_vertices(),
        "counts": cx.counts(),
        "clique_number": cx.clique_number(),
        "truncated": cx.is_truncated(),
        "cliques": cliques,
    })
}

/// Hodge Laplacian in degree `k`: `{degree, basis, matrix, eigenvalues}`
/// with the matrix as rows and eigenvalues ascending.
pub fn spectrum_report(cx: &CliqueComplex, k: usize) -> Result<Value> {
    let m = hodge_laplacian_matrix(cx, k)?;
    let rows: Vec<Vec<f64>> = (0..m.nrows()).map(|r| m.row(r).iter().copied().collect()).collect();
    let eigenvalues = linalg::symmetric_eigenvalues(&m);
    Ok(json!({
        "degree": k,
        "basis": cx.simplices(k),
        "matrix": rows,
        "eigenvalues": eigenvalues,
    }))
}

/// `{value, residual_inf_norm, per_edge_residuals, iterations, converged,
/// connection, holonomy_traces}`.
pub fn ym_report_json(cx: &CliqueComplex, report: &YmReport) -> Result<Value> {
    let index = TriangleIndex::new(cx)?;
    let per_edge: Vec<Value> = cx
        .simplices(1)
        .iter()
        .zip(&report.residual_norms)
        .map(|(s, &norm)| json!({"u": s[0], "v": s[1], "norm": num(norm)}))
        .collect();
    let traces: Vec<Value> = cx
        .simplices(2)
        .iter()
        .zip(index.holonomies(&report.connection))
        .map(|(t, h)| {
            let tr = h.trace();
            json!({"triangle": t, "trace_re": num(tr.re), "trace_im": num(tr.im)})
        })
        .collect();
    Ok(json!({
        "value": num(report.value),
        "residual_inf_norm": num(report.residual_inf_norm),
        "per_edge_residuals": per_edge,
        "iterations": report.iterations,
        "converged": report.converged,
        "gauge_fixed": report.gauge_fixed,
        "connection": connection_to_json(cx, &report.connection),
        "holonomy_traces": traces,
    }))
}

/// Sorted holonomy traces as `[[re, im], ...]`.
pub fn signature_json(index: &TriangleIndex, a: &Connection) -> Value {
    Value::Array(
        holonomy_signature(index, a)
            .into_iter()
            .map(|(re, im)| json!([num(re), num(im)]))
            .collect(),
    )
}

//! The line-oriented graph text format and its JSON mirror.
//!
//! ```text
//! # comment
//! graph <n> D=<D>
//! w <v> <weight>      (default weight 1)
//! e <u> <v> [mult]    (default mult 1)
//! ```
//!
//! Parsing round-trips with serialization up to vertex labeling. JSON input
//! is accepted whenever the payload starts with `{` and mirrors the same
//! fields: `{"n": .., "D": .., "w": [..], "edges": [[u, v, mult], ..]}`.
//! Multiplicities are capped at 3 at the I/O boundary.

use std::fmt::Write as _;

use forests_core::{GraphError, Vertex, WeightedMultigraph};
use serde::{Deserialize, Serialize};

pub const MAX_IO_MULT: u32 = 3;

#[derive(Debug)]
pub enum ParseError {
    Syntax { line: usize, message: String },
    Semantic(GraphError),
    Json(String),
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseError::Syntax { line, message } => write!(f, "line {line}: {message}"),
            ParseError::Semantic(e) => write!(f, "{e}"),
            ParseError::Json(e) => write!(f, "invalid graph JSON: {e}"),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<GraphError> for ParseError {
    fn from(e: GraphError) -> Self {
        ParseError::Semantic(e)
    }
}

#[derive(Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    #[serde(rename = "D")]
    pub d: u32,
    pub w: Vec<u32>,
    pub edges: Vec<(Vertex, Vertex, u32)>,
}

impl GraphJson {
    pub fn of(g: &WeightedMultigraph) -> GraphJson {
        GraphJson {
            n: g.n(),
            d: g.d(),
            w: g.weights().to_vec(),
            edges: g.edges().iter().map(|e| (e.u, e.v, e.mult)).collect(),
        }
    }

    pub fn into_graph(self) -> Result<WeightedMultigraph, ParseError> {
        check_mult_cap(&self.edges, 0)?;
        Ok(WeightedMultigraph::build(
            self.n,
            self.d,
            &self.w,
            &self.edges,
        )?)
    }
}

fn check_mult_cap(edges: &[(Vertex, Vertex, u32)], line: usize) -> Result<(), ParseError> {
    for &(u, v, mult) in edges {
        if mult > MAX_IO_MULT {
            return Err(ParseError::Syntax {
                line,
                message: format!("multiplicity {mult} on ({u}, {v}) exceeds cap {MAX_IO_MULT}"),
            });
        }
    }
    Ok(())
}

/// Parses either the text format or (when the payload starts with `{`) the
/// JSON mirror.
pub fn parse_graph(text: &str) -> Result<WeightedMultigraph, ParseError> {
    if text.trim_start().starts_with('{') {
        let json: GraphJson =
            serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
        return json.into_graph();
    }
    let mut header: Option<(usize, u32)> = None;
    let mut weights: Vec<(usize, u32, usize)> = Vec::new();
    let mut edges: Vec<(Vertex, Vertex, u32)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let keyword = fields.next().unwrap();
        let rest: Vec<&str> = fields.collect();
        let syntax = |message: String| ParseError::Syntax {
            line: line_no,
            message,
        };
        match keyword {
            "graph" => {
                if header.is_some() {
                    return Err(syntax("duplicate graph header".into()));
                }
                if rest.len() != 2 {
                    return Err(syntax("expected: graph <n> D=<D>".into()));
                }
                let n: usize = rest[0]
                    .parse()
                    .map_err(|_| syntax(format!("bad vertex count {:?}", rest[0])))?;
                let d_field = rest[1]
                    .strip_prefix("D=")
                    .ok_or_else(|| syntax(format!("expected D=<value>, got {:?}", rest[1])))?;
                let d: u32 = d_field
                    .parse()
                    .map_err(|_| syntax(format!("bad D value {d_field:?}")))?;
                header = Some((n, d));
            }
            "w" => {
                if rest.len() != 2 {
                    return Err(syntax("expected: w <v> <weight>".into()));
                }
                let v: usize = rest[0]
                    .parse()
                    .map_err(|_| syntax(format!("bad vertex {:?}", rest[0])))?;
                let weight: u32 = rest[1]
                    .parse()
                    .map_err(|_| syntax(format!("bad weight {:?}", rest[1])))?;
                weights.push((v, weight, line_no));
            }
            "e" => {
                if rest.len() != 2 && rest.len() != 3 {
                    return Err(syntax("expected: e <u> <v> [mult]".into()));
                }
                let u: usize = rest[0]
                    .parse()
                    .map_err(|_| syntax(format!("bad vertex {:?}", rest[0])))?;
                let v: usize = rest[1]
                    .parse()
                    .map_err(|_| syntax(format!("bad vertex {:?}", rest[1])))?;
                let mult: u32 = match rest.get(2) {
                    Some(m) => m
                        .parse()
                        .map_err(|_| syntax(format!("bad multiplicity {m:?}")))?,
                    None => 1,
                };
                if mult > MAX_IO_MULT {
                    return Err(syntax(format!(
                        "multiplicity {mult} exceeds cap {MAX_IO_MULT}"
                    )));
                }
                edges.push((u, v, mult));
            }
            other => return Err(syntax(format!("unknown keyword {other:?}"))),
        }
    }
    let (n, d) = header.ok_or(ParseError::Syntax {
        line: 0,
        message: "missing graph header".into(),
    })?;
    let mut weight_vec = vec![1u32; n];
    for (v, weight, line) in weights {
        if v >= n {
            return Err(ParseError::Syntax {
                line,
                message: format!("weight for out-of-range vertex {v}"),
            });
        }
        weight_vec[v] = weight;
    }
    check_mult_cap(&edges, 0)?;
    Ok(WeightedMultigraph::build(n, d, &weight_vec, &edges)?)
}

/// Serializes in the text format; weight lines appear only for non-default
/// weights, edges in sorted class order.
pub fn serialize_graph(g: &WeightedMultigraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {} D={}", g.n(), g.d());
    for v in 0..g.n() {
        if g.weight(v) != 1 {
            let _ = writeln!(out, "w {} {}", v, g.weight(v));
        }
    }
    for e in g.edges() {
        if e.mult == 1 {
            let _ = writeln!(out, "e {} {}", e.u, e.v);
        } else {
            let _ = writeln!(out, "e {} {} {}", e.u, e.v, e.mult);
        }
    }
    out
}

//! Text (`.hg`) and JSON hypergraph files.
//!
//! The `.hg` format is line oriented: `#` starts a comment line, the first
//! data line is `n m`, and each of the next `m` data lines lists one edge as
//! space-separated ascending 1-based vertex ids. The JSON form is
//! `{"vertices":n,"edges":[[...],...]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Format {
    /// `.json` files, or content starting with `{`, are JSON; anything else
    /// is the text format.
    pub fn detect(path: Option<&str>, content: &str) -> Self {
        if path.is_some_and(|p| p.to_ascii_lowercase().ends_with(".json")) || content.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Text
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("header declares {declared} edges but {found} edge lines follow")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("missing `n m` header line")]
    MissingHeader,
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Either stage of reading a file can fail; callers map these to distinct
/// exit codes.
#[derive(Debug, Error)]
pub enum ReadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] HypergraphError),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonHypergraph {
    vertices: usize,
    edges: Vec<Vec<usize>>,
}

/// Raw file contents before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawHypergraph {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl RawHypergraph {
    pub fn validate(self) -> Result<Hypergraph, HypergraphError> {
        Hypergraph::new(self.n, self.edges)
    }
}

pub fn parse_text(content: &str) -> Result<RawHypergraph, ParseError> {
    let mut lines = content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let nums = parse_ints(hline, header)?;
    let [n, m] = nums[..] else {
        return Err(ParseError::Syntax { line: hline, msg: "header must be `n m`".into() });
    };
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        edges.push(parse_ints(line, text)?);
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch { declared: m, found: edges.len() });
    }
    Ok(RawHypergraph { n, edges })
}

fn parse_ints(line: usize, text: &str) -> Result<Vec<usize>, ParseError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| ParseError::Syntax { line, msg: format!("`{tok}` is not a nonnegative integer") })
        })
        .collect()
}

pub fn parse_json(content: &str) -> Result<RawHypergraph, ParseError> {
    let j: JsonHypergraph = serde_json::from_str(content)?;
    Ok(RawHypergraph { n: j.vertices, edges: j.edges })
}

pub fn parse(content: &str, format: Format) -> Result<RawHypergraph, ParseError> {
    match format {
        Format::Text => parse_text(content),
        Format::Json => parse_json(content),
    }
}

/// Parses and validates in one step.
pub fn read(content: &str, format: Format) -> Result<Hypergraph, ReadError> {
    Ok(parse(content, format)?.validate()?)
}

pub fn to_text(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.vertex_count(), h.edge_count());
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn to_json(h: &Hypergraph) -> String {
    let j = JsonHypergraph { vertices: h.vertex_count(), edges: h.edges().to_vec() };
    let mut s = serde_json::to_string(&j).expect("plain integers always serialize");
    s.push('\n');
    s
}

pub fn serialize(h: &Hypergraph, format: Format) -> String {
    match format {
        Format::Text => to_text(h),
        Format::Json => to_json(h),
    }
}

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::LexGraph;
use crate::scanner::Token;

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    input_length: usize,
    tokens: Vec<JsonToken>,
    start: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct JsonToken {
    id: usize,
    #[serde(rename = "type")]
    type_name: String,
    text: String,
    start: usize,
    end: usize,
    preceding: Vec<usize>,
    following: Vec<usize>,
}

/// Compact JSON, keys in a fixed order.
pub fn to_json(graph: &LexGraph) -> String {
    let doc = JsonGraph {
        input_length: graph.input_length,
        tokens: graph
            .tokens
            .iter()
            .map(|t| JsonToken {
                id: t.id,
                type_name: t.type_name.clone(),
                text: t.text.clone(),
                start: t.start,
                end: t.end,
                preceding: graph.preceding[t.id].clone(),
                following: graph.following[t.id].clone(),
            })
            .collect(),
        start: graph.start.clone(),
    };
    serde_json::to_string(&doc).expect("graph serializes")
}

#[derive(Debug, thiserror::Error)]
pub enum GraphJsonError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("token at position {position} has id {id}")]
    IdMismatch { position: usize, id: usize },
    #[error("edge {from} -> {to} refers to a missing token")]
    DanglingEdge { from: usize, to: usize },
}

pub fn from_json(text: &str) -> Result<LexGraph, GraphJsonError> {
    let doc: JsonGraph = serde_json::from_str(text)?;
    let count = doc.tokens.len();
    let mut graph = LexGraph { input_length: doc.input_length, start: doc.start, ..LexGraph::default() };
    for (position, t) in doc.tokens.into_iter().enumerate() {
        if t.id != position {
            return Err(GraphJsonError::IdMismatch { position, id: t.id });
        }
        if let Some(&to) = t.following.iter().chain(&t.preceding).find(|&&to| to >= count) {
            return Err(GraphJsonError::DanglingEdge { from: t.id, to });
        }
        graph.following.push(t.following);
        graph.preceding.push(t.preceding);
        graph.tokens.push(Token { id: t.id, type_name: t.type_name, text: t.text, start: t.start, end: t.end });
    }
    Ok(graph)
}

pub fn dot_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\\\n"),
            '\r' => out.push_str("\\\\r"),
            _ => out.push(c),
        }
    }
    out
}

/// Graphviz rendering. Start tokens are drawn double-circled.
pub fn to_dot(graph: &LexGraph) -> String {
    let mut out = String::from("digraph lexgraph {\n  rankdir=LR;\n");
    for t in &graph.tokens {
        let shape = if graph.preceding[t.id].is_empty() { "doublecircle" } else { "circle" };
        let _ = writeln!(
            out,
            "  t{} [label=\"{}\\n\\\"{}\\\"@{}-{}\", shape={}];",
            t.id,
            dot_escape(&t.type_name),
            dot_escape(&t.text),
            t.start,
            t.end,
            shape
        );
    }
    for (a, b) in graph.edges() {
        let _ = writeln!(out, "  t{a} -> t{b};");
    }
    out.push_str("}\n");
    out
}

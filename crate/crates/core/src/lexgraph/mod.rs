//! The lexical analysis graph.
//!
//! `b` follows `a` iff `a.end < b.start` and no token `c` fits strictly
//! between them (`c.start > a.end && c.end < b.start`). Tokens with no
//! predecessor form the start set. Every path from the start set to a token
//! without successors is one way of reading the input.

mod render;

use serde::{Deserialize, Serialize};

use crate::scanner::{ScanResult, Token};

pub use render::{dot_escape, from_json, to_dot, to_json, GraphJsonError};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LexGraph {
    pub input_length: usize,
    /// Indexed by token id.
    pub tokens: Vec<Token>,
    /// `following[id]`, sorted by id.
    pub following: Vec<Vec<usize>>,
    /// `preceding[id]`, sorted by id.
    pub preceding: Vec<Vec<usize>>,
    /// Ids with no predecessor, sorted.
    pub start: Vec<usize>,
}

impl LexGraph {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.following.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.following.iter().enumerate().flat_map(|(a, bs)| bs.iter().map(move |&b| (a, b)))
    }

    fn from_following(tokens: Vec<Token>, input_length: usize, mut following: Vec<Vec<usize>>) -> LexGraph {
        let mut preceding = vec![Vec::new(); tokens.len()];
        for (a, bs) in following.iter_mut().enumerate() {
            bs.sort_unstable();
            for &b in bs.iter() {
                preceding[b].push(a);
            }
        }
        let start = (0..tokens.len()).filter(|&id| preceding[id].is_empty()).collect();
        LexGraph { input_length, tokens, following, preceding, start }
    }
}

fn check_ids(tokens: &[Token]) {
    assert!(tokens.iter().enumerate().all(|(k, t)| t.id == k), "token ids must equal their list positions");
}

/// Builds the graph in O(t log t + edges).
///
/// With tokens ordered by start, the tokens starting after `a.end` form a
/// suffix. The earliest end in that suffix is the horizon: any token ending
/// there blocks everything starting beyond it, so `following(a)` is exactly
/// the run of the suffix whose start does not exceed the horizon.
pub fn build_graph(scan: &ScanResult) -> LexGraph {
    let tokens = &scan.tokens;
    check_ids(tokens);
    let mut order: Vec<usize> = (0..tokens.len()).collect();
    order.sort_by_key(|&id| (tokens[id].start, id));

    let mut horizon = vec![usize::MAX; order.len() + 1];
    for k in (0..order.len()).rev() {
        horizon[k] = horizon[k + 1].min(tokens[order[k]].end);
    }

    let mut following = vec![Vec::new(); tokens.len()];
    for &a in order.iter().rev() {
        let end = tokens[a].end;
        let first = order.partition_point(|&id| tokens[id].start <= end);
        let limit = horizon[first];
        following[a] = order[first..].iter().copied().take_while(|&b| tokens[b].start <= limit).collect();
    }
    LexGraph::from_following(tokens.clone(), scan.input_length, following)
}

/// Evaluates the adjacency definition directly over every token triple.
/// O(t³); a differential oracle for [`build_graph`].
pub fn build_graph_oracle(scan: &ScanResult) -> LexGraph {
    let tokens = &scan.tokens;
    check_ids(tokens);
    let following = tokens
        .iter()
        .map(|a| {
            tokens
                .iter()
                .filter(|b| a.end < b.start)
                .filter(|b| !tokens.iter().any(|c| c.start > a.end && c.end < b.start))
                .map(|b| b.id)
                .collect()
        })
        .collect();
    LexGraph::from_following(tokens.clone(), scan.input_length, following)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sequences {
    pub paths: Vec<Vec<usize>>,
    pub truncated: bool,
}

/// Every path from a start token to a token with no successors, in
/// lexicographic order of token ids, stopping after `limit` paths.
pub fn enumerate_sequences(graph: &LexGraph, limit: usize) -> Sequences {
    let mut out = Sequences::default();
    let mut path: Vec<usize> = Vec::new();
    // (token, index of the next successor to try)
    let mut stack: Vec<(usize, usize)> = Vec::new();

    for &root in &graph.start {
        stack.push((root, 0));
        path.push(root);
        while let Some(top) = stack.last_mut() {
            let (node, next) = *top;
            let successors = &graph.following[node];
            if successors.is_empty() {
                if out.paths.len() == limit {
                    out.truncated = true;
                    return out;
                }
                out.paths.push(path.clone());
            }
            if next < successors.len() {
                top.1 += 1;
                let child = successors[next];
                stack.push((child, 0));
                path.push(child);
            } else {
                stack.pop();
                path.pop();
            }
        }
    }
    out
}

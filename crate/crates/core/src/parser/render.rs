use std::collections::BTreeSet;
use std::fmt::Write;

use super::ParseForest;
use crate::lexgraph::dot_escape;
use crate::scanner::escape_text;

/// One indented tree per accepted instance, separated by blank lines.
///
/// ```text
/// E @0-12
///   A @0-4
///     Ampersand "&" @0-0
/// ```
pub fn render_trees(forest: &ParseForest) -> String {
    let mut out = String::new();
    for (k, &root) in forest.accepted.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        render_node(forest, root, 0, &mut out);
    }
    out
}

fn render_node(forest: &ParseForest, id: usize, depth: usize, out: &mut String) {
    let inst = &forest.instances[id];
    let indent = "  ".repeat(depth);
    match &inst.text {
        Some(text) if inst.is_terminal() => {
            let _ = writeln!(out, "{indent}{} \"{}\" @{}-{}", inst.type_name, escape_text(text), inst.start, inst.end);
        }
        _ => {
            let _ = writeln!(out, "{indent}{} @{}-{}", inst.type_name, inst.start, inst.end);
        }
    }
    for &child in &inst.children {
        render_node(forest, child, depth + 1, out);
    }
}

pub fn forest_to_json(forest: &ParseForest) -> String {
    serde_json::to_string(forest).expect("forest serializes")
}

/// The accepted trees as a Graphviz digraph; shared subtrees appear once.
pub fn forest_to_dot(forest: &ParseForest) -> String {
    let mut reachable = BTreeSet::new();
    let mut stack: Vec<usize> = forest.accepted.clone();
    while let Some(id) = stack.pop() {
        if reachable.insert(id) {
            stack.extend(&forest.instances[id].children);
        }
    }

    let mut out = String::from("digraph forest {\n");
    for &id in &reachable {
        let inst = &forest.instances[id];
        let label = match &inst.text {
            Some(text) => {
                format!("{}\\n\\\"{}\\\"@{}-{}", dot_escape(&inst.type_name), dot_escape(text), inst.start, inst.end)
            }
            None => format!("{}\\n@{}-{}", dot_escape(&inst.type_name), inst.start, inst.end),
        };
        let shape = if inst.is_terminal() { "ellipse" } else { "box" };
        let _ = writeln!(out, "  n{id} [label=\"{label}\", shape={shape}];");
    }
    for &id in &reachable {
        for &child in &forest.instances[id].children {
            let _ = writeln!(out, "  n{id} -> n{child};");
        }
    }
    out.push_str("}\n");
    out
}

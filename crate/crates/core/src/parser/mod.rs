//! Exhaustive fixpoint parsing over a lexical analysis graph.
//!
//! Terminals enter the instance store as-is. Each pass tries every rule from
//! every instance whose type matches the rule's first symbol, walking
//! adjacency through the store; every new `(lhs, children)` combination
//! becomes a nonterminal instance that later passes can build on. Parsing
//! stops after a pass that adds nothing.
//!
//! Adjacency between arbitrary instances generalizes the token graph: `b`
//! follows `a` when `b` starts after `a` ends and no *terminal* fits strictly
//! between them. Nonterminals never block.
//!
//! This is deliberately naive and can blow up on highly ambiguous grammars.
//! Grammars must be free of empty rules and unit-production cycles, which
//! [`crate::spec_io::validate`] guarantees.

mod render;

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::lexgraph::LexGraph;
use crate::spec_io::{Grammar, GrammarRule};

pub use render::{forest_to_dot, forest_to_json, render_trees};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolInstance {
    /// Terminals keep their token id; nonterminals are numbered after them.
    pub id: usize,
    #[serde(rename = "type")]
    pub type_name: String,
    pub start: usize,
    pub end: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub text: Option<String>,
    pub children: Vec<usize>,
    /// Index into the grammar's rules; `None` for terminals.
    pub rule: Option<usize>,
}

impl SymbolInstance {
    pub fn is_terminal(&self) -> bool {
        self.rule.is_none()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseForest {
    /// Indexed by instance id.
    pub instances: Vec<SymbolInstance>,
    /// Start-symbol instances spanning the whole tokenized input, by id.
    pub accepted: Vec<usize>,
    #[serde(skip)]
    pub passes: usize,
}

/// A fully expanded derivation, for structural comparisons.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    Leaf(usize),
    Node(String, Vec<Tree>),
}

impl Tree {
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(id) => out.push(*id),
            Tree::Node(_, children) => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(_, children) => 1 + children.iter().map(Tree::node_count).sum::<usize>(),
        }
    }
}

impl ParseForest {
    pub fn tree(&self, id: usize) -> Tree {
        let inst = &self.instances[id];
        if inst.is_terminal() {
            Tree::Leaf(id)
        } else {
            Tree::Node(inst.type_name.clone(), inst.children.iter().map(|&c| self.tree(c)).collect())
        }
    }

    pub fn accepted_trees(&self) -> Vec<Tree> {
        self.accepted.iter().map(|&id| self.tree(id)).collect()
    }
}

/// `b` starts after `a` ends with no terminal of `graph` strictly between.
pub fn extended_follows(a: &SymbolInstance, b: &SymbolInstance, graph: &LexGraph) -> bool {
    b.start > a.end && !graph.tokens.iter().any(|c| c.start > a.end && c.end < b.start)
}

/// Answers [`extended_follows`] in O(1) after O(n) setup.
struct Adjacency {
    /// `horizon[p]`: earliest end among terminals starting after offset `p`.
    horizon: Vec<usize>,
}

impl Adjacency {
    fn new(graph: &LexGraph) -> Self {
        let len = graph.tokens.iter().map(|t| t.end + 1).max().unwrap_or(0).max(graph.input_length);
        let mut earliest_end_from = vec![usize::MAX; len + 2];
        for t in &graph.tokens {
            let slot = &mut earliest_end_from[t.start];
            *slot = (*slot).min(t.end);
        }
        for p in (0..len + 1).rev() {
            earliest_end_from[p] = earliest_end_from[p].min(earliest_end_from[p + 1]);
        }
        // Terminals starting after p are those starting at p + 1 or later.
        let horizon = (0..len + 1).map(|p| earliest_end_from[p + 1]).collect();
        Adjacency { horizon }
    }

    fn follows(&self, a: &SymbolInstance, b: &SymbolInstance) -> bool {
        b.start > a.end && self.horizon.get(a.end).is_none_or(|&h| b.start <= h)
    }
}

struct Store<'g> {
    instances: Vec<SymbolInstance>,
    by_type: HashMap<String, Vec<usize>>,
    keys: HashSet<(String, Vec<usize>)>,
    adjacency: Adjacency,
    graph: &'g LexGraph,
}

impl<'g> Store<'g> {
    fn new(graph: &'g LexGraph) -> Self {
        let mut store = Store {
            instances: Vec::new(),
            by_type: HashMap::new(),
            keys: HashSet::new(),
            adjacency: Adjacency::new(graph),
            graph,
        };
        for t in &graph.tokens {
            store.push(SymbolInstance {
                id: t.id,
                type_name: t.type_name.clone(),
                start: t.start,
                end: t.end,
                text: Some(t.text.clone()),
                children: Vec::new(),
                rule: None,
            });
        }
        store
    }

    fn push(&mut self, inst: SymbolInstance) {
        self.by_type.entry(inst.type_name.clone()).or_default().push(inst.id);
        self.instances.push(inst);
    }

    /// Depth-first extension of `prefix` through `rhs`, in instance-id order.
    fn extend(&self, rhs: &[String], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some((symbol, rest)) = rhs.split_first() else {
            out.push(prefix.clone());
            return;
        };
        let last = &self.instances[*prefix.last().expect("prefix starts with the first child")];
        for &candidate in self.by_type.get(symbol).map(Vec::as_slice).unwrap_or(&[]) {
            if self.adjacency.follows(last, &self.instances[candidate]) {
                prefix.push(candidate);
                self.extend(rest, prefix, out);
                prefix.pop();
            }
        }
    }
}

/// All child tuples for `rule` whose first child is `first`.
pub fn match_rule_from(
    rule: &GrammarRule,
    first: &SymbolInstance,
    store: &[SymbolInstance],
    graph: &LexGraph,
) -> Vec<Vec<usize>> {
    if rule.rhs.first() != Some(&first.type_name) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut prefix = vec![first.id];
    extend_naive(&rule.rhs[1..], &mut prefix, store, graph, &mut out);
    out
}

fn extend_naive(
    rhs: &[String],
    prefix: &mut Vec<usize>,
    store: &[SymbolInstance],
    graph: &LexGraph,
    out: &mut Vec<Vec<usize>>,
) {
    let Some((symbol, rest)) = rhs.split_first() else {
        out.push(prefix.clone());
        return;
    };
    let last = &store[*prefix.last().unwrap()];
    for candidate in store.iter().filter(|c| &c.type_name == symbol) {
        if extended_follows(last, candidate, graph) {
            prefix.push(candidate.id);
            extend_naive(rest, prefix, store, graph, out);
            prefix.pop();
        }
    }
}

pub fn parse(graph: &LexGraph, grammar: &Grammar) -> ParseForest {
    let mut store = Store::new(graph);
    let mut passes = 0;

    loop {
        passes += 1;
        let mut changed = false;
        for (rule_index, rule) in grammar.rules.iter().enumerate() {
            let mut k = 0;
            while k < store.instances.len() {
                if store.instances[k].type_name == rule.rhs[0] {
                    let mut tuples = Vec::new();
                    store.extend(&rule.rhs[1..], &mut vec![k], &mut tuples);
                    for children in tuples {
                        if store.keys.insert((rule.lhs.clone(), children.clone())) {
                            let first = &store.instances[children[0]];
                            let last = &store.instances[*children.last().unwrap()];
                            let inst = SymbolInstance {
                                id: store.instances.len(),
                                type_name: rule.lhs.clone(),
                                start: first.start,
                                end: last.end,
                                text: None,
                                children,
                                rule: Some(rule_index),
                            };
                            store.push(inst);
                            changed = true;
                        }
                    }
                }
                k += 1;
            }
        }
        if !changed {
            break;
        }
    }

    let first_end = store.graph.tokens.iter().map(|t| t.end).min();
    let last_start = store.graph.tokens.iter().map(|t| t.start).max();
    let accepted = store
        .instances
        .iter()
        .filter(|i| i.type_name == grammar.start_symbol)
        .filter(|i| first_end.is_some_and(|e| e >= i.start) && last_start.is_some_and(|s| s <= i.end))
        .map(|i| i.id)
        .collect();

    ParseForest { instances: store.instances, accepted, passes }
}

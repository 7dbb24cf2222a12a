use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use super::{is_identifier, Diagnostic, LexSpec, SpecError};

/// `lhs ::= rhs[0] rhs[1] ...`. The right-hand side is never empty.
#[derive(Debug, Clone)]
pub struct GrammarRule {
    pub lhs: String,
    pub rhs: Vec<String>,
    pub line: usize,
}

impl GrammarRule {
    pub fn new(lhs: &str, rhs: &[&str]) -> Self {
        GrammarRule { lhs: lhs.to_owned(), rhs: rhs.iter().map(|s| (*s).to_owned()).collect(), line: 0 }
    }
}

impl PartialEq for GrammarRule {
    fn eq(&self, other: &Self) -> bool {
        self.lhs == other.lhs && self.rhs == other.rhs
    }
}

impl Eq for GrammarRule {}

impl fmt::Display for GrammarRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ::= {}", self.lhs, self.rhs.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    pub rules: Vec<GrammarRule>,
    pub start_symbol: String,
    /// Line of the `start` directive, if there was one.
    pub start_line: Option<usize>,
}

impl Grammar {
    /// Builds a grammar from rules without validating it. Rules without a
    /// line number get their 1-based position.
    pub fn new(rules: Vec<GrammarRule>, start_symbol: &str) -> Self {
        let rules = rules
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                if r.line == 0 {
                    r.line = i + 1;
                }
                r
            })
            .collect();
        Grammar { rules, start_symbol: start_symbol.to_owned(), start_line: None }
    }

    pub fn nonterminals(&self) -> BTreeSet<&str> {
        self.rules.iter().map(|r| r.lhs.as_str()).collect()
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start {}", self.start_symbol)?;
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

/// Parses a grammar and validates it against the token names of `spec`.
pub fn parse_grammar(text: &str, spec: &LexSpec) -> Result<Grammar, SpecError> {
    let mut rules = Vec::new();
    let mut start: Option<(String, usize)> = None;
    let mut diagnostics = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some((lhs, rhs)) = body.split_once("::=") {
            let lhs = lhs.trim();
            if !is_identifier(lhs) {
                diagnostics.push(Diagnostic::new(line, format!("`{lhs}` is not a valid symbol name")));
                continue;
            }
            for alternative in rhs.split('|') {
                let symbols: Vec<String> = alternative.split_whitespace().map(str::to_owned).collect();
                for bad in symbols.iter().filter(|s| !is_identifier(s)) {
                    diagnostics.push(Diagnostic::new(line, format!("`{bad}` is not a valid symbol name")));
                }
                rules.push(GrammarRule { lhs: lhs.to_owned(), rhs: symbols, line });
            }
            continue;
        }
        let mut words = body.split_whitespace();
        match (words.next(), words.next(), words.next()) {
            (Some("start"), Some(name), None) => {
                if let Some((_, first)) = &start {
                    diagnostics
                        .push(Diagnostic::new(line, format!("duplicate `start` directive (first on line {first})")));
                } else if !is_identifier(name) {
                    diagnostics.push(Diagnostic::new(line, format!("`{name}` is not a valid symbol name")));
                } else {
                    start = Some((name.to_owned(), line));
                }
            }
            _ => diagnostics.push(Diagnostic::new(line, "expected `start NAME` or `LHS ::= SYMBOLS`")),
        }
    }

    let grammar = match start {
        Some((name, line)) => Grammar { rules, start_symbol: name, start_line: Some(line) },
        None => {
            let first = rules.first().map(|r| r.lhs.clone()).unwrap_or_default();
            Grammar { rules, start_symbol: first, start_line: None }
        }
    };
    if diagnostics.is_empty() {
        diagnostics = check(&grammar, spec);
    }
    SpecError::from_diagnostics(diagnostics)?;
    Ok(grammar)
}

pub(super) fn check(grammar: &Grammar, spec: &LexSpec) -> Vec<Diagnostic> {
    let mut diagnostics = Vec::new();
    let tokens: HashSet<&str> = spec.token_defs.iter().map(|d| d.name.as_str()).collect();
    let nonterminals = grammar.nonterminals();

    if grammar.rules.is_empty() {
        diagnostics.push(Diagnostic::new(grammar.start_line.unwrap_or(1), "grammar has no rules"));
        return diagnostics;
    }
    if !nonterminals.contains(grammar.start_symbol.as_str()) {
        let line = grammar.start_line.unwrap_or(grammar.rules[0].line);
        diagnostics.push(Diagnostic::new(
            line,
            format!("start symbol `{}` is not the left-hand side of any rule", grammar.start_symbol),
        ));
    }

    let mut reported_collisions = HashSet::new();
    for rule in &grammar.rules {
        if tokens.contains(rule.lhs.as_str()) && reported_collisions.insert(rule.lhs.as_str()) {
            diagnostics
                .push(Diagnostic::new(rule.line, format!("nonterminal `{}` collides with a token name", rule.lhs)));
        }
        if rule.rhs.is_empty() {
            diagnostics
                .push(Diagnostic::new(rule.line, format!("rule for `{}` has an empty right-hand side", rule.lhs)));
        }
        for symbol in &rule.rhs {
            if !tokens.contains(symbol.as_str()) && !nonterminals.contains(symbol.as_str()) {
                diagnostics.push(Diagnostic::new(rule.line, format!("undefined symbol `{symbol}`")));
            }
        }
    }

    diagnostics.extend(unit_cycles(grammar, &tokens));
    diagnostics
}

/// Reports each cycle of unit productions (`A ::= B` with `B` a nonterminal).
fn unit_cycles(grammar: &Grammar, tokens: &HashSet<&str>) -> Vec<Diagnostic> {
    let mut edges: BTreeMap<&str, Vec<(&str, usize)>> = BTreeMap::new();
    for rule in &grammar.rules {
        if let [only] = rule.rhs.as_slice() {
            if !tokens.contains(only.as_str()) {
                edges.entry(&rule.lhs).or_default().push((only, rule.line));
            }
        }
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    let mut marks: BTreeMap<&str, Mark> = BTreeMap::new();
    let mut diagnostics = Vec::new();

    fn visit<'a>(
        node: &'a str,
        edges: &BTreeMap<&'a str, Vec<(&'a str, usize)>>,
        marks: &mut BTreeMap<&'a str, Mark>,
        path: &mut Vec<&'a str>,
        out: &mut Vec<Diagnostic>,
    ) {
        marks.insert(node, Mark::Open);
        path.push(node);
        for &(next, line) in edges.get(node).map(Vec::as_slice).unwrap_or(&[]) {
            match marks.get(next) {
                Some(Mark::Open) => {
                    let from = path.iter().position(|&n| n == next).unwrap();
                    let mut cycle: Vec<&str> = path[from..].to_vec();
                    cycle.push(next);
                    out.push(Diagnostic::new(line, format!("unit-production cycle {}", cycle.join(" -> "))));
                }
                Some(Mark::Done) => {}
                None => visit(next, edges, marks, path, out),
            }
        }
        path.pop();
        marks.insert(node, Mark::Done);
    }

    let roots: Vec<&str> = edges.keys().copied().collect();
    for root in roots {
        if !marks.contains_key(root) {
            visit(root, &edges, &mut marks, &mut Vec::new(), &mut diagnostics);
        }
    }
    diagnostics
}

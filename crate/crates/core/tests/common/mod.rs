#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use lamb::lexgraph::{enumerate_sequences, LexGraph};
use lamb::parser::Tree;
use lamb::scanner::{ScanResult, Token};
use lamb::spec_io::{parse_grammar, parse_lex_spec, validate, Grammar, GrammarRule, LexSpec};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub const EXAMPLE_INPUT: &str = "&5.2& /25.20/";

pub const PAPER_GRAMMAR: &str = "E ::= A B\nA ::= Ampersand Real Ampersand\nB ::= Slash Integer Point Integer Slash\n";

pub fn number_spec_text(integer: u32, real: u32, others: u32) -> String {
    format!(
        "token Integer {integer} /(-|\\+)?[0-9]+/\n\
         token Real {real} /(-|\\+)?[0-9]+\\.[0-9]+/\n\
         token Point {others} /\\./\n\
         token Slash {others} /\\//\n\
         token Ampersand {others} /\\&/\n\
         ignore / +/\n"
    )
}

pub fn number_spec(integer: u32, real: u32, others: u32) -> LexSpec {
    parse_lex_spec(&number_spec_text(integer, real, others)).unwrap()
}

pub fn reserved_spec(priorities: [u32; 4]) -> LexSpec {
    let [p_if, p_while, p_bool, p_ident] = priorities;
    parse_lex_spec(&format!(
        "token IF {p_if} /if/\ntoken WHILE {p_while} /while/\n\
         token BOOLEAN {p_bool} /true|false/\ntoken IDENTIFIER {p_ident} /[_a-zA-Z]+/\nignore / +/\n"
    ))
    .unwrap()
}

pub fn paper_grammar() -> Grammar {
    parse_grammar(PAPER_GRAMMAR, &number_spec(1, 1, 1)).unwrap()
}

pub fn types(graph: &LexGraph, path: &[usize]) -> Vec<String> {
    path.iter().map(|&id| graph.tokens[id].type_name.clone()).collect()
}

// ---------------------------------------------------------------------------
// Random lexical specs covering every pattern construct.

pub const INPUT_ALPHABET: &[char] = &['a', 'b', 'a', 'b', '0', '1', '.', '-', '/', '&', '+', ' ', ' ', '\\', '\n'];

fn gen_atom(rng: &mut StdRng, depth: u32) -> String {
    let choice = if depth == 0 { rng.gen_range(0..6) } else { rng.gen_range(0..8) };
    match choice {
        0 | 1 => ["a", "b", "0", "1", "&"].choose(rng).unwrap().to_string(),
        2 => [r"\.", r"\/", r"\-", r"\+", r"\&", r"\\", r"\n"].choose(rng).unwrap().to_string(),
        3 => ["[a-b]", "[0-1]", "[^a]", "[^ \\n]", "[-.]", "[ab/]"].choose(rng).unwrap().to_string(),
        4 => ".".into(),
        5 => " ".into(),
        6 => format!("({})", gen_pattern(rng, depth - 1)),
        _ => {
            let n = rng.gen_range(2..=3);
            let branches: Vec<String> = (0..n).map(|_| gen_pattern(rng, depth - 1)).collect();
            format!("({})", branches.join("|"))
        }
    }
}

fn gen_piece(rng: &mut StdRng, depth: u32) -> String {
    let atom = gen_atom(rng, depth);
    match rng.gen_range(0..6) {
        0 => atom + "*",
        1 => atom + "+",
        2 => atom + "?",
        _ => atom,
    }
}

pub fn gen_pattern(rng: &mut StdRng, depth: u32) -> String {
    let n = rng.gen_range(1..=3);
    (0..n).map(|_| gen_piece(rng, depth)).collect()
}

/// 1..=6 definitions, at least one token, priorities 1..=3, ignores mixed in.
pub fn random_spec(rng: &mut StdRng) -> LexSpec {
    let count = rng.gen_range(1..=6);
    let token_slot = rng.gen_range(0..count);
    let mut spec = LexSpec::default();
    for k in 0..count {
        let source = gen_pattern(rng, 2);
        let added = if k != token_slot && rng.gen_bool(0.25) {
            spec.push_ignore(&source)
        } else {
            spec.push_token(&format!("T{k}"), rng.gen_range(1..=3), &source)
        };
        added.unwrap_or_else(|e| panic!("generated pattern {source:?} must compile: {e}"));
    }
    spec
}

pub fn random_input(rng: &mut StdRng, max_len: usize) -> String {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| *INPUT_ALPHABET.choose(rng).unwrap()).collect()
}

// ---------------------------------------------------------------------------
// Random token interval sets.

pub fn random_intervals(rng: &mut StdRng, max_tokens: usize, span: usize, type_names: &[&str]) -> ScanResult {
    let count = rng.gen_range(0..=max_tokens);
    let mut spans: Vec<(usize, usize, &str)> = (0..count)
        .map(|_| {
            let start = rng.gen_range(0..span);
            let len = if rng.gen_bool(0.6) { 1 } else { rng.gen_range(1..=4) };
            (start, start + len - 1, *type_names.choose(rng).unwrap())
        })
        .collect();
    // Duplicated spans are allowed; scanner output order is by start.
    spans.sort_by_key(|s| s.0);
    let tokens: Vec<Token> = spans
        .into_iter()
        .enumerate()
        .map(|(id, (start, end, ty))| Token { id, type_name: ty.to_owned(), text: String::new(), start, end })
        .collect();
    let input_length = tokens.iter().map(|t| t.end + 1).max().unwrap_or(0);
    ScanResult { tokens, input_length, unmatched: Vec::new() }
}

// ---------------------------------------------------------------------------
// Random small grammars.

pub fn terminal_spec(names: &[&str]) -> LexSpec {
    let mut spec = LexSpec::default();
    for name in names {
        spec.push_token(name, 1, "x").unwrap();
    }
    spec
}

/// Up to `max_rules` rules over nonterminals S, X, Y; start S. Retries until
/// the grammar validates.
pub fn random_grammar(rng: &mut StdRng, terminals: &[&str], max_rules: usize) -> Grammar {
    let spec = terminal_spec(terminals);
    let nonterminals = ["S", "X", "Y"];
    loop {
        let count = rng.gen_range(1..=max_rules);
        let mut rules = vec![];
        // Half the grammars open with a right-recursive list so that sentences
        // spanning the whole input are common.
        if count >= 4 && rng.gen_bool(0.5) {
            let item = *nonterminals[1..].choose(rng).unwrap();
            rules.push(GrammarRule::new("S", &[item, "S"]));
            rules.push(GrammarRule::new("S", &[item]));
            for _ in 0..2 {
                rules.push(GrammarRule::new(item, &[*terminals.choose(rng).unwrap()]));
            }
        }
        for k in rules.len()..count {
            let lhs = if k == 0 { "S" } else { *nonterminals.choose(rng).unwrap() };
            let len = rng.gen_range(1..=3);
            let rhs: Vec<&str> = (0..len)
                .map(|_| {
                    if rng.gen_bool(0.6) {
                        *terminals.choose(rng).unwrap()
                    } else {
                        *nonterminals.choose(rng).unwrap()
                    }
                })
                .collect();
            rules.push(GrammarRule::new(lhs, &rhs));
        }
        let grammar = Grammar::new(rules, "S");
        if validate(&spec, Some(&grammar)).is_ok() {
            return grammar;
        }
    }
}

// ---------------------------------------------------------------------------
// Brute-force parser: enumerate every token path, then derive every tree of
// every path by exhaustive span splitting.

pub fn brute_force_accepted(graph: &LexGraph, grammar: &Grammar) -> BTreeSet<Tree> {
    let paths = enumerate_sequences(graph, usize::MAX).paths;
    let mut accepted = BTreeSet::new();
    for path in paths {
        accepted.extend(derive(&path, graph, grammar, 0, path.len(), &grammar.start_symbol));
    }
    accepted
}

#[allow(clippy::needless_range_loop)]
fn derive(path: &[usize], graph: &LexGraph, grammar: &Grammar, from: usize, to: usize, symbol: &str) -> BTreeSet<Tree> {
    let mut chart: BTreeMap<(usize, usize), BTreeMap<String, BTreeSet<Tree>>> = BTreeMap::new();
    for len in 1..=path.len() {
        for i in 0..=path.len() - len {
            let j = i + len;
            let mut cell: BTreeMap<String, BTreeSet<Tree>> = BTreeMap::new();
            if len == 1 {
                cell.entry(graph.tokens[path[i]].type_name.clone()).or_default().insert(Tree::Leaf(path[i]));
            }
            // Unit rules feed on this same cell, so iterate to a fixpoint.
            loop {
                let mut changed = false;
                for rule in &grammar.rules {
                    for children in splits(&rule.rhs, i, j, &chart, &cell) {
                        let tree = Tree::Node(rule.lhs.clone(), children);
                        changed |= cell.entry(rule.lhs.clone()).or_default().insert(tree);
                    }
                }
                if !changed {
                    break;
                }
            }
            chart.insert((i, j), cell);
        }
    }
    chart.get(&(from, to)).and_then(|c| c.get(symbol)).cloned().unwrap_or_default()
}

/// Every child-tree tuple deriving `rhs` over `[i, j)` from non-empty parts.
fn splits(
    rhs: &[String],
    i: usize,
    j: usize,
    chart: &BTreeMap<(usize, usize), BTreeMap<String, BTreeSet<Tree>>>,
    current: &BTreeMap<String, BTreeSet<Tree>>,
) -> Vec<Vec<Tree>> {
    let lookup = |a: usize, b: usize, sym: &str| -> Vec<Tree> {
        let cell = if (a, b) == (i, j) { Some(current) } else { chart.get(&(a, b)) };
        cell.and_then(|c| c.get(sym)).map(|s| s.iter().cloned().collect()).unwrap_or_default()
    };
    fn go(
        rhs: &[String],
        at: usize,
        j: usize,
        lookup: &dyn Fn(usize, usize, &str) -> Vec<Tree>,
        prefix: &mut Vec<Tree>,
        out: &mut Vec<Vec<Tree>>,
    ) {
        let Some((first, rest)) = rhs.split_first() else {
            if at == j {
                out.push(prefix.clone());
            }
            return;
        };
        let max_end = j - rest.len();
        for end in at + 1..=max_end {
            for tree in lookup(at, end, first) {
                prefix.push(tree);
                go(rest, end, j, lookup, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if rhs.len() <= j - i {
        go(rhs, i, j, &lookup, &mut Vec::new(), &mut out);
    }
    out
}

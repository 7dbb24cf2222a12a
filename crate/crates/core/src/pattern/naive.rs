//! Reference recognizer: propagates the full set of reachable end offsets
//! through the syntax tree. Shares nothing with the automaton.

use std::collections::BTreeSet;

use super::ast::Node;

pub(crate) fn longest_at(node: &Node, input: &[char], pos: usize) -> Option<usize> {
    if pos > input.len() {
        return None;
    }
    let ends = advance(node, input, &BTreeSet::from([pos]));
    ends.into_iter().next_back().filter(|&end| end > pos).map(|end| end - pos)
}

fn advance(node: &Node, input: &[char], from: &BTreeSet<usize>) -> BTreeSet<usize> {
    let step = |pred: &dyn Fn(char) -> bool| -> BTreeSet<usize> {
        from.iter().filter(|&&p| p < input.len() && pred(input[p])).map(|&p| p + 1).collect()
    };
    match node {
        Node::Empty => from.clone(),
        Node::Char(c) => step(&|x| x == *c),
        Node::Any => step(&|x| x != '\n'),
        Node::Class(set) => step(&|x| set.contains(x)),
        Node::Concat(items) => items.iter().fold(from.clone(), |acc, item| advance(item, input, &acc)),
        Node::Alt(branches) => branches.iter().flat_map(|b| advance(b, input, from)).collect(),
        Node::Opt(inner) => {
            let mut out = from.clone();
            out.extend(advance(inner, input, from));
            out
        }
        Node::Star(inner) => closure(inner, input, from.clone()),
        Node::Plus(inner) => {
            let once = advance(inner, input, from);
            closure(inner, input, once)
        }
    }
}

fn closure(inner: &Node, input: &[char], mut reached: BTreeSet<usize>) -> BTreeSet<usize> {
    let mut frontier = reached.clone();
    while !frontier.is_empty() {
        let fresh: BTreeSet<usize> =
            advance(inner, input, &frontier).into_iter().filter(|p| !reached.contains(p)).collect();
        reached.extend(fresh.iter().copied());
        frontier = fresh;
    }
    reached
}

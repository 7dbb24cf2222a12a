//! Thompson construction plus a state-set simulation that tracks the longest
//! accepting prefix. Work per query is O(states * consumed input).

use super::ast::{ClassSet, Node};

#[derive(Debug, Clone)]
enum Inst {
    Char(char, usize),
    Any(usize),
    Class(usize, usize),
    Split(Vec<usize>),
    Match,
}

#[derive(Debug, Clone)]
pub(crate) struct Nfa {
    insts: Vec<Inst>,
    classes: Vec<ClassSet>,
    entry: usize,
}

impl Nfa {
    pub fn compile(node: &Node) -> Nfa {
        let mut nfa = Nfa { insts: vec![Inst::Match], classes: Vec::new(), entry: 0 };
        nfa.entry = nfa.emit(node, 0);
        nfa
    }

    fn push(&mut self, inst: Inst) -> usize {
        self.insts.push(inst);
        self.insts.len() - 1
    }

    /// Emits `node` so that it continues into `next`, returning its entry.
    fn emit(&mut self, node: &Node, next: usize) -> usize {
        match node {
            Node::Empty => next,
            Node::Char(c) => self.push(Inst::Char(*c, next)),
            Node::Any => self.push(Inst::Any(next)),
            Node::Class(set) => {
                self.classes.push(set.clone());
                let class = self.classes.len() - 1;
                self.push(Inst::Class(class, next))
            }
            Node::Concat(items) => items.iter().rev().fold(next, |next, item| self.emit(item, next)),
            Node::Alt(branches) => {
                let targets = branches.iter().map(|b| self.emit(b, next)).collect();
                self.push(Inst::Split(targets))
            }
            Node::Opt(inner) => {
                let body = self.emit(inner, next);
                self.push(Inst::Split(vec![body, next]))
            }
            Node::Star(inner) => {
                let split = self.push(Inst::Split(Vec::new()));
                let body = self.emit(inner, split);
                self.insts[split] = Inst::Split(vec![body, next]);
                split
            }
            Node::Plus(inner) => {
                let split = self.push(Inst::Split(Vec::new()));
                let body = self.emit(inner, split);
                self.insts[split] = Inst::Split(vec![body, next]);
                body
            }
        }
    }

    pub fn longest_at(&self, input: &[char], pos: usize) -> Option<usize> {
        let n = self.insts.len();
        let mut seen = vec![usize::MAX; n];
        let mut current = Vec::with_capacity(n);
        let mut next = Vec::with_capacity(n);
        let mut stack = Vec::new();
        let mut best = None;

        self.close(self.entry, 0, &mut seen, &mut current, &mut stack);
        let mut consumed = 0;
        for &c in input.get(pos..).unwrap_or(&[]) {
            consumed += 1;
            next.clear();
            for &state in &current {
                let target = match self.insts[state] {
                    Inst::Char(want, to) if want == c => to,
                    Inst::Any(to) if c != '\n' => to,
                    Inst::Class(class, to) if self.classes[class].contains(c) => to,
                    _ => continue,
                };
                self.close(target, consumed, &mut seen, &mut next, &mut stack);
            }
            std::mem::swap(&mut current, &mut next);
            if current.is_empty() {
                break;
            }
            if current.iter().any(|&s| matches!(self.insts[s], Inst::Match)) {
                best = Some(consumed);
            }
        }
        best
    }

    /// Adds the epsilon closure of `from` to `set`. `seen[s] == step` marks
    /// states already in the set for this step.
    fn close(&self, from: usize, step: usize, seen: &mut [usize], set: &mut Vec<usize>, stack: &mut Vec<usize>) {
        stack.push(from);
        while let Some(s) = stack.pop() {
            if seen[s] == step {
                continue;
            }
            seen[s] = step;
            match &self.insts[s] {
                Inst::Split(targets) => stack.extend(targets.iter().rev()),
                _ => set.push(s),
            }
        }
    }
}

//! The scanning step: find every admissible token occurrence in the input.
//!
//! Matchers are visited per position in `(priority, ordinal)` order, so
//! ignore patterns (priority 0) come first. At a position the first priority
//! that matches closes the door on every lower priority, while equal
//! priorities are all tried and may all emit. An ignore match emits nothing
//! and stops the visit outright.
//!
//! Each matcher carries a watermark: the last offset it is *not* tried at.
//! After a match ending at `e`, the matcher's watermark (and that of every
//! strictly lower-priority matcher) is raised to `e`, or to an earlier
//! watermark already sitting inside `[i, e]`. That keeps a matcher from
//! emitting suffixes of its own tokens while still letting it restart where
//! a competing token ended.

mod oracle;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::spec_io::LexSpec;

pub use oracle::scan_oracle;

/// A recognized terminal occurrence. `start` and `end` are inclusive `char`
/// offsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub id: usize,
    #[serde(rename = "type")]
    pub type_name: String,
    pub text: String,
    pub start: usize,
    pub end: usize,
}

impl Token {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Token {
    /// `<id>\t<TYPE>\t<start>-<end>\t<text>`; control characters in the
    /// text are escaped so each token stays on one line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}-{}\t{}", self.id, self.type_name, self.start, self.end, escape_text(&self.text))
    }
}

pub(crate) fn escape_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            _ => out.push(c),
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanResult {
    /// Discovery order: by start offset, then by matcher order. `tokens[k].id == k`.
    pub tokens: Vec<Token>,
    pub input_length: usize,
    /// Offsets not covered by any token or ignored text.
    pub unmatched: Vec<usize>,
}

impl ScanResult {
    /// Groups `unmatched` into inclusive `(start, end)` runs.
    pub fn unmatched_runs(&self) -> Vec<(usize, usize)> {
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for &p in &self.unmatched {
            match runs.last_mut() {
                Some((_, end)) if *end + 1 == p => *end = p,
                _ => runs.push((p, p)),
            }
        }
        runs
    }
}

struct Matcher<'s> {
    name: Option<&'s str>,
    priority: u32,
    pattern: &'s crate::pattern::Pattern,
    /// `None` before the first match; otherwise the last offset skipped.
    watermark: Option<usize>,
}

impl Matcher<'_> {
    fn skips(&self, pos: usize) -> bool {
        self.watermark.is_some_and(|w| w >= pos)
    }
}

fn matchers(spec: &LexSpec) -> Vec<Matcher<'_>> {
    let mut ordered: Vec<(u32, usize, Matcher<'_>)> = spec
        .ignore_defs
        .iter()
        .map(|d| (0, d.ordinal, Matcher { name: None, priority: 0, pattern: &d.pattern, watermark: None }))
        .chain(spec.token_defs.iter().map(|d| {
            let m = Matcher { name: Some(&d.name), priority: d.priority, pattern: &d.pattern, watermark: None };
            (d.priority, d.ordinal, m)
        }))
        .collect();
    ordered.sort_by_key(|(priority, ordinal, _)| (*priority, *ordinal));
    ordered.into_iter().map(|(_, _, m)| m).collect()
}

pub fn scan(spec: &LexSpec, input: &str) -> ScanResult {
    let chars: Vec<char> = input.chars().collect();
    scan_chars(spec, &chars)
}

pub fn scan_chars(spec: &LexSpec, input: &[char]) -> ScanResult {
    let mut matchers = matchers(spec);
    let mut tokens = Vec::new();
    let mut unmatched = Vec::new();
    // One past the furthest offset covered so far.
    let mut covered = 0;

    for i in 0..input.len() {
        let mut matched_priority: Option<u32> = None;
        for k in 0..matchers.len() {
            if matchers[k].skips(i) {
                continue;
            }
            match matched_priority {
                Some(0) => break,
                Some(p) if matchers[k].priority > p => break,
                _ => {}
            }
            let Some(len) = matchers[k].pattern.match_longest_at(input, i) else {
                continue;
            };
            let m = &matchers[k];
            matched_priority = Some(m.priority);
            let end = i + len - 1;
            covered = covered.max(end + 1);
            if let Some(name) = m.name {
                tokens.push(Token {
                    id: tokens.len(),
                    type_name: name.to_owned(),
                    text: input[i..=end].iter().collect(),
                    start: i,
                    end,
                });
            }

            let bound =
                matchers.iter().filter_map(|n| n.watermark).filter(|&w| w >= i && w <= end).fold(end, usize::min);
            let priority = m.priority;
            matchers[k].watermark = Some(bound);
            for n in matchers.iter_mut().filter(|n| n.priority > priority) {
                n.watermark = Some(n.watermark.map_or(bound, |w| w.max(bound)));
            }
        }
        if covered <= i {
            unmatched.push(i);
        }
    }

    ScanResult { tokens, input_length: input.len(), unmatched }
}

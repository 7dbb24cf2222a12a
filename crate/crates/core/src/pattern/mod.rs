//! Token patterns: a small regular-expression dialect with anchored,
//! longest-match queries.
//!
//! Supported syntax: literals, `.` (any character but newline), classes
//! `[a-z_]` / `[^...]`, groups `(...)`, alternation `|`, and the postfix
//! operators `*`, `+`, `?`. Escapes: `\n`, `\t`, `\r`, and a backslash before
//! any ASCII punctuation character. There are no anchors, captures or counted
//! repetitions; every query is implicitly anchored at the given offset.
//!
//! Offsets and lengths count `char`s, not bytes.

mod ast;
mod naive;
mod nfa;

use std::fmt;

use thiserror::Error;

/// Pattern syntax errors. Positions are 0-based `char` offsets into the source.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("empty pattern")]
    Empty,
    #[error("unclosed group opened at {position}")]
    UnclosedGroup { position: usize },
    #[error("unbalanced ')' at {position}")]
    UnopenedGroup { position: usize },
    #[error("unclosed character class opened at {position}")]
    UnclosedClass { position: usize },
    #[error("'{op}' at {position} has nothing to repeat")]
    NothingToRepeat { position: usize, op: char },
    #[error("reversed range '{lo}-{hi}' at {position}")]
    ReversedRange { position: usize, lo: char, hi: char },
    #[error("unsupported escape '\\{escape}' at {position}")]
    UnknownEscape { position: usize, escape: char },
    #[error("trailing backslash at {position}")]
    TrailingBackslash { position: usize },
    #[error("unexpected end of pattern at {position}")]
    UnexpectedEnd { position: usize },
    #[error("unexpected '{found}' at {position}")]
    Unexpected { position: usize, found: char },
}

/// A compiled pattern. Immutable; queries take `&self` and may run concurrently.
#[derive(Clone)]
pub struct Pattern {
    source: String,
    tree: ast::Node,
    nfa: nfa::Nfa,
}

impl Pattern {
    pub fn compile(source: &str) -> Result<Pattern, PatternError> {
        let tree = ast::parse(source)?;
        let nfa = nfa::Nfa::compile(&tree);
        Ok(Pattern { source: source.to_owned(), tree, nfa })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Length of the longest non-empty match starting exactly at `pos`.
    ///
    /// An empty match counts as no match. Positions past the end of `input`
    /// never match.
    pub fn match_longest_at(&self, input: &[char], pos: usize) -> Option<usize> {
        if pos > input.len() {
            return None;
        }
        self.nfa.longest_at(input, pos)
    }

    /// Same contract as [`Pattern::match_longest_at`], answered by a slow
    /// set-propagating interpreter over the syntax tree instead of the
    /// automaton. Used by the reference scanner.
    pub fn reference_longest_at(&self, input: &[char], pos: usize) -> Option<usize> {
        naive::longest_at(&self.tree, input, pos)
    }
}

impl PartialEq for Pattern {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
    }
}

impl Eq for Pattern {}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({:?})", self.source)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

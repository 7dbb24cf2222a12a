//! Lexical specification and grammar files.
//!
//! Lexical spec, one definition per line:
//!
//! ```text
//! # comment
//! token Integer 1 /(-|\+)?[0-9]+/
//! ignore / +/
//! ```
//!
//! Grammar, one rule line per left-hand side (alternatives split by `|`):
//!
//! ```text
//! start E
//! E ::= A B
//! A ::= Ampersand Real Ampersand | Ampersand Integer Ampersand
//! ```
//!
//! Parsing collects every problem it can find and reports them together;
//! each [`Diagnostic`] carries the 1-based line it refers to.

mod grammar;
mod lexspec;

use std::fmt;

use thiserror::Error;

pub use grammar::{parse_grammar, Grammar, GrammarRule};
pub use lexspec::{parse_lex_spec, IgnoreDef, LexSpec, TokenDef};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// 1-based line in the offending input.
    pub line: usize,
    pub message: String,
}

impl Diagnostic {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Diagnostic { line, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// One or more diagnostics, in line order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct SpecError {
    pub diagnostics: Vec<Diagnostic>,
}

impl SpecError {
    fn from_diagnostics(mut diagnostics: Vec<Diagnostic>) -> Result<(), SpecError> {
        if diagnostics.is_empty() {
            return Ok(());
        }
        diagnostics.sort_by_key(|d| d.line);
        Err(SpecError { diagnostics })
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Checks every model invariant of `spec` and, when given, `grammar`, and
/// reports all violations at once.
pub fn validate(spec: &LexSpec, grammar: Option<&Grammar>) -> Result<(), SpecError> {
    let mut diagnostics = lexspec::check(spec);
    if let Some(grammar) = grammar {
        diagnostics.extend(grammar::check(grammar, spec));
    }
    SpecError::from_diagnostics(diagnostics)
}

use std::collections::HashMap;
use std::fmt;

use super::{is_identifier, Diagnostic, SpecError};
use crate::pattern::Pattern;

/// A named terminal pattern. Lower `priority` wins; equal priorities are
/// captured side by side.
#[derive(Debug, Clone)]
pub struct TokenDef {
    pub name: String,
    pub priority: u32,
    pub pattern: Pattern,
    /// 0-based position among all definitions in the file.
    pub ordinal: usize,
    pub line: usize,
}

/// Text that is consumed without producing tokens. Acts as priority 0.
#[derive(Debug, Clone)]
pub struct IgnoreDef {
    pub pattern: Pattern,
    pub ordinal: usize,
    pub line: usize,
}

// Line numbers are provenance, not structure.
impl PartialEq for TokenDef {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.priority == other.priority
            && self.pattern == other.pattern
            && self.ordinal == other.ordinal
    }
}

impl Eq for TokenDef {}

impl PartialEq for IgnoreDef {
    fn eq(&self, other: &Self) -> bool {
        self.pattern == other.pattern && self.ordinal == other.ordinal
    }
}

impl Eq for IgnoreDef {}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LexSpec {
    pub token_defs: Vec<TokenDef>,
    pub ignore_defs: Vec<IgnoreDef>,
}

impl LexSpec {
    pub fn token_def(&self, name: &str) -> Option<&TokenDef> {
        self.token_defs.iter().find(|d| d.name == name)
    }

    /// Appends a token definition with the next free ordinal.
    pub fn push_token(&mut self, name: &str, priority: u32, source: &str) -> Result<(), crate::pattern::PatternError> {
        let ordinal = self.next_ordinal();
        self.token_defs.push(TokenDef {
            name: name.to_owned(),
            priority,
            pattern: Pattern::compile(source)?,
            ordinal,
            line: ordinal + 1,
        });
        Ok(())
    }

    pub fn push_ignore(&mut self, source: &str) -> Result<(), crate::pattern::PatternError> {
        let ordinal = self.next_ordinal();
        self.ignore_defs.push(IgnoreDef { pattern: Pattern::compile(source)?, ordinal, line: ordinal + 1 });
        Ok(())
    }

    fn next_ordinal(&self) -> usize {
        self.token_defs.len() + self.ignore_defs.len()
    }
}

/// Canonical text: one definition per line in ordinal order, no comments.
impl fmt::Display for LexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lines: Vec<(usize, String)> = self
            .token_defs
            .iter()
            .map(|d| (d.ordinal, format!("token {} {} /{}/", d.name, d.priority, delimit(d.pattern.source()))))
            .chain(self.ignore_defs.iter().map(|d| (d.ordinal, format!("ignore /{}/", delimit(d.pattern.source())))))
            .collect();
        lines.sort_by_key(|(ordinal, _)| *ordinal);
        for (_, line) in lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Escapes bare slashes so the source survives the `/.../` delimiters.
fn delimit(source: &str) -> String {
    let mut out = String::with_capacity(source.len());
    let mut chars = source.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => {
                out.push(c);
                out.extend(chars.next());
            }
            '/' => out.push_str("\\/"),
            _ => out.push(c),
        }
    }
    out
}

pub fn parse_lex_spec(text: &str) -> Result<LexSpec, SpecError> {
    let mut spec = LexSpec::default();
    let mut diagnostics = Vec::new();
    let mut ordinal = 0;

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        match parse_line(body) {
            Ok(Definition::Token { name, priority, source }) => match Pattern::compile(&source) {
                Ok(pattern) => {
                    spec.token_defs.push(TokenDef { name, priority, pattern, ordinal, line });
                    ordinal += 1;
                }
                Err(e) => diagnostics.push(Diagnostic::new(line, format!("pattern /{source}/: {e}"))),
            },
            Ok(Definition::Ignore { source }) => match Pattern::compile(&source) {
                Ok(pattern) => {
                    spec.ignore_defs.push(IgnoreDef { pattern, ordinal, line });
                    ordinal += 1;
                }
                Err(e) => diagnostics.push(Diagnostic::new(line, format!("pattern /{source}/: {e}"))),
            },
            Err(message) => diagnostics.push(Diagnostic::new(line, message)),
        }
    }

    diagnostics.extend(check(&spec));
    SpecError::from_diagnostics(diagnostics)?;
    Ok(spec)
}

enum Definition {
    Token { name: String, priority: u32, source: String },
    Ignore { source: String },
}

fn parse_line(body: &str) -> Result<Definition, String> {
    let (keyword, rest) = split_word(body);
    match keyword {
        "token" => {
            let (name, rest) = split_word(rest);
            let (priority, rest) = split_word(rest);
            if name.is_empty() || priority.is_empty() {
                return Err("expected `token NAME PRIORITY /PATTERN/`".into());
            }
            let priority: i64 =
                priority.parse().map_err(|_| format!("priority `{priority}` is not a decimal integer"))?;
            if priority < 1 {
                return Err(format!("priority {priority} of token `{name}` must be at least 1"));
            }
            let priority = u32::try_from(priority).map_err(|_| format!("priority {priority} is too large"))?;
            let source = delimited_pattern(rest)?;
            Ok(Definition::Token { name: name.to_owned(), priority, source })
        }
        "ignore" => Ok(Definition::Ignore { source: delimited_pattern(rest)? }),
        other => Err(format!("unknown directive `{other}`; expected `token` or `ignore`")),
    }
}

fn split_word(s: &str) -> (&str, &str) {
    let s = s.trim_start();
    let end = s.find(char::is_whitespace).unwrap_or(s.len());
    (&s[..end], s[end..].trim_start())
}

/// Reads `/.../` from the start of `s`. Escapes are kept verbatim for the
/// pattern compiler; only trailing whitespace or a comment may follow.
fn delimited_pattern(s: &str) -> Result<String, String> {
    let mut chars = s.chars();
    if chars.next() != Some('/') {
        return Err("expected a pattern delimited by `/`".into());
    }
    let mut source = String::new();
    loop {
        match chars.next() {
            None => return Err("unterminated pattern: missing closing `/`".into()),
            Some('/') => break,
            Some('\\') => {
                source.push('\\');
                match chars.next() {
                    Some(c) => source.push(c),
                    None => return Err("unterminated pattern: missing closing `/`".into()),
                }
            }
            Some(c) => source.push(c),
        }
    }
    let trailing = chars.as_str().trim_start();
    if !trailing.is_empty() && !trailing.starts_with('#') {
        return Err(format!("unexpected text after pattern: `{trailing}`"));
    }
    Ok(source)
}

const NO_TOKENS: &str = "no token definitions";

pub(super) fn check(spec: &LexSpec) -> Vec<Diagnostic> {
    let mut diagnostics = Vec::new();
    if spec.token_defs.is_empty() {
        diagnostics.push(Diagnostic::new(1, NO_TOKENS));
    }
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for def in &spec.token_defs {
        if !is_identifier(&def.name) {
            diagnostics.push(Diagnostic::new(def.line, format!("`{}` is not a valid token name", def.name)));
        }
        if def.priority < 1 {
            diagnostics.push(Diagnostic::new(
                def.line,
                format!("priority {} of token `{}` must be at least 1", def.priority, def.name),
            ));
        }
        if let Some(first) = seen.insert(&def.name, def.line) {
            diagnostics.push(Diagnostic::new(
                def.line,
                format!("duplicate token name `{}` (first defined on line {first})", def.name),
            ));
        }
    }
    diagnostics
}

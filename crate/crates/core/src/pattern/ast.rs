//! Syntax tree and parser for the pattern dialect.

use super::PatternError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Node {
    Empty,
    Char(char),
    /// `.`: anything but a newline.
    Any,
    Class(ClassSet),
    Concat(Vec<Node>),
    Alt(Vec<Node>),
    Star(Box<Node>),
    Plus(Box<Node>),
    Opt(Box<Node>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ClassSet {
    pub negated: bool,
    pub ranges: Vec<(char, char)>,
}

impl ClassSet {
    pub fn contains(&self, c: char) -> bool {
        let hit = self.ranges.iter().any(|&(lo, hi)| lo <= c && c <= hi);
        hit != self.negated
    }
}

pub(crate) fn parse(source: &str) -> Result<Node, PatternError> {
    let chars: Vec<char> = source.chars().collect();
    if chars.is_empty() {
        return Err(PatternError::Empty);
    }
    let mut parser = Parser { chars, pos: 0 };
    let node = parser.alternation()?;
    match parser.peek() {
        None => Ok(node),
        Some(')') => Err(PatternError::UnopenedGroup { position: parser.pos }),
        Some(c) => Err(PatternError::Unexpected { position: parser.pos, found: c }),
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn alternation(&mut self) -> Result<Node, PatternError> {
        let mut branches = vec![self.concatenation()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            branches.push(self.concatenation()?);
        }
        Ok(if branches.len() == 1 { branches.pop().unwrap() } else { Node::Alt(branches) })
    }

    fn concatenation(&mut self) -> Result<Node, PatternError> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            items.push(self.repetition()?);
        }
        Ok(match items.len() {
            0 => Node::Empty,
            1 => items.pop().unwrap(),
            _ => Node::Concat(items),
        })
    }

    fn repetition(&mut self) -> Result<Node, PatternError> {
        let mut node = self.atom()?;
        loop {
            node = match self.peek() {
                Some('*') => Node::Star(Box::new(node)),
                Some('+') => Node::Plus(Box::new(node)),
                Some('?') => Node::Opt(Box::new(node)),
                _ => return Ok(node),
            };
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Node, PatternError> {
        let start = self.pos;
        match self.bump() {
            None => Err(PatternError::UnexpectedEnd { position: start }),
            Some('(') => {
                let inner = self.alternation()?;
                if self.bump() != Some(')') {
                    return Err(PatternError::UnclosedGroup { position: start });
                }
                Ok(inner)
            }
            Some('[') => self.class(start),
            Some('.') => Ok(Node::Any),
            Some('\\') => self.escape(start).map(Node::Char),
            Some(c @ ('*' | '+' | '?')) => Err(PatternError::NothingToRepeat { position: start, op: c }),
            Some(']') => Err(PatternError::Unexpected { position: start, found: ']' }),
            Some(c) => Ok(Node::Char(c)),
        }
    }

    /// Called with `pos` just past the backslash at `start`.
    fn escape(&mut self, start: usize) -> Result<char, PatternError> {
        match self.bump() {
            None => Err(PatternError::TrailingBackslash { position: start }),
            Some('n') => Ok('\n'),
            Some('t') => Ok('\t'),
            Some('r') => Ok('\r'),
            Some(c) if c.is_ascii_punctuation() => Ok(c),
            Some(c) => Err(PatternError::UnknownEscape { position: start, escape: c }),
        }
    }

    fn class(&mut self, start: usize) -> Result<Node, PatternError> {
        let mut negated = false;
        if self.peek() == Some('^') {
            negated = true;
            self.pos += 1;
        }
        let mut ranges = Vec::new();
        let mut first = true;
        loop {
            let item_pos = self.pos;
            let lo = match self.bump() {
                None => return Err(PatternError::UnclosedClass { position: start }),
                Some(']') if !first => break,
                Some('\\') => self.escape(item_pos)?,
                Some(c) => c,
            };
            first = false;
            // `-` is literal at either edge of the class.
            if self.peek() == Some('-') && !matches!(self.chars.get(self.pos + 1), Some(']') | None) {
                self.pos += 1;
                let hi_pos = self.pos;
                let hi = match self.bump() {
                    Some('\\') => self.escape(hi_pos)?,
                    Some(c) => c,
                    None => return Err(PatternError::UnclosedClass { position: start }),
                };
                if hi < lo {
                    return Err(PatternError::ReversedRange { position: item_pos, lo, hi });
                }
                ranges.push((lo, hi));
            } else {
                ranges.push((lo, lo));
            }
        }
        Ok(Node::Class(ClassSet { negated, ranges }))
    }
}

//! Lexical analysis with ambiguity support.
//!
//! A lexical specification lists token patterns with priorities. Scanning
//! keeps every token that the priorities admit, including overlapping ones,
//! and the lexical analysis graph links each token to its immediate
//! successors so that every path through it is one reading of the input. A
//! grammar then picks the readings that form valid sentences.
//!
//! ```
//! use lamb::{lexgraph, parser, scanner, spec_io};
//!
//! let spec = spec_io::parse_lex_spec("token Num 1 /[0-9]+/\ntoken Dot 1 /\\./\ntoken Real 1 /[0-9]+\\.[0-9]+/\n").unwrap();
//! let graph = lexgraph::build_graph(&scanner::scan(&spec, "1.5"));
//! assert_eq!(lexgraph::enumerate_sequences(&graph, 10).paths.len(), 2);
//!
//! let grammar = spec_io::parse_grammar("S ::= Num Dot Num\n", &spec).unwrap();
//! assert_eq!(parser::parse(&graph, &grammar).accepted.len(), 1);
//! ```

pub mod cli;
pub mod lexgraph;
pub mod parser;
pub mod pattern;
pub mod scanner;
pub mod spec_io;

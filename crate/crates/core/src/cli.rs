//! `lamb` command line: spec -> scan -> graph -> (optional) parse.
//!
//! Exit codes: 0 success, 1 spec/grammar/IO/usage error or oracle
//! divergence, 2 when `parse` finds no valid sentence.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::lexgraph::{self, build_graph, build_graph_oracle, enumerate_sequences, LexGraph};
use crate::parser::{self, parse};
use crate::scanner::{scan, scan_oracle, ScanResult};
use crate::spec_io::{parse_grammar, parse_lex_spec, LexSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NO_SENTENCE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lamb", version, about = "Lexical analysis with ambiguity support")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Scan the input and print every token (or the whole graph as JSON/DOT).
    Scan(Common),
    /// Print every token sequence the lexical analysis graph allows.
    Sequences {
        #[command(flatten)]
        common: Common,
        /// Stop after this many sequences.
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
    },
    /// Parse the lexical analysis graph with a grammar and print accepted trees.
    Parse {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        grammar: PathBuf,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Lexical specification file.
    #[arg(long)]
    spec: PathBuf,
    /// Input file, or `-` for standard input.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Re-run scanning and graph construction with the reference
    /// implementations and fail if they disagree.
    #[arg(long)]
    oracle_check: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

/// Failure that maps to exit code 1; the message goes to the error stream.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, stdin, stderr) {
        Ok((payload, code)) => {
            if let Err(e) = stdout.write_all(payload.as_bytes()).and_then(|_| stdout.flush()) {
                let _ = writeln!(stderr, "error: writing output: {e}");
                return EXIT_ERROR;
            }
            code
        }
        Err(Failure(message)) => {
            let _ = writeln!(stderr, "error: {message}");
            EXIT_ERROR
        }
    }
}

fn read_file(path: &Path, what: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {what} `{}`: {e}", path.display())))
}

fn read_input(path: &Path, stdin: &mut dyn Read) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        stdin.read_to_string(&mut text).map_err(|e| Failure(format!("cannot read standard input: {e}")))?;
        Ok(text)
    } else {
        read_file(path, "input")
    }
}

fn load_spec(path: &Path) -> Result<LexSpec, Failure> {
    let text = read_file(path, "spec")?;
    parse_lex_spec(&text).map_err(|e| Failure(format!("in spec `{}`:\n{e}", path.display())))
}

struct Analysis {
    scan: ScanResult,
    graph: LexGraph,
    /// Set when `--oracle-check` found a divergence.
    divergence: Option<String>,
}

fn analyze(common: &Common, spec: &LexSpec, input: &str, stderr: &mut dyn Write) -> Analysis {
    let result = scan(spec, input);
    for (start, end) in result.unmatched_runs() {
        let _ = writeln!(stderr, "warning: no pattern matches input at offsets {start}-{end}; skipped");
    }
    let graph = build_graph(&result);
    let mut divergence = None;
    if common.oracle_check {
        let mut report = String::new();
        let reference = scan_oracle(spec, input);
        if reference != result {
            let _ = writeln!(
                report,
                "scanner diverges from the reference scanner ({} vs {} tokens)",
                result.tokens.len(),
                reference.tokens.len()
            );
        }
        let reference_graph = build_graph_oracle(&result);
        if reference_graph != graph {
            let extra: Vec<_> = graph.edges().filter(|e| !reference_graph.edges().any(|r| r == *e)).collect();
            let missing: Vec<_> = reference_graph.edges().filter(|e| !graph.edges().any(|r| r == *e)).collect();
            let _ = writeln!(report, "graph diverges from the reference graph: extra {extra:?}, missing {missing:?}");
        }
        if !report.is_empty() {
            divergence = Some(report);
        }
    }
    Analysis { scan: result, graph, divergence }
}

#[derive(Serialize)]
struct SequenceJson<'a> {
    ids: &'a [usize],
    types: Vec<&'a str>,
}

#[derive(Serialize)]
struct SequencesJson<'a> {
    sequences: Vec<SequenceJson<'a>>,
    truncated: bool,
}

fn execute(command: Command, stdin: &mut dyn Read, stderr: &mut dyn Write) -> Result<(String, i32), Failure> {
    let (payload, code, divergence) = match command {
        Command::Scan(common) => {
            let spec = load_spec(&common.spec)?;
            let input = read_input(&common.input, stdin)?;
            let analysis = analyze(&common, &spec, &input, stderr);
            let payload = match common.format {
                Format::Text => analysis.scan.tokens.iter().map(|t| format!("{t}\n")).collect(),
                Format::Json => lexgraph::to_json(&analysis.graph) + "\n",
                Format::Dot => lexgraph::to_dot(&analysis.graph),
            };
            (payload, EXIT_OK, analysis.divergence)
        }
        Command::Sequences { common, limit } => {
            if common.format == Format::Dot {
                return Err(Failure("`--format dot` is not available for `sequences`".into()));
            }
            let spec = load_spec(&common.spec)?;
            let input = read_input(&common.input, stdin)?;
            let analysis = analyze(&common, &spec, &input, stderr);
            let limit = usize::try_from(limit).unwrap_or(usize::MAX);
            let sequences = enumerate_sequences(&analysis.graph, limit);
            if sequences.truncated {
                let _ = writeln!(stderr, "warning: stopped after {limit} sequences (raise --limit for more)");
            }
            let tokens = &analysis.graph.tokens;
            let payload = match common.format {
                Format::Json => {
                    let doc = SequencesJson {
                        sequences: sequences
                            .paths
                            .iter()
                            .map(|p| SequenceJson {
                                ids: p,
                                types: p.iter().map(|&id| tokens[id].type_name.as_str()).collect(),
                            })
                            .collect(),
                        truncated: sequences.truncated,
                    };
                    serde_json::to_string(&doc)? + "\n"
                }
                _ => sequences
                    .paths
                    .iter()
                    .map(|p| {
                        let types: Vec<&str> = p.iter().map(|&id| tokens[id].type_name.as_str()).collect();
                        types.join(" ") + "\n"
                    })
                    .collect(),
            };
            (payload, EXIT_OK, analysis.divergence)
        }
        Command::Parse { common, grammar } => {
            let spec = load_spec(&common.spec)?;
            let grammar_text = read_file(&grammar, "grammar")?;
            let grammar = parse_grammar(&grammar_text, &spec)
                .map_err(|e| Failure(format!("in grammar `{}`:\n{e}", grammar.display())))?;
            let input = read_input(&common.input, stdin)?;
            let analysis = analyze(&common, &spec, &input, stderr);
            let forest = parse(&analysis.graph, &grammar);
            let payload = match common.format {
                Format::Text => parser::render_trees(&forest),
                Format::Json => parser::forest_to_json(&forest) + "\n",
                Format::Dot => parser::forest_to_dot(&forest),
            };
            let code = if forest.accepted.is_empty() {
                let _ = writeln!(stderr, "no valid sentence: no `{}` covers the whole input", grammar.start_symbol);
                EXIT_NO_SENTENCE
            } else {
                EXIT_OK
            };
            (payload, code, analysis.divergence)
        }
    };
    match divergence {
        Some(report) => {
            let _ = write!(stderr, "oracle check failed:\n{report}");
            Ok((payload, EXIT_ERROR))
        }
        None => Ok((payload, code)),
    }
}

//! Reading graph and triple documents from disk, with errors that name the
//! file and, for malformed JSON, the line and column.

use std::fmt;
use std::io::Read;
use std::path::Path;

use qsym_core::composition::Triple;
use qsym_core::graph::OneGraph;
use qsym_core::json::{graph_from_doc, parse_doc, triple_from_doc, GraphDoc, TripleDoc};
use qsym_core::Error;

pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

/// A failed command: message for stderr plus the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    /// Prefixes the message with the file it concerns.
    pub fn in_file(mut self, path: &Path) -> Self {
        self.message = format!("{}: {}", path.display(), self.message);
        self
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub type CliResult<T> = Result<T, Failure>;

/// Reads a file, or stdin when `path` is `-`.
pub fn read_text(path: &Path) -> CliResult<String> {
    let mut text = String::new();
    let outcome = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    outcome.map_err(|e| Failure::usage(format!("cannot read: {e}")).in_file(path))?;
    Ok(text)
}

pub enum Document {
    Graph(OneGraph),
    /// A triple, not yet checked against the triple axioms.
    Triple(Triple),
}

/// Loads a graph or triple document; a top-level `graph1` key marks a triple.
pub fn load(path: &Path) -> CliResult<Document> {
    let text = read_text(path)?;
    let within = |e: Error| Failure::from(e).in_file(path);
    let value: serde_json::Value = parse_doc(&text).map_err(within)?;
    if value.get("graph1").is_some() {
        let doc: TripleDoc = parse_doc(&text).map_err(within)?;
        Ok(Document::Triple(triple_from_doc(&doc).map_err(within)?))
    } else {
        let doc: GraphDoc = parse_doc(&text).map_err(within)?;
        Ok(Document::Graph(graph_from_doc(&doc).map_err(within)?))
    }
}

/// A triple satisfying every axiom.
pub fn load_triple(path: &Path) -> CliResult<Triple> {
    match load(path)? {
        Document::Triple(t) => {
            t.check().map_err(|e| Failure::from(e).in_file(path))?;
            Ok(t)
        }
        Document::Graph(_) => {
            Err(Failure::usage("expected a triple but found a graph (build one with `qsym pullback`)").in_file(path))
        }
    }
}

pub fn load_graph(path: &Path) -> CliResult<OneGraph> {
    match load(path)? {
        Document::Graph(g) => Ok(g),
        Document::Triple(_) => Err(Failure::usage("expected a graph but found a triple").in_file(path)),
    }
}

/// The two graphs of a triple (θ is ignored), or a graph paired with itself.
pub fn load_graph_pair(path: &Path) -> CliResult<(OneGraph, OneGraph)> {
    match load(path)? {
        Document::Graph(g) => Ok((g.clone(), g)),
        Document::Triple(t) => Ok((t.g1, t.g2)),
    }
}

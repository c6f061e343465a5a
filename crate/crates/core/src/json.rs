//! JSON documents for graphs and triples.
//!
//! Graph: `{"vertices": [...], "edges": [{"id", "source", "target"}]}` with
//! endpoints given by vertex label. Triple: `{"graph1", "graph2", "theta"}`
//! where each θ entry is `{"from": [g1 edge, g2 edge], "to": [g2 edge, g1 edge]}`.
//! Serialization is canonical: edges sorted by id, θ sorted by input pair,
//! pretty-printed with a trailing newline.

use std::collections::HashMap;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::composition::{ComposablePair, Theta, Triple};
use crate::error::{Error, Result};
use crate::graph::{Edge, OneGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleDoc {
    pub graph1: GraphDoc,
    pub graph2: GraphDoc,
    pub theta: Vec<ThetaEntryDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaEntryDoc {
    pub from: [String; 2],
    pub to: [String; 2],
}

/// Parses JSON, reporting syntax and schema errors with line and column.
pub fn parse_doc<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        // serde_json appends the position itself; report it once, up front
        let message = full.rfind(" at line ").map_or(full.as_str(), |i| &full[..i]);
        Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), message))
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_canonical_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

fn graph_from_doc_at(doc: &GraphDoc, path: &str) -> Result<OneGraph> {
    let mut index = HashMap::new();
    for (k, label) in doc.vertices.iter().enumerate() {
        if index.insert(label.as_str(), k).is_some() {
            return Err(Error::Parse(format!("{path}vertices[{k}]: duplicate vertex label '{label}'")));
        }
    }
    let resolve = |label: &str, field: String| {
        index.get(label).copied().ok_or_else(|| Error::Parse(format!("{field}: unknown vertex '{label}'")))
    };
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (k, e) in doc.edges.iter().enumerate() {
        let source = resolve(&e.source, format!("{path}edges[{k}].source"))?;
        let target = resolve(&e.target, format!("{path}edges[{k}].target"))?;
        edges.push(Edge::new(e.id.clone(), source, target));
    }
    OneGraph::new(doc.vertices.clone(), edges)
}

pub fn graph_from_doc(doc: &GraphDoc) -> Result<OneGraph> {
    graph_from_doc_at(doc, "")
}

pub fn graph_to_doc(g: &OneGraph) -> GraphDoc {
    let labels = g.labels();
    GraphDoc {
        vertices: labels.to_vec(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeDoc { id: e.id.clone(), source: labels[e.source].clone(), target: labels[e.target].clone() })
            .collect(),
    }
}

fn unique_index(g: &OneGraph, id: &str, field: String, which: &str) -> Result<usize> {
    let hits = g.edges().iter().filter(|e| e.id == id).count();
    match hits {
        0 => Err(Error::Parse(format!("{field}: unknown {which} edge '{id}'"))),
        1 => Ok(g.edge_index(id).expect("present")),
        _ => Err(Error::Parse(format!("{field}: edge id '{id}' is ambiguous in {which}"))),
    }
}

/// Builds the triple named by a document. Reference errors are reported by
/// field path; the triple axioms are checked separately (see
/// [`Triple::problems`]).
pub fn triple_from_doc(doc: &TripleDoc) -> Result<Triple> {
    let g1 = graph_from_doc_at(&doc.graph1, "graph1.")?;
    let g2 = graph_from_doc_at(&doc.graph2, "graph2.")?;
    let mut entries = Vec::with_capacity(doc.theta.len());
    for (k, entry) in doc.theta.iter().enumerate() {
        let a = unique_index(&g1, &entry.from[0], format!("theta[{k}].from[0]"), "graph1")?;
        let b = unique_index(&g2, &entry.from[1], format!("theta[{k}].from[1]"), "graph2")?;
        let c = unique_index(&g2, &entry.to[0], format!("theta[{k}].to[0]"), "graph2")?;
        let d = unique_index(&g1, &entry.to[1], format!("theta[{k}].to[1]"), "graph1")?;
        entries.push((ComposablePair::new(a, b), ComposablePair::new(c, d)));
    }
    Ok(Triple::from_parts(g1, g2, Theta::new(entries)))
}

pub fn triple_to_doc(t: &Triple) -> TripleDoc {
    TripleDoc {
        graph1: graph_to_doc(&t.g1),
        graph2: graph_to_doc(&t.g2),
        theta: t
            .theta
            .entries()
            .iter()
            .map(|&(from, to)| {
                let (a, b) = t.ids12(from);
                let (c, d) = t.ids21(to);
                ThetaEntryDoc { from: [a.into(), b.into()], to: [c.into(), d.into()] }
            })
            .collect(),
    }
}

pub fn parse_graph(text: &str) -> Result<OneGraph> {
    graph_from_doc(&parse_doc(text)?)
}

/// Parses and fully validates a triple.
pub fn parse_triple(text: &str) -> Result<Triple> {
    let t = triple_from_doc(&parse_doc(text)?)?;
    t.check()?;
    Ok(t)
}

pub fn graph_to_json(g: &OneGraph) -> String {
    to_canonical_json(&graph_to_doc(g))
}

pub fn triple_to_json(t: &Triple) -> String {
    to_canonical_json(&triple_to_doc(t))
}

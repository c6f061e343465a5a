//! Shipped example triples and graphs.
//!
//! * `ex-b`: two disjoint 2-cycle pairings of four vertices with their unique θ.
//! * `ex-c`: two copies of the complete digraph on four vertices with a θ
//!   that swaps two pairs of composable pairs and fixes the rest.
//! * `pullback`: the triple `(G, G, id)` over any graph (K4 by default).

use crate::composition::{pullback, Triple};
use crate::error::{Error, Result};
use crate::graph::{Edge, OneGraph};
use crate::json::{parse_graph, parse_triple};

pub const EX_B_JSON: &str = include_str!("../fixtures/ex-b.json");
pub const EX_C_JSON: &str = include_str!("../fixtures/ex-c.json");

/// Named graph fixtures as `(name, canonical JSON)`.
pub const GRAPHS: &[(&str, &str)] = &[
    ("loop", include_str!("../fixtures/loop.json")),
    ("edge-pair", include_str!("../fixtures/edge-pair.json")),
    ("cycle4", include_str!("../fixtures/cycle4.json")),
    ("k4", include_str!("../fixtures/k4.json")),
    ("petersen", include_str!("../fixtures/petersen.json")),
];

/// Names accepted by [`triple_fixture`].
pub const TRIPLES: &[&str] = &["ex-b", "ex-c", "pullback"];

pub fn example_b() -> Triple {
    parse_triple(EX_B_JSON).expect("shipped fixture ex-b is valid")
}

pub fn example_c() -> Triple {
    parse_triple(EX_C_JSON).expect("shipped fixture ex-c is valid")
}

pub fn graph_fixture(name: &str) -> Result<OneGraph> {
    GRAPHS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_graph(text))
        .unwrap_or_else(|| Err(Error::Parse(format!("unknown graph fixture '{name}'"))))
}

pub fn graph_fixture_json(name: &str) -> Option<&'static str> {
    GRAPHS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

/// `ex-b`, `ex-c`, or the pullback of `base` (K4 when `None`).
pub fn triple_fixture(name: &str, base: Option<&OneGraph>) -> Result<Triple> {
    match name {
        "ex-b" => Ok(example_b()),
        "ex-c" => Ok(example_c()),
        "pullback" => match base {
            Some(g) => pullback(g),
            None => pullback(&graph_fixture("k4")?),
        },
        other => Err(Error::Parse(format!("unknown triple fixture '{other}'"))),
    }
}

/// Complete digraph without loops on `n` vertices labelled `0..n`; edge ids
/// `"{s}-{t}"`.
pub fn complete_graph(n: usize) -> OneGraph {
    let mut edges = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if s != t {
                edges.push(Edge::new(format!("{s}-{t}"), s, t));
            }
        }
    }
    OneGraph::new((0..n).map(|v| v.to_string()).collect(), edges).expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_graph;
    use crate::json::{graph_to_json, triple_to_json};

    #[test]
    fn fixtures_are_canonical() {
        assert_eq!(triple_to_json(&example_b()), EX_B_JSON);
        assert_eq!(triple_to_json(&example_c()), EX_C_JSON);
        for (name, text) in GRAPHS {
            let g = graph_fixture(name).unwrap();
            assert!(validate_graph(&g).is_ok(), "{name}");
            assert_eq!(&graph_to_json(&g), text, "{name}");
        }
    }

    #[test]
    fn example_b_theta_matches_listing() {
        let t = example_b();
        let mut got: Vec<_> = t.theta.entries().iter().map(|&(a, b)| (t.ids12(a), t.ids21(b))).collect();
        got.sort();
        assert_eq!(
            got,
            vec![
                (("e1", "f1"), ("f3", "e3")),
                (("e2", "f3"), ("f1", "e4")),
                (("e3", "f2"), ("f4", "e1")),
                (("e4", "f4"), ("f2", "e2")),
            ]
        );
    }

    #[test]
    fn example_c_twists_exactly_four_pairs() {
        let t = example_c();
        let moved: Vec<_> = t
            .theta
            .entries()
            .iter()
            .map(|&(a, b)| (t.ids12(a), t.ids21(b)))
            .filter(|((e, f), (f2, e2))| f2[1..] != e[1..] || e2[1..] != f[1..])
            .collect();
        let mut moved: Vec<_> =
            moved.into_iter().map(|(a, b)| (a.0.to_string() + "," + a.1, b.0.to_string() + "," + b.1)).collect();
        moved.sort();
        assert_eq!(
            moved,
            vec![
                ("e1,f2".to_string(), "f4,e3".to_string()),
                ("e4,f3".to_string(), "f1,e2".to_string()),
                ("e6,f5".to_string(), "f8,e7".to_string()),
                ("e8,f7".to_string(), "f6,e5".to_string()),
            ]
        );
    }

    #[test]
    fn unknown_names() {
        assert!(graph_fixture("nope").is_err());
        assert!(triple_fixture("nope", None).is_err());
        assert_eq!(triple_fixture("pullback", None).unwrap().vertex_count(), 4);
    }
}

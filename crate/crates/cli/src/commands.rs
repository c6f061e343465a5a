use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use qsym_core::analyzer::{analyze_with_ideal, render_text, AnalysisConfig};
use qsym_core::composition::{composable_pairs, count_thetas, enumerate_thetas, pullback, skeleton_count, Triple};
use qsym_core::equivalence::{automorphisms, is_equivalent, GroupReport, Permutation, WitnessMode};
use qsym_core::fixtures::{self, GRAPHS, TRIPLES};
use qsym_core::graph::{validate_graph, OneGraph};
use qsym_core::json::{graph_to_json, to_canonical_json, triple_to_doc, triple_to_json, ThetaEntryDoc};
use qsym_core::ncalgebra::SaturationConfig;
use qsym_core::presentation::{canonicalize, generate};
use qsym_core::random::seeded_triple;
use qsym_core::Error;

use crate::input::{self, CliResult, Document, Failure};

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// What a command writes to stdout, and whether its answer was negative.
pub struct Output {
    pub text: String,
    pub negative: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, negative: false }
    }

    fn json<T: Serialize>(doc: &T) -> Self {
        Self::ok(to_canonical_json(doc))
    }
}

#[derive(Serialize)]
struct ValidationDoc {
    kind: &'static str,
    valid: bool,
    problems: Vec<String>,
    loops: Vec<String>,
}

pub fn validate(path: &Path, format: Format) -> CliResult<Output> {
    let doc = match input::load(path)? {
        Document::Graph(g) => {
            let v = validate_graph(&g);
            ValidationDoc {
                kind: "graph",
                valid: v.is_ok(),
                problems: v.violations.iter().map(ToString::to_string).collect(),
                loops: v.loops,
            }
        }
        Document::Triple(t) => {
            let problems = t.problems();
            let mut loops = Vec::new();
            for (name, g) in [("graph1", &t.g1), ("graph2", &t.g2)] {
                loops.extend(validate_graph(g).loops.into_iter().map(|id| format!("{name}: {id}")));
            }
            ValidationDoc { kind: "triple", valid: problems.is_empty(), problems, loops }
        }
    };
    let text = match format {
        Format::Json => to_canonical_json(&doc),
        Format::Text => {
            let mut s = format!("{} {}\n", if doc.valid { "valid" } else { "invalid" }, doc.kind);
            for p in &doc.problems {
                let _ = writeln!(s, "  problem: {p}");
            }
            for l in &doc.loops {
                let _ = writeln!(s, "  note: loop {l}");
            }
            s
        }
    };
    Ok(Output { text, negative: !doc.valid })
}

#[derive(Serialize)]
struct PairsDoc {
    /// `"12"` for `E1⋆E2`, `"21"` for `E2⋆E1`.
    order: &'static str,
    pairs: Vec<[String; 2]>,
}

pub fn pairs(path: &Path, reverse: bool, format: Format) -> CliResult<Output> {
    let (g1, g2) = input::load_graph_pair(path)?;
    let (x, y) = if reverse { (&g2, &g1) } else { (&g1, &g2) };
    let list = composable_pairs(x, y)?;
    if format == Format::Json {
        let pairs = list.iter().map(|p| [x.edge(p.first).id.clone(), y.edge(p.second).id.clone()]).collect();
        return Ok(Output::json(&PairsDoc { order: if reverse { "21" } else { "12" }, pairs }));
    }
    let labels = x.labels();
    let mut s = String::new();
    for (k, p) in list.iter().enumerate() {
        let (e, f) = (x.edge(p.first), y.edge(p.second));
        let _ = writeln!(
            s,
            "{:>4}  ({}, {})  {} -> {} -> {}",
            k + 1,
            e.id,
            f.id,
            labels[f.source],
            labels[e.source],
            labels[e.target]
        );
    }
    Ok(Output::ok(s))
}

#[derive(Serialize)]
struct ThetaCountDoc {
    theta_count: String,
}

pub fn theta_count(path: &Path, format: Format) -> CliResult<Output> {
    let (g1, g2) = input::load_graph_pair(path)?;
    let count = count_thetas(&g1, &g2)?.to_string();
    Ok(match format {
        Format::Json => Output::json(&ThetaCountDoc { theta_count: count }),
        Format::Text => Output::ok(format!("{count}\n")),
    })
}

#[derive(Serialize)]
struct ThetaEnumDoc {
    total: String,
    thetas: Vec<Vec<ThetaEntryDoc>>,
}

pub fn theta_enum(path: &Path, limit: usize, format: Format) -> CliResult<Output> {
    let (g1, g2) = input::load_graph_pair(path)?;
    let total = count_thetas(&g1, &g2)?;
    let triples: Vec<Triple> = enumerate_thetas(&g1, &g2, Some(limit))?
        .map(|theta| Triple::from_parts(g1.clone(), g2.clone(), theta))
        .collect();
    if format == Format::Json {
        let thetas = triples.iter().map(|t| triple_to_doc(t).theta).collect();
        return Ok(Output::json(&ThetaEnumDoc { total: total.to_string(), thetas }));
    }
    let mut s = String::new();
    for (k, t) in triples.iter().enumerate() {
        let _ = writeln!(s, "theta {}:", k + 1);
        for line in t.to_string().lines() {
            let _ = writeln!(s, "  {line}");
        }
    }
    if total > triples.len().into() {
        let _ = writeln!(s, "(showing {} of {total})", triples.len());
    }
    Ok(Output::ok(s))
}

pub fn pullback_of(path: &Path) -> CliResult<Output> {
    let g = input::load_graph(path)?;
    let t = pullback(&g).map_err(|e| Failure::from(e).in_file(path))?;
    Ok(Output::ok(triple_to_json(&t)))
}

#[derive(Serialize)]
struct SkeletonDoc {
    m: u32,
    n: u32,
    vertices: Vec<String>,
    /// Row = target, column = source.
    matrix: Vec<Vec<u64>>,
}

pub fn skeleton(path: &Path, m: u32, n: u32, format: Format) -> CliResult<Output> {
    let t = input::load_triple(path)?;
    let counts = skeleton_count(&t, m, n)?;
    let doc = SkeletonDoc { m, n, vertices: t.g1.labels().to_vec(), matrix: counts.rows() };
    if format == Format::Json {
        return Ok(Output::json(&doc));
    }
    let width = doc
        .vertices
        .iter()
        .map(String::len)
        .chain(doc.matrix.iter().flatten().map(|c| c.to_string().len()))
        .max()
        .unwrap_or(1);
    let mut s = format!("paths of degree ({m}, {n}); row = target, column = source\n");
    let _ = write!(s, "{:>width$}", "");
    for v in &doc.vertices {
        let _ = write!(s, " {v:>width$}");
    }
    s.push('\n');
    for (v, row) in doc.vertices.iter().zip(&doc.matrix) {
        let _ = write!(s, "{v:>width$}");
        for c in row {
            let _ = write!(s, " {c:>width$}");
        }
        s.push('\n');
    }
    Ok(Output::ok(s))
}

#[derive(Serialize)]
struct EquivDoc {
    equivalent: bool,
    witnesses: Vec<Permutation>,
}

pub fn equiv(first: &Path, second: &Path, all: bool, format: Format) -> CliResult<Output> {
    let t1 = input::load_triple(first)?;
    let t2 = input::load_triple(second)?;
    let mode = if all { WitnessMode::All } else { WitnessMode::First };
    let witnesses = match is_equivalent(&t1, &t2, mode) {
        Ok(w) => w,
        Err(Error::VertexMismatch(_)) => Vec::new(),
        Err(e) => return Err(e.into()),
    };
    let doc = EquivDoc { equivalent: !witnesses.is_empty(), witnesses };
    let text = match format {
        Format::Json => to_canonical_json(&doc),
        Format::Text if doc.equivalent => doc.witnesses.iter().fold("equivalent\n".to_string(), |mut s, w| {
            let _ = writeln!(s, "  witness {w}");
            s
        }),
        Format::Text => "not equivalent\n".to_string(),
    };
    Ok(Output { text, negative: !doc.equivalent })
}

fn group_text(g: &GroupReport) -> String {
    let orders: Vec<String> = g.element_orders.iter().map(ToString::to_string).collect();
    let mut s = format!(
        "{} (order {}, {})\nelement orders: {}\n",
        g.name,
        g.order,
        if g.abelian { "abelian" } else { "non-abelian" },
        orders.join(" ")
    );
    for e in &g.elements {
        let _ = writeln!(s, "  {e}");
    }
    s
}

pub fn aut(path: &Path, format: Format) -> CliResult<Output> {
    let g = automorphisms(&input::load_triple(path)?)?;
    Ok(match format {
        Format::Json => Output::json(&g),
        Format::Text => Output::ok(group_text(&g)),
    })
}

pub fn presentation(path: &Path, raw: bool, format: Format) -> CliResult<Output> {
    let generated = generate(&input::load_triple(path)?)?;
    let p = if raw { generated } else { canonicalize(&generated) };
    if format == Format::Json {
        return Ok(Output::ok(p.to_json()));
    }
    let mut s = format!("{} generators, {} relations\n", p.n * p.n, p.relations.len());
    for r in &p.relations {
        let _ = writeln!(s, "{:<20} {} = 0", r.tag, r.poly);
    }
    Ok(Output::ok(s))
}

pub fn analyze(path: &Path, config: AnalysisConfig, dump: Option<&PathBuf>, format: Format) -> CliResult<Output> {
    let t = input::load_triple(path)?;
    let (report, mut ideal) = analyze_with_ideal(&t, config)?;
    if let Some(target) = dump {
        std::fs::write(target, to_canonical_json(&ideal.dump()))
            .map_err(|e| Failure::usage(format!("cannot write: {e}")).in_file(target))?;
    }
    Ok(match format {
        Format::Json => Output::json(&report),
        Format::Text => Output::ok(render_text(&report)),
    })
}

pub fn analysis_config(degree_bound: usize, budget: usize, jobs: usize) -> AnalysisConfig {
    AnalysisConfig { saturation: SaturationConfig { degree_bound, word_budget: budget }, jobs }
}

#[derive(Serialize)]
struct FixtureListDoc {
    triples: Vec<&'static str>,
    graphs: Vec<&'static str>,
}

pub fn fixture_list(format: Format) -> Output {
    let doc = FixtureListDoc { triples: TRIPLES.to_vec(), graphs: GRAPHS.iter().map(|(n, _)| *n).collect() };
    match format {
        Format::Json => Output::json(&doc),
        Format::Text => Output::ok(format!("triples: {}\ngraphs: {}\n", doc.triples.join(" "), doc.graphs.join(" "))),
    }
}

/// A graph fixture name, or else a path to a graph file.
fn base_graph(spec: &str) -> CliResult<OneGraph> {
    if fixtures::graph_fixture_json(spec).is_some() {
        return Ok(fixtures::graph_fixture(spec)?);
    }
    input::load_graph(Path::new(spec))
}

pub fn fixture_export(name: &str, graph: Option<&str>) -> CliResult<Output> {
    if graph.is_some() && name != "pullback" {
        return Err(Failure::usage("--graph only applies to the pullback fixture"));
    }
    if TRIPLES.contains(&name) {
        let base = graph.map(base_graph).transpose()?;
        return Ok(Output::ok(triple_to_json(&fixtures::triple_fixture(name, base.as_ref())?)));
    }
    if fixtures::graph_fixture_json(name).is_some() {
        return Ok(Output::ok(graph_to_json(&fixtures::graph_fixture(name)?)));
    }
    Err(Failure::usage(format!("unknown fixture '{name}' (see `qsym fixtures list`)")))
}

pub fn fixture_random(max_n: usize, seed: u64) -> Output {
    Output::ok(triple_to_json(&seeded_triple(seed, max_n)))
}

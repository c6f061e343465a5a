//! One-shot classification of a triple: presentation, saturation, derived
//! entry map, commutativity, classical automorphisms and cross-checks.
//!
//! When commutativity is proved the quantum automorphism group is the
//! function algebra on its classical points, and the census of 0/1 magic
//! matrices satisfying the presentation identifies those points with the
//! classical automorphism group. An inconclusive commutativity check is not
//! evidence that the group is genuinely quantum.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::composition::{count_thetas, Triple};
use crate::equivalence::{automorphisms, GroupReport, Permutation};
use crate::error::{Error, Result};
use crate::ncalgebra::{saturate, Generator, Saturation, SaturationConfig};
use crate::presentation::{classical_value, generate, vanishes_at, Presentation, RelationTag};

/// Largest vertex count for the brute-force census of classical points.
pub const CENSUS_LIMIT: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub saturation: SaturationConfig,
    /// Worker threads; with more than one, the θ-free saturation runs
    /// alongside the main one. Results do not depend on this.
    pub jobs: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self { saturation: SaturationConfig::default(), jobs: 1 }
    }
}

impl AnalysisConfig {
    pub fn with_bound(degree_bound: usize) -> Self {
        Self { saturation: SaturationConfig::with_bound(degree_bound), jobs: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSummary {
    pub vertices: usize,
    pub edges_g1: usize,
    pub edges_g2: usize,
    pub composable_pairs: usize,
    /// Number of valid θ for the two graphs, as a decimal string.
    pub theta_count: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Commutativity {
    Proved,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ClassicalAndIdentified,
    InconclusivePossiblyQuantum,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ClassicalAndIdentified => "classical-and-identified",
            Verdict::InconclusivePossiblyQuantum => "inconclusive-possibly-quantum",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub triple_summary: TripleSummary,
    pub theta_unique: bool,
    /// Entries `[row, col]` proved to vanish (0-based).
    pub zero_entries: Vec<[usize; 2]>,
    /// Entries proved equal to 1.
    pub one_entries: Vec<[usize; 2]>,
    /// Surviving entries grouped by proved equality.
    pub entry_classes: Vec<Vec<[usize; 2]>>,
    /// Every θ-relation is in the ideal of the other relations at this bound.
    pub theta_relations_redundant: bool,
    pub theta_relations_total: usize,
    pub theta_relations_proved_redundant: usize,
    pub commutativity: Commutativity,
    /// Commutators not proved, as generator pairs.
    pub inconclusive_pairs: Vec<[[usize; 2]; 2]>,
    pub classical_group: GroupReport,
    /// Number of permutation matrices satisfying the presentation, when
    /// `n <= CENSUS_LIMIT`.
    pub classical_point_census: Option<usize>,
    pub verdict: Verdict,
    pub degree_bound_used: usize,
    pub normal_words: usize,
    pub ideal_rank: usize,
}

/// For each θ-relation, in generation order: is it in the saturation of the
/// presentation without θ-relations?
pub fn check_theta_redundant(t: &Triple, config: SaturationConfig) -> Result<Vec<bool>> {
    theta_redundancy(&generate(t)?, config)
}

fn theta_redundancy(p: &Presentation, config: SaturationConfig) -> Result<Vec<bool>> {
    let mut sat = saturate(&p.without(RelationTag::Theta), config)?;
    p.relations
        .iter()
        .filter(|r| r.tag == RelationTag::Theta)
        .map(|r| Ok(sat.membership(&r.poly)?.is_proved()))
        .collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation::new(cur.clone()).expect("valid"));
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Classical points of the presentation: permutations `σ` whose matrix
/// `q_ij = [σ(j) = i]` satisfies every relation. 0/1 magic matrices are
/// exactly permutation matrices, so this is the full 0/1 solution set.
pub fn classical_points(p: &Presentation) -> Vec<Permutation> {
    all_permutations(p.n).into_iter().filter(|s| vanishes_at(p, s)).collect()
}

fn value(e: [usize; 2], sigma: &Permutation) -> usize {
    usize::from(sigma.apply(e[1]) == e[0])
}

pub fn analyze(t: &Triple, config: AnalysisConfig) -> Result<AnalysisReport> {
    analyze_with_ideal(t, config).map(|(report, _)| report)
}

/// [`analyze`], also returning the saturated ideal the report was read from.
pub fn analyze_with_ideal(t: &Triple, config: AnalysisConfig) -> Result<(AnalysisReport, Saturation)> {
    let p = generate(t)?;
    let group = automorphisms(t)?;
    let thetas = count_thetas(&t.g1, &t.g2)?;

    let (main, redundancy) = if config.jobs > 1 {
        std::thread::scope(|s| {
            let side = s.spawn(|| theta_redundancy(&p, config.saturation));
            let main = saturate(&p, config.saturation);
            (main, side.join().expect("redundancy worker panicked"))
        })
    } else {
        (saturate(&p, config.saturation), theta_redundancy(&p, config.saturation))
    };
    let mut sat = main?;
    let redundancy = redundancy?;

    let map = sat.derived_entry_map();
    let comm = sat.prove_commutativity();

    // Soundness gate: everything proved must hold at every classical point.
    for sigma in &group.elements {
        if let Some(z) = map.zeros.iter().find(|&&z| value(z, sigma) != 0) {
            return Err(Error::Internal(format!("entry q{:?} proved zero but is 1 at {sigma}", z)));
        }
        if let Some(o) = map.ones.iter().find(|&&o| value(o, sigma) != 1) {
            return Err(Error::Internal(format!("entry q{:?} proved one but is 0 at {sigma}", o)));
        }
        for class in &map.classes {
            if class.iter().any(|&e| value(e, sigma) != value(class[0], sigma)) {
                return Err(Error::Internal(format!("entry class {class:?} not constant at {sigma}")));
            }
        }
        for r in &p.relations {
            if !classical_value(&r.poly, sigma).is_zero() {
                return Err(Error::Internal(format!("relation {} fails at automorphism {sigma}", r.poly)));
            }
        }
    }

    let census = if p.n <= CENSUS_LIMIT {
        let points = classical_points(&p);
        if points != group.elements {
            return Err(Error::Internal(format!(
                "{} classical points of the presentation but {} automorphisms",
                points.len(),
                group.order
            )));
        }
        Some(points.len())
    } else {
        None
    };

    let commutativity = if comm.proved { Commutativity::Proved } else { Commutativity::Inconclusive };
    let verdict = if comm.proved { Verdict::ClassicalAndIdentified } else { Verdict::InconclusivePossiblyQuantum };
    let proved_redundant = redundancy.iter().filter(|&&b| b).count();
    let report = AnalysisReport {
        triple_summary: TripleSummary {
            vertices: t.vertex_count(),
            edges_g1: t.g1.edges().len(),
            edges_g2: t.g2.edges().len(),
            composable_pairs: t.theta.len(),
            theta_count: thetas.to_string(),
        },
        theta_unique: thetas == 1u32.into(),
        zero_entries: map.zeros,
        one_entries: map.ones,
        entry_classes: map.classes,
        theta_relations_redundant: proved_redundant == redundancy.len(),
        theta_relations_total: redundancy.len(),
        theta_relations_proved_redundant: proved_redundant,
        commutativity,
        inconclusive_pairs: comm.inconclusive,
        classical_group: group,
        classical_point_census: census,
        verdict,
        degree_bound_used: sat.degree_bound(),
        normal_words: sat.normal_word_count(),
        ideal_rank: sat.rank(),
    };
    Ok((report, sat))
}

fn gen_name(e: [usize; 2]) -> String {
    Generator::new(e[0], e[1]).to_string()
}

fn join_entries(v: &[[usize; 2]], sep: &str) -> String {
    v.iter().map(|&e| gen_name(e)).collect::<Vec<_>>().join(sep)
}

/// Human-readable report. Entries are written `q{row}{col}` with 0-based
/// indices.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let ts = &r.triple_summary;
    let _ = writeln!(
        s,
        "Triple: {} vertices, {} + {} edges, {} composable pairs, {} valid theta{}",
        ts.vertices,
        ts.edges_g1,
        ts.edges_g2,
        ts.composable_pairs,
        ts.theta_count,
        if r.theta_unique { " (theta is unique)" } else { "" }
    );
    let _ = writeln!(
        s,
        "Degree bound: {} ({} normal words, ideal rank {})",
        r.degree_bound_used, r.normal_words, r.ideal_rank
    );
    let _ = writeln!(s);
    let _ = writeln!(s, "Entry classes (proved equal):");
    for c in &r.entry_classes {
        let one = if c.iter().any(|e| r.one_entries.contains(e)) { " = 1" } else { "" };
        let _ = writeln!(s, "  {}{}", join_entries(c, " = "), one);
    }
    if r.zero_entries.is_empty() {
        let _ = writeln!(s, "Zero entries: none proved");
    } else {
        let _ = writeln!(s, "Zero entries: {}", join_entries(&r.zero_entries, ", "));
    }
    let _ = writeln!(
        s,
        "Theta relations: {} of {} redundant given the other relations{}",
        r.theta_relations_proved_redundant,
        r.theta_relations_total,
        if r.theta_relations_redundant { " (all redundant)" } else { "" }
    );
    match r.commutativity {
        Commutativity::Proved => {
            let _ = writeln!(s, "Commutativity: proved (all generator commutators lie in the ideal)");
        }
        Commutativity::Inconclusive => {
            let _ = writeln!(
                s,
                "Commutativity: inconclusive ({} commutators not provable at this bound)",
                r.inconclusive_pairs.len()
            );
        }
    }
    let g = &r.classical_group;
    let _ = writeln!(s, "Classical automorphism group: {} (order {})", g.name, g.order);
    if let Some(c) = r.classical_point_census {
        let _ = writeln!(s, "Classical points of the presentation: {c}");
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "Verdict: {}", r.verdict.as_str());
    match r.verdict {
        Verdict::ClassicalAndIdentified => {
            let _ = writeln!(
                s,
                "The generators commute, so the quantum automorphism group is the algebra of functions on its \
                 classical points, which are exactly the {} automorphisms above: it is the classical group {}.",
                g.order, g.name
            );
        }
        Verdict::InconclusivePossiblyQuantum => {
            let _ = writeln!(
                s,
                "Commutativity could not be proved at this degree bound. This is not evidence of genuine \
                 quantum symmetry; a higher bound may settle it."
            );
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_lexicographic() {
        let p = all_permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0].images(), &[0, 1, 2]);
        assert_eq!(p[5].images(), &[2, 1, 0]);
        assert_eq!(all_permutations(0).len(), 1);
    }
}

//! The verdict on a diagram: semisimple, bounded simples without finiteness, or unbounded simples.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{CoxeterDiagram, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    Semisimple,
    BoundedSimplesNotFinite,
    UnboundedSimples,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Semisimple => "Semisimple",
            Verdict::BoundedSimplesNotFinite => "BoundedSimplesNotFinite",
            Verdict::UnboundedSimples => "UnboundedSimples",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedEdge {
    pub u: String,
    pub v: String,
    pub m: String,
}

/// Graph data of one connected component and its verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentEvidence {
    pub vertices: Vec<String>,
    pub edge_count: usize,
    pub is_tree: bool,
    /// `|E| - |V| + 1`: 0 for a tree, 1 for a unique cycle.
    pub cycle_rank: usize,
    pub heavy_edges: Vec<WeightedEdge>,
    pub infinite_edges: Vec<WeightedEdge>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    pub finitely_many_simples: bool,
    pub components: Vec<ComponentEvidence>,
    /// `"derived"` when the verdict combines several components.
    pub combination_rule: Option<String>,
}

fn component_verdict(edges: &[(usize, usize, Weight)], n: usize) -> (usize, Verdict) {
    let cycle_rank = (edges.len() + 1).saturating_sub(n);
    let heavy: Vec<Weight> = edges.iter().map(|e| e.2).filter(|w| w.is_heavy()).collect();
    let infinite = heavy.iter().any(|w| !w.is_finite());
    let verdict = if cycle_rank == 0 && !infinite && heavy.len() <= 1 {
        Verdict::Semisimple
    } else if (cycle_rank == 1 && heavy.is_empty())
        || (cycle_rank == 0 && heavy.len() == 2 && heavy.iter().all(|w| matches!(w, Weight::Finite(4 | 5))))
    {
        Verdict::BoundedSimplesNotFinite
    } else {
        Verdict::UnboundedSimples
    };
    (cycle_rank, verdict)
}

pub fn classify(d: &CoxeterDiagram) -> ClassificationResult {
    let edge = |u: usize, v: usize, w: Weight| WeightedEdge { u: d.name(u).into(), v: d.name(v).into(), m: w.to_string() };
    let components: Vec<ComponentEvidence> = d
        .components()
        .into_iter()
        .map(|comp| {
            let edges: Vec<(usize, usize, Weight)> = d.edges().filter(|(u, _, _)| comp.contains(u)).collect();
            let (cycle_rank, verdict) = component_verdict(&edges, comp.len());
            ComponentEvidence {
                vertices: comp.iter().map(|&v| d.name(v).to_string()).collect(),
                edge_count: edges.len(),
                is_tree: cycle_rank == 0,
                cycle_rank,
                heavy_edges: edges.iter().filter(|e| e.2.is_heavy()).map(|&(u, v, w)| edge(u, v, w)).collect(),
                infinite_edges: edges.iter().filter(|e| !e.2.is_finite()).map(|&(u, v, w)| edge(u, v, w)).collect(),
                verdict,
            }
        })
        .collect();
    let verdict = components.iter().map(|c| c.verdict).max().unwrap_or(Verdict::Semisimple);
    ClassificationResult {
        verdict,
        finitely_many_simples: verdict == Verdict::Semisimple,
        combination_rule: (components.len() > 1).then(|| "derived".to_string()),
        components,
    }
}

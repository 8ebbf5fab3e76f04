//! Contraction of odd-weight dual pairs, cores, and presentations of one-vertex quivers.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{CoxeterDiagram, Gen, Weight};
use crate::quiver::{Arrow, ArrowId, GDQuiver};
use crate::rewrite::{relation_poly, FamilyKind, Polynomial, PolynomialFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContractError {
    #[error("pair at `{0}` is not contractible: {1}")]
    NotContractible(String, String),
    #[error("edge {{{0}, {1}}} is not an edge of the diagram")]
    NoSuchEdge(String, String),
    #[error("edge {{{0}, {1}}} is heavy; only weight-3 edges contract in a diagram")]
    HeavyEdge(String, String),
    #[error("endpoints of {{{0}, {1}}} share the neighbor `{2}`")]
    SharedNeighbor(String, String, String),
    #[error("presentations need a one-vertex quiver; this one has {0} vertices")]
    NotOneVertex(usize),
}

/// One contraction step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionStep {
    /// Ids of the contracted arrow and its dual.
    pub pair: (String, String),
    pub new_vertex: String,
    /// Old vertex name -> new vertex name.
    pub vertex_map: BTreeMap<String, String>,
    /// Old arrow id -> new arrow id (contracted arrows map to the new loop, or are absent when elided).
    pub arrow_map: BTreeMap<String, String>,
    pub loop_elided: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionTrace {
    pub steps: Vec<ContractionStep>,
}

fn check_contractible(q: &GDQuiver, a: ArrowId) -> Result<(), ContractError> {
    let arrow = q.arrow(a);
    let fail = |why: &str| Err(ContractError::NotContractible(arrow.id.clone(), why.to_string()));
    if q.is_self_dual(a) {
        return fail("self-dual arrow");
    }
    if arrow.source == arrow.target {
        return fail("loop");
    }
    match arrow.weight {
        Weight::Infinite => fail("infinite weight"),
        Weight::Finite(m) if m % 2 == 0 => fail("even weight"),
        Weight::Finite(_) => Ok(()),
    }
}

pub fn is_contractible(q: &GDQuiver, a: ArrowId) -> bool {
    check_contractible(q, a).is_ok()
}

fn fresh(name: String, taken: &[String]) -> String {
    if !taken.contains(&name) {
        return name;
    }
    (2..).map(|i| format!("{name}#{i}")).find(|n| !taken.contains(n)).expect("unbounded counter")
}

/// Contracts the pair `{a, d(a)}`: merges its endpoints into a fresh vertex and
/// replaces the pair by a self-dual loop of the same weight (dropped for weight 3
/// when `elide_weight3_loop` is set).
pub fn contract(q: &GDQuiver, a: ArrowId, elide_weight3_loop: bool) -> Result<(GDQuiver, ContractionStep), ContractError> {
    check_contractible(q, a)?;
    let b = q.dual(a);
    let (src, tgt) = (q.arrow(a).source, q.arrow(a).target);
    let names = q.vertices();
    let merged = fresh(format!("{}+{}", names[src], names[tgt]), names);
    let mut vertices = Vec::new();
    let mut vmap = vec![0usize; names.len()];
    let mut vertex_map = BTreeMap::new();
    let mut new_index = None;
    for (i, n) in names.iter().enumerate() {
        if i == src || i == tgt {
            let idx = *new_index.get_or_insert_with(|| {
                vertices.push(merged.clone());
                vertices.len() - 1
            });
            vmap[i] = idx;
            vertex_map.insert(n.clone(), merged.clone());
        } else {
            vmap[i] = vertices.len();
            vertex_map.insert(n.clone(), n.clone());
            vertices.push(n.clone());
        }
    }
    let weight = q.weight(a);
    let elide = elide_weight3_loop && weight == Weight::Finite(3);
    let touched = |x: &Arrow| x.source == src || x.source == tgt || x.target == src || x.target == tgt;
    let mut ids: Vec<String> = Vec::new();
    let mut amap = vec![usize::MAX; q.arrows().len()];
    let mut old_of_new = Vec::new();
    for (i, x) in q.arrows().iter().enumerate() {
        if i == a || i == b {
            continue;
        }
        let id = if touched(x) { format!("{}'", x.id) } else { x.id.clone() };
        amap[i] = ids.len();
        old_of_new.push(i);
        ids.push(id);
    }
    let mut arrows: Vec<Arrow> = old_of_new
        .iter()
        .zip(&ids)
        .map(|(&i, id)| {
            let x = q.arrow(i);
            Arrow { id: id.clone(), source: vmap[x.source], target: vmap[x.target], weight: x.weight, dual: amap[x.dual] }
        })
        .collect();
    // rerouted ids must stay unique
    for i in 0..arrows.len() {
        let others: Vec<String> = arrows.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.id.clone()).collect();
        if others.contains(&arrows[i].id) {
            arrows[i].id = fresh(arrows[i].id.clone(), &others);
        }
    }
    let mut arrow_map: BTreeMap<String, String> = old_of_new
        .iter()
        .zip(&arrows)
        .map(|(&i, x)| (q.arrow(i).id.clone(), x.id.clone()))
        .collect();
    if !elide {
        let taken: Vec<String> = arrows.iter().map(|x| x.id.clone()).collect();
        let loop_id = fresh(format!("eps({merged})"), &taken);
        let idx = arrows.len();
        let v = vmap[src];
        arrows.push(Arrow { id: loop_id.clone(), source: v, target: v, weight, dual: idx });
        arrow_map.insert(q.arrow(a).id.clone(), loop_id.clone());
        arrow_map.insert(q.arrow(b).id.clone(), loop_id);
    }
    let out = GDQuiver::from_parts(vertices, arrows);
    let step = ContractionStep {
        pair: (q.arrow(a).id.clone(), q.arrow(b).id.clone()),
        new_vertex: merged,
        vertex_map,
        arrow_map,
        loop_elided: elide,
    };
    Ok((out, step))
}

/// Contracts greedily until no pair is contractible, eliding weight-3 loops.
/// Lighter pairs go first, ties broken by arrow index.
pub fn contract_to_core(q: &GDQuiver) -> (GDQuiver, ContractionTrace) {
    let mut cur = q.clone();
    let mut trace = ContractionTrace::default();
    while let Some(a) = (0..cur.arrows().len()).filter(|&a| is_contractible(&cur, a)).min_by_key(|&a| (cur.weight(a), a)) {
        let (next, step) = contract(&cur, a, true).expect("checked contractible");
        debug_assert_eq!(next.validate(), Ok(()));
        trace.steps.push(step);
        cur = next;
    }
    (cur, trace)
}

/// Identifies the endpoints of a weight-3 edge whose endpoints share no neighbor.
pub fn simple_contract_diagram(d: &CoxeterDiagram, u: Gen, v: Gen) -> Result<CoxeterDiagram, ContractError> {
    let (nu, nv) = (d.name(u).to_string(), d.name(v).to_string());
    match d.weight(u, v) {
        None => return Err(ContractError::NoSuchEdge(nu, nv)),
        Some(Weight::Finite(3)) => {}
        Some(_) => return Err(ContractError::HeavyEdge(nu, nv)),
    }
    let (au, av) = (d.neighbors(u), d.neighbors(v));
    if let Some(&c) = au.iter().find(|c| av.contains(c)) {
        return Err(ContractError::SharedNeighbor(nu, nv, d.name(c).to_string()));
    }
    let merged = fresh(format!("{nu}+{nv}"), d.names());
    let rename = |g: Gen| if g == u || g == v { merged.clone() } else { d.name(g).to_string() };
    let vertices: Vec<String> = (0..d.rank()).filter(|&g| g != v).map(rename).collect();
    let edges: Vec<(String, String, Weight)> = d
        .edges()
        .filter(|&(x, y, _)| !((x == u && y == v) || (x == v && y == u)))
        .map(|(x, y, w)| (rename(x), rename(y), w))
        .collect();
    Ok(CoxeterDiagram::new(vertices, edges).expect("no shared neighbor, so no duplicate edge"))
}

/// One side of a relation: a word in the generators with an exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    /// The repeated block, as generator indices; empty for the unit.
    pub block: Vec<usize>,
    pub power: usize,
    /// A trailing partial block (the odd alternating case `(xy)^k x`).
    pub tail: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Monomial,
    /// `rhs = sum coeff * monomial`; coefficients as rational strings.
    pub rhs: Vec<(String, Monomial)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
    pub annotation: Option<String>,
}

impl Presentation {
    fn render_monomial(&self, m: &Monomial) -> String {
        let word = |v: &[usize]| v.iter().map(|&g| self.generators[g].as_str()).collect::<String>();
        if m.block.is_empty() || m.power == 0 {
            return if m.tail.is_empty() { "1".into() } else { word(&m.tail) };
        }
        let block = word(&m.block);
        let head = match (m.power, m.block.len()) {
            (1, _) => block,
            (k, 1) => format!("{block}^{k}"),
            (k, _) => format!("({block})^{k}"),
        };
        format!("{head}{}", word(&m.tail))
    }

    fn render_rhs(&self, r: &Relation) -> String {
        if r.rhs.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (c, m)) in r.rhs.iter().enumerate() {
            let c: BigRational = c.parse().expect("stored rational");
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.render_monomial(m);
            if a.is_one() {
                s.push_str(&mono);
            } else if mono == "1" {
                s.push_str(&a.to_string());
            } else {
                s.push_str(&format!("{a}{mono}"));
            }
        }
        s
    }

    /// Relations as text, chaining left sides that share a right side: `xy=yx=1`.
    pub fn relations_text(&self) -> String {
        let mut groups: Vec<(String, Vec<String>)> = Vec::new();
        for r in &self.relations {
            let rhs = self.render_rhs(r);
            let lhs = self.render_monomial(&r.lhs);
            match groups.iter_mut().find(|(g, _)| *g == rhs) {
                Some((_, l)) => l.push(lhs),
                None => groups.push((rhs, vec![lhs])),
            }
        }
        groups
            .into_iter()
            .map(|(rhs, lhs)| format!("{}={rhs}", lhs.join("=")))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(a) = &self.annotation {
            write!(f, "{a}: ")?;
        }
        write!(f, "<{} | {}>", self.generators.join(","), self.relations_text())
    }
}

/// Presentation of the path algebra of a one-vertex quiver modulo its relations.
pub fn presentation(q: &GDQuiver, fam: &PolynomialFamily) -> Result<Presentation, ContractError> {
    if q.vertex_count() != 1 {
        return Err(ContractError::NotOneVertex(q.vertex_count()));
    }
    let n = q.arrows().len();
    let generators: Vec<String> = match n {
        1 => vec!["x".into()],
        2 if !q.is_self_dual(0) => vec!["x".into(), "y".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    };
    let mut relations = Vec::new();
    for a in 0..n {
        let Some(p) = relation_poly(a, fam, q) else { continue };
        relations.push(loop_relation(q, a, &p));
    }
    let annotation = if fam.kind == FamilyKind::Power { annotate(q) } else { None };
    Ok(Presentation { generators, relations, annotation })
}

fn loop_relation(q: &GDQuiver, a: ArrowId, p: &Polynomial) -> Relation {
    let d = q.dual(a);
    let mono = |k: usize| -> Monomial {
        if q.is_self_dual(a) {
            Monomial { block: vec![a], power: k, tail: vec![] }
        } else {
            Monomial { block: vec![a, d], power: k / 2, tail: if k % 2 == 1 { vec![a] } else { vec![] } }
        }
    };
    let deg = p.degree().expect("nonzero");
    let lead = p.leading();
    let rhs = p
        .terms()
        .filter(|(k, _)| *k < deg)
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(k, c)| ((-c / &lead).to_string(), mono(k)))
        .filter(|(c, _)| c != "0")
        .collect();
    Relation { lhs: mono(deg), rhs }
}

fn annotate(q: &GDQuiver) -> Option<String> {
    let arrows = q.arrows();
    if arrows.is_empty() {
        return Some("K".into());
    }
    if arrows.iter().all(|x| x.weight.is_odd()) && (0..arrows.len()).all(|a| q.is_self_dual(a)) {
        let factors: Vec<String> = arrows
            .iter()
            .map(|x| format!("C{}", (x.weight.finite().expect("odd") - 1) / 2))
            .collect();
        return Some(format!("FreeProduct({})", factors.join("*")));
    }
    if arrows.len() == 2 && !q.is_self_dual(0) && arrows[0].weight.is_odd() {
        let k = (arrows[0].weight.finite().expect("odd") - 1) / 2;
        return Some(if k == 1 { "Laurent".into() } else { format!("T_{k}") });
    }
    None
}

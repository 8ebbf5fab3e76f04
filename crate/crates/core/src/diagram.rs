//! Coxeter diagrams, words over their generators, and the subregular cell.
//!
//! A diagram stores its generators in sorted order; a generator is referred to by
//! its index ([`Gen`]) everywhere else in the crate. Pairs without an edge have
//! `m = 2`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde_json::Value;
use thiserror::Error;

use crate::parallel::with_thread_cap;

/// Index of a generator in a [`CoxeterDiagram`].
pub type Gen = usize;

/// Edge weight `m(a, b)`, at least 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    Finite(u32),
    Infinite,
}

impl Weight {
    pub fn finite(self) -> Option<u32> {
        match self {
            Weight::Finite(m) => Some(m),
            Weight::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Weight::Finite(_))
    }

    /// Every edge except a weight-3 edge is heavy.
    pub fn is_heavy(self) -> bool {
        self != Weight::Finite(3)
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Weight::Finite(m) if m % 2 == 1)
    }

    /// Longest alternating word allowed by this weight, if bounded.
    pub(crate) fn run_bound(self) -> Option<usize> {
        self.finite().map(|m| m as usize)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(m) => write!(f, "{m}"),
            Weight::Infinite => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Weight {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(Weight::Infinite);
        }
        s.parse::<u32>()
            .map(Weight::Finite)
            .map_err(|_| DiagramError::MalformedNumber(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
    #[error("edge {{{0}, {1}}} has weight {2}; weights must be at least 3 (omit the edge for m = 2)")]
    WeightTooSmall(String, String, u32),
    #[error("edge {{{0}, {0}}} is a loop")]
    LoopEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("malformed number `{0}`")]
    MalformedNumber(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("empty word")]
    EmptyWord,
}

/// A word in the free monoid on the generators.
///
/// Words are ordered by length first and then lexicographically by generator index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn new(letters: Vec<Gen>) -> Self {
        Word(letters)
    }

    pub fn letter(a: Gen) -> Self {
        Word(vec![a])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn first(&self) -> Option<Gen> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Gen> {
        self.0.last().copied()
    }

    /// `x * y`: concatenation with one copy of the shared junction letter removed.
    pub fn splice(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0[1..]);
        Word(v)
    }

    /// The alternating word `a b a b ...` of length `len`.
    pub fn alternating(a: Gen, b: Gen, len: usize) -> Word {
        Word((0..len).map(|i| if i % 2 == 0 { a } else { b }).collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A Coxeter diagram: generators and the edges with `m >= 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterDiagram {
    names: Vec<String>,
    index: HashMap<String, Gen>,
    edges: BTreeMap<(Gen, Gen), Weight>,
}

impl CoxeterDiagram {
    /// Builds a diagram from vertex names and weighted edges.
    pub fn new<V, E, S, T>(vertices: V, edges: E) -> Result<Self, DiagramError>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (T, T, Weight)>,
        T: AsRef<str>,
    {
        let mut names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(DiagramError::DuplicateVertex(w[0].clone()));
            }
        }
        let index: HashMap<String, Gen> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut map = BTreeMap::new();
        for (u, v, w) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let ui = *index.get(u).ok_or_else(|| DiagramError::UnknownVertex(u.to_string()))?;
            let vi = *index.get(v).ok_or_else(|| DiagramError::UnknownVertex(v.to_string()))?;
            if ui == vi {
                return Err(DiagramError::LoopEdge(u.to_string()));
            }
            if let Weight::Finite(m) = w {
                if m < 3 {
                    return Err(DiagramError::WeightTooSmall(u.to_string(), v.to_string(), m));
                }
            }
            let key = (ui.min(vi), ui.max(vi));
            if map.insert(key, w).is_some() {
                return Err(DiagramError::DuplicateEdge(u.to_string(), v.to_string()));
            }
        }
        Ok(CoxeterDiagram { names, index, edges: map })
    }

    /// The dihedral diagram on `a`, `b` with the given weight.
    pub fn dihedral(m: Weight) -> Self {
        CoxeterDiagram::new(["a", "b"], [("a", "b", m)]).expect("valid dihedral diagram")
    }

    /// The cycle `v1 - v2 - ... - vn - v1` with every edge of weight `m`.
    pub fn cycle(n: usize, m: Weight) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(String, String, Weight)> = (0..n)
            .map(|i| (names[i].clone(), names[(i + 1) % n].clone(), m))
            .collect();
        CoxeterDiagram::new(names.clone(), edges).expect("valid cycle diagram")
    }

    /// Parses the JSON diagram format: `{"vertices": [...], "edges": [[u, v, m], ...]}`.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| DiagramError::Syntax(e.to_string()))?;
        Self::from_json(&value)
    }

    pub fn from_json(value: &Value) -> Result<Self, DiagramError> {
        let syntax = |s: &str| DiagramError::Syntax(s.to_string());
        let obj = value.as_object().ok_or_else(|| syntax("expected an object"))?;
        let vertices = obj
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| syntax("missing `vertices` list"))?
            .iter()
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| syntax("vertex names must be strings")))
            .collect::<Result<Vec<_>, _>>()?;
        let mut edges = Vec::new();
        if let Some(list) = obj.get("edges") {
            let list = list.as_array().ok_or_else(|| syntax("`edges` must be a list"))?;
            for e in list {
                let triple = e
                    .as_array()
                    .filter(|t| t.len() == 3)
                    .ok_or_else(|| syntax("each edge must be a triple [u, v, m]"))?;
                let u = triple[0].as_str().ok_or_else(|| syntax("edge endpoints must be strings"))?;
                let v = triple[1].as_str().ok_or_else(|| syntax("edge endpoints must be strings"))?;
                let w = parse_weight_value(&triple[2])?;
                edges.push((u.to_string(), v.to_string(), w));
            }
        }
        CoxeterDiagram::new(vertices, edges)
    }

    /// Canonical JSON: vertices and edges sorted lexicographically.
    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|(&(u, v), w)| {
                let m = match w {
                    Weight::Finite(m) => Value::from(*m),
                    Weight::Infinite => Value::from("inf"),
                };
                Value::Array(vec![Value::from(self.names[u].clone()), Value::from(self.names[v].clone()), m])
            })
            .collect();
        serde_json::json!({ "vertices": self.names, "edges": edges })
    }

    pub fn to_canonical_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Gen) -> &str {
        &self.names[a]
    }

    pub fn generator(&self, name: &str) -> Option<Gen> {
        self.index.get(name).copied()
    }

    /// Edges as `(u, v, m)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (Gen, Gen, Weight)> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The weight of the edge `{a, b}`, or `None` when `m(a, b) <= 2`.
    pub fn weight(&self, a: Gen, b: Gen) -> Option<Weight> {
        self.edges.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn neighbors(&self, a: Gen) -> Vec<Gen> {
        self.edges()
            .filter_map(|(u, v, _)| if u == a { Some(v) } else if v == a { Some(u) } else { None })
            .collect()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Gen>> {
        let n = self.rank();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            let mut members = Vec::new();
            comp[s] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    /// The sub-diagram induced on a set of generators.
    pub fn induced(&self, gens: &[Gen]) -> CoxeterDiagram {
        let names: Vec<String> = gens.iter().map(|&g| self.names[g].clone()).collect();
        let edges: Vec<(String, String, Weight)> = self
            .edges()
            .filter(|(u, v, _)| gens.contains(u) && gens.contains(v))
            .map(|(u, v, w)| (self.names[u].clone(), self.names[v].clone(), w))
            .collect();
        CoxeterDiagram::new(names, edges).expect("induced diagram is valid")
    }

    fn single_char_names(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parses a word: a letter string when every generator name is one character,
    /// otherwise a comma-separated list.
    pub fn parse_word(&self, s: &str) -> Result<Word, DiagramError> {
        let s = s.trim();
        let parts: Vec<String> = if s.contains(',') || !self.single_char_names() {
            s.split(',').map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect()
        } else {
            s.chars().filter(|c| !c.is_whitespace()).map(|c| c.to_string()).collect()
        };
        parts
            .into_iter()
            .map(|p| self.generator(&p).ok_or(DiagramError::UnknownLetter(p)))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn format_word(&self, w: &Word) -> String {
        let sep = if self.single_char_names() { "" } else { "," };
        w.0.iter().map(|&g| self.names[g].as_str()).collect::<Vec<_>>().join(sep)
    }

    /// Rigidity test; errors on letters outside the diagram.
    pub fn is_rigid(&self, w: &Word) -> Result<bool, DiagramError> {
        if let Some(&bad) = w.0.iter().find(|&&g| g >= self.rank()) {
            return Err(DiagramError::UnknownLetter(bad.to_string()));
        }
        Ok(self.rigid(&w.0))
    }

    pub(crate) fn rigid(&self, w: &[Gen]) -> bool {
        if w.is_empty() {
            return false;
        }
        for i in 1..w.len() {
            if !self.extends(&w[..i], w[i]) {
                return false;
            }
        }
        true
    }

    /// Whether appending `c` to the rigid word `w` keeps it rigid.
    pub(crate) fn extends(&self, w: &[Gen], c: Gen) -> bool {
        let Some(&last) = w.last() else { return true };
        if last == c {
            return false;
        }
        let Some(weight) = self.weight(last, c) else { return false };
        let Some(bound) = weight.run_bound() else { return true };
        // length of the alternating suffix of w·c in {last, c}
        let mut run = 2;
        let mut expect = c;
        for &g in w[..w.len() - 1].iter().rev() {
            if g != expect {
                break;
            }
            run += 1;
            expect = if expect == c { last } else { c };
        }
        run < bound
    }

    /// All rigid words of length at most `max_len`, in length-then-lex order.
    pub fn enumerate_cell(&self, max_len: usize) -> Vec<Word> {
        let n = self.rank();
        let mut words: Vec<Word> = with_thread_cap(|| {
            (0..n)
                .into_par_iter()
                .map(|a| {
                    let mut out = Vec::new();
                    let mut stack = vec![vec![a]];
                    while let Some(w) = stack.pop() {
                        if w.len() < max_len {
                            for c in 0..n {
                                if self.extends(&w, c) {
                                    let mut v = w.clone();
                                    v.push(c);
                                    stack.push(v);
                                }
                            }
                        }
                        out.push(Word(w));
                    }
                    out
                })
                .flatten()
                .collect()
        });
        if max_len == 0 {
            words.clear();
        }
        words.sort();
        words
    }
}

fn parse_weight_value(v: &Value) -> Result<Weight, DiagramError> {
    match v {
        Value::String(s) if s == "inf" => Ok(Weight::Infinite),
        Value::String(s) => Err(DiagramError::MalformedNumber(s.clone())),
        Value::Number(n) => {
            let m = n.as_u64().ok_or_else(|| DiagramError::MalformedNumber(n.to_string()))?;
            let m = u32::try_from(m).map_err(|_| DiagramError::MalformedNumber(n.to_string()))?;
            Ok(Weight::Finite(m))
        }
        other => Err(DiagramError::MalformedNumber(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> CoxeterDiagram {
        CoxeterDiagram::new(
            ["a", "b", "c"],
            [("a", "b", Weight::Finite(3)), ("a", "c", Weight::Finite(4)), ("b", "c", Weight::Finite(5))],
        )
        .unwrap()
    }

    #[test]
    fn parse_examples() {
        let d = CoxeterDiagram::parse(r#"{"vertices":["a"],"edges":[]}"#).unwrap();
        assert_eq!(d.enumerate_cell(5).len(), 1);
        let d = CoxeterDiagram::parse(r#"{"vertices":["a","b","c"],"edges":[["a","b",4],["b","c","inf"]]}"#)
            .unwrap();
        assert_eq!(d.weight(0, 1), Some(Weight::Finite(4)));
        assert_eq!(d.weight(2, 1), Some(Weight::Infinite));
        assert_eq!(d.weight(0, 2), None);
        let e = CoxeterDiagram::parse(r#"{"vertices":["a","b"],"edges":[["a","b",2]]}"#);
        assert!(matches!(e, Err(DiagramError::WeightTooSmall(..))));
    }

    #[test]
    fn parse_errors() {
        let dup = r#"{"vertices":["a","b"],"edges":[["a","b",3],["b","a",4]]}"#;
        assert!(matches!(CoxeterDiagram::parse(dup), Err(DiagramError::DuplicateEdge(..))));
        let unknown = r#"{"vertices":["a"],"edges":[["a","z",3]]}"#;
        assert!(matches!(CoxeterDiagram::parse(unknown), Err(DiagramError::UnknownVertex(..))));
        let bad = r#"{"vertices":["a","b"],"edges":[["a","b","x"]]}"#;
        assert!(matches!(CoxeterDiagram::parse(bad), Err(DiagramError::MalformedNumber(..))));
        let neg = r#"{"vertices":["a","b"],"edges":[["a","b",-3]]}"#;
        assert!(matches!(CoxeterDiagram::parse(neg), Err(DiagramError::MalformedNumber(..))));
        assert!(matches!(CoxeterDiagram::parse("[1"), Err(DiagramError::Syntax(..))));
    }

    #[test]
    fn canonical_round_trip() {
        let d = CoxeterDiagram::parse(r#"{"vertices":["c","a","b"],"edges":[["c","b",5],["b","a","inf"]]}"#)
            .unwrap();
        let s = d.to_canonical_string();
        assert_eq!(s, r#"{"edges":[["a","b","inf"],["b","c",5]],"vertices":["a","b","c"]}"#);
        assert_eq!(CoxeterDiagram::parse(&s).unwrap(), d);
    }

    #[test]
    fn rigid_examples() {
        let d = triangle();
        assert!(d.is_rigid(&d.parse_word("abcb").unwrap()).unwrap());
        assert!(d.is_rigid(&d.parse_word("bcbcac").unwrap()).unwrap());
        assert!(d.is_rigid(&d.parse_word("a").unwrap()).unwrap());
        let d3 = CoxeterDiagram::dihedral(Weight::Finite(3));
        assert!(!d3.is_rigid(&d3.parse_word("aba").unwrap()).unwrap());
        assert!(!d3.is_rigid(&Word(vec![])).unwrap());
        assert!(d3.is_rigid(&Word(vec![7])).is_err());
    }

    #[test]
    fn commuting_letters_are_not_rigid() {
        let d = CoxeterDiagram::new(["a", "b"], Vec::<(&str, &str, Weight)>::new()).unwrap();
        assert!(!d.is_rigid(&d.parse_word("ab").unwrap()).unwrap());
    }

    #[test]
    fn multi_char_words() {
        let d = CoxeterDiagram::cycle(3, Weight::Finite(3));
        let w = d.parse_word("v1,v2,v3").unwrap();
        assert_eq!(w, Word(vec![0, 1, 2]));
        assert_eq!(d.format_word(&w), "v1,v2,v3");
        assert!(d.parse_word("v1,v9").is_err());
    }

    #[test]
    fn cell_order_and_content() {
        let d = CoxeterDiagram::dihedral(Weight::Finite(4));
        let words: Vec<String> = d.enumerate_cell(10).iter().map(|w| d.format_word(w)).collect();
        assert_eq!(words, ["a", "b", "ab", "ba", "aba", "bab"]);
        assert!(d.enumerate_cell(0).is_empty());
    }

    #[test]
    fn components_of_reducible_diagram() {
        let d = CoxeterDiagram::new(["a", "b", "c", "d"], [("a", "c", Weight::Finite(3))]).unwrap();
        assert_eq!(d.components(), vec![vec![0, 2], vec![1], vec![3]]);
    }
}

//! Generalized double quivers: arrows with a duality involution and weights.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::diagram::{CoxeterDiagram, Weight, Word};

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("dual of `{0}` does not run backwards along it")]
    DualDirection(String),
    #[error("duality is not an involution at `{0}`")]
    NotInvolution(String),
    #[error("arrow `{0}` and its dual have different weights")]
    DualWeight(String),
    #[error("self-dual arrow `{0}` is not a loop")]
    SelfDualNotLoop(String),
    #[error("arrow `{0}` has weight below 3")]
    WeightTooSmall(String),
    #[error("path is not composable at position {0}")]
    NotComposable(usize),
    #[error("no arrow from `{0}` to `{1}`")]
    NoArrowBetween(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: VertexId,
    pub target: VertexId,
    pub weight: Weight,
    pub dual: ArrowId,
}

/// Description of an arrow by names, used to build a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowSpec {
    pub id: String,
    pub source: String,
    pub target: String,
    pub weight: Weight,
    pub dual: String,
}

impl ArrowSpec {
    pub fn new(id: &str, source: &str, target: &str, weight: Weight, dual: &str) -> Self {
        ArrowSpec {
            id: id.into(),
            source: source.into(),
            target: target.into(),
            weight,
            dual: dual.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GDQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl GDQuiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<ArrowSpec>) -> Result<Self, QuiverError> {
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut aindex = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if aindex.insert(a.id.clone(), i).is_some() {
                return Err(QuiverError::DuplicateArrow(a.id.clone()));
            }
        }
        let vertex = |n: &str| vindex.get(n).copied().ok_or_else(|| QuiverError::UnknownVertex(n.into()));
        let built = arrows
            .iter()
            .map(|a| {
                Ok(Arrow {
                    id: a.id.clone(),
                    source: vertex(&a.source)?,
                    target: vertex(&a.target)?,
                    weight: a.weight,
                    dual: *aindex.get(&a.dual).ok_or_else(|| QuiverError::UnknownArrow(a.dual.clone()))?,
                })
            })
            .collect::<Result<Vec<_>, QuiverError>>()?;
        let q = GDQuiver { vertices, arrows: built };
        q.validate()?;
        Ok(q)
    }

    pub(crate) fn from_parts(vertices: Vec<String>, arrows: Vec<Arrow>) -> Self {
        let q = GDQuiver { vertices, arrows };
        debug_assert_eq!(q.validate(), Ok(()));
        q
    }

    /// Checks the duality and weight invariants.
    pub fn validate(&self) -> Result<(), QuiverError> {
        for (i, a) in self.arrows.iter().enumerate() {
            let d = self.arrows.get(a.dual).ok_or_else(|| QuiverError::UnknownArrow(a.id.clone()))?;
            if d.dual != i {
                return Err(QuiverError::NotInvolution(a.id.clone()));
            }
            if d.source != a.target || d.target != a.source {
                return Err(QuiverError::DualDirection(a.id.clone()));
            }
            if d.weight != a.weight {
                return Err(QuiverError::DualWeight(a.id.clone()));
            }
            if a.dual == i && a.source != a.target {
                return Err(QuiverError::SelfDualNotLoop(a.id.clone()));
            }
            if matches!(a.weight, Weight::Finite(m) if m < 3) {
                return Err(QuiverError::WeightTooSmall(a.id.clone()));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, id: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn dual(&self, a: ArrowId) -> ArrowId {
        self.arrows[a].dual
    }

    pub fn weight(&self, a: ArrowId) -> Weight {
        self.arrows[a].weight
    }

    pub fn is_self_dual(&self, a: ArrowId) -> bool {
        self.arrows[a].dual == a
    }

    pub fn out_arrows(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    /// Arrow specs in the form accepted by [`GDQuiver::new`].
    pub fn specs(&self) -> Vec<ArrowSpec> {
        self.arrows
            .iter()
            .map(|a| ArrowSpec {
                id: a.id.clone(),
                source: self.vertices[a.source].clone(),
                target: self.vertices[a.target].clone(),
                weight: a.weight,
                dual: self.arrows[a.dual].id.clone(),
            })
            .collect()
    }

    /// Length of the leading word of the relation starting with `a`, when the weight is finite.
    ///
    /// For a non-self-dual arrow this is `m - 1`; for a self-dual loop it is the
    /// degree `floor((m - 1) / 2)` of the halved polynomial.
    pub fn braid_bound(&self, a: ArrowId) -> Option<usize> {
        let m = self.weight(a).finite()? as usize;
        Some(if self.is_self_dual(a) { (m - 1) / 2 } else { m - 1 })
    }

    /// Builds a path from arrow ids (by index), checking composability.
    pub fn path(&self, arrows: Vec<ArrowId>) -> Result<Path, QuiverError> {
        if arrows.is_empty() {
            return Err(QuiverError::NotComposable(0));
        }
        for (i, w) in arrows.windows(2).enumerate() {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(QuiverError::NotComposable(i + 1));
            }
        }
        Ok(Path {
            start: self.arrows[arrows[0]].source,
            end: self.arrows[*arrows.last().expect("nonempty")].target,
            arrows,
        })
    }

    /// Parses `e:<vertex>` or a comma-separated list of arrow ids.
    pub fn parse_path(&self, s: &str) -> Result<Path, QuiverError> {
        let s = s.trim();
        if let Some(v) = s.strip_prefix("e:") {
            let v = self.vertex_index(v).ok_or_else(|| QuiverError::UnknownVertex(v.into()))?;
            return Ok(Path::stationary(v));
        }
        let ids = s
            .split(',')
            .map(|p| self.arrow_index(p.trim()).ok_or_else(|| QuiverError::UnknownArrow(p.trim().into())))
            .collect::<Result<Vec<_>, _>>()?;
        self.path(ids)
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e:{}", self.vertices[p.start])
        } else {
            p.arrows.iter().map(|&a| self.arrows[a].id.as_str()).collect::<Vec<_>>().join(",")
        }
    }

    /// Maximal runs `a, d(a), a, ...` of the path, as `(start, len)`.
    fn runs<'p>(&'p self, p: &'p [ArrowId]) -> impl Iterator<Item = (usize, usize)> + 'p {
        let mut i = 0;
        std::iter::from_fn(move || {
            if i >= p.len() {
                return None;
            }
            let start = i;
            while i + 1 < p.len() && p[i + 1] == self.dual(p[i]) {
                i += 1;
            }
            i += 1;
            Some((start, i - start))
        })
    }

    pub fn is_unbraided(&self, p: &Path) -> bool {
        self.runs(&p.arrows)
            .all(|(s, len)| self.braid_bound(p.arrows[s]).map_or(true, |b| len < b))
    }

    /// Whether appending `a` to the unbraided path `p` keeps it unbraided.
    fn extends(&self, p: &[ArrowId], a: ArrowId) -> bool {
        let Some(bound) = self.braid_bound(a) else { return true };
        let mut run = 1;
        let mut cur = a;
        for &b in p.iter().rev() {
            if self.dual(b) != cur {
                break;
            }
            run += 1;
            cur = b;
        }
        run < bound
    }

    /// All unbraided paths of length at most `max_len`, stationary paths first.
    pub fn enumerate_unbraided(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.vertex_count()).map(Path::stationary).collect();
        let mut stack: Vec<Vec<ArrowId>> =
            (0..self.arrows.len()).filter(|&a| self.extends(&[], a)).map(|a| vec![a]).collect();
        if max_len == 0 {
            stack.clear();
        }
        while let Some(p) = stack.pop() {
            if p.len() < max_len {
                let end = self.arrows[*p.last().expect("nonempty")].target;
                for a in self.out_arrows(end) {
                    if self.extends(&p, a) {
                        let mut q = p.clone();
                        q.push(a);
                        stack.push(q);
                    }
                }
            }
            out.push(self.path(p).expect("composable by construction"));
        }
        out.sort();
        out
    }

    /// The quiver with every arrow reversed (duals and weights kept).
    pub fn opposite(&self) -> GDQuiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { source: a.target, target: a.source, ..a.clone() })
            .collect();
        GDQuiver { vertices: self.vertices.clone(), arrows }
    }

    /// Concatenation `p q`, or `None` when the end of `p` is not the start of `q`.
    pub fn concat(&self, p: &Path, q: &Path) -> Option<Path> {
        if p.end != q.start {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Some(Path { start: p.start, end: q.end, arrows })
    }
}

/// A path: stationary at `start` when `arrows` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: VertexId,
    pub end: VertexId,
    pub arrows: Vec<ArrowId>,
}

impl Path {
    pub fn stationary(v: VertexId) -> Self {
        Path { start: v, end: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_stationary(&self) -> bool {
        self.arrows.is_empty()
    }
}

impl Ord for Path {
    fn cmp(&self, o: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&o.arrows.len())
            .then_with(|| self.start.cmp(&o.start))
            .then_with(|| self.arrows.cmp(&o.arrows))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.start)
        } else {
            write!(f, "{:?}", self.arrows)
        }
    }
}

/// Two mutually dual arrows `u>v`, `v>u` per edge, in edge order.
pub fn double_quiver(d: &CoxeterDiagram) -> GDQuiver {
    let vertices = d.names().to_vec();
    let mut arrows = Vec::new();
    for (u, v, w) in d.edges() {
        let i = arrows.len();
        arrows.push(Arrow { id: format!("{}>{}", d.name(u), d.name(v)), source: u, target: v, weight: w, dual: i + 1 });
        arrows.push(Arrow { id: format!("{}>{}", d.name(v), d.name(u)), source: v, target: u, weight: w, dual: i });
    }
    GDQuiver::from_parts(vertices, arrows)
}

/// The path `s1 -> s2 -> ... -> sk` of a word on the double quiver (vertex ids are generator ids).
pub fn iota(q: &GDQuiver, w: &Word) -> Result<Path, QuiverError> {
    if w.len() == 1 {
        return Ok(Path::stationary(w.0[0]));
    }
    let arrows = w
        .0
        .windows(2)
        .map(|p| {
            q.arrows
                .iter()
                .position(|a| a.source == p[0] && a.target == p[1])
                .ok_or_else(|| QuiverError::NoArrowBetween(q.vertices[p[0]].clone(), q.vertices[p[1]].clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    q.path(arrows)
}

/// Inverse of [`iota`] for double quivers.
pub fn word_of_path(q: &GDQuiver, p: &Path) -> Word {
    let mut letters = vec![p.start];
    letters.extend(p.arrows.iter().map(|&a| q.arrow(a).target));
    Word(letters)
}

/// Isomorphism of generalized double quivers up to renaming of vertices and arrows.
pub fn is_isomorphic(p: &GDQuiver, q: &GDQuiver) -> bool {
    if p.vertex_count() != q.vertex_count() || p.arrows.len() != q.arrows.len() {
        return false;
    }
    let profile = |g: &GDQuiver| -> BTreeMap<(VertexId, VertexId, Weight, bool), usize> {
        let mut m = BTreeMap::new();
        for (i, a) in g.arrows.iter().enumerate() {
            *m.entry((a.source, a.target, a.weight, a.dual == i)).or_insert(0) += 1;
        }
        m
    };
    let target = profile(q);
    let source = profile(p);
    let degree = |g: &GDQuiver, v: VertexId| -> Vec<(Weight, bool, bool)> {
        let mut d: Vec<_> = g
            .arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| a.source == v)
            .map(|(i, a)| (a.weight, a.target == v, a.dual == i))
            .collect();
        d.sort();
        d
    };
    let n = p.vertex_count();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn search(
        i: usize,
        n: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(usize, usize) -> bool,
        check: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if i == n {
            return check(perm);
        }
        for j in 0..n {
            if !used[j] && ok(i, j) {
                used[j] = true;
                perm[i] = j;
                if search(i + 1, n, perm, used, ok, check) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    let ok = |i: usize, j: usize| degree(p, i) == degree(q, j);
    let check = |perm: &[usize]| {
        let mapped: BTreeMap<_, _> =
            source.iter().map(|(&(s, t, w, sd), &c)| ((perm[s], perm[t], w, sd), c)).collect();
        mapped == target
    };
    search(0, n, &mut perm, &mut used, &ok, &check)
}

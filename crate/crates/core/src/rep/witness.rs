//! Explicit modules: non-semisimple witnesses, a one-parameter family of simples
//! for two heavy edges, and extension of simples across a pendant edge.

use std::collections::VecDeque;

use super::field::{Field, Scalar};
use super::matrix::Matrix;
use super::representation::{are_isomorphic, generated_subrep, Representation, SubRep};
use super::RepError;
use crate::diagram::{CoxeterDiagram, Gen, Weight};
use crate::quiver::{double_quiver, ArrowId, ArrowSpec, GDQuiver};
use crate::rewrite::{tilde, PolynomialFamily};

/// A module together with a subrepresentation that has no complement in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub rep: Representation,
    pub subrep: SubRep,
}

/// Roots of the halved relation polynomial of weight `m` found in `field`; empty for `inf`.
fn relation_roots(m: Weight, fam: &PolynomialFamily, field: &Field) -> Vec<Scalar> {
    match m.finite() {
        Some(k) => field.roots(&tilde(&fam.poly(k as usize - 1)).expect("family polynomials have a parity")),
        None => Vec::new(),
    }
}

fn pick(roots: &[Scalar], prefer: &Scalar, avoid: &[&Scalar]) -> Option<Scalar> {
    if roots.contains(prefer) && !avoid.contains(&prefer) {
        return Some(prefer.clone());
    }
    roots.iter().find(|r| !avoid.contains(r)).cloned()
}

fn missing_roots(m: Weight, fam: &PolynomialFamily) -> RepError {
    let k = m.finite().unwrap_or(3) as usize;
    let h = tilde(&fam.poly(k - 1)).expect("parity");
    RepError::RootsOutsideField(h.to_string())
}

/// `(lambda1, lambda2)` for a heavy edge: `lambda2 = 1` when possible, `lambda1`
/// another root, or `0` for even weights with a single usable root.
fn edge_parameters(m: Weight, fam: &PolynomialFamily, field: &Field) -> Result<(Scalar, Scalar), RepError> {
    if !m.is_finite() {
        return Ok((field.int(-1), field.one()));
    }
    let roots = relation_roots(m, fam, field);
    let l2 = pick(&roots, &field.one(), &[]).ok_or_else(|| missing_roots(m, fam))?;
    match pick(&roots, &field.int(-1), &[&l2]) {
        Some(l1) => Ok((l1, l2)),
        None if m.finite().unwrap_or(1) % 2 == 0 => Ok((field.zero(), l2)),
        None => Err(missing_roots(m, fam)),
    }
}

/// Maps `(u>v, v>u) = (I, r I)` on `K^n` for an edge that carries no structure.
fn filler(m: Weight, n: usize, fam: &PolynomialFamily, field: &Field) -> Result<(Matrix, Matrix), RepError> {
    let r = if m.is_finite() {
        pick(&relation_roots(m, fam, field), &field.one(), &[]).ok_or_else(|| missing_roots(m, fam))?
    } else {
        field.one()
    };
    Ok((Matrix::identity(n, field), Matrix::scalar(n, &r)))
}

fn arrow_between(q: &GDQuiver, s: Gen, t: Gen) -> ArrowId {
    q.arrows().iter().position(|a| a.source == s && a.target == t).expect("double quiver has both directions")
}

/// Builds the representation with `dims`, explicit maps on `special`, fillers on every other edge.
fn assemble(
    d: &CoxeterDiagram,
    dims: Vec<usize>,
    special: &[(Gen, Gen, Matrix)],
    fam: &PolynomialFamily,
    field: &Field,
) -> Result<Representation, RepError> {
    let q = double_quiver(d);
    let mut maps: Vec<Option<Matrix>> = vec![None; q.arrows().len()];
    for (s, t, m) in special {
        maps[arrow_between(&q, *s, *t)] = Some(m.clone());
    }
    for (u, v, w) in d.edges() {
        let (uv, vu) = (arrow_between(&q, u, v), arrow_between(&q, v, u));
        if maps[uv].is_some() {
            continue;
        }
        let (n_u, n_v) = (dims[u], dims[v]);
        if n_u == n_v {
            let (a, b) = filler(w, n_u, fam, field)?;
            maps[uv] = Some(a);
            maps[vu] = Some(b);
        } else {
            maps[uv] = Some(Matrix::zero(n_v, n_u, field));
            maps[vu] = Some(Matrix::zero(n_u, n_v, field));
        }
    }
    let maps = maps.into_iter().map(|m| m.expect("every arrow assigned")).collect();
    Representation::new(q, field.clone(), dims, maps)
}

fn connected_without(d: &CoxeterDiagram, u: Gen, v: Gen) -> bool {
    let mut seen = vec![false; d.rank()];
    let mut queue = VecDeque::from([u]);
    seen[u] = true;
    while let Some(x) = queue.pop_front() {
        for y in d.neighbors(x) {
            if (x == u && y == v) || (x == v && y == u) || seen[y] {
                continue;
            }
            seen[y] = true;
            queue.push_back(y);
        }
    }
    seen[v]
}

fn distances(d: &CoxeterDiagram, from: Gen) -> Vec<Option<usize>> {
    let mut dist = vec![None; d.rank()];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for y in d.neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(dist[x].unwrap() + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Two heavy edges of one tree component with finite weights, oriented as
/// `a -m1- b ... c' -m2- c` with `b` and `c'` the endpoints facing each other.
struct HeavyPair {
    a: Gen,
    b: Gen,
    c_near: Gen,
    c: Gen,
    m1: Weight,
    m2: Weight,
    component: Vec<Gen>,
}

fn heavy_pair(d: &CoxeterDiagram) -> Option<HeavyPair> {
    for comp in d.components() {
        let edges: Vec<(Gen, Gen, Weight)> = d.edges().filter(|(u, _, _)| comp.contains(u)).collect();
        if edges.len() + 1 != comp.len() || edges.iter().any(|e| !e.2.is_finite()) {
            continue;
        }
        let heavy: Vec<&(Gen, Gen, Weight)> = edges.iter().filter(|e| e.2.is_heavy()).collect();
        if heavy.len() < 2 {
            continue;
        }
        let (p, q, m1) = *heavy[0];
        let (r, s, m2) = *heavy[1];
        let dp = distances(d, p);
        let dq = distances(d, q);
        let (a, b) = if dp[r].min(dp[s]) <= dq[r].min(dq[s]) { (q, p) } else { (p, q) };
        let db = distances(d, b);
        let (c_near, c) = if db[r] <= db[s] { (r, s) } else { (s, r) };
        return Some(HeavyPair { a, b, c_near, c, m1, m2, component: comp });
    }
    None
}

fn diag2(x: &Scalar, y: &Scalar, field: &Field) -> Matrix {
    Matrix::diag(&[x.clone(), y.clone()], field)
}

/// Maps on the second heavy edge: `(c'>c, c>c')`.
fn second_edge(mu1: &Scalar, mu2: &Scalar, field: &Field) -> (Matrix, Matrix) {
    let gamma = if mu1.is_zero() { diag2(&field.zero(), &field.one(), field) } else { Matrix::identity(2, field) };
    (gamma, diag2(mu1, mu2, field))
}

/// A module of the quotient for `d` with a subrepresentation that has no
/// complement: a Jordan block on an `inf` edge or around a cycle, otherwise the
/// two-heavy-edge construction. `x` must be nonzero.
pub fn witness_nonsemisimple(d: &CoxeterDiagram, x: &Scalar, fam: &PolynomialFamily) -> Result<Witness, RepError> {
    if x.is_zero() {
        return Err(RepError::PreconditionFailed("x must be nonzero".into()));
    }
    let field = x.field().clone();
    let dims = vec![2; d.rank()];
    let edges: Vec<(Gen, Gen, Weight)> = d.edges().collect();
    let chosen = edges
        .iter()
        .find(|e| !e.2.is_finite())
        .or_else(|| edges.iter().find(|(u, v, _)| connected_without(d, *u, *v)));
    let rep = if let Some(&(u, v, w)) = chosen {
        let j = Matrix::from_rows(vec![vec![x.clone(), field.one()], vec![field.zero(), x.clone()]], &field);
        let l = if w.is_finite() {
            let lam = pick(&relation_roots(w, fam, &field), &field.one(), &[]).ok_or_else(|| missing_roots(w, fam))?;
            j.inverse().expect("x is nonzero").scale(&lam)
        } else {
            Matrix::identity(2, &field)
        };
        assemble(d, dims, &[(u, v, j), (v, u, l)], fam, &field)?
    } else {
        let hp = heavy_pair(d).ok_or(RepError::SemisimpleDiagram)?;
        let (l1, l2) = edge_parameters(hp.m1, fam, &field)?;
        let (mu1, mu2) = edge_parameters(hp.m2, fam, &field)?;
        let alpha = Matrix::from_rows(vec![vec![l1.clone(), field.one()], vec![field.zero(), l2.clone()]], &field);
        let beta = if l1.is_zero() { diag2(&field.zero(), &field.one(), &field) } else { Matrix::identity(2, &field) };
        let (gamma, delta) = second_edge(&mu1, &mu2, &field);
        let special = [(hp.a, hp.b, alpha), (hp.b, hp.a, beta), (hp.c_near, hp.c, gamma), (hp.c, hp.c_near, delta)];
        assemble(d, dims, &special, fam, &field)?
    };
    let e1 = vec![field.one(), field.zero()];
    let seeds: Vec<(usize, Vec<Scalar>)> = (0..d.rank()).map(|v| (v, e1.clone())).collect();
    let subrep = generated_subrep(&rep, &seeds)?;
    Ok(Witness { rep, subrep })
}

/// The simple module `N^x` for a diagram with two heavy edges on a tree
/// component; zero on every other component.
pub fn simple_family_member(d: &CoxeterDiagram, x: &Scalar, fam: &PolynomialFamily) -> Result<Representation, RepError> {
    let hp = heavy_pair(d).ok_or(RepError::NotTwoHeavy)?;
    let field = x.field().clone();
    let (l1, l2) = edge_parameters(hp.m1, fam, &field)?;
    let (mu1, mu2) = edge_parameters(hp.m2, fam, &field)?;
    if x == &l1 || x == &l2 {
        return Err(RepError::ParameterCollision(x.to_string()));
    }
    let s = &l1 + &l2;
    let bx = Matrix::from_rows(
        vec![vec![x.clone(), &(x * &(&s - x)) - &(&l1 * &l2)], vec![field.one(), &s - x]],
        &field,
    );
    let beta = if l1.is_zero() { bx.scale(&l2.inv().expect("nonzero root")) } else { Matrix::identity(2, &field) };
    let (gamma, delta) = second_edge(&mu1, &mu2, &field);
    let dims = (0..d.rank()).map(|v| if hp.component.contains(&v) { 2 } else { 0 }).collect();
    let special = [(hp.a, hp.b, bx), (hp.b, hp.a, beta), (hp.c_near, hp.c, gamma), (hp.c, hp.c_near, delta)];
    let m = assemble(d, dims, &special, fam, &field)?;
    let seeds = vec![(hp.b, vec![field.one(), field.zero()]), (hp.b, vec![field.zero(), field.one()])];
    generated_subrep(&m, &seeds)?.to_representation(&m)
}

/// Glues a new vertex `v` to `u` by an edge of weight `m > 3` and extends the direct
/// sum of the given pairwise non-isomorphic simples to a simple module on the larger quiver.
pub fn extend_by_pendant(
    simples: &[Representation],
    m: Weight,
    u: &str,
    v: &str,
    fam: &PolynomialFamily,
) -> Result<Representation, RepError> {
    if m.finite().is_some_and(|k| k <= 3) {
        return Err(RepError::WeightTooSmall(m.to_string()));
    }
    let sum = Representation::direct_sum(&simples.iter().collect::<Vec<_>>())?;
    for i in 0..simples.len() {
        for j in i + 1..simples.len() {
            if are_isomorphic(&simples[i], &simples[j])? != Some(false) {
                return Err(RepError::IsomorphicSimples(i, j));
            }
        }
    }
    let q = sum.quiver();
    let ui = q.vertex_index(u).ok_or_else(|| RepError::PreconditionFailed(format!("unknown vertex {u}")))?;
    let field = sum.field().clone();
    let n = sum.dim(ui);
    if n == 0 {
        return Err(RepError::PreconditionFailed(format!("the simples vanish at {u}")));
    }
    let x = Matrix::from_rows(vec![vec![field.one(); n]], &field);
    let mut y = Matrix::zero(n, 1, &field);
    y.set(0, 0, field.int(n as i64));
    for i in 1..n {
        y.set(i, 0, field.int(-1));
    }
    let roots = relation_roots(m, fam, &field);
    let (dim_v, alpha, beta) = if m == Weight::Finite(4) {
        let c = pick(&roots, &field.one(), &[]).ok_or_else(|| missing_roots(m, fam))?;
        (1, x, y.scale(&c))
    } else {
        let (r1, r2) = if m.is_finite() {
            let r1 = pick(&roots, &field.one(), &[]).ok_or_else(|| missing_roots(m, fam))?;
            let r2 = pick(&roots, &field.int(-1), &[&r1]).ok_or_else(|| missing_roots(m, fam))?;
            (r1, r2)
        } else {
            (field.one(), field.int(-1))
        };
        let yx = &y * &x;
        let beta = &Matrix::scalar(n, &r1) + &yx.scale(&(&r2 - &r1));
        (n, Matrix::identity(n, &field), beta)
    };
    let mut vertices = q.vertices().to_vec();
    vertices.push(v.to_string());
    let mut specs = q.specs();
    let (uv, vu) = (format!("{u}>{v}"), format!("{v}>{u}"));
    specs.push(ArrowSpec::new(&uv, u, v, m, &vu));
    specs.push(ArrowSpec::new(&vu, v, u, m, &uv));
    let big = GDQuiver::new(vertices, specs)?;
    let mut dims = sum.dims().to_vec();
    dims.push(dim_v);
    let mut maps = sum.maps().to_vec();
    maps.push(alpha);
    maps.push(beta);
    Representation::new(big, field, dims, maps)
}

//! Representations, subrepresentations, morphisms, complements and simplicity.

use std::collections::VecDeque;

use super::field::{Field, Scalar};
use super::matrix::{Matrix, Subspace};
use super::RepError;
use crate::quiver::{ArrowId, GDQuiver, Path, VertexId};
use crate::rewrite::{relation, AlgebraElement, PolynomialFamily};

/// Vertex dimensions and arrow matrices (rows indexed by the target space).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    quiver: GDQuiver,
    field: Field,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(quiver: GDQuiver, field: Field, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self, RepError> {
        if dims.len() != quiver.vertex_count() {
            return Err(RepError::ShapeMismatch(format!("{} dimensions for {} vertices", dims.len(), quiver.vertex_count())));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(RepError::ShapeMismatch(format!("{} matrices for {} arrows", maps.len(), quiver.arrows().len())));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(RepError::ShapeMismatch(format!(
                    "arrow {} needs {}x{}, got {}x{}",
                    a.id,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let maps = maps.into_iter().map(|m| if m.field() == &field { m } else { rebase(&m, &field) }).collect();
        Ok(Representation { quiver, field, dims, maps })
    }

    /// The representation with zero spaces everywhere.
    pub fn zero(quiver: &GDQuiver, field: &Field) -> Self {
        let maps = quiver.arrows().iter().map(|_| Matrix::zero(0, 0, field)).collect();
        Representation { quiver: quiver.clone(), field: field.clone(), dims: vec![0; quiver.vertex_count()], maps }
    }

    pub fn quiver(&self) -> &GDQuiver {
        &self.quiver
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: VertexId) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, a: ArrowId) -> &Matrix {
        &self.maps[a]
    }

    /// `M_p`, the identity for a stationary path.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        p.arrows
            .iter()
            .fold(Matrix::identity(self.dims[p.start], &self.field), |acc, &a| &self.maps[a] * &acc)
    }

    /// The matrix of the part of `x` running from `s` to `t`.
    pub fn eval_between(&self, x: &AlgebraElement, s: VertexId, t: VertexId) -> Matrix {
        let mut out = Matrix::zero(self.dims[t], self.dims[s], &self.field);
        for (p, c) in x.terms() {
            if p.start == s && p.end == t {
                out = &out + &self.path_matrix(p).scale(&self.field.rational(c.clone()));
            }
        }
        out
    }

    /// The representation of the opposite quiver with every matrix transposed.
    pub fn transpose(&self) -> Representation {
        Representation {
            quiver: self.quiver.opposite(),
            field: self.field.clone(),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    pub fn direct_sum(parts: &[&Representation]) -> Result<Representation, RepError> {
        let first = parts.first().ok_or_else(|| RepError::PreconditionFailed("empty direct sum".into()))?;
        if parts.iter().any(|p| p.quiver != first.quiver) {
            return Err(RepError::DifferentQuivers);
        }
        let field = parts.iter().map(|p| &p.field).find(|f| f.modulus().is_some()).unwrap_or(&first.field).clone();
        let dims = (0..first.dims.len()).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = (0..first.maps.len())
            .map(|a| Matrix::direct_sum(&parts.iter().map(|p| &p.maps[a]).collect::<Vec<_>>(), &field))
            .collect();
        Ok(Representation { quiver: first.quiver.clone(), field, dims, maps })
    }

    /// The same module in new bases: `P_v` has the new basis of `M_v` as columns.
    pub fn change_basis(&self, bases: &[Matrix]) -> Result<Representation, RepError> {
        let inv: Vec<Matrix> = bases
            .iter()
            .map(|p| p.inverse().ok_or_else(|| RepError::PreconditionFailed("change of basis not invertible".into())))
            .collect::<Result<_, _>>()?;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| &(&inv[a.target] * m) * &bases[a.source])
            .collect();
        Representation::new(self.quiver.clone(), self.field.clone(), self.dims.clone(), maps)
    }
}

fn rebase(m: &Matrix, field: &Field) -> Matrix {
    let mut out = Matrix::zero(m.rows(), m.cols(), field);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j) + &field.zero());
        }
    }
    out
}

/// Per-arrow residual of its relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub pass: bool,
    pub residuals: Vec<(ArrowId, Matrix)>,
}

impl CheckReport {
    /// Arrows whose residual is nonzero.
    pub fn failures(&self) -> Vec<ArrowId> {
        self.residuals.iter().filter(|(_, m)| !m.is_zero()).map(|(a, _)| *a).collect()
    }
}

/// Evaluates the relation of every finite-weight arrow on `m`.
pub fn check_representation(m: &Representation, fam: &PolynomialFamily) -> CheckReport {
    let q = m.quiver();
    let mut residuals = Vec::new();
    for (i, a) in q.arrows().iter().enumerate() {
        if !a.weight.is_finite() {
            continue;
        }
        let r = relation(i, fam, q);
        let end = if q.is_self_dual(i) {
            a.source
        } else {
            let m_int = a.weight.finite().unwrap_or(0);
            if m_int % 2 == 0 {
                a.target
            } else {
                a.source
            }
        };
        residuals.push((i, m.eval_between(&r, a.source, end)));
    }
    let pass = residuals.iter().all(|(_, r)| r.is_zero());
    CheckReport { pass, residuals }
}

/// Per-vertex subspaces of a representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubRep {
    pub spaces: Vec<Subspace>,
}

impl SubRep {
    pub fn zero(m: &Representation) -> Self {
        SubRep { spaces: m.dims.iter().map(|&n| Subspace::zero(n, &m.field)).collect() }
    }

    pub fn full(m: &Representation) -> Self {
        SubRep { spaces: m.dims.iter().map(|&n| Subspace::full(n, &m.field)).collect() }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(Subspace::dim).sum()
    }

    /// Whether every arrow of `m` maps each space into the space at its target.
    pub fn is_closed(&self, m: &Representation) -> Result<(), RepError> {
        for (i, a) in m.quiver.arrows().iter().enumerate() {
            for v in self.spaces[a.source].basis() {
                if !self.spaces[a.target].contains(&m.maps[i].apply(v)) {
                    return Err(RepError::NotArrowClosed(a.id.clone()));
                }
            }
        }
        Ok(())
    }

    /// The subrepresentation as a representation in its echelon bases.
    pub fn to_representation(&self, m: &Representation) -> Result<Representation, RepError> {
        self.is_closed(m)?;
        let maps = m
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let cols: Vec<Vec<Scalar>> = self.spaces[a.source]
                    .basis()
                    .iter()
                    .map(|v| self.spaces[a.target].coordinates(&m.maps[i].apply(v)).expect("closed"))
                    .collect();
                Matrix::from_columns(&cols, self.spaces[a.target].dim(), &m.field)
            })
            .collect();
        Representation::new(m.quiver.clone(), m.field.clone(), self.dims(), maps)
    }

    /// The annihilator subspaces: a subrepresentation of the transposed module.
    pub fn annihilator(&self) -> SubRep {
        SubRep { spaces: self.spaces.iter().map(Subspace::annihilator).collect() }
    }
}

/// The smallest subrepresentation containing the seed vectors.
pub fn generated_subrep(m: &Representation, seeds: &[(VertexId, Vec<Scalar>)]) -> Result<SubRep, RepError> {
    let mut sub = SubRep::zero(m);
    let mut queue = VecDeque::new();
    for (v, x) in seeds {
        if *v >= m.dims.len() || x.len() != m.dims[*v] {
            return Err(RepError::DimensionMismatch(format!("seed of length {} at vertex {}", x.len(), v)));
        }
        if sub.spaces[*v].insert(x) {
            queue.push_back((*v, x.clone()));
        }
    }
    while let Some((v, x)) = queue.pop_front() {
        for a in m.quiver.out_arrows(v) {
            let t = m.quiver.arrow(a).target;
            let y = m.maps[a].apply(&x);
            if sub.spaces[t].insert(&y) {
                queue.push_back((t, y));
            }
        }
    }
    Ok(sub)
}

fn standard_basis(n: usize, field: &Field) -> Vec<Vec<Scalar>> {
    Matrix::identity(n, field).columns()
}

/// A basis of the space of morphisms `m -> n`, each a tuple of vertex matrices.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<Vec<Matrix>>, RepError> {
    if m.quiver != n.quiver {
        return Err(RepError::DifferentQuivers);
    }
    let field = if n.field.modulus().is_some() { &n.field } else { &m.field };
    let mut offset = Vec::with_capacity(m.dims.len());
    let mut total = 0;
    for v in 0..m.dims.len() {
        offset.push(total);
        total += n.dims[v] * m.dims[v];
    }
    let var = |v: usize, i: usize, j: usize| offset[v] + i * m.dims[v] + j;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (idx, a) in m.quiver.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (ma, na) = (&m.maps[idx], &n.maps[idx]);
        // (phi_t M_a - N_a phi_s)[r][c] = 0
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![field.zero(); total];
                for k in 0..m.dims[t] {
                    let e = &row[var(t, r, k)] + ma.get(k, c);
                    row[var(t, r, k)] = e;
                }
                for k in 0..n.dims[s] {
                    let e = &row[var(s, k, c)] - na.get(r, k);
                    row[var(s, k, c)] = e;
                }
                rows.push(row);
            }
        }
    }
    let null = if rows.is_empty() { standard_basis(total, field) } else { Matrix::from_rows(rows, field).nullspace() };
    Ok(null
        .into_iter()
        .map(|x| {
            (0..m.dims.len())
                .map(|v| {
                    let mut phi = Matrix::zero(n.dims[v], m.dims[v], field);
                    for i in 0..n.dims[v] {
                        for j in 0..m.dims[v] {
                            phi.set(i, j, x[var(v, i, j)].clone());
                        }
                    }
                    phi
                })
                .collect()
        })
        .collect())
}

/// A module endomorphism `pi` of `m` with image in `n` and `pi = id` on `n`, if one exists.
/// Its kernel is then a complement of `n`.
pub fn has_complement(m: &Representation, n: &SubRep) -> Result<Option<Vec<Matrix>>, RepError> {
    n.is_closed(m)?;
    let field = &m.field;
    let mut offset = Vec::with_capacity(m.dims.len());
    let mut total = 0;
    for &d in &m.dims {
        offset.push(total);
        total += d * d;
    }
    let var = |v: usize, i: usize, j: usize| offset[v] + i * m.dims[v] + j;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for (idx, a) in m.quiver.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let ma = &m.maps[idx];
        for r in 0..m.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![field.zero(); total];
                for k in 0..m.dims[t] {
                    let e = &row[var(t, r, k)] + ma.get(k, c);
                    row[var(t, r, k)] = e;
                }
                for k in 0..m.dims[s] {
                    let e = &row[var(s, k, c)] - ma.get(r, k);
                    row[var(s, k, c)] = e;
                }
                rows.push(row);
                rhs.push(field.zero());
            }
        }
    }
    for (v, space) in n.spaces.iter().enumerate() {
        let d = m.dims[v];
        // y . pi_v = 0 for y spanning the annihilator of n_v
        for y in space.annihilator().basis() {
            for j in 0..d {
                let mut row = vec![field.zero(); total];
                for (i, yi) in y.iter().enumerate() {
                    row[var(v, i, j)] = yi.clone();
                }
                rows.push(row);
                rhs.push(field.zero());
            }
        }
        // pi_v x = x on n_v
        for x in space.basis() {
            for i in 0..d {
                let mut row = vec![field.zero(); total];
                for (j, xj) in x.iter().enumerate() {
                    row[var(v, i, j)] = xj.clone();
                }
                rows.push(row);
                rhs.push(x[i].clone());
            }
        }
    }
    if total == 0 {
        return Ok(Some(Vec::new()));
    }
    let sol = if rows.is_empty() { Some(vec![field.zero(); total]) } else { Matrix::from_rows(rows, field).solve(&rhs) };
    Ok(sol.map(|x| {
        m.dims
            .iter()
            .enumerate()
            .map(|(v, &d)| {
                let mut p = Matrix::zero(d, d, field);
                for i in 0..d {
                    for j in 0..d {
                        p.set(i, j, x[var(v, i, j)].clone());
                    }
                }
                p
            })
            .collect()
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    NotSimple(SubRep),
    Inconclusive,
}

fn proper_seed_subrep(m: &Representation) -> Result<Option<SubRep>, RepError> {
    let total = m.total_dim();
    for v in 0..m.dims.len() {
        for e in standard_basis(m.dims[v], &m.field) {
            let s = generated_subrep(m, &[(v, e)])?;
            if s.total_dim() < total {
                return Ok(Some(s));
            }
        }
    }
    Ok(None)
}

/// Whether the path operators from every vertex to every vertex span the full
/// space of linear maps between the two vertex spaces.
fn path_operators_span_everything(m: &Representation) -> bool {
    let q = &m.quiver;
    let nv = m.dims.len();
    for a in 0..nv {
        let da = m.dims[a];
        if da == 0 {
            continue;
        }
        let mut spans: Vec<Subspace> = (0..nv).map(|b| Subspace::zero(m.dims[b] * da, &m.field)).collect();
        let mut queue = VecDeque::new();
        let id = Matrix::identity(da, &m.field);
        spans[a].insert(id.entries());
        queue.push_back((a, id));
        while let Some((b, x)) = queue.pop_front() {
            for arrow in q.out_arrows(b) {
                let c = q.arrow(arrow).target;
                let y = &m.maps[arrow] * &x;
                if spans[c].insert(y.entries()) {
                    queue.push_back((c, y));
                }
            }
        }
        if (0..nv).any(|b| spans[b].dim() < m.dims[b] * da) {
            return false;
        }
    }
    true
}

/// Seeds every standard basis vector of `m` and of its transpose; a proper
/// generated subrepresentation proves `m` is not simple. `simple` is reported
/// only when the path operators generate every linear map between vertex spaces.
pub fn is_simple(m: &Representation) -> Result<Simplicity, RepError> {
    if m.total_dim() == 0 {
        return Err(RepError::ZeroRepresentation);
    }
    if let Some(s) = proper_seed_subrep(m)? {
        return Ok(Simplicity::NotSimple(s));
    }
    if let Some(s) = proper_seed_subrep(&m.transpose())? {
        return Ok(Simplicity::NotSimple(s.annihilator()));
    }
    Ok(if path_operators_span_everything(m) { Simplicity::Simple } else { Simplicity::Inconclusive })
}

const GRID_LIMIT: usize = 20_000;

/// `Some(answer)` when decided, `None` when the hom space is too large for the exact test.
pub fn are_isomorphic(m: &Representation, n: &Representation) -> Result<Option<bool>, RepError> {
    if m.quiver != n.quiver {
        return Err(RepError::DifferentQuivers);
    }
    if m.dims != n.dims {
        return Ok(Some(false));
    }
    let h = hom_space(m, n)?;
    if h.is_empty() {
        return Ok(Some(m.total_dim() == 0));
    }
    if hom_space(n, m)?.is_empty() {
        return Ok(Some(false));
    }
    // det(sum c_i H_i) has total degree dim M, so it vanishes on {0..dim M}^k only if it is zero.
    let k = h.len();
    let side = m.total_dim() + 1;
    let mut points = 1usize;
    let mut exhaustive = true;
    for _ in 0..k {
        points = points.saturating_mul(side);
        if points > GRID_LIMIT {
            exhaustive = false;
            points = GRID_LIMIT;
            break;
        }
    }
    let field = &m.field;
    let mut idx = vec![0usize; k];
    for _ in 0..points {
        let invertible = (0..m.dims.len()).all(|v| {
            let mut phi = Matrix::zero(m.dims[v], m.dims[v], field);
            for (c, hi) in idx.iter().zip(&h) {
                if *c != 0 {
                    phi = &phi + &hi[v].scale(&field.int(*c as i64));
                }
            }
            !phi.determinant().is_zero()
        });
        if invertible {
            return Ok(Some(true));
        }
        for c in idx.iter_mut() {
            *c += 1;
            if *c < side {
                break;
            }
            *c = 0;
        }
    }
    Ok(if exhaustive { Some(false) } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{CoxeterDiagram, Weight};
    use crate::quiver::double_quiver;

    fn pair(m: u32, alpha: Matrix, beta: Matrix) -> Representation {
        let q = double_quiver(&CoxeterDiagram::dihedral(Weight::Finite(m)));
        let k = alpha.field().clone();
        Representation::new(q, k, vec![alpha.cols(), alpha.rows()], vec![alpha, beta]).unwrap()
    }

    #[test]
    fn scaled_identity_fails_with_residual() {
        let k = Field::rationals();
        let two = Matrix::scalar(2, &k.int(2));
        let m = pair(3, two.clone(), two);
        let r = check_representation(&m, &PolynomialFamily::POWER);
        assert!(!r.pass);
        assert_eq!(r.residuals[0].1, Matrix::scalar(2, &k.int(3)));
    }

    #[test]
    fn identities_pass_for_odd_weights() {
        let k = Field::rationals();
        for m in [3, 5, 7] {
            let rep = pair(m, Matrix::identity(2, &k), Matrix::identity(2, &k));
            assert!(check_representation(&rep, &PolynomialFamily::POWER).pass);
        }
    }

    #[test]
    fn hom_spaces_of_one_dimensional_modules() {
        let k = Field::rationals();
        let m1 = pair(5, Matrix::identity(1, &k), Matrix::identity(1, &k));
        let m2 = pair(5, Matrix::identity(1, &k), Matrix::scalar(1, &k.int(-1)));
        assert_eq!(hom_space(&m1, &m1).unwrap().len(), 1);
        assert_eq!(hom_space(&m1, &m2).unwrap().len(), 0);
        assert_eq!(are_isomorphic(&m1, &m2).unwrap(), Some(false));
        assert_eq!(are_isomorphic(&m1, &m1).unwrap(), Some(true));
    }

    #[test]
    fn direct_sum_is_not_simple_and_splits() {
        let k = Field::rationals();
        let m1 = pair(5, Matrix::identity(1, &k), Matrix::identity(1, &k));
        let m2 = pair(5, Matrix::identity(1, &k), Matrix::scalar(1, &k.int(-1)));
        let s = Representation::direct_sum(&[&m1, &m2]).unwrap();
        assert_eq!(is_simple(&m1).unwrap(), Simplicity::Simple);
        let Simplicity::NotSimple(w) = is_simple(&s).unwrap() else { panic!("expected a witness") };
        let sub = w.to_representation(&s).unwrap();
        assert!(are_isomorphic(&sub, &m1).unwrap().unwrap() || are_isomorphic(&sub, &m2).unwrap().unwrap());
        assert!(has_complement(&s, &w).unwrap().is_some());
        assert!(has_complement(&s, &SubRep::full(&s)).unwrap().is_some());
    }

    #[test]
    fn empty_seed_generates_zero() {
        let k = Field::rationals();
        let m1 = pair(5, Matrix::identity(2, &k), Matrix::identity(2, &k));
        assert_eq!(generated_subrep(&m1, &[]).unwrap().total_dim(), 0);
        assert!(generated_subrep(&m1, &[(0, vec![k.one()])]).is_err());
    }
}

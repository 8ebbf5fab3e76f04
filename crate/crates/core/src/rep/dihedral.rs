//! Eigenspace splitting of an arrow pair and the simple modules of the dihedral quotient.

use num_traits::Zero;

use super::field::{Field, Scalar};
use super::matrix::Matrix;
use super::representation::{check_representation, Representation};
use super::RepError;
use crate::diagram::{CoxeterDiagram, Weight};
use crate::quiver::{double_quiver, GDQuiver};
use crate::rewrite::{tilde, Polynomial, PolynomialFamily};

/// One eigenvalue `z` of `BA` (equivalently of `AB`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenBlock {
    pub value: Scalar,
    /// Basis of `U_z`, as columns of vectors in `U`.
    pub u_basis: Vec<Vec<Scalar>>,
    /// Basis of `V_z`.
    pub v_basis: Vec<Vec<Scalar>>,
    /// `A` restricted to `U_z -> V_z`, in the two bases above.
    pub a_restricted: Matrix,
    /// `z^{-1} B` restricted to `V_z -> U_z`; zero for `z = 0`.
    pub b_restricted: Matrix,
}

impl EigenBlock {
    /// Whether the two restrictions are mutually inverse (always false for `z = 0` unless empty).
    pub fn restrictions_inverse(&self) -> bool {
        let nu = self.u_basis.len();
        let nv = self.v_basis.len();
        let field = self.a_restricted.field();
        nu == nv
            && &self.b_restricted * &self.a_restricted == Matrix::identity(nu, field)
            && &self.a_restricted * &self.b_restricted == Matrix::identity(nv, field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDecomposition {
    /// Blocks for the nonzero roots of `h` that occur, in root order.
    pub blocks: Vec<EigenBlock>,
    /// The kernel block, present only in the even case.
    pub zero: Option<EigenBlock>,
}

fn coordinates(basis: &[Vec<Scalar>], dim: usize, v: &[Scalar], field: &Field) -> Vec<Scalar> {
    if basis.is_empty() {
        return Vec::new();
    }
    Matrix::from_columns(basis, dim, field).solve(v).expect("vector lies in the eigenspace")
}

fn restriction(m: &Matrix, from: &[Vec<Scalar>], to: &[Vec<Scalar>], scale: &Scalar, field: &Field) -> Matrix {
    let cols: Vec<Vec<Scalar>> = from
        .iter()
        .map(|x| {
            let y: Vec<Scalar> = m.apply(x).iter().map(|c| c * scale).collect();
            coordinates(to, m.rows(), &y, field)
        })
        .collect();
    Matrix::from_columns(&cols, to.len(), field)
}

/// Splits `U` and `V` into eigenspaces of `BA` and `AB` for a pair `A: U -> V`, `B: V -> U`
/// annihilated by `h` (odd case: `h(BA) = h(AB) = 0`; even case: `h(AB) A = h(BA) B = 0`).
pub fn eigendecompose_pair(a: &Matrix, b: &Matrix, h: &Polynomial) -> Result<PairDecomposition, RepError> {
    let (nu, nv) = (a.cols(), a.rows());
    if b.rows() != nu || b.cols() != nv {
        return Err(RepError::ShapeMismatch(format!("A is {}x{}, B is {}x{}", a.rows(), a.cols(), b.rows(), b.cols())));
    }
    let field = if a.field().modulus().is_some() { a.field().clone() } else { b.field().clone() };
    let ba = b * a;
    let ab = a * b;
    let odd = ba.eval_poly(h).is_zero() && ab.eval_poly(h).is_zero();
    let even = !odd && (&ab.eval_poly(h) * a).is_zero() && (&ba.eval_poly(h) * b).is_zero();
    if !odd && !even {
        return Err(RepError::PreconditionFailed(format!("{h} does not annihilate the pair")));
    }
    if h.degree().unwrap_or(0) > 0 && !h.is_squarefree() {
        return Err(RepError::RepeatedRoot(h.to_string()));
    }
    if h.coeff(0).is_zero() {
        return Err(RepError::ZeroRoot(h.to_string()));
    }
    let roots = field.roots(h);
    if roots.len() != h.degree().unwrap_or(0) {
        return Err(RepError::RootsOutsideField(h.to_string()));
    }
    let mut blocks = Vec::new();
    for z in roots {
        let u_basis = (&ba - &Matrix::scalar(nu, &z)).nullspace();
        let v_basis = (&ab - &Matrix::scalar(nv, &z)).nullspace();
        if u_basis.is_empty() && v_basis.is_empty() {
            continue;
        }
        let zinv = z.inv().expect("nonzero root");
        let a_restricted = restriction(a, &u_basis, &v_basis, &field.one(), &field);
        let b_restricted = restriction(b, &v_basis, &u_basis, &zinv, &field);
        blocks.push(EigenBlock { value: z, u_basis, v_basis, a_restricted, b_restricted });
    }
    let zero = if odd {
        None
    } else {
        let u_basis = ba.nullspace();
        let v_basis = ab.nullspace();
        let a_restricted = Matrix::zero(v_basis.len(), u_basis.len(), &field);
        let b_restricted = Matrix::zero(u_basis.len(), v_basis.len(), &field);
        Some(EigenBlock { value: field.zero(), u_basis, v_basis, a_restricted, b_restricted })
    };
    Ok(PairDecomposition { blocks, zero })
}

/// A simple module of the dihedral quotient with its label `S(a)`, `S(b)` or `M(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralSimple {
    pub label: String,
    /// The parameter `z` for `M(z)`.
    pub value: Option<Scalar>,
    pub rep: Representation,
}

fn dihedral_weight(m: Weight) -> Result<usize, RepError> {
    match m {
        Weight::Finite(k) if k >= 3 => Ok(k as usize),
        other => Err(RepError::WeightTooSmall(other.to_string())),
    }
}

fn halved(m: usize, fam: &PolynomialFamily) -> Polynomial {
    tilde(&fam.poly(m - 1)).expect("family polynomials have a parity")
}

fn lambda_simple(q: &GDQuiver, z: &Scalar, field: &Field) -> Representation {
    let maps = vec![Matrix::identity(1, field), Matrix::scalar(1, z)];
    Representation::new(q.clone(), field.clone(), vec![1, 1], maps).expect("shapes")
}

fn vertex_simple(q: &GDQuiver, at: usize, field: &Field) -> Representation {
    let mut dims = vec![0, 0];
    dims[at] = 1;
    let maps = vec![Matrix::zero(dims[1], dims[0], field), Matrix::zero(dims[0], dims[1], field)];
    Representation::new(q.clone(), field.clone(), dims, maps).expect("shapes")
}

/// The pairwise non-isomorphic simple modules for weight `m`: the `M(z)` for the roots `z`
/// of the halved relation polynomial, plus `S(a)` and `S(b)` for even `m`.
pub fn dihedral_simples(m: Weight, fam: &PolynomialFamily, field: &Field) -> Result<Vec<DihedralSimple>, RepError> {
    let k = dihedral_weight(m)?;
    let q = double_quiver(&CoxeterDiagram::dihedral(m));
    let h = halved(k, fam);
    let roots = field.roots(&h);
    if roots.len() != h.degree().unwrap_or(0) {
        return Err(RepError::RootsOutsideField(h.to_string()));
    }
    let mut out = Vec::new();
    if k % 2 == 0 {
        for (at, name) in [(0, "S(a)"), (1, "S(b)")] {
            out.push(DihedralSimple { label: name.to_string(), value: None, rep: vertex_simple(&q, at, field) });
        }
    }
    for z in roots {
        out.push(DihedralSimple { label: format!("M({z})"), rep: lambda_simple(&q, &z, field), value: Some(z) });
    }
    Ok(out)
}

/// Multiplicities of the dihedral simples in a module, with the change of basis
/// `(P_a, P_b)` that brings the module to the block form of their direct sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralDecomposition {
    pub parts: Vec<(DihedralSimple, usize)>,
    pub bases: Vec<Matrix>,
}

impl DihedralDecomposition {
    /// The direct sum of the parts, each repeated by its multiplicity, in the order of `bases`.
    pub fn reassemble(&self, q: &GDQuiver, field: &Field) -> Representation {
        let copies: Vec<&Representation> =
            self.parts.iter().flat_map(|(s, k)| std::iter::repeat(&s.rep).take(*k)).collect();
        if copies.is_empty() {
            return Representation::zero(q, field);
        }
        Representation::direct_sum(&copies).expect("same quiver")
    }

    pub fn total_dim(&self) -> usize {
        self.parts.iter().map(|(s, k)| s.rep.total_dim() * k).sum()
    }
}

/// Decomposes a module of the dihedral quotient into its simple summands.
pub fn decompose_dihedral(m: &Representation, fam: &PolynomialFamily) -> Result<DihedralDecomposition, RepError> {
    let q = m.quiver();
    let shape_ok = q.vertex_count() == 2
        && q.arrows().len() == 2
        && q.arrow(0).source == 0
        && q.arrow(0).target == 1
        && q.dual(0) == 1;
    if !shape_ok {
        return Err(RepError::PreconditionFailed("not a dihedral double quiver".into()));
    }
    let k = dihedral_weight(q.weight(0))?;
    let report = check_representation(m, fam);
    if let Some(&a) = report.failures().first() {
        return Err(RepError::RelationsNotSatisfied(q.arrow(a).id.clone()));
    }
    let field = m.field().clone();
    let (a, b) = (m.map(0), m.map(1));
    let h = halved(k, fam);
    let pd = eigendecompose_pair(a, b, &h)?;
    let simples = dihedral_simples(q.weight(0), fam, &field)?;
    let find = |label: &str| simples.iter().find(|s| s.label == label).cloned().expect("known label");
    let mut parts = Vec::new();
    let (mut cols_a, mut cols_b) = (Vec::new(), Vec::new());
    for blk in &pd.blocks {
        if blk.u_basis.is_empty() {
            continue;
        }
        let mut s = find(&format!("M({})", blk.value));
        s.rep = lambda_simple(q, &blk.value, &field);
        parts.push((s, blk.u_basis.len()));
        for u in &blk.u_basis {
            cols_a.push(u.clone());
            cols_b.push(a.apply(u));
        }
    }
    if let Some(z) = &pd.zero {
        if !z.u_basis.is_empty() {
            let mut s = find("S(a)");
            s.rep = vertex_simple(q, 0, &field);
            parts.push((s, z.u_basis.len()));
            cols_a.extend(z.u_basis.iter().cloned());
        }
        if !z.v_basis.is_empty() {
            let mut s = find("S(b)");
            s.rep = vertex_simple(q, 1, &field);
            parts.push((s, z.v_basis.len()));
            cols_b.extend(z.v_basis.iter().cloned());
        }
    }
    let bases = vec![Matrix::from_columns(&cols_a, m.dim(0), &field), Matrix::from_columns(&cols_b, m.dim(1), &field)];
    Ok(DihedralDecomposition { parts, bases })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::hom_space;

    #[test]
    fn identity_pair_has_one_eigenvalue() {
        let k = Field::rationals();
        let i = Matrix::identity(2, &k);
        let pd = eigendecompose_pair(&i, &i, &Polynomial::from_ints(&[-1, 1])).unwrap();
        assert_eq!(pd.blocks.len(), 1);
        assert_eq!(pd.blocks[0].value, k.one());
        assert_eq!(pd.blocks[0].u_basis.len(), 2);
        assert!(pd.blocks[0].restrictions_inverse());
    }

    #[test]
    fn irrational_roots_need_an_extension() {
        let k = Field::rationals();
        let a = Matrix::from_ints(&[&[0, 2], &[1, 0]], &k);
        let i = Matrix::identity(2, &k);
        let h = Polynomial::from_ints(&[-2, 0, 1]);
        assert_eq!(eigendecompose_pair(&a, &i, &h), Err(RepError::RootsOutsideField(h.to_string())));
        let r2 = Field::parse("x^2-2").unwrap();
        let a2 = Matrix::from_ints(&[&[0, 2], &[1, 0]], &r2);
        let pd = eigendecompose_pair(&a2, &Matrix::identity(2, &r2), &h).unwrap();
        assert_eq!(pd.blocks.len(), 2);
        assert!(pd.blocks.iter().all(EigenBlock::restrictions_inverse));
    }

    #[test]
    fn simple_counts() {
        let k = Field::rationals();
        let p = PolynomialFamily::POWER;
        let labels = |m| dihedral_simples(Weight::Finite(m), &p, &k).unwrap().into_iter().map(|s| s.label).collect::<Vec<_>>();
        assert_eq!(labels(5), ["M(-1)", "M(1)"]);
        assert_eq!(labels(4), ["S(a)", "S(b)", "M(1)"]);
        let dims: Vec<usize> =
            dihedral_simples(Weight::Finite(6), &p, &k).unwrap().iter().map(|s| s.rep.total_dim()).collect();
        assert_eq!(dims, [1, 1, 2, 2]);
        assert!(dihedral_simples(Weight::Finite(7), &p, &k).is_err());
    }

    #[test]
    fn decomposition_of_a_split_module() {
        let k = Field::rationals();
        let p = PolynomialFamily::POWER;
        let q = double_quiver(&CoxeterDiagram::dihedral(Weight::Finite(5)));
        let m = Representation::new(
            q.clone(),
            k.clone(),
            vec![2, 2],
            vec![Matrix::identity(2, &k), Matrix::diag(&[k.one(), k.int(-1)], &k)],
        )
        .unwrap();
        let d = decompose_dihedral(&m, &p).unwrap();
        let labels: Vec<(String, usize)> = d.parts.iter().map(|(s, n)| (s.label.clone(), *n)).collect();
        assert_eq!(labels, [("M(-1)".to_string(), 1), ("M(1)".to_string(), 1)]);
        assert_eq!(m.change_basis(&d.bases).unwrap(), d.reassemble(&q, &k));
        assert!(decompose_dihedral(&Representation::zero(&q, &k), &p).unwrap().parts.is_empty());
    }

    #[test]
    fn hom_between_lambda_simples() {
        let k = Field::rationals();
        let s = dihedral_simples(Weight::Finite(4), &PolynomialFamily::POWER, &k).unwrap();
        assert_eq!(hom_space(&s[0].rep, &s[1].rep).unwrap().len(), 0);
        assert_eq!(hom_space(&s[2].rep, &s[2].rep).unwrap().len(), 1);
    }
}

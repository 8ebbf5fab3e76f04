//! Representations: dihedral simples, decompositions, generated subrepresentations.

use jring::diagram::{CoxeterDiagram, Weight};
use jring::quiver::{double_quiver, Path};
use jring::rep::{
    check_representation, decompose_dihedral, dihedral_simples, eigendecompose_pair, extend_by_pendant, generated_subrep,
    has_complement, hom_space, is_simple, witness_nonsemisimple, Field, Matrix, Representation, Scalar, Simplicity,
    Subspace,
};
use jring::rewrite::{tilde, Polynomial, PolynomialFamily};
use proptest::prelude::*;

use Weight::{Finite as F, Infinite as Inf};

fn field_for(m: u32) -> Field {
    if m >= 7 {
        Field::extension(Polynomial::from_ints(&[1, 1, 1])).unwrap()
    } else {
        Field::rationals()
    }
}

fn simples(m: u32, fam: &PolynomialFamily) -> Vec<Representation> {
    dihedral_simples(F(m), fam, &field_for(m)).unwrap().into_iter().map(|s| s.rep).collect()
}

/// An invertible `n x n` matrix `L U` with unit diagonals, entries drawn from `seed`.
fn invertible(n: usize, seed: &[i64], field: &Field) -> Matrix {
    let mut l = Matrix::identity(n, field);
    let mut u = Matrix::identity(n, field);
    let mut k = 0;
    let mut next = || {
        let v = seed.get(k % seed.len().max(1)).copied().unwrap_or(0);
        k += 1;
        field.int(v)
    };
    for r in 0..n {
        for c in r + 1..n {
            u.set(r, c, next());
            l.set(c, r, next());
        }
    }
    &l * &u
}

#[test]
fn dihedral_simples_satisfy_their_relations() {
    for fam in [PolynomialFamily::POWER, PolynomialFamily::CHEBYSHEV] {
        for m in 3..=8 {
            let Ok(list) = dihedral_simples(F(m), &fam, &field_for(m)) else {
                assert_eq!(fam, PolynomialFamily::CHEBYSHEV, "power roots are rational or cube roots of unity");
                continue;
            };
            for s in &list {
                assert!(check_representation(&s.rep, &fam).pass, "{} m={m}", s.label);
                assert_eq!(is_simple(&s.rep).unwrap(), Simplicity::Simple);
            }
            for (i, a) in list.iter().enumerate() {
                for (j, b) in list.iter().enumerate() {
                    let homs = hom_space(&a.rep, &b.rep).unwrap().len();
                    assert_eq!(homs, usize::from(i == j), "m={m} {} {}", a.label, b.label);
                }
            }
        }
    }
    let cheb6: Vec<String> = dihedral_simples(F(6), &PolynomialFamily::CHEBYSHEV, &Field::rationals())
        .unwrap()
        .into_iter()
        .map(|s| s.label)
        .collect();
    assert_eq!(cheb6, ["S(a)", "S(b)", "M(1)", "M(3)"]);
}

#[test]
fn direct_sums_are_not_simple_but_split() {
    let list = simples(5, &PolynomialFamily::POWER);
    let sum = Representation::direct_sum(&[&list[0], &list[1]]).unwrap();
    assert!(matches!(is_simple(&sum).unwrap(), Simplicity::NotSimple(_)));
    let k = Field::rationals();
    let sub = generated_subrep(&sum, &[(0, vec![k.one(), k.zero()])]).unwrap();
    assert_eq!(sub.total_dim(), 2);
    assert!(has_complement(&sum, &sub).unwrap().is_some());
}

proptest! {
    #[test]
    fn decomposition_reassembles(m in 3u32..=8, mult in prop::collection::vec(0usize..3, 4), seed in prop::collection::vec(-2i64..=2, 1..12)) {
        let power = PolynomialFamily::POWER;
        let field = field_for(m);
        let list = dihedral_simples(F(m), &power, &field).unwrap();
        let mut parts: Vec<&Representation> = Vec::new();
        for (s, &k) in list.iter().zip(mult.iter().cycle()) {
            parts.extend(std::iter::repeat(&s.rep).take(k));
        }
        prop_assume!(!parts.is_empty());
        let sum = Representation::direct_sum(&parts).unwrap();
        let p = [invertible(sum.dim(0), &seed, &field), invertible(sum.dim(1), &seed[1..], &field)];
        let mixed = sum.change_basis(&p).unwrap();
        prop_assert!(check_representation(&mixed, &power).pass);

        let dec = decompose_dihedral(&mixed, &power).unwrap();
        prop_assert_eq!(dec.total_dim(), mixed.total_dim());
        prop_assert_eq!(mixed.change_basis(&dec.bases).unwrap(), dec.reassemble(mixed.quiver(), &field));
        for (s, k) in list.iter().zip(mult.iter().cycle()) {
            let got = dec.parts.iter().find(|(t, _)| t.label == s.label).map_or(0, |(_, n)| *n);
            prop_assert_eq!(got, *k, "{}", &s.label);
        }

        let h = tilde(&power.get(m as usize - 1).unwrap()).unwrap();
        let pair = eigendecompose_pair(mixed.map(0), mixed.map(1), &h).unwrap();
        prop_assert!(pair.blocks.iter().all(|b| b.restrictions_inverse()));
    }
}

#[test]
fn nonzero_diagonal_vectors_generate_everything() {
    let k = Field::rationals();
    let power = PolynomialFamily::POWER;
    // Simples of weight 6 that live at vertex a.
    let at_a: Vec<Representation> = simples(6, &power).into_iter().filter(|s| s.dim(0) == 1).collect();
    assert_eq!(at_a.len(), 3);
    let entries = [1i64, -1, 2];
    for mask in 1u32..8 {
        let chosen: Vec<&Representation> = (0..3).filter(|i| mask & (1 << i) != 0).map(|i| &at_a[i]).collect();
        let sum = Representation::direct_sum(&chosen).unwrap();
        let n = chosen.len();
        for code in 0..3usize.pow(n as u32) {
            let v: Vec<Scalar> = (0..n).map(|i| k.int(entries[code / 3usize.pow(i as u32) % 3])).collect();
            let sub = generated_subrep(&sum, &[(0, v)]).unwrap();
            assert_eq!(sub.total_dim(), sum.total_dim(), "mask {mask} code {code}");
        }
    }
}

/// Span of all path images of the seeds, by brute force over paths.
fn path_closure(m: &Representation, seeds: &[(usize, Vec<Scalar>)]) -> Vec<Subspace> {
    let q = m.quiver();
    let mut spaces: Vec<Subspace> = m.dims().iter().map(|&d| Subspace::zero(d, m.field())).collect();
    let mut frontier: Vec<Path> = (0..q.vertex_count()).map(Path::stationary).collect();
    for _ in 0..=m.total_dim() {
        for p in &frontier {
            for (v, x) in seeds {
                if p.start == *v {
                    spaces[p.end].insert(&m.path_matrix(p).apply(x));
                }
            }
        }
        frontier = frontier
            .iter()
            .flat_map(|p| q.out_arrows(p.end).map(move |a| (p.clone(), a)))
            .map(|(p, a)| {
                let mut arrows = p.arrows;
                arrows.push(a);
                q.path(arrows).unwrap()
            })
            .collect();
    }
    spaces
}

fn samples() -> Vec<Representation> {
    let k = Field::rationals();
    let power = PolynomialFamily::POWER;
    let two_heavy = CoxeterDiagram::new(["a", "b", "c"], [("a", "b", F(5)), ("b", "c", F(5))]).unwrap();
    let lam = |z: i64| {
        let q = double_quiver(&CoxeterDiagram::dihedral(F(5)));
        Representation::new(q, k.clone(), vec![1, 1], vec![Matrix::identity(1, &k), Matrix::scalar(1, &k.int(z))]).unwrap()
    };
    vec![
        witness_nonsemisimple(&CoxeterDiagram::dihedral(Inf), &k.int(2), &power).unwrap().rep,
        witness_nonsemisimple(&two_heavy, &k.one(), &power).unwrap().rep,
        witness_nonsemisimple(&CoxeterDiagram::cycle(4, F(3)), &k.int(3), &power).unwrap().rep,
        extend_by_pendant(&[lam(1), lam(-1)], F(4), "a", "v", &power).unwrap(),
    ]
}

proptest! {
    #[test]
    fn generated_subreps_are_closed_and_minimal(which in 0usize..4, picks in prop::collection::vec((0usize..4, prop::collection::vec(-2i64..=2, 3)), 1..3)) {
        let reps = samples();
        let m = &reps[which];
        let k = m.field().clone();
        let seeds: Vec<(usize, Vec<Scalar>)> = picks
            .iter()
            .map(|(v, xs)| {
                let v = v % m.dims().len();
                (v, (0..m.dim(v)).map(|i| k.int(xs[i % xs.len()])).collect())
            })
            .collect();
        let sub = generated_subrep(m, &seeds).unwrap();
        prop_assert!(sub.is_closed(m).is_ok());
        let oracle = path_closure(m, &seeds);
        for (s, o) in sub.spaces.iter().zip(&oracle) {
            prop_assert_eq!(s.dim(), o.dim());
            prop_assert!(o.basis().iter().all(|x| s.contains(x)));
        }
        for (v, x) in &seeds {
            prop_assert!(sub.spaces[*v].contains(x));
        }
    }
}

#[test]
fn witnesses_and_pendant_outputs_satisfy_relations() {
    let power = PolynomialFamily::POWER;
    for m in samples() {
        assert!(check_representation(&m, &power).pass);
    }
}

//! Double quivers, unbraided paths, normal forms and the map to the J-ring.

use std::collections::BTreeSet;

use jring::diagram::{CoxeterDiagram, Weight, Word};
use jring::jring::JElement;
use jring::quiver::{double_quiver, iota, word_of_path, GDQuiver, Path};
use jring::rewrite::{family_poly, normal_form, tilde, AlgebraElement, FamilyKind, Phi, Polynomial, PolynomialFamily, Rewriter};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use Weight::{Finite as F, Infinite as Inf};

fn worked() -> CoxeterDiagram {
    CoxeterDiagram::new(["a", "b", "c"], [("a", "b", F(3)), ("a", "c", F(4)), ("b", "c", F(5))]).unwrap()
}

fn small_diagrams() -> Vec<CoxeterDiagram> {
    let weights = [F(3), F(4), F(5), F(6), Inf];
    let mut out: Vec<CoxeterDiagram> = weights.iter().map(|&w| CoxeterDiagram::dihedral(w)).collect();
    for &x in &weights {
        for &y in &weights {
            out.push(CoxeterDiagram::new(["a", "b", "c"], [("a", "b", x), ("b", "c", y)]).unwrap());
        }
    }
    out.push(worked());
    out.push(CoxeterDiagram::cycle(3, F(3)));
    out.push(CoxeterDiagram::new(["a", "b", "c"], [("a", "b", Inf), ("b", "c", F(6)), ("a", "c", F(4))]).unwrap());
    out
}

#[test]
fn double_quiver_shape() {
    let d = CoxeterDiagram::new(["a", "b", "c"], [("a", "b", F(3)), ("b", "c", F(3))]).unwrap();
    let q = double_quiver(&d);
    assert_eq!((q.vertex_count(), q.arrows().len()), (3, 4));
    for a in 0..q.arrows().len() {
        assert_ne!(q.dual(a), a);
        assert_eq!(q.dual(q.dual(a)), a);
        assert_eq!(q.weight(a), q.weight(q.dual(a)));
        assert_eq!(q.arrow(a).source, q.arrow(q.dual(a)).target);
    }
    let inf = double_quiver(&CoxeterDiagram::dihedral(Inf));
    assert!(inf.arrows().iter().all(|a| a.weight == Inf));
    assert!(q.validate().is_ok());
}

#[test]
fn iota_is_a_length_shifting_bijection() {
    for d in small_diagrams() {
        let q = double_quiver(&d);
        let cap = 7;
        let cell = d.enumerate_cell(cap);
        let unbraided: BTreeSet<Path> = q.enumerate_unbraided(cap - 1).into_iter().collect();
        assert_eq!(cell.len(), unbraided.len(), "{}", d.to_canonical_string());
        let image: BTreeSet<Path> = cell
            .iter()
            .map(|w| {
                let p = iota(&q, w).unwrap();
                assert_eq!(p.len() + 1, w.len());
                assert_eq!(&word_of_path(&q, &p), w);
                p
            })
            .collect();
        assert_eq!(image, unbraided);
    }
}

#[test]
fn unbraided_examples() {
    let q = double_quiver(&CoxeterDiagram::dihedral(F(3)));
    assert!(!q.is_unbraided(&q.path(vec![0, 1]).unwrap()));
    assert!(q.is_unbraided(&q.path(vec![0]).unwrap()));
    assert_eq!(q.enumerate_unbraided(10).len(), 4);
    let inf = double_quiver(&CoxeterDiagram::dihedral(Inf));
    assert!(inf.is_unbraided(&inf.path(vec![0, 1, 0, 1, 0, 1, 0]).unwrap()));
}

#[test]
fn family_examples_and_validation() {
    assert_eq!(family_poly(FamilyKind::Chebyshev, 3).unwrap(), Polynomial::from_ints(&[0, -2, 0, 1]));
    assert_eq!(family_poly(FamilyKind::Chebyshev, 4).unwrap(), Polynomial::from_ints(&[1, 0, -3, 0, 1]));
    assert_eq!(family_poly(FamilyKind::Power, 4).unwrap(), Polynomial::from_ints(&[-1, 0, 0, 0, 1]));
    assert_eq!(family_poly(FamilyKind::Power, 5).unwrap(), Polynomial::from_ints(&[0, -1, 0, 0, 0, 1]));
    assert!(family_poly(FamilyKind::Power, 1).is_err());
    for kind in [FamilyKind::Chebyshev, FamilyKind::Power] {
        for n in 2..=12 {
            let t = tilde(&family_poly(kind, n).unwrap()).unwrap();
            assert!(!t.coeff(0).is_zero(), "{kind} {n}");
            assert_eq!(t.gcd(&t.derivative()).degree(), Some(0), "{kind} {n}");
            PolynomialFamily::new(kind).validate(n).unwrap();
        }
    }
}

#[test]
fn worked_normal_form() {
    let q = double_quiver(&CoxeterDiagram::dihedral(F(5)));
    let p = AlgebraElement::path(q.path(vec![0, 1, 0, 1]).unwrap());
    let nf = normal_form(&p, &PolynomialFamily::CHEBYSHEV, &q);
    let mut expected = AlgebraElement::term(q.path(vec![0, 1]).unwrap(), BigRational::from_integer(3.into()));
    expected.add_term(Path::stationary(0), -BigRational::one());
    assert_eq!(nf, expected);
}

#[test]
fn normal_forms_are_unbraided_and_idempotent() {
    for d in small_diagrams().iter().step_by(3) {
        let q = double_quiver(d);
        for fam in [PolynomialFamily::CHEBYSHEV, PolynomialFamily::POWER] {
            let rw = Rewriter::new(&q, fam);
            for p in paths(&q, 6) {
                let nf = rw.normal_form(&AlgebraElement::path(p));
                assert!(nf.terms().all(|(t, _)| q.is_unbraided(t)));
                assert_eq!(rw.normal_form(&nf), nf);
            }
        }
    }
}

#[test]
fn phi_is_unitriangular() {
    let d = worked();
    let phi = Phi::new(&d);
    let q = phi.quiver().clone();
    for w in d.enumerate_cell(7) {
        let image = phi.path(&iota(&q, &w).unwrap());
        assert_eq!(image.coeff(&w), 1.into());
        assert!(image.terms().all(|(u, _)| u == &w || u.len() < w.len()), "{}", d.format_word(&w));
    }
    assert!(phi.apply(&AlgebraElement::path(Path::stationary(0))).unwrap() == JElement::basis(Word::letter(0)));
}

fn paths(q: &GDQuiver, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..q.vertex_count()).map(Path::stationary).collect();
    let mut layer = out.clone();
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|p| q.out_arrows(p.end).map(move |a| (p.clone(), a)))
            .map(|(p, a)| {
                let mut arrows = p.arrows;
                arrows.push(a);
                q.path(arrows).unwrap()
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// A path on the double quiver of the worked diagram, steered by the choices.
fn steered(q: &GDQuiver, start: usize, choices: &[usize]) -> Path {
    let mut p = Path::stationary(start % q.vertex_count());
    for &c in choices {
        let out: Vec<usize> = q.out_arrows(p.end).collect();
        let mut arrows = p.arrows.clone();
        arrows.push(out[c % out.len()]);
        p = q.path(arrows).unwrap();
    }
    p
}

proptest! {
    #[test]
    fn phi_factors_through_the_quotient(
        terms in prop::collection::vec((0usize..3, prop::collection::vec(0usize..4, 0..9), -4i64..=4), 1..4)
    ) {
        let d = worked();
        let phi = Phi::new(&d);
        let q = phi.quiver().clone();
        let mut x = AlgebraElement::zero();
        for (s, choices, c) in terms {
            x.add_term(steered(&q, s, &choices), BigRational::from_integer(c.into()));
        }
        let nf = normal_form(&x, &PolynomialFamily::CHEBYSHEV, &q);
        prop_assert_eq!(phi.apply(&nf).unwrap(), phi.apply(&x).unwrap());
    }

    #[test]
    fn product_of_normal_forms_is_the_normal_form_of_the_product(
        a in (0usize..3, prop::collection::vec(0usize..4, 0..6)),
        b in (0usize..3, prop::collection::vec(0usize..4, 0..6)),
    ) {
        let d = worked();
        let q = double_quiver(&d);
        let rw = Rewriter::new(&q, PolynomialFamily::POWER);
        let p = AlgebraElement::path(steered(&q, a.0, &a.1));
        let r = AlgebraElement::path(steered(&q, b.0, &b.1));
        let direct = rw.normal_form(&p.concat(&r, &q));
        prop_assert_eq!(rw.mul(&rw.normal_form(&p), &rw.normal_form(&r)), direct);
    }
}

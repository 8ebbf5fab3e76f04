//! Rigid words and the J-ring, checked against brute-force oracles.

use std::collections::{BTreeSet, HashMap, VecDeque};

use jring::diagram::{CoxeterDiagram, Weight, Word};
use jring::jring::{dihedral_mul, filtration_degree, mul, unit, JElement};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use Weight::{Finite as F, Infinite as Inf};

/// Coxeter order of a pair, with 2 for a missing edge and 0 for infinity.
fn order(d: &CoxeterDiagram, a: usize, b: usize) -> usize {
    match d.weight(a, b) {
        None => 2,
        Some(F(m)) => m as usize,
        Some(Inf) => 0,
    }
}

/// All words reachable from `w` by braid moves.
fn braid_class(d: &CoxeterDiagram, w: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(u) = queue.pop_front() {
        for i in 0..u.len() {
            for j in i + 1..u.len() {
                let (a, b) = (u[i], u[i + 1]);
                if a == b {
                    break;
                }
                let m = order(d, a, b);
                if m == 0 || j + 1 - i != m {
                    continue;
                }
                let alt = (i..=j).all(|k| u[k] == if (k - i) % 2 == 0 { a } else { b });
                if alt {
                    let mut v = u.clone();
                    for k in i..=j {
                        v[k] = if (k - i) % 2 == 0 { b } else { a };
                    }
                    if seen.insert(v.clone()) {
                        queue.push_back(v);
                    }
                }
            }
        }
    }
    seen
}

fn rigid_by_oracle(d: &CoxeterDiagram, w: &[usize]) -> bool {
    let class = braid_class(d, w);
    let reduced = class.iter().all(|u| u.windows(2).all(|p| p[0] != p[1]));
    !w.is_empty() && reduced && class.len() == 1
}

fn all_words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..n).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn three_vertex_diagrams() -> Vec<CoxeterDiagram> {
    let choices = [None, Some(F(3)), Some(F(4)), Some(F(5)), Some(Inf)];
    let mut out = vec![];
    for ab in choices {
        for bc in choices {
            for ac in choices {
                let edges: Vec<(&str, &str, Weight)> = [("a", "b", ab), ("b", "c", bc), ("a", "c", ac)]
                    .into_iter()
                    .filter_map(|(u, v, w)| w.map(|w| (u, v, w)))
                    .collect();
                out.push(CoxeterDiagram::new(["a", "b", "c"], edges).unwrap());
            }
        }
    }
    out
}

fn worked() -> CoxeterDiagram {
    CoxeterDiagram::new(["a", "b", "c"], [("a", "b", F(3)), ("a", "c", F(4)), ("b", "c", F(5))]).unwrap()
}

#[test]
fn rigidity_matches_braid_class_oracle() {
    let mut diagrams = three_vertex_diagrams();
    diagrams.extend([F(3), F(4), F(6), Inf].map(CoxeterDiagram::dihedral));
    for d in &diagrams {
        for w in all_words(d.rank(), 6) {
            let word = Word(w.clone());
            assert_eq!(d.is_rigid(&word).unwrap(), rigid_by_oracle(d, &w), "{} over {}", d.format_word(&word), d.to_canonical_string());
        }
    }
}

#[test]
fn cell_sizes() {
    let lens = |m, cap| CoxeterDiagram::dihedral(m).enumerate_cell(cap).len();
    assert_eq!(lens(F(4), 10), 6);
    assert_eq!(lens(F(3), 10), 4);
    assert_eq!(lens(Inf, 3), 6);
    for m in 3..=8 {
        assert_eq!(lens(F(m), 20), 2 * (m as usize - 1));
    }
}

#[test]
fn enumeration_is_closed_and_ordered() {
    for d in three_vertex_diagrams().iter().step_by(7) {
        let cell = d.enumerate_cell(6);
        for a in 0..d.rank() {
            assert!(cell.contains(&Word::letter(a)));
        }
        assert!(cell.iter().all(|w| d.is_rigid(w).unwrap()));
        let expected = all_words(3, 6).into_iter().filter(|w| rigid_by_oracle(d, w)).count();
        assert_eq!(cell.len(), expected);
        let keys: Vec<(usize, Vec<usize>)> = cell.iter().map(|w| (w.len(), w.0.clone())).collect();
        assert!(keys.windows(2).all(|p| p[0] < p[1]));
    }
}

/// Alternating word of length `k` starting at `s` in the pair `{s, t}`.
fn alt(s: usize, t: usize, k: usize) -> Word {
    Word::alternating(s, t, k)
}

/// `t_{s,i}` products computed directly from the two-letter recursion, as coefficient maps over
/// (first letter, length).
fn recursion_product(m: Option<usize>, i: usize, j: usize) -> HashMap<usize, i64> {
    // t_{ab} t_{b,k} = t_{a,k-1} + t_{a,k+1}, truncated at k = m-1.
    // Left factor of length i expressed as a polynomial in left multiplication by t_{ab}.
    fn two(m: Option<usize>, k: usize) -> Vec<(usize, i64)> {
        if k == 1 {
            return vec![(2, 1)];
        }
        let mut v = vec![(k - 1, 1)];
        if m.map_or(true, |m| k < m - 1) {
            v.push((k + 1, 1));
        }
        v
    }
    // Expand t_{x,i} = t_{ab} t_{b,i-1} - t_{x,i-2}, starting from y of length j.
    fn go(m: Option<usize>, i: usize, y: &HashMap<usize, i64>) -> HashMap<usize, i64> {
        match i {
            1 => y.clone(),
            2 => {
                let mut out = HashMap::new();
                for (&k, &c) in y {
                    for (l, e) in two(m, k) {
                        *out.entry(l).or_insert(0) += c * e;
                    }
                }
                out
            }
            _ => {
                let mut out = go(m, 2, &go(m, i - 1, y));
                for (k, c) in go(m, i - 2, y) {
                    *out.entry(k).or_insert(0) -= c;
                }
                out.retain(|_, c| *c != 0);
                out
            }
        }
    }
    go(m, i, &HashMap::from([(j, 1)]))
}

#[test]
fn dihedral_products_follow_the_recursion_and_closed_form() {
    let mut cases: Vec<(Weight, Option<usize>, usize)> = (3..=12).map(|m| (F(m), Some(m as usize), m as usize - 1)).collect();
    cases.push((Inf, None, 8));
    for (w, m, top) in cases {
        for i in 1..=top {
            for j in 1..=top {
                // x ends in the letter y starts with.
                let x = alt(0, 1, i);
                let junction = *x.letters().last().unwrap();
                let y = alt(junction, 1 - junction, j);
                let got = dihedral_mul(&x, &y, w).unwrap();
                let last = *y.letters().last().unwrap();
                let rec = recursion_product(m, i, j);
                let mut expected = JElement::zero();
                for (k, c) in &rec {
                    let word = alt(0, 1, *k);
                    assert_eq!(*word.letters().last().unwrap(), last);
                    expected.add_term(word, BigInt::from(*c));
                }
                assert_eq!(got, expected, "m={w} i={i} j={j}");

                let upper = match m {
                    Some(m) => (i + j - 1).min(2 * m - 1 - i - j),
                    None => i + j - 1,
                };
                let lower = i.abs_diff(j) + 1;
                let closed: BTreeSet<usize> = (lower..=upper).step_by(2).collect();
                let lens: BTreeSet<usize> = got.terms().map(|(w, c)| {
                    assert_eq!(*c, BigInt::from(1));
                    w.len()
                }).collect();
                assert_eq!(lens, closed, "m={w} i={i} j={j}");
            }
        }
    }
}

#[test]
fn worked_examples() {
    let d5 = CoxeterDiagram::dihedral(F(5));
    let aba = JElement::basis(d5.parse_word("aba").unwrap());
    let sq = mul(&aba, &aba, &d5).unwrap();
    let mut expected = JElement::basis(d5.parse_word("a").unwrap());
    expected.add_term(d5.parse_word("aba").unwrap(), 1.into());
    assert_eq!(sq, expected);

    let d3 = CoxeterDiagram::dihedral(F(3));
    let p = mul(&JElement::basis(d3.parse_word("ab").unwrap()), &JElement::basis(d3.parse_word("ba").unwrap()), &d3).unwrap();
    assert_eq!(filtration_degree(&p).unwrap(), 0);

    let d = worked();
    let bcb = Word(vec![1, 2, 1]);
    let bcbc = Word(vec![1, 2, 1, 2]);
    assert_eq!(dihedral_mul(&bcb, &bcbc, F(5)).unwrap(), JElement::basis(Word(vec![1, 2])));
    assert_eq!(unit(&d).len(), 3);
}

#[test]
fn filtration_bound_and_nonnegativity() {
    let d = worked();
    let cell = d.enumerate_cell(5);
    for x in &cell {
        for y in &cell {
            let p = mul(&JElement::basis(x.clone()), &JElement::basis(y.clone()), &d).unwrap();
            if !p.is_zero() {
                assert!(filtration_degree(&p).unwrap() + 2 <= x.len() + y.len());
            }
            assert!(p.terms().all(|(_, c)| c.is_positive()));
        }
    }
}

fn element() -> impl Strategy<Value = JElement> {
    let words = worked().enumerate_cell(5);
    prop::collection::vec((prop::sample::select(words), -3i64..=3), 0..4).prop_map(|terms| {
        let mut x = JElement::zero();
        for (w, c) in terms {
            x.add_term(w, c.into());
        }
        x
    })
}

proptest! {
    #[test]
    fn unit_law(x in element()) {
        let d = worked();
        let e = unit(&d);
        prop_assert_eq!(mul(&e, &x, &d).unwrap(), x.clone());
        prop_assert_eq!(mul(&x, &e, &d).unwrap(), x);
    }

    #[test]
    fn associativity_on_combinations(x in element(), y in element(), z in element()) {
        let d = worked();
        let left = mul(&mul(&x, &y, &d).unwrap(), &z, &d).unwrap();
        let right = mul(&x, &mul(&y, &z, &d).unwrap(), &d).unwrap();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn non_rigid_input_is_rejected() {
    let d = worked();
    let bad = JElement::basis(Word(vec![0, 1, 0]));
    assert!(mul(&bad, &unit(&d), &d).is_err());
}

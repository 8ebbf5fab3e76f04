//! Relations of evaluation ideals, normal forms in the unbraided basis, and the
//! map `phi` onto the J-ring.

mod poly;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use poly::{family_poly, tilde, FamilyKind, Polynomial, PolynomialFamily};

use crate::diagram::{CoxeterDiagram, Word};
use crate::jring::{JElement, JRing};
use crate::quiver::{double_quiver, word_of_path, ArrowId, GDQuiver, Path};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("family index {0} is below 2")]
    IndexTooSmall(usize),
    #[error("polynomial `{0}` is neither even nor odd")]
    MixedParity(String),
    #[error("unknown polynomial family `{0}`")]
    UnknownFamily(String),
    #[error("family fails the uniformity conditions at n = {0}: {1}")]
    NotUniform(usize, String),
    #[error("the quiver is not the double quiver of the diagram")]
    NotDoubleQuiver,
    #[error("a non-integer coefficient cannot be mapped into the J-ring")]
    NonIntegral,
}

/// A rational combination of paths.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Path, BigRational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn path(p: Path) -> Self {
        AlgebraElement::term(p, BigRational::one())
    }

    pub fn term(p: Path, c: BigRational) -> Self {
        let mut x = AlgebraElement::zero();
        x.add_term(p, c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Path) -> BigRational {
        self.terms.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, p: Path, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(p.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &BigRational) {
        for (p, d) in &other.terms {
            self.add_term(p.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &BigRational) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// Concatenation product without reduction.
    pub fn concat(&self, other: &AlgebraElement, q: &GDQuiver) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                if let Some(pr) = q.concat(p, r) {
                    out.add_term(pr, a * b);
                }
            }
        }
        out
    }

    pub fn display<'a>(&'a self, q: &'a GDQuiver) -> impl fmt::Display + 'a {
        DisplayA { x: self, q }
    }
}

struct DisplayA<'a> {
    x: &'a AlgebraElement,
    q: &'a GDQuiver,
}

impl fmt::Display for DisplayA<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.is_zero() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.x.terms().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{}: {}", self.q.format_path(p), c)?;
        }
        Ok(())
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(o, &BigRational::one());
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(o, &-BigRational::one());
        out
    }
}

/// The polynomial whose evaluation at `a` is the relation of `a`:
/// `f_{m-1}` for a non-self-dual arrow, its halving for a self-dual loop.
pub(crate) fn relation_poly(a: ArrowId, fam: &PolynomialFamily, q: &GDQuiver) -> Option<Polynomial> {
    let m = q.weight(a).finite()? as usize;
    let f = fam.poly(m - 1);
    Some(if q.is_self_dual(a) { tilde(&f).expect("family polynomials have a parity") } else { f })
}

/// The path `a d(a) a ...` with `len` arrows, or the stationary path at the source of `a`.
pub(crate) fn alternating_path(q: &GDQuiver, a: ArrowId, len: usize) -> Path {
    if len == 0 {
        return Path::stationary(q.arrow(a).source);
    }
    let d = q.dual(a);
    let arrows: Vec<ArrowId> = (0..len).map(|i| if i % 2 == 0 { a } else { d }).collect();
    q.path(arrows).expect("alternating paths compose")
}

/// The generator of the evaluation ideal attached to arrow `a`.
pub fn relation(a: ArrowId, fam: &PolynomialFamily, q: &GDQuiver) -> AlgebraElement {
    let Some(p) = relation_poly(a, fam, q) else { return AlgebraElement::zero() };
    let mut out = AlgebraElement::zero();
    if q.is_self_dual(a) {
        for (k, c) in p.terms() {
            let path = if k == 0 { Path::stationary(q.arrow(a).source) } else { q.path(vec![a; k]).expect("loop") };
            out.add_term(path, c.clone());
        }
    } else {
        for (k, c) in p.terms() {
            out.add_term(alternating_path(q, a, k), c.clone());
        }
    }
    out
}

/// Which redex to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

struct Rule {
    len: usize,
    /// Replacement for the leading word, as `(length of alternating word, coefficient)`.
    lower: Vec<(usize, BigRational)>,
}

/// Normal-form engine for one quiver and family, with a memo of reduced paths.
pub struct Rewriter<'q> {
    quiver: &'q GDQuiver,
    family: PolynomialFamily,
    strategy: Strategy,
    rules: Vec<Option<Rule>>,
    memo: Mutex<HashMap<Path, Arc<AlgebraElement>>>,
}

impl<'q> Rewriter<'q> {
    pub fn new(quiver: &'q GDQuiver, family: PolynomialFamily) -> Self {
        Rewriter::with_strategy(quiver, family, Strategy::Leftmost)
    }

    pub fn with_strategy(quiver: &'q GDQuiver, family: PolynomialFamily, strategy: Strategy) -> Self {
        let rules = (0..quiver.arrows().len())
            .map(|a| {
                let p = relation_poly(a, &family, quiver)?;
                let len = p.degree().expect("nonzero relation");
                let lead = p.leading();
                let lower = p
                    .terms()
                    .filter(|(k, _)| *k < len)
                    .map(|(k, c)| (k, -c / &lead))
                    .collect();
                Some(Rule { len, lower })
            })
            .collect();
        Rewriter { quiver, family, strategy, rules, memo: Mutex::new(HashMap::new()) }
    }

    pub fn quiver(&self) -> &'q GDQuiver {
        self.quiver
    }

    pub fn family(&self) -> PolynomialFamily {
        self.family
    }

    /// Position and arrow of the redex chosen by the strategy.
    fn find_redex(&self, p: &[ArrowId]) -> Option<(usize, ArrowId)> {
        let q = self.quiver;
        let matches_at = |i: usize| -> bool {
            let Some(rule) = &self.rules[p[i]] else { return false };
            if i + rule.len > p.len() {
                return false;
            }
            (i..i + rule.len - 1).all(|k| p[k + 1] == q.dual(p[k]))
        };
        match self.strategy {
            Strategy::Leftmost => (0..p.len()).find(|&i| matches_at(i)).map(|i| (i, p[i])),
            Strategy::Rightmost => (0..p.len()).rev().find(|&i| matches_at(i)).map(|i| (i, p[i])),
        }
    }

    /// Reduces a single path to a combination of unbraided paths.
    pub fn reduce_path(&self, p: &Path) -> Arc<AlgebraElement> {
        if let Some(hit) = self.memo.lock().expect("memo lock").get(p) {
            return hit.clone();
        }
        let value = match self.find_redex(&p.arrows) {
            None => Arc::new(AlgebraElement::path(p.clone())),
            Some((i, a)) => {
                let rule = self.rules[a].as_ref().expect("redex has a rule");
                let d = self.quiver.dual(a);
                let mut out = AlgebraElement::zero();
                for (k, c) in &rule.lower {
                    let mut arrows = p.arrows[..i].to_vec();
                    arrows.extend((0..*k).map(|j| if j % 2 == 0 { a } else { d }));
                    arrows.extend_from_slice(&p.arrows[i + rule.len..]);
                    let path = if arrows.is_empty() {
                        Path::stationary(p.start)
                    } else {
                        self.quiver.path(arrows).expect("rewriting preserves composability")
                    };
                    out.add_scaled(&self.reduce_path(&path), c);
                }
                Arc::new(out)
            }
        };
        self.memo.lock().expect("memo lock").insert(p.clone(), value.clone());
        value
    }

    pub fn normal_form(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (p, c) in x.terms() {
            out.add_scaled(&self.reduce_path(p), c);
        }
        out
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.normal_form(&x.concat(y, self.quiver))
    }
}

/// Normal form in the unbraided basis (leftmost strategy).
pub fn normal_form(x: &AlgebraElement, fam: &PolynomialFamily, q: &GDQuiver) -> AlgebraElement {
    Rewriter::new(q, *fam).normal_form(x)
}

/// Concatenation product followed by normal form.
pub fn algebra_mul(x: &AlgebraElement, y: &AlgebraElement, fam: &PolynomialFamily, q: &GDQuiver) -> AlgebraElement {
    Rewriter::new(q, *fam).mul(x, y)
}

/// The homomorphism `e_a -> t_a`, `(a -> b) -> t_{ab}` from the path algebra of a
/// double quiver into `J_C`, memoized per path.
pub struct Phi<'d> {
    quiver: GDQuiver,
    ring: JRing<'d>,
    memo: Mutex<HashMap<Path, Arc<JElement>>>,
}

impl<'d> Phi<'d> {
    pub fn new(diagram: &'d CoxeterDiagram) -> Self {
        Phi { quiver: double_quiver(diagram), ring: JRing::new(diagram), memo: Mutex::new(HashMap::new()) }
    }

    /// Checks that `q` is the double quiver of the diagram.
    pub fn for_quiver(q: &GDQuiver, diagram: &'d CoxeterDiagram) -> Result<Self, RewriteError> {
        let phi = Phi::new(diagram);
        if &phi.quiver != q {
            return Err(RewriteError::NotDoubleQuiver);
        }
        Ok(phi)
    }

    pub fn quiver(&self) -> &GDQuiver {
        &self.quiver
    }

    pub fn ring(&self) -> &JRing<'d> {
        &self.ring
    }

    pub fn path(&self, p: &Path) -> Arc<JElement> {
        if let Some(hit) = self.memo.lock().expect("memo lock").get(p) {
            return hit.clone();
        }
        let value = if p.arrows.len() <= 1 {
            Arc::new(JElement::basis(word_of_path(&self.quiver, p)))
        } else {
            let head = self.quiver.path(p.arrows[..p.len() - 1].to_vec()).expect("prefix of a path");
            let last = self.quiver.arrow(*p.arrows.last().expect("nonempty"));
            let t = JElement::basis(Word(vec![last.source, last.target]));
            Arc::new(self.ring.mul_unchecked(&self.path(&head), &t))
        };
        self.memo.lock().expect("memo lock").insert(p.clone(), value.clone());
        value
    }

    pub fn apply(&self, x: &AlgebraElement) -> Result<JElement, RewriteError> {
        let mut out = JElement::zero();
        for (p, c) in x.terms() {
            if !c.is_integer() {
                return Err(RewriteError::NonIntegral);
            }
            let c: BigInt = c.to_integer();
            out.add_scaled(&self.path(p), &c);
        }
        Ok(out)
    }
}

/// `phi(x)` for `x` on the double quiver `q` of `d`.
pub fn phi(x: &AlgebraElement, q: &GDQuiver, d: &CoxeterDiagram) -> Result<JElement, RewriteError> {
    Phi::for_quiver(q, d)?.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Weight;
    use crate::quiver::iota;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn relation_examples() {
        // square a-b (3), b-c (3), c-d (5), d-a (4)
        let d = CoxeterDiagram::new(
            ["a", "b", "c", "d"],
            [
                ("a", "b", Weight::Finite(3)),
                ("b", "c", Weight::Finite(3)),
                ("c", "d", Weight::Finite(5)),
                ("a", "d", Weight::Finite(4)),
            ],
        )
        .unwrap();
        let q = double_quiver(&d);
        let kappa = q.arrow_index("d>a").unwrap();
        let lambda = q.arrow_index("a>d").unwrap();
        let r = relation(kappa, &PolynomialFamily::POWER, &q);
        let mut expect = AlgebraElement::path(q.path(vec![kappa, lambda, kappa]).unwrap());
        expect.add_term(q.path(vec![kappa]).unwrap(), rat(-1));
        assert_eq!(r, expect);
        let zeta = q.arrow_index("c>d").unwrap();
        let eta = q.arrow_index("d>c").unwrap();
        let r = relation(zeta, &PolynomialFamily::POWER, &q);
        let mut expect = AlgebraElement::path(q.path(vec![zeta, eta, zeta, eta]).unwrap());
        expect.add_term(Path::stationary(2), rat(-1));
        assert_eq!(r, expect);
        let qi = double_quiver(&CoxeterDiagram::dihedral(Weight::Infinite));
        assert!(relation(0, &PolynomialFamily::POWER, &qi).is_zero());
    }

    #[test]
    fn normal_form_examples() {
        let q3 = double_quiver(&CoxeterDiagram::dihedral(Weight::Finite(3)));
        let x = AlgebraElement::path(q3.path(vec![0, 1, 0]).unwrap());
        assert_eq!(normal_form(&x, &PolynomialFamily::CHEBYSHEV, &q3), AlgebraElement::path(q3.path(vec![0]).unwrap()));
        let q5 = double_quiver(&CoxeterDiagram::dihedral(Weight::Finite(5)));
        let x = AlgebraElement::path(q5.path(vec![0, 1, 0, 1]).unwrap());
        let mut expect = AlgebraElement::term(q5.path(vec![0, 1]).unwrap(), rat(3));
        expect.add_term(Path::stationary(0), rat(-1));
        assert_eq!(normal_form(&x, &PolynomialFamily::CHEBYSHEV, &q5), expect);
        let u = AlgebraElement::path(q5.path(vec![0, 1, 0]).unwrap());
        assert_eq!(normal_form(&u, &PolynomialFamily::CHEBYSHEV, &q5), u);
    }

    #[test]
    fn algebra_mul_examples() {
        let q = double_quiver(&CoxeterDiagram::dihedral(Weight::Finite(3)));
        let fam = PolynomialFamily::CHEBYSHEV;
        let e_a = AlgebraElement::path(Path::stationary(0));
        let alpha = AlgebraElement::path(q.path(vec![0]).unwrap());
        let beta = AlgebraElement::path(q.path(vec![1]).unwrap());
        assert_eq!(algebra_mul(&e_a, &alpha, &fam, &q), alpha);
        assert!(algebra_mul(&alpha, &alpha, &fam, &q).is_zero());
        assert_eq!(algebra_mul(&alpha, &beta, &fam, &q), e_a);
    }

    #[test]
    fn phi_examples() {
        let d = CoxeterDiagram::dihedral(Weight::Finite(4));
        let q = double_quiver(&d);
        let t = |s: &str| JElement::basis(d.parse_word(s).unwrap());
        assert_eq!(phi(&AlgebraElement::path(Path::stationary(0)), &q, &d).unwrap(), t("a"));
        assert_eq!(phi(&AlgebraElement::path(q.path(vec![0]).unwrap()), &q, &d).unwrap(), t("ab"));
        for a in 0..q.arrows().len() {
            assert!(phi(&relation(a, &PolynomialFamily::CHEBYSHEV, &q), &q, &d).unwrap().is_zero());
        }
        let other = double_quiver(&CoxeterDiagram::dihedral(Weight::Finite(5)));
        assert_eq!(phi(&AlgebraElement::zero(), &other, &d), Err(RewriteError::NotDoubleQuiver));
    }

    #[test]
    fn iota_round_trip() {
        let d = CoxeterDiagram::dihedral(Weight::Finite(5));
        let q = double_quiver(&d);
        let w = d.parse_word("abab").unwrap();
        assert_eq!(word_of_path(&q, &iota(&q, &w).unwrap()), w);
    }
}

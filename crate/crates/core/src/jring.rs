//! The subregular J-ring `J_C` in the basis `t_w`, `w` rigid.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::diagram::{CoxeterDiagram, Gen, Weight, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JRingError {
    #[error("word `{0}` is not rigid")]
    NotRigid(String),
    #[error("the zero element has no filtration degree")]
    ZeroElement,
    #[error("word is not alternating in a single pair of generators")]
    NotAlternating,
    #[error("last letter of the left factor differs from the first letter of the right factor")]
    JunctionMismatch,
}

/// An integer combination of basis elements `t_w`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct JElement {
    terms: BTreeMap<Word, BigInt>,
}

impl JElement {
    pub fn zero() -> Self {
        JElement::default()
    }

    pub fn basis(w: Word) -> Self {
        JElement::term(w, BigInt::one())
    }

    pub fn term(w: Word, c: BigInt) -> Self {
        let mut x = JElement::zero();
        x.add_term(w, c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in length-then-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &JElement, c: &BigInt) {
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &BigInt) -> JElement {
        let mut out = JElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// Longest word appearing, if any.
    pub fn max_len(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn display<'a>(&'a self, d: &'a CoxeterDiagram) -> impl fmt::Display + 'a {
        DisplayJ { x: self, d }
    }
}

struct DisplayJ<'a> {
    x: &'a JElement,
    d: &'a CoxeterDiagram,
}

impl fmt::Display for DisplayJ<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.x.terms().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{}: {}", self.d.format_word(w), c)?;
        }
        Ok(())
    }
}

impl Add for &JElement {
    type Output = JElement;
    fn add(self, rhs: &JElement) -> JElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigInt::one());
        out
    }
}

impl Sub for &JElement {
    type Output = JElement;
    fn sub(self, rhs: &JElement) -> JElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigInt::one());
        out
    }
}

impl Neg for &JElement {
    type Output = JElement;
    fn neg(self) -> JElement {
        self.scale(&-BigInt::one())
    }
}

/// `sum_a t_a`.
pub fn unit(d: &CoxeterDiagram) -> JElement {
    let mut x = JElement::zero();
    for a in 0..d.rank() {
        x.add_term(Word::letter(a), BigInt::one());
    }
    x
}

/// Least `i` with `x` in the `i`-th filtration piece: the maximal word length minus one.
pub fn filtration_degree(x: &JElement) -> Result<usize, JRingError> {
    x.max_len().map(|l| l - 1).ok_or(JRingError::ZeroElement)
}

/// Product in `J_C`; both factors must be supported on rigid words.
pub fn mul(x: &JElement, y: &JElement, d: &CoxeterDiagram) -> Result<JElement, JRingError> {
    JRing::new(d).mul(x, y)
}

/// A multiplication context for one diagram, memoizing basis products.
pub struct JRing<'d> {
    diagram: &'d CoxeterDiagram,
    memo: Mutex<HashMap<(Word, Word), Arc<JElement>>>,
}

impl<'d> JRing<'d> {
    pub fn new(diagram: &'d CoxeterDiagram) -> Self {
        JRing { diagram, memo: Mutex::new(HashMap::new()) }
    }

    pub fn diagram(&self) -> &'d CoxeterDiagram {
        self.diagram
    }

    fn check(&self, x: &JElement) -> Result<(), JRingError> {
        for w in x.terms.keys() {
            if !w.0.iter().all(|&g| g < self.diagram.rank()) || !self.diagram.rigid(&w.0) {
                return Err(JRingError::NotRigid(format!("{:?}", w.0)));
            }
        }
        Ok(())
    }

    pub fn mul(&self, x: &JElement, y: &JElement) -> Result<JElement, JRingError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &JElement, y: &JElement) -> JElement {
        let mut out = JElement::zero();
        for (u, a) in &x.terms {
            for (v, b) in &y.terms {
                if u.last() != v.first() {
                    continue;
                }
                let p = self.mul_basis(u, v);
                out.add_scaled(&p, &(a * b));
            }
        }
        out
    }

    /// `t_x t_y` for rigid words `x`, `y`.
    pub fn mul_basis(&self, x: &Word, y: &Word) -> Arc<JElement> {
        let key = (x.clone(), y.clone());
        if let Some(hit) = self.memo.lock().expect("memo lock").get(&key) {
            return hit.clone();
        }
        let value = Arc::new(self.compute_basis(x, y));
        self.memo.lock().expect("memo lock").insert(key, value.clone());
        value
    }

    fn compute_basis(&self, x: &Word, y: &Word) -> JElement {
        let (n, k) = (x.len(), y.len());
        if x.last() != y.first() {
            return JElement::zero();
        }
        if n == 1 {
            return JElement::basis(y.clone());
        }
        if k == 1 {
            return JElement::basis(x.clone());
        }
        let (a, b) = (x.0[n - 1], x.0[n - 2]);
        if y.0[1] != b {
            return JElement::basis(x.splice(y));
        }
        // maximal alternating suffix of x and prefix of y in {a, b}
        let mut start = n - 2;
        while start > 0 && x.0[start - 1] == x.0[start + 1] {
            start -= 1;
        }
        let mut end = 1;
        while end + 1 < k && y.0[end + 1] == y.0[end - 1] {
            end += 1;
        }
        let dx = Word(x.0[start..].to_vec());
        let dy = Word(y.0[..=end].to_vec());
        let m = self.diagram.weight(a, b).expect("rigid words only join adjacent letters");
        let middle = dihedral_product(&dx, &dy, m);
        let u = Word(x.0[..=start].to_vec());
        let rest = Word(y.0[end..].to_vec());
        let mut out = JElement::zero();
        for (z, c) in &middle.terms {
            let left = if u.len() > 1 { self.mul_basis(&u, z) } else { Arc::new(JElement::basis(z.clone())) };
            for (w, e) in &left.terms {
                let coeff = c * e;
                if rest.len() > 1 {
                    out.add_scaled(&self.mul_basis(w, &rest), &coeff);
                } else {
                    out.add_term(w.clone(), coeff);
                }
            }
        }
        out
    }
}

/// Product of alternating words in one pair `{a, b}` under weight `m`.
pub fn dihedral_mul(x: &Word, y: &Word, m: Weight) -> Result<JElement, JRingError> {
    if x.is_empty() || y.is_empty() {
        return Err(JRingError::NotAlternating);
    }
    if x.last() != y.first() {
        return Err(JRingError::JunctionMismatch);
    }
    let pair_of = |w: &Word| -> Result<Option<(Gen, Gen)>, JRingError> {
        if w.len() == 1 {
            return Ok(None);
        }
        let (p, q) = (w.0[0], w.0[1]);
        if p == q || w.0.iter().enumerate().any(|(i, &g)| g != if i % 2 == 0 { p } else { q }) {
            return Err(JRingError::NotAlternating);
        }
        if let Some(bound) = m.run_bound() {
            if w.len() >= bound {
                return Err(JRingError::NotAlternating);
            }
        }
        Ok(Some((p.min(q), p.max(q))))
    };
    if let (Some(p), Some(q)) = (pair_of(x)?, pair_of(y)?) {
        if p != q {
            return Err(JRingError::NotAlternating);
        }
    }
    Ok(dihedral_product(x, y, m))
}

fn dihedral_product(x: &Word, y: &Word, m: Weight) -> JElement {
    let s = x.0[0];
    let other = if x.len() > 1 {
        x.0[1]
    } else if y.len() > 1 {
        y.0[1]
    } else {
        return JElement::basis(x.clone());
    };
    let mut out = JElement::zero();
    for (k, c) in dihedral_table(m, x.len(), y.len()).iter() {
        out.add_term(Word::alternating(s, other, *k), c.clone());
    }
    out
}

type Table = Arc<Vec<(usize, BigInt)>>;

/// `t_{s,i} t_{r,j} = sum_k c_k t_{s,k}`, where `r` is the last letter of `t_{s,i}`.
pub(crate) fn dihedral_table(m: Weight, i: usize, j: usize) -> Table {
    static MEMO: OnceLock<Mutex<HashMap<(Weight, usize, usize), Table>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = memo.lock().expect("memo lock").get(&(m, i, j)) {
        return hit.clone();
    }
    let value: Table = Arc::new(dihedral_uncached(m, i, j));
    memo.lock().expect("memo lock").insert((m, i, j), value.clone());
    value
}

fn dihedral_uncached(m: Weight, i: usize, j: usize) -> Vec<(usize, BigInt)> {
    if i == 1 {
        return vec![(j, BigInt::one())];
    }
    if j == 1 {
        return vec![(i, BigInt::one())];
    }
    if i == 2 {
        let top = m.run_bound().map(|b| b - 1);
        return if top == Some(j) {
            vec![(j - 1, BigInt::one())]
        } else {
            vec![(j - 1, BigInt::one()), (j + 1, BigInt::one())]
        };
    }
    // t_{s,i} = t_{s,2} t_{q,i-1} - t_{s,i-2}
    let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (k, c) in dihedral_table(m, i - 1, j).iter() {
        for (l, e) in dihedral_table(m, 2, *k).iter() {
            *acc.entry(*l).or_default() += c * e;
        }
    }
    for (k, c) in dihedral_table(m, i - 2, j).iter() {
        *acc.entry(*k).or_default() -= c;
    }
    debug_assert!(acc.values().all(|c| !c.is_negative()));
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

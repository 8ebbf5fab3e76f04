//! Exact fields: the rationals and simple extensions `Q[x]/(g)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RepError;
use crate::rewrite::Polynomial;

/// The rationals, or `Q(theta)` with `theta` a root of a monic irreducible modulus.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Field {
    modulus: Option<Arc<Polynomial>>,
}

impl Field {
    pub fn rationals() -> Self {
        Field { modulus: None }
    }

    /// `Q[x]/(modulus)`; the modulus must be monic, of degree at least 2, and irreducible.
    pub fn extension(modulus: Polynomial) -> Result<Self, RepError> {
        let bad = |why: &str| Err(RepError::BadModulus(modulus.to_string(), why.to_string()));
        match modulus.degree() {
            None | Some(0) => return bad("constant"),
            Some(1) => return Ok(Field::rationals()),
            _ => {}
        }
        if !modulus.is_monic() {
            return bad("not monic");
        }
        match modulus.is_irreducible() {
            Some(true) => Ok(Field { modulus: Some(Arc::new(modulus)) }),
            Some(false) => bad("reducible over the rationals"),
            None => bad("irreducibility check too large"),
        }
    }

    /// Parses a modulus such as `x^2+x+1`; `q` or the empty string means the rationals.
    pub fn parse(s: &str) -> Result<Self, RepError> {
        let s = s.trim();
        if s.is_empty() || s == "q" || s == "Q" || s == "rationals" {
            return Ok(Field::rationals());
        }
        Field::extension(parse_poly(s)?)
    }

    pub fn modulus(&self) -> Option<&Polynomial> {
        self.modulus.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.modulus.as_ref().and_then(|m| m.degree()).unwrap_or(1)
    }

    pub fn zero(&self) -> Scalar {
        Scalar { c: Vec::new(), field: self.clone() }
    }

    pub fn one(&self) -> Scalar {
        self.rational(BigRational::one())
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(&self, r: BigRational) -> Scalar {
        Scalar::new(vec![r], self.clone())
    }

    /// The class of `x` in an extension; `None` for the rationals.
    pub fn generator(&self) -> Option<Scalar> {
        self.modulus.as_ref()?;
        Some(self.element(vec![BigRational::zero(), BigRational::one()]))
    }

    /// Element with residue coefficients `c[0] + c[1] theta + ...`.
    pub fn element(&self, c: Vec<BigRational>) -> Scalar {
        let mut s = Scalar::new(c, self.clone());
        s.reduce();
        s
    }

    /// Distinct roots of `h` found in this field: rational roots, then a bounded
    /// search over small integer residue vectors.
    pub fn roots(&self, h: &Polynomial) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = h.rational_roots().into_iter().map(|r| self.rational(r)).collect();
        let deg = h.degree().unwrap_or(0);
        if self.modulus.is_none() || out.len() >= deg {
            return out;
        }
        let n = self.degree();
        let range: Vec<i64> = (-3..=3).collect();
        let mut idx = vec![0usize; n];
        loop {
            let c: Vec<BigRational> = idx.iter().map(|&i| BigRational::from_integer(BigInt::from(range[i]))).collect();
            let z = self.element(c);
            if !out.contains(&z) && self.eval(h, &z).is_zero() {
                out.push(z);
                if out.len() >= deg {
                    break;
                }
            }
            let mut k = 0;
            while k < n {
                idx[k] += 1;
                if idx[k] < range.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        out
    }

    pub fn eval(&self, h: &Polynomial, z: &Scalar) -> Scalar {
        h.coeffs().iter().rev().fold(self.zero(), |acc, c| &(&acc * z) + &self.rational(c.clone()))
    }

    /// Parses `p/q`, an integer, or a residue list `[c0, c1, ...]` of rational strings.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, RepError> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let c = inner
                .split(',')
                .filter(|p| !p.trim().is_empty())
                .map(|p| parse_rational(p.trim().trim_matches('"')))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(self.element(c));
        }
        Ok(self.rational(parse_rational(s)?))
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, RepError> {
    s.trim().parse::<BigRational>().map_err(|_| RepError::Parse(format!("bad rational `{s}`")))
}

/// Parses polynomials written like `x^3 - 2x + 1/2`.
pub fn parse_poly(s: &str) -> Result<Polynomial, RepError> {
    let err = || RepError::Parse(format!("bad polynomial `{s}`"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err());
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut coeffs: Vec<BigRational> = Vec::new();
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-BigRational::one(), b),
            None => (BigRational::one(), t.strip_prefix('+').unwrap_or(&t)),
        };
        let (c, k) = match body.find('x') {
            None => (parse_rational(body).map_err(|_| err())?, 0),
            Some(pos) => {
                let head = body[..pos].trim_end_matches('*');
                let c = if head.is_empty() { BigRational::one() } else { parse_rational(head).map_err(|_| err())? };
                let rest = &body[pos + 1..];
                let k = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').and_then(|e| e.parse::<usize>().ok()).ok_or_else(err)?
                };
                (c, k)
            }
        };
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigRational::zero());
        }
        coeffs[k] += sign * c;
    }
    Ok(Polynomial::new(coeffs))
}

/// An element of a [`Field`], stored as a reduced residue vector.
#[derive(Clone, Debug)]
pub struct Scalar {
    c: Vec<BigRational>,
    field: Field,
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}

impl Eq for Scalar {}

impl Scalar {
    fn new(mut c: Vec<BigRational>, field: Field) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Scalar { c, field }
    }

    fn reduce(&mut self) {
        if let Some(m) = &self.field.modulus {
            if self.c.len() > m.coeffs().len() - 1 {
                let r = Polynomial::new(std::mem::take(&mut self.c)).div_rem(m).1;
                self.c = r.coeffs().to_vec();
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Residue coefficients, lowest first (empty for zero).
    pub fn residues(&self) -> &[BigRational] {
        &self.c
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.c.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    fn join(&self, o: &Scalar) -> Field {
        if self.field.modulus.is_some() {
            self.field.clone()
        } else {
            o.field.clone()
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match &self.field.modulus {
            None => Some(Scalar::new(vec![BigRational::one() / &self.c[0]], self.field.clone())),
            Some(m) => {
                let p = Polynomial::new(self.c.clone()).inverse_mod(m)?;
                Some(Scalar::new(p.coeffs().to_vec(), self.field.clone()))
            }
        }
    }

    /// Serialized form: `p/q` for rationals, a residue list otherwise.
    pub fn to_text(&self) -> String {
        match self.as_rational() {
            Some(r) => r.to_string(),
            None => format!("[{}]", self.c.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let p = Polynomial::new(self.c.clone()).to_string().replace('x', "t");
        write!(f, "({p})")
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => BigRational::zero(),
            })
            .collect();
        Scalar::new(c, self.join(o))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { c: self.c.iter().map(|x| -x).collect(), field: self.field.clone() }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::new(Vec::new(), self.join(o));
        }
        if self.c.len() == 1 && o.c.len() == 1 {
            return Scalar::new(vec![&self.c[0] * &o.c[0]], self.join(o));
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        let mut s = Scalar::new(c, self.join(o));
        s.reduce();
        s
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

//! Dense univariate polynomials over the rationals and the shipped uniform families.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::RewriteError;

/// A polynomial `sum c_i x^i`; `coeffs[i]` is `c_i`, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// From integer coefficients, lowest degree first.
    pub fn from_ints(c: &[i64]) -> Self {
        Polynomial::new(c.iter().map(|&n| q(n)).collect())
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Polynomial::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Polynomial::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        Polynomial::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn is_even(&self) -> bool {
        self.terms().all(|(k, _)| k % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms().all(|(k, _)| k % 2 == 1)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * q(k as i64)).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().expect("nonzero");
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().expect("nonempty") / &lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            quot[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Polynomial::new(quot), Polynomial::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Inverse of `self` modulo `m`, when they are coprime.
    pub fn inverse_mod(&self, m: &Polynomial) -> Option<Polynomial> {
        let (mut r0, mut r1) = (m.clone(), self.div_rem(m).1);
        let (mut s0, mut s1) = (Polynomial::zero(), Polynomial::one());
        while !r1.is_zero() {
            let (quot, r) = r0.div_rem(&r1);
            let s = &s0 - &(&quot * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = r0.leading();
        Some(s0.scale(&(BigRational::one() / c)).div_rem(m).1)
    }

    /// Integer polynomial with the same roots and coprime coefficients.
    pub fn primitive(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Rational roots, by the rational root theorem.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let Some(deg) = self.degree() else { return Vec::new() };
        if deg == 0 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut p = self.clone();
        if p.coeff(0).is_zero() {
            roots.push(BigRational::zero());
            let shift = p.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
            p = Polynomial::new(p.coeffs[shift..].to_vec());
        }
        let ints = p.primitive();
        let (c0, cn) = (ints[0].abs(), ints.last().expect("nonzero").abs());
        for num in divisors(&c0) {
            for den in divisors(&cn) {
                for sign in [1, -1] {
                    let r = BigRational::new(BigInt::from(sign) * &num, den.clone());
                    if p.eval(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Irreducibility over the rationals (Kronecker's method); `None` when the
    /// search would be too large.
    pub fn is_irreducible(&self) -> Option<bool> {
        let deg = self.degree()?;
        if deg == 0 {
            return Some(false);
        }
        if deg == 1 {
            return Some(true);
        }
        if !self.rational_roots().is_empty() {
            return Some(false);
        }
        if deg <= 3 {
            return Some(true);
        }
        let f = Polynomial::new(self.primitive().into_iter().map(BigRational::from_integer).collect());
        for d in 2..=deg / 2 {
            match kronecker_factor(&f, d)? {
                true => return Some(false),
                false => continue,
            }
        }
        Some(true)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let n = n.to_u64().unwrap_or(u64::MAX);
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n && i < 1_000_000 {
        if n % i == 0 {
            out.push(BigInt::from(i));
            if i * i != n {
                out.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    out
}

/// Searches for a factor of degree exactly `d` by interpolating divisor choices.
fn kronecker_factor(f: &Polynomial, d: usize) -> Option<bool> {
    let mut points = Vec::new();
    let mut t: i64 = 0;
    while points.len() <= d {
        let x = q(t);
        let v = f.eval(&x);
        if !v.is_zero() {
            let ds = divisors(&v.to_integer().abs());
            let mut with_sign: Vec<BigInt> = ds.iter().cloned().collect();
            with_sign.extend(ds.iter().map(|x| -x));
            points.push((x, with_sign));
        }
        t = if t <= 0 { 1 - t } else { -t };
    }
    let total: usize = points.iter().map(|(_, ds)| ds.len()).product();
    if total > 200_000 {
        return None;
    }
    let mut idx = vec![0usize; points.len()];
    loop {
        let values: Vec<(BigRational, BigRational)> = points
            .iter()
            .zip(&idx)
            .map(|((x, ds), &i)| (x.clone(), BigRational::from_integer(ds[i].clone())))
            .collect();
        let g = interpolate(&values);
        if g.degree() == Some(d) && f.div_rem(&g).1.is_zero() {
            return Some(true);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Some(false);
            }
            idx[k] += 1;
            if idx[k] < points[k].1.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn interpolate(values: &[(BigRational, BigRational)]) -> Polynomial {
    let mut out = Polynomial::zero();
    for (i, (xi, yi)) in values.iter().enumerate() {
        let mut basis = Polynomial::one();
        let mut denom = BigRational::one();
        for (j, (xj, _)) in values.iter().enumerate() {
            if i != j {
                basis = &basis * &Polynomial::new(vec![-xj.clone(), BigRational::one()]);
                denom *= xi - xj;
            }
        }
        out = &out + &basis.scale(&(yi / denom));
    }
    out
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Polynomial::new(v)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !a.is_one() || k == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// The two shipped uniform families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `u_0 = 1`, `u_1 = x`, `u_n = x u_{n-1} - u_{n-2}`.
    Chebyshev,
    /// `x^n - 1` for even `n`, `x^n - x` for odd `n`.
    Power,
}

impl std::str::FromStr for FamilyKind {
    type Err = RewriteError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "chebyshev" => Ok(FamilyKind::Chebyshev),
            "power" => Ok(FamilyKind::Power),
            other => Err(RewriteError::UnknownFamily(other.to_string())),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Chebyshev => "chebyshev",
            FamilyKind::Power => "power",
        })
    }
}

/// A uniform family `n -> f_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolynomialFamily {
    pub kind: FamilyKind,
}

impl PolynomialFamily {
    pub const CHEBYSHEV: PolynomialFamily = PolynomialFamily { kind: FamilyKind::Chebyshev };
    pub const POWER: PolynomialFamily = PolynomialFamily { kind: FamilyKind::Power };

    pub fn new(kind: FamilyKind) -> Self {
        PolynomialFamily { kind }
    }

    /// `f_n` for any `n >= 0`.
    pub(crate) fn poly(&self, n: usize) -> Polynomial {
        match self.kind {
            FamilyKind::Chebyshev => {
                let (mut a, mut b) = (Polynomial::one(), Polynomial::x());
                if n == 0 {
                    return a;
                }
                for _ in 1..n {
                    let c = &(&Polynomial::x() * &b) - &a;
                    a = b;
                    b = c;
                }
                b
            }
            FamilyKind::Power => {
                let low = if n % 2 == 0 { 0 } else { 1 };
                &Polynomial::monomial(BigRational::one(), n) - &Polynomial::monomial(BigRational::one(), low)
            }
        }
    }

    /// `f_n` for `n >= 2`.
    pub fn get(&self, n: usize) -> Result<Polynomial, RewriteError> {
        family_poly(self.kind, n)
    }

    /// Checks the uniform-family conditions at `n`: degree, parity, monic, and
    /// the halved polynomial squarefree with nonzero constant term.
    pub fn validate(&self, n: usize) -> Result<(), RewriteError> {
        let f = self.get(n)?;
        let fail = |why: &str| Err(RewriteError::NotUniform(n, why.to_string()));
        if f.degree() != Some(n) {
            return fail("wrong degree");
        }
        if (n % 2 == 0 && !f.is_even()) || (n % 2 == 1 && !f.is_odd()) {
            return fail("wrong parity");
        }
        if !f.is_monic() {
            return fail("not monic");
        }
        let t = tilde(&f)?;
        if t.coeff(0).is_zero() {
            return fail("zero is a root of the halved polynomial");
        }
        if !t.is_squarefree() {
            return fail("halved polynomial has a repeated root");
        }
        Ok(())
    }
}

/// The `n`-th polynomial of a shipped family.
pub fn family_poly(kind: FamilyKind, n: usize) -> Result<Polynomial, RewriteError> {
    if n < 2 {
        return Err(RewriteError::IndexTooSmall(n));
    }
    Ok(PolynomialFamily::new(kind).poly(n))
}

/// Halves the exponents of an even polynomial; an odd polynomial is divided by `x` first.
pub fn tilde(f: &Polynomial) -> Result<Polynomial, RewriteError> {
    if f.is_even() {
        Ok(Polynomial::new(f.coeffs.iter().step_by(2).cloned().collect()))
    } else if f.is_odd() {
        Ok(Polynomial::new(f.coeffs.iter().skip(1).step_by(2).cloned().collect()))
    } else {
        Err(RewriteError::MixedParity(f.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_arith() {
        let f = Polynomial::from_ints(&[1, 0, -3, 0, 1]);
        assert_eq!(f.to_string(), "x^4 - 3x^2 + 1");
        assert_eq!(Polynomial::from_ints(&[-1, 2]).to_string(), "2x - 1");
        let (quot, r) = f.div_rem(&Polynomial::from_ints(&[-1, 0, 1]));
        assert_eq!(&(&quot * &Polynomial::from_ints(&[-1, 0, 1])) + &r, f);
    }

    #[test]
    fn tilde_examples() {
        assert_eq!(tilde(&Polynomial::from_ints(&[0, -2, 0, 1])).unwrap(), Polynomial::from_ints(&[-2, 1]));
        assert_eq!(tilde(&Polynomial::from_ints(&[-1, 0, 0, 0, 1])).unwrap(), Polynomial::from_ints(&[-1, 0, 1]));
        assert_eq!(tilde(&Polynomial::x()).unwrap(), Polynomial::one());
        assert!(tilde(&Polynomial::from_ints(&[1, 1])).is_err());
    }

    #[test]
    fn family_examples() {
        assert_eq!(family_poly(FamilyKind::Chebyshev, 2).unwrap(), Polynomial::from_ints(&[-1, 0, 1]));
        assert_eq!(family_poly(FamilyKind::Chebyshev, 3).unwrap(), Polynomial::from_ints(&[0, -2, 0, 1]));
        assert_eq!(family_poly(FamilyKind::Power, 5).unwrap(), Polynomial::from_ints(&[0, -1, 0, 0, 0, 1]));
        assert!(family_poly(FamilyKind::Power, 1).is_err());
    }

    #[test]
    fn roots_and_irreducibility() {
        let f = Polynomial::from_ints(&[-1, 0, 0, 1]);
        assert_eq!(f.rational_roots(), vec![BigRational::one()]);
        assert_eq!(Polynomial::from_ints(&[1, 1, 1]).is_irreducible(), Some(true));
        assert_eq!(Polynomial::from_ints(&[-2, 0, 1]).is_irreducible(), Some(true));
        assert_eq!(f.is_irreducible(), Some(false));
        // (x^2 + 1)(x^2 + 2) has no rational root but factors
        assert_eq!(Polynomial::from_ints(&[2, 0, 3, 0, 1]).is_irreducible(), Some(false));
        assert_eq!(Polynomial::from_ints(&[1, 1, 1, 1, 1]).is_irreducible(), Some(true));
    }

    #[test]
    fn inverse_modulo() {
        let m = Polynomial::from_ints(&[1, 1, 1]);
        let a = Polynomial::from_ints(&[2, 3]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!((&a * &inv).div_rem(&m).1, Polynomial::one());
    }
}

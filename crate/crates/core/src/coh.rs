//! The cohomology ring `Q[H]/(H^{n+1})` of projective space and Laurent
//! polynomials in ℏ with coefficients in it.

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A class in `H*(P^n, Q)`. Entry `k` is the coefficient of `H^k`; there is no
/// slot for `H^{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohClass {
    coeffs: Vec<Rational>,
}

impl CohClass {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "ambient dimension must be at least 1");
        CohClass {
            coeffs: vec![Rational::zero(); n + 1],
        }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, Rational::one())
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = c;
        z
    }

    /// `c·H^k`; zero when `k > n`.
    pub fn monomial(n: usize, k: usize, c: Rational) -> Self {
        let mut z = Self::zero(n);
        if k <= n {
            z.coeffs[k] = c;
        }
        z
    }

    /// Builds a class from its coefficients, padding with zeros up to `H^n` and
    /// dropping anything beyond.
    pub fn from_coeffs(n: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut z = Self::zero(n);
        for (k, c) in coeffs.into_iter().enumerate().take(n + 1) {
            z.coeffs[k] = c;
        }
        z
    }

    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch {
                left: self.ambient_dim(),
                right: other.ambient_dim(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(CohClass {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// Cup product; products landing in degree > n vanish.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.ambient_dim();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CohClass {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Evaluation on the fundamental class: the coefficient of `H^n`.
    pub fn integrate(&self) -> Rational {
        self.coeffs[self.ambient_dim()].clone()
    }

    /// Lowest power of `H` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

pub fn coh_mul(a: &CohClass, b: &CohClass) -> Result<CohClass> {
    a.try_mul(b)
}

pub fn coh_integrate(a: &CohClass) -> Rational {
    a.integrate()
}

/// Top Chern class of `⊕ O(l_i)` on `P^n`, i.e. `(∏ l_i)·H^r`.
///
/// The flag is `true` when the rank exceeds `n` and the class vanishes for
/// degree reasons.
pub fn ctop_split(degrees: &[u32], n: usize) -> (CohClass, bool) {
    let r = degrees.len();
    let prod: i64 = degrees.iter().map(|&l| l as i64).product();
    if r > n {
        (CohClass::zero(n), true)
    } else {
        (CohClass::monomial(n, r, int(prod)), false)
    }
}

impl Add for &CohClass {
    type Output = CohClass;
    fn add(self, rhs: &CohClass) -> CohClass {
        self.try_add(rhs).expect("ambient dimension mismatch")
    }
}

impl Sub for &CohClass {
    type Output = CohClass;
    fn sub(self, rhs: &CohClass) -> CohClass {
        self + &(-rhs)
    }
}

impl Neg for &CohClass {
    type Output = CohClass;
    fn neg(self) -> CohClass {
        CohClass {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &CohClass {
    type Output = CohClass;
    fn mul(self, rhs: &CohClass) -> CohClass {
        self.try_mul(rhs).expect("ambient dimension mismatch")
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})H")?,
                _ => write!(f, "({c})H^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A finite Laurent polynomial in ℏ with [`CohClass`] coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HLaurent {
    n: usize,
    terms: BTreeMap<i64, CohClass>,
}

impl HLaurent {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "ambient dimension must be at least 1");
        HLaurent {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::from_class(CohClass::one(n))
    }

    pub fn from_class(c: CohClass) -> Self {
        Self::term(0, c)
    }

    /// `c·ℏ^k`.
    pub fn term(k: i64, c: CohClass) -> Self {
        let mut h = Self::zero(c.ambient_dim());
        h.insert(k, c);
        h
    }

    /// `coef·H^p·ℏ^k`.
    pub fn monomial(n: usize, k: i64, p: usize, coef: Rational) -> Self {
        Self::term(k, CohClass::monomial(n, p, coef))
    }

    /// The linear factor `c·H + m·ℏ`.
    pub fn linear(n: usize, c: i64, m: i64) -> Self {
        let mut h = Self::monomial(n, 0, 1, int(c));
        h.insert(1, CohClass::scalar(n, int(m)));
        h
    }

    fn insert(&mut self, k: i64, c: CohClass) {
        debug_assert_eq!(c.ambient_dim(), self.n);
        if c.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, c);
        }
    }

    fn accumulate(&mut self, k: i64, c: &CohClass) {
        let sum = match self.terms.get(&k) {
            Some(old) => old + c,
            None => c.clone(),
        };
        self.insert(k, sum);
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &CohClass)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Coefficient of `ℏ^k` (zero class if absent).
    pub fn coeff(&self, k: i64) -> CohClass {
        self.terms.get(&k).cloned().unwrap_or_else(|| CohClass::zero(self.n))
    }

    /// Rational coefficient of `H^p ℏ^k`.
    pub fn entry(&self, k: i64, p: usize) -> Rational {
        self.terms.get(&k).map(|c| c.coeff(p)).unwrap_or_else(Rational::zero)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(*k, c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.n);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                out.accumulate(i + j, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (k, a) in &self.terms {
            out.insert(*k, a.scale(c));
        }
        out
    }

    pub fn mul_class(&self, c: &CohClass) -> Result<Self> {
        self.try_mul(&Self::from_class(c.clone()))
    }

    /// Pointwise map over coefficients, possibly into a different ambient space.
    pub fn map_classes(&self, m: usize, f: impl Fn(&CohClass) -> CohClass) -> Self {
        let mut out = Self::zero(m);
        for (k, c) in &self.terms {
            out.accumulate(*k, &f(c));
        }
        out
    }

    /// Fails if any strictly positive power of ℏ survives.
    pub fn assert_no_positive_hbar(&self) -> Result<()> {
        match self.max_exponent() {
            Some(k) if k > 0 => Err(Error::ContractViolation(format!(
                "positive power hbar^{k} present"
            ))),
            _ => Ok(()),
        }
    }
}

pub fn hl_mul(a: &HLaurent, b: &HLaurent) -> Result<HLaurent> {
    a.try_mul(b)
}

/// Exact inverse of `c·H + m·ℏ` in `Q[H]/(H^{n+1})[ℏ, ℏ^{-1}]`:
/// `Σ_{j=0..n} (−c)^j H^j / (m^{j+1} ℏ^{j+1})`.
pub fn hl_linear_inverse(c: i64, m: i64, n: usize) -> Result<HLaurent> {
    if m == 0 {
        return Err(Error::DivisionByZero("linear factor has no hbar term"));
    }
    let (c, m) = (int(c), int(m));
    let mut out = HLaurent::zero(n);
    let mut coef = m.recip();
    for j in 0..=n {
        out.insert(-(j as i64) - 1, CohClass::monomial(n, j, coef.clone()));
        coef = -(&coef * &c) / &m;
    }
    Ok(out)
}

impl Add for &HLaurent {
    type Output = HLaurent;
    fn add(self, rhs: &HLaurent) -> HLaurent {
        self.try_add(rhs).expect("ambient dimension mismatch")
    }
}

impl Sub for &HLaurent {
    type Output = HLaurent;
    fn sub(self, rhs: &HLaurent) -> HLaurent {
        self + &(-rhs)
    }
}

impl Neg for &HLaurent {
    type Output = HLaurent;
    fn neg(self) -> HLaurent {
        self.scale(&-Rational::one())
    }
}

impl Mul for &HLaurent {
    type Output = HLaurent;
    fn mul(self, rhs: &HLaurent) -> HLaurent {
        self.try_mul(rhs).expect("ambient dimension mismatch")
    }
}

impl fmt::Display for HLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| format!("[{c}]hbar^{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

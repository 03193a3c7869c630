//! Schubert calculus on the Grassmannian `G(2, m)` of lines in `P^{m−1}`.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A class `Σ c_{a,b} σ_{a,b}` with `m−2 ≥ a ≥ b ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertElt {
    m: usize,
    terms: BTreeMap<(usize, usize), Rational>,
}

impl SchubertElt {
    pub fn zero(m: usize) -> Self {
        assert!(m >= 3, "G(2, m) needs m >= 3");
        SchubertElt {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(m: usize) -> Self {
        Self::basis(m, 0, 0)
    }

    /// `σ_{a,b}`, or zero outside the box.
    pub fn basis(m: usize, a: usize, b: usize) -> Self {
        let mut s = Self::zero(m);
        s.add_term(a, b, Rational::one());
        s
    }

    /// The special class `σ_k = σ_{k,0}`.
    pub fn special(m: usize, k: usize) -> Self {
        Self::basis(m, k, 0)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn box_size(&self) -> usize {
        self.m - 2
    }

    fn add_term(&mut self, a: usize, b: usize, c: Rational) {
        if a > self.box_size() || b > a || c.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn coeff(&self, a: usize, b: usize) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.m);
        for (&(a, b), v) in &self.terms {
            out.add_term(a, b, v * c);
        }
        out
    }
}

impl fmt::Display for SchubertElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| format!("{c}*s[{a},{b}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Pieri rule: `σ_{a,b}·σ_k = Σ σ_{c,d}` over `c + d = a + b + k`,
/// `m−2 ≥ c ≥ a ≥ d ≥ b`.
pub fn pieri_mul(x: &SchubertElt, k: usize) -> SchubertElt {
    let top = x.box_size();
    let mut out = SchubertElt::zero(x.m);
    if k > top {
        return out;
    }
    for (&(a, b), coef) in &x.terms {
        let total = a + b + k;
        for d in b..=a {
            let Some(c) = total.checked_sub(d) else { continue };
            if c >= a && c <= top {
                out.add_term(c, d, coef.clone());
            }
        }
    }
    out
}

/// Product in `H*(G(2,m))`, using Giambelli `σ_{p,q} = σ_p σ_q − σ_{p+1} σ_{q−1}`.
pub fn schubert_mul(x: &SchubertElt, y: &SchubertElt) -> SchubertElt {
    assert_eq!(x.m, y.m, "Grassmannians differ");
    let mut out = SchubertElt::zero(x.m);
    for (&(p, q), c) in &y.terms {
        let mut term = pieri_mul(&pieri_mul(x, p), q);
        if q > 0 {
            let correction = pieri_mul(&pieri_mul(x, p + 1), q - 1);
            term = term.add(&correction.scale(&-Rational::one()));
        }
        out = out.add(&term.scale(c));
    }
    out
}

/// `∫_{G(2,m)}`: the coefficient of the point class `σ_{m−2,m−2}`.
pub fn grass_integrate(x: &SchubertElt) -> Rational {
    let top = x.box_size();
    x.coeff(top, top)
}

/// `c_{l+1}(Sym^l S*)` where `S*` has Chern roots `x₁, x₂`, so that
/// `e₁ = σ₁` and `e₂ = σ_{1,1}`: the product `∏_{k=0..l} (k x₁ + (l−k) x₂)`
/// rewritten in elementary symmetric functions.
pub fn chern_top_sym(l: usize, m: usize) -> SchubertElt {
    let elementary = symmetric_to_elementary(&top_chern_roots_product(l));
    let e1 = SchubertElt::special(m, 1);
    let e2 = SchubertElt::basis(m, 1, 1);
    let mut out = SchubertElt::zero(m);
    for ((i, j), c) in elementary {
        let mut monomial = SchubertElt::one(m);
        for _ in 0..i {
            monomial = schubert_mul(&monomial, &e1);
        }
        for _ in 0..j {
            monomial = schubert_mul(&monomial, &e2);
        }
        out = out.add(&monomial.scale(&Rational::from_integer(c)));
    }
    out
}

/// Coefficients of `∏_{k=0..l} (k x₁ + (l−k) x₂)`, indexed by the power of `x₁`.
fn top_chern_roots_product(l: usize) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for k in 0..=l {
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c * BigInt::from(k);
            next[i] += c * BigInt::from(l - k);
        }
        poly = next;
    }
    poly
}

/// Rewrites a symmetric form `Σ c_a x₁^a x₂^{N−a}` as `Σ c_{i,j} e₁^i e₂^j`.
fn symmetric_to_elementary(poly: &[BigInt]) -> BTreeMap<(usize, usize), BigInt> {
    let deg = poly.len() - 1;
    let mut rest = poly.to_vec();
    let mut out = BTreeMap::new();
    while let Some(a) = rest.iter().rposition(|c| !c.is_zero()) {
        let b = deg - a;
        assert!(a >= b, "input is not symmetric");
        let c = rest[a].clone();
        // e₁^{a−b} e₂^b = x₁^b x₂^b (x₁ + x₂)^{a−b}
        let mut binom = BigInt::one();
        for t in 0..=(a - b) {
            rest[b + t] -= &c * &binom;
            binom = binom * BigInt::from(a - b - t) / BigInt::from(t + 1);
        }
        out.insert((a - b, b), c);
    }
    out
}

/// Number of lines on a generic degree-`l` hypersurface in `P^n`, as
/// `∫_{G(2,n+1)} c_top(Sym^l S*)`. Zero unless `l + 1 = 2(n − 1)`.
pub fn lines_on_hypersurface(l: usize, n: usize) -> Rational {
    if !lines_dimension_matches(l, n) {
        return Rational::zero();
    }
    grass_integrate(&chern_top_sym(l, n + 1))
}

/// Whether `rank Sym^l S* = dim G(2, n+1)`.
pub fn lines_dimension_matches(l: usize, n: usize) -> bool {
    n >= 2 && l + 1 == 2 * (n - 1)
}

//! q-adically truncated series: scalar series over Q, and Novikov series with
//! [`HLaurent`] payloads.

use crate::coh::{CohClass, HLaurent};
use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};
use num_traits::{One, Zero};
use std::cmp::min;
use std::fmt::Write as _;

/// `Σ_{d=0..D} a_d q^d` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarSeries {
    coeffs: Vec<Rational>,
}

impl ScalarSeries {
    pub fn zero(order: usize) -> Self {
        ScalarSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Rational::one())
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The variable `q` itself, truncated at `order`.
    pub fn q(order: usize) -> Self {
        Self::monomial(order, 1, Rational::one())
    }

    pub fn monomial(order: usize, d: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if d <= order {
            s.coeffs[d] = c;
        }
        s
    }

    /// Coefficients beyond `order` are dropped; missing ones are zero.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut s = Self::zero(order);
        for (d, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[d] = c;
        }
        s
    }

    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(order, coeffs.iter().map(|&c| int(c)))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(order, self.coeffs.iter().cloned())
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = min(self.order(), other.order());
        Self::from_coeffs(d, (0..=d).map(|i| &self.coeffs[i] + &other.coeffs[i]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ScalarSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = min(self.order(), other.order());
        let mut out = Self::zero(d);
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=d - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotInvertible("constant term is zero".into()));
        }
        let d = self.order();
        let inv0 = a0.recip();
        let mut out = Self::zero(d);
        out.coeffs[0] = inv0.clone();
        for k in 1..=d {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out.coeffs[k - j];
            }
            out.coeffs[k] = -acc * &inv0;
        }
        Ok(out)
    }

    /// Formal derivative in `q`; the top coefficient becomes unknown, so the
    /// order drops by one (but never below zero).
    pub fn derivative(&self) -> Self {
        let d = self.order().saturating_sub(1);
        Self::from_coeffs(
            d,
            (1..=self.order()).map(|k| &self.coeffs[k] * int(k as i64)),
        )
    }

    /// `q·d/dq`, which keeps the truncation order.
    pub fn q_derivative(&self) -> Self {
        ScalarSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(self.order()), |acc, _| acc.mul(self))
    }

    /// `exp(a)` for `a(0) = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonconvergentExponential(rational::to_string(&self.coeffs[0])));
        }
        // e' = a' e, solved coefficientwise: k e_k = Σ_{j=1..k} j a_j e_{k-j}
        let d = self.order();
        let mut out = Self::zero(d);
        out.coeffs[0] = Rational::one();
        for k in 1..=d {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * int(j as i64) * &out.coeffs[k - j];
            }
            out.coeffs[k] = acc / int(k as i64);
        }
        Ok(out)
    }

    /// Fails unless `self = c_1 q + c_2 q² + ...` with `c_1 ≠ 0`.
    pub fn check_substitution(&self) -> Result<()> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidSubstitution(format!(
                "constant term {} is nonzero",
                rational::to_string(&self.coeffs[0])
            )));
        }
        if self.order() >= 1 && self.coeffs[1].is_zero() {
            return Err(Error::InvalidSubstitution("linear coefficient is zero".into()));
        }
        Ok(())
    }
}

/// `a(u(q))` where `u = q·unit`. Truncated at the smaller of the two orders.
pub fn scalar_compose(a: &ScalarSeries, u: &ScalarSeries) -> Result<ScalarSeries> {
    u.check_substitution()?;
    let d = min(a.order(), u.order());
    let u = u.truncate(d);
    let mut acc = ScalarSeries::zero(d);
    for c in a.coeffs[..=d].iter().rev() {
        acc = acc.mul(&u);
        acc.coeffs[0] += c;
    }
    Ok(acc)
}

/// Compositional inverse of `w = c q + O(q²)`, `c ≠ 0`, by Newton iteration
/// `v ← v − (w∘v − q) / (w'∘v)`, doubling the precision each step.
pub fn scalar_revert(w: &ScalarSeries) -> Result<ScalarSeries> {
    let d = w.order();
    if d == 0 {
        return Err(Error::NotInvertible("series has no linear term".into()));
    }
    if !w.coeffs[0].is_zero() {
        return Err(Error::NotInvertible("constant term is nonzero".into()));
    }
    if w.coeffs[1].is_zero() {
        return Err(Error::NotInvertible("linear coefficient is zero".into()));
    }
    let dw = w.derivative();
    let mut v = ScalarSeries::monomial(d, 1, w.coeffs[1].recip());
    let mut prec = 1;
    while prec < d {
        prec = min(2 * prec, d);
        let vp = v.truncate(prec);
        let residual = scalar_compose(&w.truncate(prec), &vp)?.sub(&ScalarSeries::q(prec));
        // w'(v) only needs precision prec - 1 since residual = O(q^{prec_old + 1}).
        let slope = compose_allow_short(&dw, &vp, prec)?;
        let step = residual.mul(&slope.inverse()?);
        v = vp.sub(&step);
    }
    Ok(v.truncate(d))
}

fn compose_allow_short(a: &ScalarSeries, u: &ScalarSeries, order: usize) -> Result<ScalarSeries> {
    // pad `a` with zeros; callers only use the low coefficients of the result
    let padded = ScalarSeries::from_coeffs(order, a.coeffs.iter().cloned());
    scalar_compose(&padded, u)
}

/// `exp(a(q)/ℏ)` as a Novikov series over `P^n`: the `q^d` coefficient is
/// `Σ_k [a^k]_d / (k! ℏ^k)`, a finite sum because `a(0) = 0`.
pub fn exp_scalar_over_hbar(a: &ScalarSeries, n: usize) -> Result<QSeries> {
    exp_over_hbar(a, 0, n)
}

/// `exp(a(q)·H/ℏ)`; the divisor-direction companion of
/// [`exp_scalar_over_hbar`].
pub fn exp_divisor_over_hbar(a: &ScalarSeries, n: usize) -> Result<QSeries> {
    exp_over_hbar(a, 1, n)
}

fn exp_over_hbar(a: &ScalarSeries, h_power: usize, n: usize) -> Result<QSeries> {
    if !a.coeffs[0].is_zero() {
        return Err(Error::NonconvergentExponential(rational::to_string(&a.coeffs[0])));
    }
    let order = a.order();
    let mut out = QSeries::one(n, order);
    let mut power = ScalarSeries::one(order);
    let mut fact = Rational::one();
    for k in 1..=order {
        power = power.mul(a);
        fact *= int(k as i64);
        if k * h_power > n {
            break;
        }
        for d in k..=order {
            let c = &power.coeffs[d] / &fact;
            if c.is_zero() {
                continue;
            }
            let t = HLaurent::monomial(n, -(k as i64), k * h_power, c);
            out.coeffs[d] = &out.coeffs[d] + &t;
        }
    }
    Ok(out)
}

/// `Σ_{d=0..D} c_d q^d` with `c_d ∈ Q[H]/(H^{n+1})[ℏ, ℏ^{-1}]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    n: usize,
    coeffs: Vec<HLaurent>,
}

impl QSeries {
    pub fn zero(n: usize, order: usize) -> Self {
        QSeries {
            n,
            coeffs: vec![HLaurent::zero(n); order + 1],
        }
    }

    pub fn one(n: usize, order: usize) -> Self {
        Self::constant(order, HLaurent::one(n))
    }

    pub fn constant(order: usize, c: HLaurent) -> Self {
        let mut s = Self::zero(c.ambient_dim(), order);
        s.coeffs[0] = c;
        s
    }

    /// `c·q^d`.
    pub fn monomial(order: usize, d: usize, c: HLaurent) -> Self {
        let mut s = Self::zero(c.ambient_dim(), order);
        if d <= order {
            s.coeffs[d] = c;
        }
        s
    }

    pub fn from_coeffs(n: usize, order: usize, coeffs: impl IntoIterator<Item = HLaurent>) -> Result<Self> {
        let mut s = Self::zero(n, order);
        for (d, c) in coeffs.into_iter().enumerate().take(order + 1) {
            if c.ambient_dim() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: c.ambient_dim(),
                });
            }
            s.coeffs[d] = c;
        }
        Ok(s)
    }

    /// Lifts a scalar series to `Σ a_d q^d · 1`.
    pub fn from_scalar(a: &ScalarSeries, n: usize) -> Self {
        QSeries {
            n,
            coeffs: a
                .coeffs()
                .iter()
                .map(|c| HLaurent::from_class(CohClass::scalar(n, c.clone())))
                .collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[HLaurent] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> &HLaurent {
        &self.coeffs[d]
    }

    /// Rational coefficient of `q^d ℏ^k H^p`.
    pub fn entry(&self, d: usize, k: i64, p: usize) -> Rational {
        self.coeffs
            .get(d)
            .map(|c| c.entry(k, p))
            .unwrap_or_else(Rational::zero)
    }

    /// The scalar series `Σ_d [q^d ℏ^k H^p] q^d`.
    pub fn component(&self, k: i64, p: usize) -> ScalarSeries {
        ScalarSeries::from_coeffs(self.order(), self.coeffs.iter().map(|c| c.entry(k, p)))
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = Self::zero(self.n, order);
        for (d, c) in self.coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[d] = c.clone();
        }
        s
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

    pub fn scale(&self, c: &Rational) -> Self {
        QSeries {
            n: self.n,
            coeffs: self.coeffs.iter().map(|h| h.scale(c)).collect(),
        }
    }

    pub fn mul_class(&self, c: &CohClass) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|h| h.mul_class(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(QSeries { n: self.n, coeffs })
    }

    pub fn mul_scalar(&self, a: &ScalarSeries) -> Result<Self> {
        qs_mul(self, &QSeries::from_scalar(a, self.n))
    }

    /// Substitutes `q ↦ v(q)` where `v = q·unit`, coefficient by coefficient.
    pub fn substitute(&self, v: &ScalarSeries) -> Result<Self> {
        v.check_substitution()?;
        let order = min(self.order(), v.order());
        let v = v.truncate(order);
        let mut out = Self::zero(self.n, order);
        let mut power = ScalarSeries::one(order);
        for d in 0..=order {
            if d > 0 {
                power = power.mul(&v);
            }
            let c = &self.coeffs[d];
            if c.is_zero() {
                continue;
            }
            for j in d..=order {
                let w = &power.coeffs[j];
                if !w.is_zero() {
                    out.coeffs[j] = &out.coeffs[j] + &c.scale(w);
                }
            }
        }
        Ok(out)
    }

    /// Fails if any coefficient carries a strictly positive ℏ-power.
    pub fn assert_no_positive_hbar(&self) -> Result<()> {
        for (d, c) in self.coeffs.iter().enumerate() {
            c.assert_no_positive_hbar()
                .map_err(|e| Error::ContractViolation(format!("q^{d}: {e}")))?;
        }
        Ok(())
    }

    /// Nonzero entries as `(d, ℏ-exponent, H-power, value)`, sorted.
    pub fn entries(&self) -> Vec<(usize, i64, usize, Rational)> {
        let mut out = Vec::new();
        for (d, c) in self.coeffs.iter().enumerate() {
            for (k, class) in c.terms() {
                for (p, v) in class.coeffs().iter().enumerate() {
                    if !v.is_zero() {
                        out.push((d, k, p, v.clone()));
                    }
                }
            }
        }
        out
    }

    /// Debug dump: one `d hbar_exp h_power value` line per nonzero entry,
    /// sorted by `(d, hbar_exp, h_power)`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (d, k, p, v) in self.entries() {
            writeln!(s, "{d} {k} {p} {}", rational::to_string(&v)).unwrap();
        }
        s
    }

    /// Inverse of [`QSeries::dump`]; ambient dimension and order are not part
    /// of the dump and must be supplied.
    pub fn parse_dump(n: usize, order: usize, text: &str) -> Result<Self> {
        let mut out = Self::zero(n, order);
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::InvalidInput(format!("dump line {}: {line:?}", lineno + 1));
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 {
                return Err(bad());
            }
            let d: usize = f[0].parse().map_err(|_| bad())?;
            let k: i64 = f[1].parse().map_err(|_| bad())?;
            let p: usize = f[2].parse().map_err(|_| bad())?;
            let v = rational::parse(f[3]).ok_or_else(bad)?;
            if d > order || p > n {
                return Err(bad());
            }
            out.coeffs[d] = &out.coeffs[d] + &HLaurent::monomial(n, k, p, v);
        }
        Ok(out)
    }
}

pub fn qs_add(a: &QSeries, b: &QSeries) -> Result<QSeries> {
    a.check_dim(b)?;
    let order = min(a.order(), b.order());
    let coeffs = (0..=order).map(|d| &a.coeffs[d] + &b.coeffs[d]).collect();
    Ok(QSeries { n: a.n, coeffs })
}

pub fn qs_sub(a: &QSeries, b: &QSeries) -> Result<QSeries> {
    qs_add(a, &b.scale(&-Rational::one()))
}

/// Cauchy product in `q`, truncated at the smaller order.
pub fn qs_mul(a: &QSeries, b: &QSeries) -> Result<QSeries> {
    a.check_dim(b)?;
    let order = min(a.order(), b.order());
    let mut out = QSeries::zero(a.n, order);
    for i in 0..=order {
        if a.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..=order - i {
            if b.coeffs[j].is_zero() {
                continue;
            }
            let t = a.coeffs[i].try_mul(&b.coeffs[j])?;
            out.coeffs[i + j] = &out.coeffs[i + j] + &t;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn hq(n: usize, k: i64, p: usize, c: i64) -> HLaurent {
        HLaurent::monomial(n, k, p, int(c))
    }

    #[test]
    fn product_examples() {
        let a = qs_add(&QSeries::one(2, 2), &QSeries::monomial(2, 1, hq(2, 0, 1, 1))).unwrap();
        let b = qs_add(&QSeries::one(2, 2), &QSeries::monomial(2, 1, hq(2, 0, 1, -1))).unwrap();
        let expect = qs_add(&QSeries::one(2, 2), &QSeries::monomial(2, 2, hq(2, 0, 2, -1))).unwrap();
        assert_eq!(qs_mul(&a, &b).unwrap(), expect);
        assert_eq!(qs_mul(&a, &QSeries::one(2, 5)).unwrap(), a);

        let geom = QSeries::from_scalar(&ScalarSeries::from_ints(5, &[1; 6]), 1);
        let one_minus_q = QSeries::from_scalar(&ScalarSeries::from_ints(5, &[1, -1]), 1);
        assert_eq!(qs_mul(&geom, &one_minus_q).unwrap(), QSeries::one(1, 5));
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = QSeries::one(2, 3);
        let b = QSeries::one(2, 7);
        assert_eq!(qs_add(&a, &b).unwrap().order(), 3);
        assert_eq!(qs_mul(&b, &a).unwrap().order(), 3);
        assert!(qs_mul(&QSeries::one(2, 3), &QSeries::one(3, 3)).is_err());
    }

    #[test]
    fn composition_examples() {
        let q = ScalarSeries::q(4);
        let q_plus_q2 = ScalarSeries::from_ints(4, &[0, 1, 1]);
        assert_eq!(scalar_compose(&q, &q_plus_q2).unwrap(), q_plus_q2);
        let q2 = ScalarSeries::from_ints(4, &[0, 0, 1]);
        assert_eq!(
            scalar_compose(&q2, &q_plus_q2).unwrap(),
            ScalarSeries::from_ints(4, &[0, 0, 1, 2, 1])
        );
        let a = ScalarSeries::from_ints(4, &[3, -1, 4, 1, -5]);
        assert_eq!(scalar_compose(&a, &q).unwrap(), a);

        let bad = ScalarSeries::from_ints(4, &[1, 1]);
        assert!(matches!(scalar_compose(&a, &bad), Err(Error::InvalidSubstitution(_))));
        let bad = ScalarSeries::from_ints(4, &[0, 0, 1]);
        assert!(matches!(scalar_compose(&a, &bad), Err(Error::InvalidSubstitution(_))));
    }

    #[test]
    fn reversion_examples() {
        assert_eq!(scalar_revert(&ScalarSeries::q(6)).unwrap(), ScalarSeries::q(6));
        let w = ScalarSeries::from_ints(5, &[0, 1, 1]);
        assert_eq!(
            scalar_revert(&w).unwrap(),
            ScalarSeries::from_ints(5, &[0, 1, -1, 2, -5, 14])
        );
        let w = ScalarSeries::from_coeffs(3, [int(0), rat(-2, 3), int(5)]);
        let v = scalar_revert(&w).unwrap();
        assert_eq!(scalar_compose(&w, &v).unwrap(), ScalarSeries::q(3));
        assert!(matches!(
            scalar_revert(&ScalarSeries::from_ints(4, &[0, 0, 1])),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn exponential_examples() {
        assert_eq!(exp_scalar_over_hbar(&ScalarSeries::zero(3), 2).unwrap(), QSeries::one(2, 3));
        let e = exp_scalar_over_hbar(&ScalarSeries::q(2), 1).unwrap();
        let expect = QSeries::from_coeffs(
            1,
            2,
            [
                HLaurent::one(1),
                hq(1, -1, 0, 1),
                HLaurent::monomial(1, -2, 0, rat(1, 2)),
            ],
        )
        .unwrap();
        assert_eq!(e, expect);
        assert!(matches!(
            exp_scalar_over_hbar(&ScalarSeries::one(2), 1),
            Err(Error::NonconvergentExponential(_))
        ));
    }

    #[test]
    fn divisor_exponential_respects_nilpotency() {
        // exp(qH/ℏ) on P¹: H² = 0 kills everything past the linear term.
        let e = exp_divisor_over_hbar(&ScalarSeries::q(3), 1).unwrap();
        let expect = qs_add(&QSeries::one(1, 3), &QSeries::monomial(3, 1, hq(1, -1, 1, 1))).unwrap();
        assert_eq!(e, expect);
    }

    #[test]
    fn dump_format() {
        let s = QSeries::from_coeffs(
            1,
            2,
            [HLaurent::one(1), &hq(1, -2, 0, 1) + &hq(1, -3, 1, -2), HLaurent::zero(1)],
        )
        .unwrap();
        assert_eq!(s.dump(), "0 0 0 1\n1 -3 1 -2\n1 -2 0 1\n");
        assert_eq!(QSeries::parse_dump(1, 2, &s.dump()).unwrap(), s);
        assert!(QSeries::parse_dump(1, 2, "0 0 5 1").is_err());
    }

    #[test]
    fn scalar_inverse_and_exp() {
        let a = ScalarSeries::from_ints(6, &[2, -1, 3]);
        assert_eq!(a.mul(&a.inverse().unwrap()), ScalarSeries::one(6));
        assert!(ScalarSeries::q(3).inverse().is_err());
        let b = ScalarSeries::from_ints(6, &[0, 1, -2, 5]);
        let e = b.exp().unwrap().mul(&b.scale(&int(-1)).exp().unwrap());
        assert_eq!(e, ScalarSeries::one(6));
    }

    fn arb_scalar(order: usize) -> impl Strategy<Value = ScalarSeries> {
        prop::collection::vec((-9i64..10, 1i64..4), order + 1)
            .prop_map(move |v| ScalarSeries::from_coeffs(order, v.into_iter().map(|(p, q)| rat(p, q))))
    }

    fn arb_subst(order: usize) -> impl Strategy<Value = ScalarSeries> {
        (arb_scalar(order), prop_oneof![Just(1i64), -3i64..4])
            .prop_filter("unit linear term", |(_, c)| *c != 0)
            .prop_map(|(mut s, c)| {
                s.coeffs[0] = Rational::zero();
                s.coeffs[1] = int(c);
                s
            })
    }

    fn arb_qseries(n: usize, order: usize) -> impl Strategy<Value = QSeries> {
        prop::collection::vec(prop::collection::vec((-3i64..2, 0..=n, -5i64..6), 0..4), order + 1).prop_map(
            move |cs| {
                let coeffs = cs.into_iter().map(|ts| {
                    ts.into_iter()
                        .fold(HLaurent::zero(n), |acc, (k, p, c)| &acc + &HLaurent::monomial(n, k, p, int(c)))
                });
                QSeries::from_coeffs(n, order, coeffs).unwrap()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn qseries_ring_axioms(a in arb_qseries(2, 4), b in arb_qseries(2, 4), c in arb_qseries(2, 4)) {
            prop_assert_eq!(qs_mul(&qs_mul(&a, &b).unwrap(), &c).unwrap(), qs_mul(&a, &qs_mul(&b, &c).unwrap()).unwrap());
            prop_assert_eq!(qs_mul(&a, &b).unwrap(), qs_mul(&b, &a).unwrap());
            prop_assert_eq!(
                qs_mul(&a, &qs_add(&b, &c).unwrap()).unwrap(),
                qs_add(&qs_mul(&a, &b).unwrap(), &qs_mul(&a, &c).unwrap()).unwrap()
            );
        }

        #[test]
        fn truncation_coherence(a in arb_qseries(2, 6), b in arb_qseries(2, 6), lower in 0usize..6) {
            let full = qs_mul(&a, &b).unwrap().truncate(lower);
            let low = qs_mul(&a.truncate(lower), &b.truncate(lower)).unwrap();
            prop_assert_eq!(full, low);
        }

        #[test]
        fn revert_is_two_sided(w in arb_subst(6)) {
            let v = scalar_revert(&w).unwrap();
            prop_assert_eq!(scalar_compose(&w, &v).unwrap(), ScalarSeries::q(6));
            prop_assert_eq!(scalar_compose(&v, &w).unwrap(), ScalarSeries::q(6));
        }

        // Lagrange inversion: [q^k] v = (1/k) [q^{k-1}] (q/w)^k.
        #[test]
        fn revert_matches_lagrange(w in arb_subst(5)) {
            let v = scalar_revert(&w).unwrap();
            let shifted = ScalarSeries::from_coeffs(5, w.coeffs()[1..].iter().cloned());
            let phi = shifted.inverse().unwrap();
            for k in 1..=5usize {
                let expect = phi.pow(k).coeff(k - 1) / int(k as i64);
                prop_assert_eq!(v.coeff(k), expect);
            }
        }

        #[test]
        fn exp_is_a_homomorphism(a in arb_scalar(5), b in arb_scalar(5)) {
            let mut a = a; a.coeffs[0] = Rational::zero();
            let mut b = b; b.coeffs[0] = Rational::zero();
            let ea = exp_scalar_over_hbar(&a, 2).unwrap();
            let eb = exp_scalar_over_hbar(&b, 2).unwrap();
            prop_assert_eq!(qs_mul(&ea, &eb).unwrap(), exp_scalar_over_hbar(&a.add(&b), 2).unwrap());
            let eneg = exp_scalar_over_hbar(&a.scale(&int(-1)), 2).unwrap();
            prop_assert_eq!(qs_mul(&ea, &eneg).unwrap(), QSeries::one(2, 5));
        }

        #[test]
        fn substitution_is_a_ring_map(a in arb_qseries(1, 4), b in arb_qseries(1, 4), v in arb_subst(4)) {
            let lhs = qs_mul(&a, &b).unwrap().substitute(&v).unwrap();
            let rhs = qs_mul(&a.substitute(&v).unwrap(), &b.substitute(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn dump_round_trip(a in arb_qseries(3, 3)) {
            prop_assert_eq!(QSeries::parse_dump(3, 3, &a.dump()).unwrap(), a);
        }
    }
}

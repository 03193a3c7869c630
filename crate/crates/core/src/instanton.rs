//! Quintic instanton numbers from the normalized hypergeometric data.

use crate::error::{Error, Result};
use crate::mirror::{i_function, normalize, GeometrySpec, Normalization};
use crate::rational::{self, int, Rational};
use crate::series::{scalar_compose, ScalarSeries};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// `5^5`, the conifold point of the quintic mirror family.
const QUINTIC_DISCRIMINANT: i64 = 3125;
/// `∫_{P⁴} H³ · 5H`.
const QUINTIC_TRIPLE_INTERSECTION: i64 = 5;

/// Instanton numbers `n_d` and twisted degree-`d` invariants
/// `K_d = Σ_{k | d} n_{d/k} / k³`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct InstantonTable {
    pub max_degree: u32,
    pub n: BTreeMap<u32, Rational>,
    pub k: BTreeMap<u32, Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstantonRow {
    pub d: u32,
    #[serde(with = "rational::serde_str")]
    pub n_d: Rational,
    #[serde(with = "rational::serde_str")]
    pub k_d: Rational,
}

impl InstantonTable {
    pub fn rows(&self) -> Vec<InstantonRow> {
        self.n
            .iter()
            .map(|(&d, n)| InstantonRow {
                d,
                n_d: n.clone(),
                k_d: self.k.get(&d).cloned().unwrap_or_else(Rational::zero),
            })
            .collect()
    }

    pub fn all_integral(&self) -> bool {
        self.n.values().all(rational::is_integer)
    }

    /// `Σ_d n_d d³ Q^d/(1 − Q^d)` plus the classical term, to order `max_degree`.
    pub fn rebuild_yukawa(&self) -> ScalarSeries {
        let order = self.max_degree as usize;
        let mut coeffs = ScalarSeries::constant(order, int(QUINTIC_TRIPLE_INTERSECTION))
            .coeffs()
            .to_vec();
        for (&d, n) in &self.n {
            let weight = n * int((d as i64).pow(3));
            let mut m = d as usize;
            while m <= order {
                coeffs[m] += &weight;
                m += d as usize;
            }
        }
        ScalarSeries::from_coeffs(order, coeffs)
    }

    /// Checks `K_d = Σ_{k | d} n_{d/k}/k³` for every stored degree.
    pub fn check_invariant(&self) -> Result<()> {
        for (&d, k) in &self.k {
            if &multiple_cover_sum(self, d)? != k {
                return Err(Error::ContractViolation(format!("K_{d} disagrees with the cover sum")));
            }
        }
        Ok(())
    }
}

/// `Σ_{k | d} n_{d/k} / k³`.
pub fn multiple_cover_sum(table: &InstantonTable, d: u32) -> Result<Rational> {
    let mut acc = Rational::zero();
    for k in (1..=d).filter(|k| d.is_multiple_of(*k)) {
        let n = table.n.get(&(d / k)).ok_or(Error::MissingDegree(d / k))?;
        acc += n / int((k as i64).pow(3));
    }
    Ok(acc)
}

/// The quintic Yukawa coupling as a series in `Q = e^t`:
/// `5 / ((1 − 5⁵q) F(q)²) · (q dQ/dq / Q)^{-3}` re-expanded through `q = q(Q)`.
pub fn yukawa_quintic(order: usize) -> Result<ScalarSeries> {
    if order == 0 {
        return Err(Error::InvalidInput("Yukawa coupling needs order >= 1".into()));
    }
    let spec = GeometrySpec::quintic(order);
    let norm = normalize(&i_function(&spec)?, &spec)?;
    yukawa_from_normalization(&norm)
}

/// Same as [`yukawa_quintic`] but reusing an existing normalization.
pub fn yukawa_from_normalization(norm: &Normalization) -> Result<ScalarSeries> {
    let order = norm.unit_f.order();
    let f = &norm.unit_f;
    // q dQ/dq / Q = 1 + q f'(q) for Q = q exp(f)
    let log_jacobian = ScalarSeries::one(order).add(&norm.mirror_map_f.q_derivative());
    let disc = ScalarSeries::from_ints(order, &[1, -QUINTIC_DISCRIMINANT]);
    let denom = disc.mul(&f.mul(f)).mul(&log_jacobian.pow(3));
    let in_q = denom
        .inverse()
        .map_err(|e| Error::NotInvertible(format!("Yukawa denominator: {e}")))?
        .scale(&int(QUINTIC_TRIPLE_INTERSECTION));
    let q_of_big_q = norm
        .inverse_mirror_coordinate()
        .map_err(|e| Error::NotInvertible(format!("mirror map: {e}")))?;
    scalar_compose(&in_q, &q_of_big_q)
}

/// Solves `K(Q) = 5 + Σ_d n_d d³ Q^d/(1 − Q^d)` for `n_1..n_D` by triangular
/// elimination. The constant term of `K` is not read.
pub fn extract_instanton(yukawa: &ScalarSeries, max_degree: u32) -> InstantonTable {
    let max_degree = max_degree.min(yukawa.order() as u32);
    let mut table = InstantonTable {
        max_degree,
        ..Default::default()
    };
    for d in 1..=max_degree {
        let cube = int((d as i64).pow(3));
        let mut rest = yukawa.coeff(d as usize);
        for k in (1..d).filter(|k| d.is_multiple_of(*k)) {
            rest -= &table.n[&k] * int((k as i64).pow(3));
        }
        table.n.insert(d, rest / &cube);
    }
    for d in 1..=max_degree {
        let k = multiple_cover_sum(&table, d).expect("all divisors present");
        table.k.insert(d, k);
    }
    table
}

/// End to end: hypergeometric series → normalization → Yukawa → `n_d`.
pub fn quintic_table(order: usize) -> Result<InstantonTable> {
    let k = yukawa_quintic(order)?;
    let table = extract_instanton(&k, order as u32);
    table.check_invariant()?;
    Ok(table)
}

//! Torus localization on `M̄_{0,0}(P^n, d)` for `d ≤ 2`.
//!
//! The torus acts on `P^n` with weights `λ_0..λ_n`. Each fixed locus is a tree
//! whose vertices sit at fixed points and whose edges are `d_e`-fold covers of
//! coordinate lines. The integral of `c_top(E_d)` is the sum over trees of
//! `e(E_d)|_Γ / (|Aut Γ| · e(N_Γ))`, which is independent of the weights.

use crate::error::{Error, Result};
use crate::mirror::expected_dim;
use crate::rational::{self, int, Rational};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedGraph {
    /// Fixed-point label of each vertex.
    pub vertices: Vec<usize>,
    /// `(v, w, degree)` with `v, w` indices into `vertices`.
    pub edges: Vec<(usize, usize, u32)>,
    pub automorphism_order: u32,
}

impl FixedGraph {
    pub fn degree(&self) -> u32 {
        self.edges.iter().map(|e| e.2).sum()
    }

    fn valence(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v || e.1 == v).count()
    }
}

/// Pairwise distinct torus weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightVector(#[serde(with = "rational::serde_str_vec")] Vec<Rational>);

impl WeightVector {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        for i in 0..weights.len() {
            for j in 0..i {
                if weights[i] == weights[j] {
                    return Err(Error::SingularWeights(format!("weights {j} and {i} coincide")));
                }
            }
        }
        Ok(WeightVector(weights))
    }

    pub fn from_ints(weights: &[i64]) -> Result<Self> {
        Self::new(weights.iter().map(|&w| int(w)).collect())
    }

    /// `n + 1` distinct integers drawn from `[−50, 50]`.
    pub fn sample<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut picked: Vec<i64> = Vec::with_capacity(n + 1);
        while picked.len() < n + 1 {
            let w = rng.random_range(-50..=50);
            if !picked.contains(&w) {
                picked.push(w);
            }
        }
        Self::from_ints(&picked).expect("distinct by construction")
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Fixed loci of `M̄_{0,0}(P^n, d)` for `d ∈ {1, 2}`.
///
/// Degree one: one edge per pair of fixed points. Degree two: a double cover
/// of each coordinate line (automorphism order 2), and each chain
/// `i-j-k` listed once. The chain may fold back (`i = k`), in which case
/// the two components can be swapped.
pub fn enumerate_fixed_graphs(n: usize, d: u32) -> Result<Vec<FixedGraph>> {
    let mut out = Vec::new();
    match d {
        1 => {
            for i in 0..=n {
                for j in i + 1..=n {
                    out.push(FixedGraph {
                        vertices: vec![i, j],
                        edges: vec![(0, 1, 1)],
                        automorphism_order: 1,
                    });
                }
            }
        }
        2 => {
            for i in 0..=n {
                for j in i + 1..=n {
                    out.push(FixedGraph {
                        vertices: vec![i, j],
                        edges: vec![(0, 1, 2)],
                        automorphism_order: 2,
                    });
                }
            }
            for center in 0..=n {
                for i in (0..=n).filter(|&i| i != center) {
                    for k in (i..=n).filter(|&k| k != center) {
                        out.push(FixedGraph {
                            vertices: vec![i, center, k],
                            edges: vec![(0, 1, 1), (1, 2, 1)],
                            // i-j-i: swapping the two components
                            automorphism_order: if i == k { 2 } else { 1 },
                        });
                    }
                }
            }
        }
        _ => return Err(Error::UnsupportedDegree(d)),
    }
    Ok(out)
}

fn nonzero(x: Rational, what: &str) -> Result<Rational> {
    if x.is_zero() {
        Err(Error::SingularWeights(format!("{what} vanishes")))
    } else {
        Ok(x)
    }
}

fn pow_signed(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        (0..e).fold(Rational::one(), |acc, _| acc * x)
    } else {
        (0..-e).fold(Rational::one(), |acc, _| acc / x)
    }
}

/// `e(E_d)|_Γ / (|Aut Γ| · e(N_Γ))` for one fixed locus.
pub fn graph_contribution(
    graph: &FixedGraph,
    n: usize,
    bundle_degrees: &[u32],
    weights: &WeightVector,
) -> Result<Rational> {
    let lam = weights.as_slice();
    if lam.len() != n + 1 {
        return Err(Error::InvalidInput(format!(
            "need {} weights, got {}",
            n + 1,
            lam.len()
        )));
    }
    let label = |v: usize| graph.vertices[v];
    let mut acc = Rational::one();

    for &(v, w, de) in &graph.edges {
        let (i, j) = (label(v), label(w));
        let dq = int(de as i64);
        let diff = nonzero(&lam[i] - &lam[j], "edge weight difference")?;

        // moving part of H⁰(f*T P^n) along the line, less automorphisms
        let mut edge = pow_signed(&dq, 2 * de as i64)
            / (Rational::from_integer(rational::factorial(de as u64).pow(2)) * pow_signed(&diff, 2 * de as i64));
        if de % 2 == 1 {
            edge = -edge;
        }
        // normal directions to the line
        for (k, lk) in lam.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            for a in 0..=de as i64 {
                let pt = (int(a) * &lam[i] + int(de as i64 - a) * &lam[j]) / &dq;
                edge /= nonzero(pt - lk, "normal weight")?;
            }
        }
        // bundle sections over the edge
        for &l in bundle_degrees {
            let top = l as i64 * de as i64;
            for a in 0..=top {
                edge *= (int(top - a) * &lam[i] + int(a) * &lam[j]) / &dq;
            }
        }
        acc *= edge;
    }

    for (v, &i) in graph.vertices.iter().enumerate() {
        let val = graph.valence(v) as i64;
        let flags: Vec<Rational> = graph
            .edges
            .iter()
            .filter_map(|&(a, b, de)| {
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    return None;
                };
                Some((&lam[i] - &lam[label(other)]) / int(de as i64))
            })
            .collect();
        let tangent: Rational = lam
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, lj)| &lam[i] - lj)
            .product();
        acc *= pow_signed(&tangent, val - 1);
        let inv_sum: Rational = flags.iter().map(|w| w.recip()).sum();
        if val != 3 {
            acc *= pow_signed(&nonzero(inv_sum, "node smoothing weight")?, val - 3);
        }
        for w in &flags {
            acc /= w;
        }
        for &l in bundle_degrees.iter().filter(|_| val > 1) {
            let fiber = nonzero(int(l as i64) * &lam[i], "bundle fiber weight at a node")?;
            acc /= pow_signed(&fiber, val - 1);
        }
    }
    Ok(acc / int(graph.automorphism_order as i64))
}

/// `∫_{M̄_{0,0}(P^n,d)} c_top(⊕_i (O(l_i))_d)` by fixed-point summation.
///
/// Returns zero when the rank of the bundle differs from the dimension of the
/// moduli space.
pub fn twisted_integral_localized(
    n: usize,
    bundle_degrees: &[u32],
    d: u32,
    weights: &WeightVector,
) -> Result<Rational> {
    let dim = expected_dim(n, 0, 0, d as usize)?;
    let rank: i64 = bundle_degrees.iter().map(|&l| l as i64 * d as i64 + 1).sum();
    let graphs = enumerate_fixed_graphs(n, d)?;
    if dim != rank {
        return Ok(Rational::zero());
    }
    graphs
        .iter()
        .map(|g| graph_contribution(g, n, bundle_degrees, weights))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightTrial {
    pub weights: WeightVector,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
}

/// Runs the localization sum on `trials` independent weight vectors drawn from
/// `seed`, resampling whenever a draw is singular.
pub fn localized_trials(
    n: usize,
    bundle_degrees: &[u32],
    d: u32,
    seed: u64,
    trials: usize,
) -> Result<Vec<WeightTrial>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    let mut attempts = 0;
    while out.len() < trials {
        attempts += 1;
        if attempts > 100 * trials.max(1) {
            return Err(Error::SingularWeights("no nondegenerate weights found".into()));
        }
        let weights = WeightVector::sample(n, &mut rng);
        if out.iter().any(|t: &WeightTrial| t.weights == weights) {
            continue;
        }
        match twisted_integral_localized(n, bundle_degrees, d, &weights) {
            Ok(value) => out.push(WeightTrial { weights, value }),
            Err(Error::SingularWeights(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn graph_counts() {
        assert_eq!(enumerate_fixed_graphs(1, 1).unwrap().len(), 1);
        assert_eq!(enumerate_fixed_graphs(4, 1).unwrap().len(), 10);
        let g = enumerate_fixed_graphs(4, 2).unwrap();
        assert_eq!(g.iter().filter(|g| g.edges.len() == 1).count(), 10);
        assert_eq!(g.iter().filter(|g| g.edges.len() == 2).count(), 50);
        assert_eq!(g.iter().filter(|g| g.automorphism_order == 2).count(), 30);
        // P¹: the double cover and the two folded chains 0-1-0, 1-0-1
        assert_eq!(enumerate_fixed_graphs(1, 2).unwrap().len(), 3);
        assert!(g.iter().all(|g| g.degree() == 2));
        assert_eq!(enumerate_fixed_graphs(4, 3).unwrap_err(), Error::UnsupportedDegree(3));
    }

    #[test]
    fn point_moduli_space() {
        // M̄_{0,0}(P¹,1) is a point
        let w = WeightVector::from_ints(&[3, -7]).unwrap();
        assert_eq!(twisted_integral_localized(1, &[], 1, &w).unwrap(), int(1));
    }

    #[test]
    fn lines_through_hypersurfaces() {
        let w = WeightVector::from_ints(&[1, 4, -9, 13, 22]).unwrap();
        assert_eq!(twisted_integral_localized(4, &[5], 1, &w).unwrap(), int(2875));
        let w = WeightVector::from_ints(&[2, -3, 5, 11]).unwrap();
        assert_eq!(twisted_integral_localized(3, &[3], 1, &w).unwrap(), int(27));
        // two quadrics in P⁴ cut out a quartic del Pezzo surface with 16 lines
        let w = WeightVector::from_ints(&[1, 4, -9, 13, 22]).unwrap();
        assert_eq!(twisted_integral_localized(4, &[2, 2], 1, &w).unwrap(), int(16));
        // wrong dimension: integral is zero by definition
        assert_eq!(twisted_integral_localized(4, &[3], 1, &w).unwrap(), int(0));
    }

    #[test]
    fn conics_on_quintic_weight_independent() {
        let expect = rat(4876875, 8);
        for ws in [[1, 4, -9, 14, 23], [-30, -2, 7, 18, 41], [5, 6, -1, 33, -48]] {
            let w = WeightVector::from_ints(&ws).unwrap();
            assert_eq!(twisted_integral_localized(4, &[5], 2, &w).unwrap(), expect);
        }
    }

    #[test]
    fn degree_two_small_targets() {
        // a conic in P² is the unique degree-2 curve on itself, alone or as a
        // plane section in P³
        for ws in [[1, 5, -7], [2, 9, -20], [3, -11, 30]] {
            let w = WeightVector::from_ints(&ws).unwrap();
            assert_eq!(twisted_integral_localized(2, &[2], 2, &w).unwrap(), int(1));
        }
        for ws in [[1, 5, -7, 12], [2, 9, -20, 31]] {
            let w = WeightVector::from_ints(&ws).unwrap();
            assert_eq!(twisted_integral_localized(3, &[1, 2], 2, &w).unwrap(), int(1));
        }
    }

    #[test]
    fn singular_weights_are_reported() {
        // λ_0 = 0 puts a zero fiber weight at a node of a two-edge chain
        let w = WeightVector::from_ints(&[0, 1, 3, 7, 12]).unwrap();
        assert!(matches!(
            twisted_integral_localized(4, &[5], 2, &w),
            Err(Error::SingularWeights(_))
        ));
        // 13 is the midpoint of 4 and 22: a double cover of that line has a zero normal weight
        let w = WeightVector::from_ints(&[1, 4, -9, 13, 22]).unwrap();
        assert!(matches!(
            twisted_integral_localized(4, &[5], 2, &w),
            Err(Error::SingularWeights(_))
        ));
        assert!(WeightVector::from_ints(&[1, 1]).is_err());
    }

    #[test]
    fn trials_are_reproducible() {
        let a = localized_trials(3, &[3], 1, 7, 3).unwrap();
        let b = localized_trials(3, &[3], 1, 7, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|t| t.value == int(27)));
    }
}

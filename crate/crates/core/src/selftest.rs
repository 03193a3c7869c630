//! Randomized property checks and cross-oracle equalities.
//!
//! Every check draws its cases from a seeded ChaCha stream, so a run is fully
//! determined by its seed.

use crate::coh::{hl_linear_inverse, CohClass, HLaurent};
use crate::error::Result;
use crate::instanton::{extract_instanton, yukawa_from_normalization};
use crate::mirror::{
    degree_violations, ed_rank, expected_dim, i_function, normalize, verify_mirror_identity,
    EmbeddingModel, GeometrySpec,
};
use crate::oracle::{lines_on_hypersurface, localized_trials};
use crate::rational::{self, int, rat, Rational};
use crate::series::{
    exp_scalar_over_hbar, qs_add, qs_mul, scalar_compose, scalar_revert, QSeries, ScalarSeries,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 20030718;
pub const DEFAULT_CASES: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, cases: usize, failures: Vec<String>) -> Self {
        CheckOutcome {
            name: name.to_string(),
            cases,
            passed: failures.is_empty(),
            detail: match failures.first() {
                None => "ok".into(),
                Some(f) => format!("{} failure(s); first: {f}", failures.len()),
            },
        }
    }

    fn from_result(name: &str, cases: usize, r: Result<Vec<String>>) -> Self {
        match r {
            Ok(failures) => Self::new(name, cases, failures),
            Err(e) => Self::new(name, cases, vec![format!("error: {e}")]),
        }
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn small_rat(rng: &mut impl Rng) -> Rational {
    rat(rng.random_range(-12..=12), rng.random_range(1..=5))
}

fn random_class(rng: &mut impl Rng, n: usize) -> CohClass {
    CohClass::from_coeffs(n, (0..=n).map(|_| small_rat(rng)))
}

fn random_laurent(rng: &mut impl Rng, n: usize) -> HLaurent {
    let terms = rng.random_range(0..4);
    (0..terms).fold(HLaurent::zero(n), |acc, _| {
        let k = rng.random_range(-5..=2);
        &acc + &HLaurent::term(k, random_class(rng, n))
    })
}

fn random_qseries(rng: &mut impl Rng, n: usize, order: usize) -> QSeries {
    let coeffs: Vec<HLaurent> = (0..=order).map(|_| random_laurent(rng, n)).collect();
    QSeries::from_coeffs(n, order, coeffs).expect("dimensions agree")
}

fn random_scalar(rng: &mut impl Rng, order: usize) -> ScalarSeries {
    ScalarSeries::from_coeffs(order, (0..=order).map(|_| small_rat(rng)))
}

/// A random `c q + O(q²)` with `c ≠ 0`.
fn random_substitution(rng: &mut impl Rng, order: usize) -> ScalarSeries {
    let mut c: Vec<Rational> = random_scalar(rng, order).coeffs().to_vec();
    c[0] = int(0);
    c[1] = if rng.random_bool(0.5) {
        int(1)
    } else {
        let mut v = small_rat(rng);
        while v == int(0) {
            v = small_rat(rng);
        }
        v
    };
    ScalarSeries::from_coeffs(order, c)
}

pub fn coh_ring_axioms(seed: u64, cases: usize) -> CheckOutcome {
    let mut rng = rng_for(seed, 1);
    let mut failures = Vec::new();
    for case in 0..cases {
        let n = rng.random_range(1..=6);
        let (a, b, c) = (random_class(&mut rng, n), random_class(&mut rng, n), random_class(&mut rng, n));
        if &(&a * &b) * &c != &a * &(&b * &c) || &a * &b != &b * &a || &a * &(&b + &c) != &(&a * &b) + &(&a * &c) {
            failures.push(format!("case {case}: a={a} b={b} c={c}"));
        }
    }
    CheckOutcome::new("coh ring axioms", cases, failures)
}

pub fn hlaurent_ring_axioms(seed: u64, cases: usize) -> CheckOutcome {
    let mut rng = rng_for(seed, 2);
    let mut failures = Vec::new();
    for case in 0..cases {
        let n = rng.random_range(1..=4);
        let a = random_laurent(&mut rng, n);
        let b = random_laurent(&mut rng, n);
        let c = random_laurent(&mut rng, n);
        if &(&a * &b) * &c != &a * &(&b * &c) || &a * &b != &b * &a || &a * &(&b + &c) != &(&a * &b) + &(&a * &c) {
            failures.push(format!("case {case}: a={a} b={b} c={c}"));
        }
    }
    CheckOutcome::new("hbar-Laurent ring axioms", cases, failures)
}

pub fn linear_inverse(seed: u64, cases: usize) -> CheckOutcome {
    let mut rng = rng_for(seed, 3);
    let r = (|| {
        let mut failures = Vec::new();
        for _ in 0..cases {
            let n = rng.random_range(1..=8);
            let c = rng.random_range(-40..=40);
            let m = rng.random_range(1..=40);
            let prod = &HLaurent::linear(n, c, m) * &hl_linear_inverse(c, m, n)?;
            if prod != HLaurent::one(n) {
                failures.push(format!("(c={c}, m={m}, n={n})"));
            }
        }
        Ok(failures)
    })();
    CheckOutcome::from_result("linear-factor inverse", cases, r)
}

pub fn qseries_ring_axioms(seed: u64, cases: usize) -> CheckOutcome {
    let mut rng = rng_for(seed, 4);
    let r = (|| {
        let mut failures = Vec::new();
        for case in 0..cases {
            let n = rng.random_range(1..=3);
            let order = rng.random_range(0..=4);
            let a = random_qseries(&mut rng, n, order);
            let b = random_qseries(&mut rng, n, order);
            let c = random_qseries(&mut rng, n, order);
            let assoc = qs_mul(&qs_mul(&a, &b)?, &c)? == qs_mul(&a, &qs_mul(&b, &c)?)?;
            let comm = qs_mul(&a, &b)? == qs_mul(&b, &a)?;
            let dist = qs_mul(&a, &qs_add(&b, &c)?)? == qs_add(&qs_mul(&a, &b)?, &qs_mul(&a, &c)?)?;
            if !(assoc && comm && dist) {
                failures.push(format!("case {case}"));
            }
        }
        Ok(failures)
    })();
    CheckOutcome::from_result("Novikov series ring axioms", cases, r)
}

pub fn truncation_coherence(seed: u64, cases: usize) -> CheckOutcome {
    let mut rng = rng_for(seed, 5);
    let r = (|| {
        let mut failures = Vec::new();
        for case in 0..cases {
            let n = rng.random_range(1..=3);
            let order = rng.random_range(1..=6);
            let lower = rng.random_range(0..order);
            let a = random_qseries(&mut rng, n, order);
            let b = random_qseries(&mut rng, n, order);
            if qs_mul(&a, &b)?.truncate(lower) != qs_mul(&a.truncate(lower), &b.truncate(lower))? {
                failures.push(format!("case {case}: order {order} -> {lower}"));
            }
            let u = random_substitution(&mut rng, order);
            let s = random_scalar(&mut rng, order);
            let full = scalar_compose(&s, &u)?.truncate(lower);
            let low = scalar_compose(&s.truncate(lower), &u.truncate(lower.max(1)))?.truncate(lower);
            if full != low {
                failures.push(format!("case {case}: composition at {lower}"));
            }
        }
        Ok(failures)
    })();
    CheckOutcome::from_result("truncation coherence", cases, r)
}

pub fn revert_round_trip(seed: u64, cases: usize) -> CheckOutcome {
    let mut rng = rng_for(seed, 6);
    let r = (|| {
        let mut failures = Vec::new();
        for case in 0..cases {
            let order = rng.random_range(1..=8);
            let w = random_substitution(&mut rng, order);
            let v = scalar_revert(&w)?;
            let q = ScalarSeries::q(order);
            if scalar_compose(&w, &v)? != q || scalar_compose(&v, &w)? != q {
                failures.push(format!("case {case}: order {order}"));
            }
        }
        Ok(failures)
    })();
    CheckOutcome::from_result("revert/compose round trip", cases, r)
}

pub fn exp_inverse(seed: u64, cases: usize) -> CheckOutcome {
    let mut rng = rng_for(seed, 7);
    let r = (|| {
        let mut failures = Vec::new();
        for case in 0..cases {
            let n = rng.random_range(1..=4);
            let order = rng.random_range(0..=6);
            let mut a = random_scalar(&mut rng, order);
            let mut b = random_scalar(&mut rng, order);
            a = a.sub(&ScalarSeries::constant(order, a.coeff(0)));
            b = b.sub(&ScalarSeries::constant(order, b.coeff(0)));
            let ea = exp_scalar_over_hbar(&a, n)?;
            let eneg = exp_scalar_over_hbar(&a.scale(&int(-1)), n)?;
            let eb = exp_scalar_over_hbar(&b, n)?;
            if qs_mul(&ea, &eneg)? != QSeries::one(n, order)
                || qs_mul(&ea, &eb)? != exp_scalar_over_hbar(&a.add(&b), n)?
            {
                failures.push(format!("case {case}"));
            }
        }
        Ok(failures)
    })();
    CheckOutcome::from_result("exp(a)exp(-a) = 1", cases, r)
}

/// Hypersurfaces in `P^n` whose Fano scheme of lines is finite, `n ≤ 6`.
pub const LINE_CASES: [(usize, usize); 5] = [(1, 2), (3, 3), (5, 4), (7, 5), (9, 6)];

pub fn degree_one_oracles(seed: u64, trials: usize) -> CheckOutcome {
    let r = (|| {
        let mut failures = Vec::new();
        for (l, n) in LINE_CASES {
            let schubert = lines_on_hypersurface(l, n);
            for t in localized_trials(n, &[l as u32], 1, seed, trials)? {
                if t.value != schubert {
                    failures.push(format!(
                        "l={l} n={n}: Schubert {} vs localization {}",
                        rational::to_string(&schubert),
                        rational::to_string(&t.value)
                    ));
                }
            }
        }
        Ok(failures)
    })();
    CheckOutcome::from_result("degree-1 Schubert = localization", LINE_CASES.len() * trials, r)
}

pub fn degree_two_pipeline(seed: u64, trials: usize) -> CheckOutcome {
    let r = (|| {
        let spec = GeometrySpec::quintic(2);
        let norm = normalize(&i_function(&spec)?, &spec)?;
        let table = extract_instanton(&yukawa_from_normalization(&norm)?, 2);
        let k2 = table.k[&2].clone();
        let mut failures = Vec::new();
        for t in localized_trials(4, &[5], 2, seed, trials)? {
            if t.value != k2 {
                failures.push(format!(
                    "localization {} vs K_2 {}",
                    rational::to_string(&t.value),
                    rational::to_string(&k2)
                ));
            }
        }
        Ok(failures)
    })();
    CheckOutcome::from_result("degree-2 localization = K_2", trials, r)
}

pub fn mirror_identity(model: EmbeddingModel, order: usize) -> CheckOutcome {
    let r = verify_mirror_identity(model, order).map(|rep| {
        rep.mismatches
            .iter()
            .map(|m| {
                format!(
                    "q^{} hbar^{} H^{}: {} vs {}",
                    m.d,
                    m.hbar_exp,
                    m.h_power,
                    rational::to_string(&m.lhs),
                    rational::to_string(&m.rhs)
                )
            })
            .collect()
    });
    CheckOutcome::from_result(&format!("i_*(J_Y) = J_E ({}, D={order})", model.name()), 1, r)
}

pub fn quintic_integrality(order: usize) -> CheckOutcome {
    let r = (|| {
        let spec = GeometrySpec::quintic(order);
        let norm = normalize(&i_function(&spec)?, &spec)?;
        let table = extract_instanton(&yukawa_from_normalization(&norm)?, order as u32);
        let mut failures: Vec<String> = table
            .n
            .iter()
            .filter(|(_, v)| !rational::is_integer(v))
            .map(|(d, v)| format!("n_{d} = {} is not integral", rational::to_string(v)))
            .collect();
        let lines = lines_on_hypersurface(5, 4);
        if table.n.get(&1) != Some(&lines) {
            failures.push(format!("n_1 differs from the Schubert count {}", rational::to_string(&lines)));
        }
        Ok(failures)
    })();
    CheckOutcome::from_result(&format!("quintic integrality d <= {order}"), order, r)
}

pub fn dimension_bookkeeping() -> CheckOutcome {
    let r = (|| {
        let mut failures = Vec::new();
        for n in 3..=6usize {
            let grass = 2 * (n as i64 - 1);
            if expected_dim(n, 0, 0, 1)? != grass {
                failures.push(format!("expected_dim({n},0,0,1) != dim G(2,{})", n + 1));
            }
        }
        for (n, l) in LINE_CASES.iter().map(|&(l, n)| (n, l)) {
            let spec = GeometrySpec {
                ambient_dim: n,
                bundle_degrees: vec![l as u32],
                trunc_order: 1,
            };
            if ed_rank(&spec, 1, false) != expected_dim(n, 0, 0, 1)? {
                failures.push(format!("rank E_1 != dim for l={l} n={n}"));
            }
        }
        let specs = [
            GeometrySpec::quintic(6),
            EmbeddingModel::Line.geometry(8),
            EmbeddingModel::Conic.geometry(6),
            GeometrySpec::new(5, vec![3, 3], 4)?,
            GeometrySpec::new(5, vec![2, 4], 4)?,
            GeometrySpec::new(3, vec![2], 5)?,
            GeometrySpec::new(3, vec![3], 5)?,
        ];
        for spec in specs {
            let je = normalize(&i_function(&spec)?, &spec)?.je;
            for (d, k, p) in degree_violations(&je.payload, &spec) {
                failures.push(format!("{spec:?}: entry q^{d} hbar^{k} H^{p}"));
            }
        }
        Ok(failures)
    })();
    CheckOutcome::from_result("dimension bookkeeping", 4 + LINE_CASES.len() + 7, r)
}

/// Everything above with default sizes.
pub fn run_all(seed: u64) -> Vec<CheckOutcome> {
    vec![
        coh_ring_axioms(seed, DEFAULT_CASES),
        hlaurent_ring_axioms(seed, DEFAULT_CASES),
        linear_inverse(seed, DEFAULT_CASES),
        qseries_ring_axioms(seed, DEFAULT_CASES),
        truncation_coherence(seed, DEFAULT_CASES),
        revert_round_trip(seed, DEFAULT_CASES),
        exp_inverse(seed, DEFAULT_CASES),
        degree_one_oracles(seed, 3),
        degree_two_pipeline(seed, 3),
        mirror_identity(EmbeddingModel::Line, 8),
        mirror_identity(EmbeddingModel::Conic, 6),
        quintic_integrality(6),
        dimension_bookkeeping(),
    ]
}

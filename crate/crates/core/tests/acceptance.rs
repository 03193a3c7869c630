//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the report is always printed.

use gwmirror_core::instanton::{extract_instanton, yukawa_from_normalization};
use gwmirror_core::mirror::degree_violations;
use gwmirror_core::oracle::{lines_on_hypersurface, localized_trials};
use gwmirror_core::rational::{self, int};
use gwmirror_core::selftest::{self, DEFAULT_SEED};
use gwmirror_core::{
    expected_dim, i_function, normalize, verify_mirror_identity, EmbeddingModel, GeometrySpec,
};
use std::process::ExitCode;
use std::time::{Duration, Instant};

type Check = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn degree_one_lines() -> Check {
    for (l, n, known) in [(3, 3, 27), (5, 4, 2875), (7, 5, 698005)] {
        let schubert = lines_on_hypersurface(l, n);
        if schubert != int(known) {
            return Err(format!("Schubert gives {} for l={l} n={n}", rational::to_string(&schubert)));
        }
        let trials = localized_trials(n, &[l as u32], 1, DEFAULT_SEED, 3).map_err(|e| e.to_string())?;
        let distinct = (0..3).all(|i| (0..i).all(|j| trials[i].weights != trials[j].weights));
        if trials.len() != 3 || !distinct {
            return Err("weight vectors are not distinct".into());
        }
        if let Some(t) = trials.iter().find(|t| t.value != schubert) {
            return Err(format!("localization gives {} for l={l} n={n}", rational::to_string(&t.value)));
        }
    }
    Ok("27, 2875, 698005 on 3 weight vectors each".into())
}

fn degree_two_pipeline() -> Check {
    let spec = GeometrySpec::quintic(2);
    let norm = normalize(&i_function(&spec).map_err(|e| e.to_string())?, &spec).map_err(|e| e.to_string())?;
    let table = extract_instanton(&yukawa_from_normalization(&norm).map_err(|e| e.to_string())?, 2);
    let k2 = &table.n[&2] + &table.n[&1] / int(8);
    if table.k[&2] != k2 {
        return Err("K_2 != n_2 + n_1/8".into());
    }
    let trials = localized_trials(4, &[5], 2, DEFAULT_SEED, 3).map_err(|e| e.to_string())?;
    match trials.iter().find(|t| t.value != k2) {
        Some(t) => Err(format!(
            "localization {} vs K_2 {}",
            rational::to_string(&t.value),
            rational::to_string(&k2)
        )),
        None => Ok(format!("K_2 = {}", rational::to_string(&k2))),
    }
}

fn line_model() -> Check {
    let rep = verify_mirror_identity(EmbeddingModel::Line, 8).map_err(|e| e.to_string())?;
    if !rep.passed() {
        return Err(format!("{} mismatches", rep.mismatches.len()));
    }
    let spec = EmbeddingModel::Line.geometry(8);
    let norm = normalize(&i_function(&spec).map_err(|e| e.to_string())?, &spec).map_err(|e| e.to_string())?;
    if !norm.is_trivial() {
        return Err("normalization of the line model is not the identity".into());
    }
    Ok("0 mismatches, identity normalization".into())
}

fn conic_model() -> Check {
    let rep = verify_mirror_identity(EmbeddingModel::Conic, 6).map_err(|e| e.to_string())?;
    if !rep.passed() {
        return Err(format!("{} mismatches", rep.mismatches.len()));
    }
    let spec = EmbeddingModel::Conic.geometry(6);
    let norm = normalize(&i_function(&spec).map_err(|e| e.to_string())?, &spec).map_err(|e| e.to_string())?;
    if norm.shift_g0.is_zero() {
        return Err("expected a nonzero shift".into());
    }
    Ok(format!("0 mismatches, g0 q-coefficient {}", rational::to_string(&norm.shift_g0.coeff(1))))
}

fn quintic_integrality() -> Check {
    let spec = GeometrySpec::quintic(6);
    let norm = normalize(&i_function(&spec).map_err(|e| e.to_string())?, &spec).map_err(|e| e.to_string())?;
    let table = extract_instanton(&yukawa_from_normalization(&norm).map_err(|e| e.to_string())?, 6);
    if table.n.len() != 6 {
        return Err(format!("{} degrees extracted", table.n.len()));
    }
    if let Some((d, v)) = table.n.iter().find(|(_, v)| !rational::is_integer(v)) {
        return Err(format!("n_{d} = {}", rational::to_string(v)));
    }
    if table.n[&1] != lines_on_hypersurface(5, 4) {
        return Err("n_1 differs from the Schubert count".into());
    }
    Ok(format!("n_6 = {}", rational::to_string(&table.n[&6])))
}

fn series_properties() -> Check {
    let cases = 100;
    let checks = [
        selftest::coh_ring_axioms(DEFAULT_SEED, cases),
        selftest::hlaurent_ring_axioms(DEFAULT_SEED, cases),
        selftest::qseries_ring_axioms(DEFAULT_SEED, cases),
        selftest::truncation_coherence(DEFAULT_SEED, cases),
        selftest::revert_round_trip(DEFAULT_SEED, cases),
        selftest::exp_inverse(DEFAULT_SEED, cases),
        selftest::linear_inverse(DEFAULT_SEED, cases),
    ];
    for c in &checks {
        if !c.passed || c.cases < 100 {
            return Err(format!("{}: {} ({} cases)", c.name, c.detail, c.cases));
        }
    }
    Ok(format!("{} properties x {cases} cases", checks.len()))
}

fn dimension_bookkeeping() -> Check {
    for n in 3..=6usize {
        // dim G(k, m) = k(m − k)
        let grass = 2 * (n as i64 + 1 - 2);
        let got = expected_dim(n, 0, 0, 1).map_err(|e| e.to_string())?;
        if got != grass {
            return Err(format!("expected_dim({n},0,0,1) = {got}, dim G(2,{}) = {grass}", n + 1));
        }
    }
    let specs = [
        GeometrySpec::quintic(6),
        EmbeddingModel::Line.geometry(8),
        EmbeddingModel::Conic.geometry(6),
        GeometrySpec::new(5, vec![3, 3], 4).map_err(|e| e.to_string())?,
        GeometrySpec::new(3, vec![3], 5).map_err(|e| e.to_string())?,
    ];
    let mut entries = 0;
    for spec in &specs {
        let je = normalize(&i_function(spec).map_err(|e| e.to_string())?, spec)
            .map_err(|e| e.to_string())?
            .je;
        entries += je.payload.entries().len();
        if let Some((d, k, p)) = degree_violations(&je.payload, spec).first() {
            return Err(format!("{spec:?}: q^{d} hbar^{k} H^{p}"));
        }
    }
    Ok(format!("{entries} nonzero J_E entries satisfy the degree constraint"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "degree-1 lines: Schubert = localization", limit: Duration::from_secs(5), run: degree_one_lines },
        Criterion { id: 2, name: "degree-2 localization = pipeline K_2", limit: Duration::from_secs(30), run: degree_two_pipeline },
        Criterion { id: 3, name: "line model i_*(J_Y) = J_E, D=8", limit: Duration::from_secs(5), run: line_model },
        Criterion { id: 4, name: "conic model i_*(J_Y) = J_E, D=6", limit: Duration::from_secs(10), run: conic_model },
        Criterion { id: 5, name: "quintic n_d integral, d <= 6", limit: Duration::from_secs(60), run: quintic_integrality },
        Criterion { id: 6, name: "series engine properties", limit: Duration::MAX, run: series_properties },
        Criterion { id: 7, name: "dimension bookkeeping", limit: Duration::MAX, run: dimension_bookkeeping },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; took {elapsed:.2?}, limit {:.0?}", c.limit)),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "{} [{}] {} ({elapsed:.2?}): {detail}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion/criteria failed");
        ExitCode::FAILURE
    }
}

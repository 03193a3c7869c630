//! Command-line front end for `gwmirror-core`.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on invalid input.

use clap::{Args, Parser, Subcommand, ValueEnum};
use gwmirror_core::oracle::{
    lines_dimension_matches, lines_on_hypersurface, localized_trials, WeightTrial,
};
use gwmirror_core::rational::{self, Rational};
use gwmirror_core::selftest::{self, CheckOutcome};
use gwmirror_core::{
    i_function, normalize, quintic_table, verify_mirror_identity, EmbeddingModel, Error,
    GeometrySpec, InstantonRow, ScalarSeries,
};
use serde::Serialize;
use std::fmt::Write;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

pub const DEFAULT_ORDER: usize = 8;
pub const DEFAULT_QUINTIC_ORDER: usize = 6;
pub const DEFAULT_TRIALS: usize = 3;

#[derive(Debug, Parser)]
#[command(name = "gwmirror", version, about = "Exact genus-zero Gromov-Witten computations in projective space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Line,
    Conic,
}

impl From<Model> for EmbeddingModel {
    fn from(m: Model) -> Self {
        match m {
            Model::Line => EmbeddingModel::Line,
            Model::Conic => EmbeddingModel::Conic,
        }
    }
}

#[derive(Debug, Args)]
pub struct OrderArg {
    /// Truncation order in the Novikov variable.
    #[arg(long, env = "GW_MIRROR_ORDER")]
    pub order: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SeedArg {
    /// Seed for the random torus weights.
    #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lines on a generic degree-l hypersurface in P^n, by Schubert calculus,
    /// cross-checked by torus localization.
    Lines {
        #[arg(long)]
        ambient: usize,
        /// Degree of the hypersurface.
        #[arg(long, alias = "degrees")]
        degree: u32,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Twisted integral over the space of degree-d rational curves in P^n,
    /// by torus localization on several random weight vectors.
    Localize {
        #[arg(long)]
        ambient: usize,
        /// Degrees of the split bundle, comma separated.
        #[arg(long, alias = "degree", value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        /// Degree of the curves (1 or 2).
        #[arg(long, default_value_t = 1)]
        curve_degree: u32,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Instanton numbers of the quintic threefold.
    Quintic {
        #[command(flatten)]
        order: OrderArg,
    },
    /// Checks the pushforward identity for a line or conic in P².
    VerifyEmbedding {
        #[arg(long, value_enum)]
        model: Model,
        #[command(flatten)]
        order: OrderArg,
    },
    /// The normalized J-function of a zero locus.
    Jfun {
        #[arg(long)]
        ambient: usize,
        /// Degrees of the split bundle, comma separated; empty for P^n itself.
        #[arg(long, alias = "degree", value_delimiter = ',')]
        degrees: Vec<u32>,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Property checks and cross-oracle equalities.
    Selftest {
        #[command(flatten)]
        seed: SeedArg,
    },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            ..Default::default()
        }
    }

    fn with_failure(mut self, msg: impl Into<String>) -> Self {
        self.code = EXIT_MISMATCH;
        self.stderr.push_str(&msg.into());
        self.stderr.push('\n');
        self
    }
}

fn error_outcome(e: Error) -> Outcome {
    let code = match e {
        Error::InvalidInput(_)
        | Error::InvalidGeometry(_)
        | Error::UnsupportedGenus(_)
        | Error::UnsupportedDegree(_)
        | Error::DimensionMismatch { .. }
        | Error::ModelMismatch(_) => EXIT_INVALID,
        _ => EXIT_MISMATCH,
    };
    Outcome {
        code,
        stderr: format!("error: {e}\n"),
        ..Default::default()
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Lines {
            ambient,
            degree,
            seed,
            trials,
        } => lines(*ambient, *degree, seed.seed, *trials, cli.format),
        Command::Localize {
            ambient,
            degrees,
            curve_degree,
            seed,
            trials,
        } => localize(*ambient, degrees, *curve_degree, seed.seed, *trials, cli.format),
        Command::Quintic { order } => {
            quintic(order.order.unwrap_or(DEFAULT_QUINTIC_ORDER), cli.format)
        }
        Command::VerifyEmbedding { model, order } => verify(
            (*model).into(),
            order.order.unwrap_or(DEFAULT_ORDER),
            cli.format,
        ),
        Command::Jfun {
            ambient,
            degrees,
            order,
        } => jfun(*ambient, degrees, order.order.unwrap_or(DEFAULT_ORDER), cli.format),
        Command::Selftest { seed } => Ok(run_selftest(seed.seed, cli.format)),
    };
    result.unwrap_or_else(error_outcome)
}

fn csv_string<T: Serialize>(rows: &[T]) -> gwmirror_core::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)
            .map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_string<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Debug, Serialize)]
pub struct OracleReport<I: Serialize> {
    pub inputs: I,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub method: String,
    pub weight_trials: Vec<WeightTrial>,
}

#[derive(Serialize)]
struct TrialRow {
    trial: usize,
    weights: String,
    value: String,
}

fn render_oracle<I: Serialize>(report: &OracleReport<I>, format: Format) -> gwmirror_core::Result<String> {
    match format {
        Format::Json => Ok(json_string(report)),
        Format::Text => Ok(format!("{}\n", rational::to_string(&report.value))),
        Format::Csv => {
            let rows: Vec<TrialRow> = report
                .weight_trials
                .iter()
                .enumerate()
                .map(|(i, t)| TrialRow {
                    trial: i,
                    weights: t
                        .weights
                        .as_slice()
                        .iter()
                        .map(rational::to_string)
                        .collect::<Vec<_>>()
                        .join(" "),
                    value: rational::to_string(&t.value),
                })
                .collect();
            csv_string(&rows)
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LinesInputs {
    pub ambient: usize,
    pub degree: u32,
    pub seed: u64,
}

fn lines(n: usize, l: u32, seed: u64, trials: usize, format: Format) -> gwmirror_core::Result<Outcome> {
    if n < 2 || l == 0 {
        return Err(Error::InvalidInput("lines needs --ambient >= 2 and --degree >= 1".into()));
    }
    let value = lines_on_hypersurface(l as usize, n);
    let weight_trials = localized_trials(n, &[l], 1, seed, trials)?;
    let report = OracleReport {
        inputs: LinesInputs {
            ambient: n,
            degree: l,
            seed,
        },
        value,
        method: format!("schubert calculus on G(2,{})", n + 1),
        weight_trials,
    };
    let mut out = Outcome::ok(render_oracle(&report, format)?);
    if !lines_dimension_matches(l as usize, n) {
        out.stderr = format!(
            "note: lines on a degree-{l} hypersurface in P^{n} do not form a finite set; reporting 0\n"
        );
    }
    if let Some(t) = report.weight_trials.iter().find(|t| t.value != report.value) {
        out = out.with_failure(format!(
            "localization gave {} for weights {:?}",
            rational::to_string(&t.value),
            t.weights.as_slice().iter().map(rational::to_string).collect::<Vec<_>>()
        ));
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
pub struct LocalizeInputs {
    pub ambient: usize,
    pub degrees: Vec<u32>,
    pub curve_degree: u32,
    pub seed: u64,
}

fn localize(
    n: usize,
    degrees: &[u32],
    d: u32,
    seed: u64,
    trials: usize,
    format: Format,
) -> gwmirror_core::Result<Outcome> {
    if n < 1 || degrees.contains(&0) {
        return Err(Error::InvalidInput("localize needs --ambient >= 1 and positive degrees".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidInput("--trials must be positive".into()));
    }
    let weight_trials = localized_trials(n, degrees, d, seed, trials)?;
    let report = OracleReport {
        inputs: LocalizeInputs {
            ambient: n,
            degrees: degrees.to_vec(),
            curve_degree: d,
            seed,
        },
        value: weight_trials[0].value.clone(),
        method: "torus localization".into(),
        weight_trials,
    };
    let mut out = Outcome::ok(render_oracle(&report, format)?);
    if report.weight_trials.iter().any(|t| t.value != report.value) {
        out = out.with_failure("localization depends on the torus weights");
    }
    Ok(out)
}

fn quintic(order: usize, format: Format) -> gwmirror_core::Result<Outcome> {
    let table = quintic_table(order)?;
    let rows = table.rows();
    let body = match format {
        Format::Json => json_string(&rows),
        Format::Csv => csv_string(&rows)?,
        Format::Text => {
            let mut s = String::new();
            let width = rows
                .iter()
                .map(|r| rational::to_string(&r.n_d).len())
                .max()
                .unwrap_or(3);
            writeln!(s, "{:>2}  {:>width$}  K_d", "d", "n_d").unwrap();
            for InstantonRow { d, n_d, k_d } in &rows {
                writeln!(
                    s,
                    "{d:>2}  {:>width$}  {}",
                    rational::to_string(n_d),
                    rational::to_string(k_d)
                )
                .unwrap();
            }
            s
        }
    };
    let mut out = Outcome::ok(body);
    if !table.all_integral() {
        out = out.with_failure("some instanton numbers are not integers");
    }
    Ok(out)
}

fn verify(model: EmbeddingModel, order: usize, format: Format) -> gwmirror_core::Result<Outcome> {
    let report = verify_mirror_identity(model, order)?;
    let body = match format {
        Format::Json => json_string(&report),
        Format::Csv => {
            let mut s = csv_string(&report.mismatches)?;
            if report.mismatches.is_empty() {
                s = "d,hbar_exp,h_power,lhs,rhs\n".into();
            }
            s
        }
        Format::Text => {
            let status = serde_json::to_value(report.status).expect("status serializes");
            let mut s = format!(
                "model: {}\norder: {}\nstatus: {}\n",
                model.name(),
                report.order,
                status.as_str().unwrap_or_default()
            );
            for m in &report.mismatches {
                writeln!(
                    s,
                    "q^{} hbar^{} H^{}: {} vs {}",
                    m.d,
                    m.hbar_exp,
                    m.h_power,
                    rational::to_string(&m.lhs),
                    rational::to_string(&m.rhs)
                )
                .unwrap();
            }
            s
        }
    };
    let out = Outcome::ok(body);
    Ok(if report.passed() {
        out
    } else {
        out.with_failure(format!("{} mismatching coefficient(s)", report.mismatches.len()))
    })
}

#[derive(Debug, Serialize)]
pub struct SeriesEntry {
    pub d: usize,
    pub hbar_exp: i64,
    pub h_power: usize,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct JfunReport {
    pub inputs: GeometrySpec,
    pub mirror_map_f: Vec<String>,
    pub shift_g0: Vec<String>,
    pub unit_f: Vec<String>,
    pub entries: Vec<SeriesEntry>,
}

fn series_strings(s: &ScalarSeries) -> Vec<String> {
    s.coeffs().iter().map(rational::to_string).collect()
}

fn jfun(n: usize, degrees: &[u32], order: usize, format: Format) -> gwmirror_core::Result<Outcome> {
    let spec = GeometrySpec::new(n, degrees.to_vec(), order)?;
    let norm = normalize(&i_function(&spec)?, &spec)?;
    let body = match format {
        Format::Text => norm.je.payload.dump(),
        Format::Json | Format::Csv => {
            let entries: Vec<SeriesEntry> = norm
                .je
                .payload
                .entries()
                .into_iter()
                .map(|(d, hbar_exp, h_power, v)| SeriesEntry {
                    d,
                    hbar_exp,
                    h_power,
                    value: rational::to_string(&v),
                })
                .collect();
            if format == Format::Csv {
                csv_string(&entries)?
            } else {
                json_string(&JfunReport {
                    mirror_map_f: series_strings(&norm.mirror_map_f),
                    shift_g0: series_strings(&norm.shift_g0),
                    unit_f: series_strings(&norm.unit_f),
                    inputs: spec,
                    entries,
                })
            }
        }
    };
    Ok(Outcome::ok(body))
}

fn run_selftest(seed: u64, format: Format) -> Outcome {
    let checks = selftest::run_all(seed);
    let body = match format {
        Format::Json => json_string(&checks),
        Format::Csv => csv_string(&checks).unwrap_or_default(),
        Format::Text => checks
            .iter()
            .map(|c: &CheckOutcome| {
                format!(
                    "{} {} ({} cases): {}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.cases,
                    c.detail
                )
            })
            .collect(),
    };
    let failed = checks.iter().filter(|c| !c.passed).count();
    let out = Outcome::ok(body);
    if failed > 0 {
        out.with_failure(format!("{failed} check(s) failed"))
    } else {
        out
    }
}

//! The `vocic` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use crate::canonical::e_omega;
use crate::error::{Error, Result};
use crate::hall::{HallAlgebra, HallCache, HallElement};
use crate::ic::StalkTable;
use crate::laurent::QPolynomial;
use crate::repquiver::{
    enumerate_components, parse_int_list, ComplexType, DimVector, Multisegment,
};
use crate::verify::{run_all, Bounds, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threads {
    Auto,
    Fixed(usize),
}

fn parse_threads(s: &str) -> std::result::Result<Threads, String> {
    if s == "auto" {
        return Ok(Threads::Auto);
    }
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err(format!("expected a positive integer or `auto`, got {s:?}")),
        Ok(n) => Ok(Threads::Fixed(n)),
    }
}

fn parse_ceiling(s: &str) -> std::result::Result<u32, String> {
    match s.parse::<u32>() {
        Ok(0) | Err(_) => Err(format!("expected a positive integer, got {s:?}")),
        Ok(n) => Ok(n),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "vocic",
    version,
    about = "IC stalks of varieties of complexes via Hall algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub config: CliConfig,
}

#[derive(Debug, Args)]
pub struct CliConfig {
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,

    /// Hall-polynomial cache file, created if missing.
    #[arg(long = "cache", global = true, env = "VOCIC_CACHE")]
    pub cache_path: Option<PathBuf>,

    /// Worker threads, or `auto`.
    #[arg(long, global = true, default_value = "auto", value_parser = parse_threads)]
    pub threads: Threads,

    /// Largest total dimension accepted by commands that evaluate in the Hall algebra.
    #[arg(long, global = true, default_value_t = 6, value_parser = parse_ceiling)]
    pub max_total_dim: u32,

    /// Extra primes counted per interpolation as a consistency check.
    #[arg(long = "seed-extra-primes", global = true, default_value_t = 1)]
    pub primes_extra: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the irreducible components of the variety of complexes.
    Components {
        #[arg(long)]
        dim: String,
    },
    /// IC stalks of one component (or of all components when `--r` is omitted).
    Stalks {
        #[arg(long)]
        dim: String,
        #[arg(long)]
        r: Option<String>,
    },
    /// Expansion of the canonical-basis element of a component in the PBW basis.
    Canonical {
        #[arg(long)]
        dim: String,
        #[arg(long)]
        r: String,
    },
    /// Product of two PBW basis elements.
    Hall {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long)]
        n: usize,
    },
    /// Run the property and oracle suites.
    Verify {
        /// Smaller ranges everywhere, for a fast smoke run.
        #[arg(long)]
        quick: bool,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let pool = match cli.config.threads {
        Threads::Auto => rayon::ThreadPoolBuilder::new(),
        Threads::Fixed(n) => rayon::ThreadPoolBuilder::new().num_threads(n),
    }
    .build();
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker threads: {e}");
            return EXIT_INTERNAL;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok((code, text)) => match out.write_all(text.as_bytes()) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: writing output: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        _ if e.is_internal_trap() => EXIT_INTERNAL,
        Error::Parse { .. } | Error::Cache(_) => EXIT_USAGE,
        _ => EXIT_INFEASIBLE,
    }
}

fn open_cache(config: &CliConfig) -> Result<Arc<HallCache>> {
    Ok(Arc::new(match &config.cache_path {
        Some(p) => HallCache::open(p)?,
        None => HallCache::in_memory(),
    }))
}

/// The exit code and the text for stdout.
fn execute(cli: &Cli) -> Result<(i32, String)> {
    let config = &cli.config;
    let text = match &cli.command {
        Command::Components { dim } => components_output(&parse_dim(dim)?, config.format)?,
        Command::Stalks { dim, r } => {
            let d = parse_dim(dim)?;
            let tables = match r {
                Some(r) => vec![StalkTable::new(&component(&d, r)?)?],
                None => crate::ic::component_report(&d)?,
            };
            stalks_output(&tables, r.is_some(), config.format)?
        }
        Command::Canonical { dim, r } => {
            let d = parse_dim(dim)?;
            let c = component(&d, r)?;
            check_ceiling(d.total(), config.max_total_dim)?;
            let cache = open_cache(config)?;
            let alg = HallAlgebra::with_cache(d.rank(), cache.clone(), config.primes_extra);
            let elem = e_omega(&alg, &c)?;
            cache.flush()?;
            canonical_output(&c, &elem, config.format)?
        }
        Command::Hall { lhs, rhs, n } => {
            if *n == 0 {
                return Err(Error::parse(0, "--n must be positive"));
            }
            let a = Multisegment::parse(lhs, *n)?;
            let b = Multisegment::parse(rhs, *n)?;
            check_ceiling(a.total_dim() + b.total_dim(), config.max_total_dim)?;
            let cache = open_cache(config)?;
            let alg = HallAlgebra::with_cache(*n, cache.clone(), config.primes_extra);
            let product = alg.multiply(&HallElement::basis(a), &HallElement::basis(b))?;
            cache.flush()?;
            hall_output(&product, config.format)?
        }
        Command::Verify { quick } => {
            let bounds = if *quick {
                Bounds::small(config.max_total_dim)
            } else {
                Bounds {
                    max_total_dim: config.max_total_dim,
                    sweep_total_dim: config.max_total_dim.min(Bounds::default().sweep_total_dim),
                    ..Bounds::default()
                }
            };
            let cache = open_cache(config)?;
            let report = run_all(&bounds, cache.clone(), config.primes_extra);
            cache.flush()?;
            let code = if report.passed {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            };
            return Ok((code, verify_output(&report, config.format)?));
        }
    };
    Ok((EXIT_OK, text))
}

fn check_ceiling(total: u32, ceiling: u32) -> Result<()> {
    if total > ceiling {
        Err(Error::CeilingExceeded { total, ceiling })
    } else {
        Ok(())
    }
}

pub fn parse_dim(s: &str) -> Result<DimVector> {
    let d = parse_int_list(s)?;
    if d.is_empty() {
        return Err(Error::parse(0, "empty dimension vector"));
    }
    DimVector::new(d)
}

/// The component `(dim, r)` with `h` derived from them.
pub fn component(d: &DimVector, r: &str) -> Result<ComplexType> {
    let r = parse_int_list(r)?;
    let not_component = || Error::NotAComponent {
        dim: d.as_slice().to_vec(),
        r: r.clone(),
    };
    let c = ComplexType::from_ranks(d, &r).map_err(|_| not_component())?;
    if c.is_component() {
        Ok(c)
    } else {
        Err(not_component())
    }
}

fn number(x: &BigInt) -> serde_json::Number {
    x.to_string().parse().expect("integers are JSON numbers")
}

fn q_array(p: &QPolynomial) -> Vec<serde_json::Number> {
    if p.is_zero() {
        return vec![number(&BigInt::from(0))];
    }
    p.coeffs().iter().map(number).collect()
}

fn tuple(xs: &[u32]) -> String {
    format!(
        "({})",
        xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    )
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    let mut s =
        serde_json::to_string(v).map_err(|e| Error::Cache(format!("serializing output: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Error::Cache(format!("writing CSV: {e}"));
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(row).map_err(fail)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Cache(format!("writing CSV: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields"))
}

#[derive(Serialize)]
struct ComponentJson {
    r: Vec<u32>,
    h: Vec<u32>,
    omega: Vec<usize>,
}

#[derive(Serialize)]
struct ComponentsJson {
    dim: Vec<u32>,
    components: Vec<ComponentJson>,
}

pub fn components_output(d: &DimVector, format: Format) -> Result<String> {
    let cs = enumerate_components(d);
    match format {
        Format::Json => json(&ComponentsJson {
            dim: d.as_slice().to_vec(),
            components: cs
                .iter()
                .map(|c| ComponentJson {
                    r: c.r().to_vec(),
                    h: c.h().to_vec(),
                    omega: c.omega(),
                })
                .collect(),
        }),
        Format::Csv => csv_text(
            &["dim", "r", "h"],
            cs.iter()
                .map(|c| vec![tuple(d.as_slice()), tuple(c.r()), tuple(c.h())])
                .collect(),
        ),
        Format::Pretty => {
            let mut s = format!("d = {}: {} component(s)\n", tuple(d.as_slice()), cs.len());
            for c in &cs {
                s.push_str(&format!("  r = {}  h = {}\n", tuple(c.r()), tuple(c.h())));
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct StalkRowJson {
    k: Vec<u32>,
    orbit_r: Vec<u32>,
    orbit_h: Vec<u32>,
    poincare: Vec<serde_json::Number>,
    codim: i64,
}

#[derive(Serialize)]
struct StalkTableJson {
    dim: Vec<u32>,
    r: Vec<u32>,
    h: Vec<u32>,
    rows: Vec<StalkRowJson>,
}

fn stalk_json(t: &StalkTable) -> StalkTableJson {
    let c = &t.component;
    StalkTableJson {
        dim: c.dim().as_slice().to_vec(),
        r: c.r().to_vec(),
        h: c.h().to_vec(),
        rows: t
            .rows
            .iter()
            .map(|row| StalkRowJson {
                k: row.k.as_slice().to_vec(),
                orbit_r: row.orbit.r().to_vec(),
                orbit_h: row.orbit.h().to_vec(),
                poincare: q_array(&row.poincare),
                codim: row.codim,
            })
            .collect(),
    }
}

/// One JSON object when a single component was asked for, an array otherwise.
pub fn stalks_output(tables: &[StalkTable], single: bool, format: Format) -> Result<String> {
    match format {
        Format::Json if single => json(&stalk_json(&tables[0])),
        Format::Json => json(&tables.iter().map(stalk_json).collect::<Vec<_>>()),
        Format::Csv => csv_text(
            &[
                "dim", "r", "h", "k", "orbit_r", "orbit_h", "poincare", "codim",
            ],
            tables
                .iter()
                .flat_map(|t| {
                    let c = &t.component;
                    t.rows.iter().map(move |row| {
                        vec![
                            tuple(c.dim().as_slice()),
                            tuple(c.r()),
                            tuple(c.h()),
                            tuple(row.k.as_slice()),
                            tuple(row.orbit.r()),
                            tuple(row.orbit.h()),
                            row.poincare.render_compact(),
                            row.codim.to_string(),
                        ]
                    })
                })
                .collect(),
        ),
        Format::Pretty => {
            let mut s = String::new();
            for t in tables {
                let c = &t.component;
                s.push_str(&format!(
                    "d = {}  r = {}  h = {}\n",
                    tuple(c.dim().as_slice()),
                    tuple(c.r()),
                    tuple(c.h())
                ));
                for row in &t.rows {
                    s.push_str(&format!(
                        "  k = {:<10} orbit r = {:<10} h = {:<12} codim {:>3}  {}\n",
                        tuple(row.k.as_slice()),
                        tuple(row.orbit.r()),
                        tuple(row.orbit.h()),
                        row.codim,
                        row.poincare
                    ));
                }
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct CanonicalTermJson {
    k: Vec<u32>,
    coefficient: String,
}

#[derive(Serialize)]
struct CanonicalJson {
    dim: Vec<u32>,
    r: Vec<u32>,
    h: Vec<u32>,
    terms: Vec<CanonicalTermJson>,
}

pub fn canonical_output(c: &ComplexType, elem: &HallElement, format: Format) -> Result<String> {
    let rows: Vec<(Vec<u32>, Multisegment, String)> = c
        .deformations()
        .into_iter()
        .map(|k| {
            let m = c.deform(&k)?.to_multisegment();
            let coeff = elem.coeff(&m).to_string();
            Ok((k.as_slice().to_vec(), m, coeff))
        })
        .collect::<Result<_>>()?;
    match format {
        Format::Json => json(&CanonicalJson {
            dim: c.dim().as_slice().to_vec(),
            r: c.r().to_vec(),
            h: c.h().to_vec(),
            terms: rows
                .into_iter()
                .map(|(k, _, coefficient)| CanonicalTermJson { k, coefficient })
                .collect(),
        }),
        Format::Csv => csv_text(
            &["dim", "r", "h", "k", "multisegment", "coefficient"],
            rows.into_iter()
                .map(|(k, m, coeff)| {
                    vec![
                        tuple(c.dim().as_slice()),
                        tuple(c.r()),
                        tuple(c.h()),
                        tuple(&k),
                        m.to_string(),
                        coeff,
                    ]
                })
                .collect(),
        ),
        Format::Pretty => Ok(format!("{elem}\n")),
    }
}

#[derive(Serialize)]
struct HallTermJson {
    multisegment: String,
    coefficient: String,
}

pub fn hall_output(elem: &HallElement, format: Format) -> Result<String> {
    let terms: Vec<(String, String)> = elem
        .terms()
        .map(|(m, c)| (m.to_string(), c.to_string()))
        .collect();
    match format {
        Format::Json => json(
            &terms
                .into_iter()
                .map(|(multisegment, coefficient)| HallTermJson {
                    multisegment,
                    coefficient,
                })
                .collect::<Vec<_>>(),
        ),
        Format::Csv => csv_text(
            &["multisegment", "coefficient"],
            terms.into_iter().map(|(m, c)| vec![m, c]).collect(),
        ),
        Format::Pretty => Ok(format!("{elem}\n")),
    }
}

pub fn verify_output(report: &VerifyReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json(report),
        Format::Csv => csv_text(
            &["criterion", "name", "passed", "checked", "failure"],
            report
                .criteria
                .iter()
                .flat_map(|c| {
                    let base = vec![
                        c.criterion.to_string(),
                        c.name.clone(),
                        c.passed.to_string(),
                        c.checked.to_string(),
                    ];
                    if c.failures.is_empty() {
                        vec![[base, vec![String::new()]].concat()]
                    } else {
                        c.failures
                            .iter()
                            .map(|f| [base.clone(), vec![f.clone()]].concat())
                            .collect()
                    }
                })
                .collect(),
        ),
        Format::Pretty => {
            let mut s = String::new();
            for c in &report.criteria {
                let verdict = if c.passed { "PASS" } else { "FAIL" };
                s.push_str(&format!(
                    "criterion {} {verdict} {} ({} checked)\n",
                    c.criterion, c.name, c.checked
                ));
                for f in &c.failures {
                    s.push_str(&format!("  failure {}: {f}\n", c.criterion));
                }
            }
            s.push_str(if report.passed {
                "all criteria passed\n"
            } else {
                "verification FAILED\n"
            });
            Ok(s)
        }
    }
}

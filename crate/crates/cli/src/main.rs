//! `dsemion` command line: runs one verification pipeline and writes its
//! report as JSON (or the report's table as CSV).
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on
//! usage or input errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dsemion::anyons::{f_symbol_report, r_symbol_report, s_matrix, SymbolReport};
use dsemion::category::{check_category, AnyonData};
use dsemion::groundstate::verify_suite;
use dsemion::purity::{parity_check, purity_suite};
use dsemion::report::{pair_table, resolve_convention, triple_table, ConventionChoice, Geometry, Report, Table};
use dsemion::tqd::compare;

const GAUGE_TRIALS: usize = 200;

#[derive(Parser, Debug)]
#[command(name = "dsemion", version, about = "Exact checks of the double semion model on honeycomb patches")]
struct Cli {
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Ground state construction and uniqueness.
    #[command(subcommand)]
    Groundstate(GroundstateCmd),
    /// Sector data measured with string operators.
    #[command(subcommand)]
    Anyons(AnyonsCmd),
    /// Pentagon, hexagon and gauge checks of anyon data.
    #[command(subcommand)]
    Category(CategoryCmd),
    /// Comparison with the twisted quantum double.
    #[command(subcommand)]
    Tqd(TqdCmd),
    /// Schmidt structure of restricted ground states.
    #[command(subcommand)]
    Purity(PurityCmd),
}

#[derive(Subcommand, Debug)]
enum GroundstateCmd {
    /// Vertex, plaquette and boundary conditions plus ground-space dimension
    Verify(Common),
}

#[derive(Subcommand, Debug)]
enum AnyonsCmd {
    /// Modular S-matrix from linked closed strings at two loop radii
    Smatrix(Common),
    /// F-symbols from transported fusion vertices
    Fsymbols(Common),
    /// Exchange phases, R-symbols, Yang-Baxter and braid relations
    Rsymbols(Common),
}

#[derive(Subcommand, Debug)]
enum CategoryCmd {
    /// Pentagon, triangle, hexagons and gauge invariance; reads --input JSON if given
    Check(Common),
}

#[derive(Subcommand, Debug)]
enum TqdCmd {
    /// Match measured data against the twisted quantum double of Z2
    Compare(Common),
}

#[derive(Subcommand, Debug)]
enum PurityCmd {
    /// Reduced state spectrum, boundary conditions and dominated span
    Schmidt(Common),
    /// Pairing parity of loop soups; exhaustive for n <= 2
    Parity(Common),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    Auto,
    #[value(name = "region_components")]
    RegionComponents,
    #[value(name = "loop_count")]
    LoopCount,
}

impl From<ConventionArg> for ConventionChoice {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Auto => ConventionChoice::Auto,
            ConventionArg::RegionComponents => ConventionChoice::RegionComponents,
            ConventionArg::LoopCount => ConventionChoice::LoopCount,
        }
    }
}

#[derive(Args, Debug)]
struct Common {
    /// Region size; the default depends on the command.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: Option<u32>,
    #[arg(long, value_enum, default_value = "auto")]
    convention: ConventionArg,
    /// Minimum distance between string endpoints and measured loops.
    #[arg(long, default_value_t = 1)]
    clearance: i64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Worker thread cap.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Anyon data as JSON, for `category check`.
    #[arg(long)]
    input: Option<PathBuf>,
}

struct Outcome {
    json: String,
    table: Table,
    passed: bool,
}

fn outcome<T: Serialize>(report: Report<T>, table: Table) -> Result<Outcome, String> {
    Ok(Outcome { json: report.to_json().map_err(|e| e.to_string())?, table, passed: report.passed })
}

fn symbol_table(r: &SymbolReport, key: Option<&str>, name: &str) -> Table {
    let labels = r.labels.to_vec();
    let v = key.map_or(&r.values, |k| &r.values[k]);
    let flat: Vec<u8> = flatten(v);
    if flat.len() == 64 {
        triple_table(&labels, &flat, name)
    } else {
        pair_table(&labels, &flat, name)
    }
}

fn flatten(v: &serde_json::Value) -> Vec<u8> {
    match v {
        serde_json::Value::Array(xs) => xs.iter().flat_map(flatten).collect(),
        serde_json::Value::Number(n) => vec![n.as_u64().unwrap_or(0) as u8],
        _ => Vec::new(),
    }
}

fn run(group: Group) -> Result<Outcome, String> {
    let err = |e: dsemion::error::Error| e.to_string();
    let common = match &group {
        Group::Groundstate(GroundstateCmd::Verify(c))
        | Group::Anyons(AnyonsCmd::Smatrix(c) | AnyonsCmd::Fsymbols(c) | AnyonsCmd::Rsymbols(c))
        | Group::Category(CategoryCmd::Check(c))
        | Group::Tqd(TqdCmd::Compare(c))
        | Group::Purity(PurityCmd::Schmidt(c) | PurityCmd::Parity(c)) => c,
    };
    if let Some(j) = common.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j as usize).build_global().map_err(|e| e.to_string())?;
    }
    let convention = resolve_convention(common.convention.into()).map_err(err)?;
    let c = convention.resolved;
    let seed = common.seed;
    let envelope = |command: &str, n: Option<u32>, seed: Option<u64>, passed: bool| -> Result<_, String> {
        Ok((
            command.to_string(),
            passed,
            convention.clone(),
            n.map(Geometry::standard).transpose().map_err(err)?,
            seed,
        ))
    };
    macro_rules! report {
        ($cmd:expr, $n:expr, $seed:expr, $passed:expr, $result:expr, $table:expr) => {{
            let (command, passed, convention, geometry, seed) = envelope($cmd, $n, $seed, $passed)?;
            outcome(Report { command, passed, convention, geometry, seed, result: $result }, $table)
        }};
    }
    match group {
        Group::Groundstate(GroundstateCmd::Verify(a)) => {
            let n = a.n.unwrap_or(2);
            let r = verify_suite(n, c).map_err(err)?;
            let mut t = Table::new(["quantity", "value"]);
            t.push(["terms".to_string(), r.algebra.terms.to_string()]);
            t.push(["commuting_pairs".to_string(), format!("{}/{}", r.algebra.commuting_pairs, r.algebra.overlapping_pairs)]);
            t.push(["soups".to_string(), r.state.num_soups.to_string()]);
            t.push(["violations".to_string(), r.state.violations.len().to_string()]);
            t.push(["plaquette_eigenvalue_ok".to_string(), r.state.plaquette_eigenvalue_ok.to_string()]);
            t.push(["ground_space_dimension".to_string(), r.ground_space.dimension.to_string()]);
            report!("groundstate verify", Some(n), None, r.passed(), r, t)
        }
        Group::Anyons(AnyonsCmd::Smatrix(a)) => {
            let n = a.n.unwrap_or(3);
            let (r, _) = s_matrix(n, c, a.clearance).map_err(err)?;
            let mut t = Table::new(["a", "b", "s"]);
            for (i, x) in r.labels.iter().enumerate() {
                for (j, y) in r.labels.iter().enumerate() {
                    t.push([x.clone(), y.clone(), r.loops[0].matrix[i][j].clone()]);
                }
            }
            report!("anyons smatrix", Some(n), None, r.passed(), r, t)
        }
        Group::Anyons(AnyonsCmd::Fsymbols(a)) => {
            let n = a.n.unwrap_or(3);
            let r = f_symbol_report(n).map_err(err)?;
            let t = symbol_table(&r, None, "f");
            report!("anyons fsymbols", Some(n), None, r.passed(), r, t)
        }
        Group::Anyons(AnyonsCmd::Rsymbols(a)) => {
            let n = a.n.unwrap_or(3);
            let r = r_symbol_report(n).map_err(err)?;
            let t = symbol_table(&r, Some("R"), "r");
            report!("anyons rsymbols", Some(n), None, r.passed(), r, t)
        }
        Group::Category(CategoryCmd::Check(a)) => {
            let data = match &a.input {
                Some(p) => {
                    let s = fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
                    serde_json::from_str::<AnyonData>(&s).map_err(|e| format!("{}: {e}", p.display()))?
                }
                None => AnyonData::double_semion(),
            };
            let r = check_category(&data, GAUGE_TRIALS, seed);
            let mut t = Table::new(["check", "checked", "failures"]);
            for (name, c) in [("pentagon", &r.pentagon), ("triangle", &r.triangle), ("hexagons", &r.hexagons)] {
                t.push([name.to_string(), c.checked.to_string(), c.failures.to_string()]);
            }
            t.push(["gauge".to_string(), r.gauge_trials.to_string(), (r.gauge_trials - r.gauge_invariant_trials).to_string()]);
            report!("category check", None, Some(seed), r.passed(), r, t)
        }
        Group::Tqd(TqdCmd::Compare(a)) => {
            let n = a.n.unwrap_or(3);
            let r = compare(n).map_err(err)?;
            let labels = r.measured.labels.clone();
            let flat: Vec<u8> = r.braiding_table.iter().flatten().copied().collect();
            let t = pair_table(&labels, &flat, "braiding");
            report!("tqd compare", Some(n), None, r.passed(), r, t)
        }
        Group::Purity(PurityCmd::Schmidt(a)) => {
            let n = a.n.unwrap_or(1);
            let r = purity_suite(n, c, seed).map_err(err)?;
            let mut t = Table::new(["boundary_condition", "weight"]);
            for (b, w) in &r.schmidt.reduced.weights {
                t.push([format!("{b:b}"), w.clone()]);
            }
            report!("purity schmidt", Some(n), Some(seed), r.passed(), r, t)
        }
        Group::Purity(PurityCmd::Parity(a)) => {
            let n = a.n.unwrap_or(2);
            let r = parity_check(n, seed).map_err(err)?;
            let mut t = Table::new(["marked", "soups", "odd_difference"]);
            for (m, k) in &r.tally.total_by_marked {
                t.push([m.to_string(), k.to_string(), r.tally.odd_by_marked.get(m).copied().unwrap_or(0).to_string()]);
            }
            let seed = r.seed;
            report!("purity parity", Some(n), seed, r.tally.passed(), r, t)
        }
    }
}

fn write_output(common_out: Option<&PathBuf>, format: Format, o: &Outcome) -> Result<(), String> {
    let bytes = match format {
        Format::Json => o.json.clone().into_bytes(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&o.table.header).map_err(|e| e.to_string())?;
            for row in &o.table.rows {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            w.into_inner().map_err(|e| e.to_string())?
        }
    };
    match common_out {
        Some(p) => fs::write(p, bytes).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(&bytes).map_err(|e| e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (out, format) = match &cli.group {
        Group::Groundstate(GroundstateCmd::Verify(c))
        | Group::Anyons(AnyonsCmd::Smatrix(c) | AnyonsCmd::Fsymbols(c) | AnyonsCmd::Rsymbols(c))
        | Group::Category(CategoryCmd::Check(c))
        | Group::Tqd(TqdCmd::Compare(c))
        | Group::Purity(PurityCmd::Schmidt(c) | PurityCmd::Parity(c)) => (c.out.clone(), c.format),
    };
    let result = run(cli.group).and_then(|o| write_output(out.as_ref(), format, &o).map(|_| o.passed));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

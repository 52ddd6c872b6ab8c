//! Command-line front end for the `combgenus` binary.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::BaseField;
use crate::classify::{classify, default_place, PlaceSearch};
use crate::error::{Error, Result};
use crate::function_field::{Curve, Divisor, Place};
use crate::riemann_roch::rr_space;
use crate::subspace::{lattice, LatticeReport, Subspace};

use super::generate::{generate_random, GenKind};
use super::instance::{parse_instance, InstanceSpec};
use super::suite::{run_suite, SuiteConfig};

#[derive(Parser, Debug)]
#[command(name = "combgenus", version, about = "Products of subspaces of function fields of genus 0 and 1")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// dim S, dim S^2 and the combinatorial genus.
    Gamma(InputArgs),
    /// The product of S with the span of `--with` elements.
    Product {
        #[command(flatten)]
        input: InputArgs,
        /// An element of the second factor; repeat for more.
        #[arg(long = "with", value_name = "EXPR", required = true)]
        with: Vec<String>,
    },
    /// A basis of the Riemann-Roch space L(D).
    Rr {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        divisor: String,
        #[arg(long, default_value = "Fp:10007")]
        field: BaseField,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The lattice of products S_iS_j at a place.
    Lattice {
        #[command(flatten)]
        input: InputArgs,
        /// Place id; defaults to the place `classify` would pick.
        #[arg(long)]
        place: Option<String>,
        /// Also write the table of dim S_iS_j as CSV.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Full classification of S.
    Classify(InputArgs),
    /// Runs the acceptance suite.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Halves the number of random instances.
        #[arg(long)]
        quick: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Prints a random instance.
    Generate {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value = "rational")]
        curve: String,
        #[arg(long, default_value = "Fp:10007")]
        field: BaseField,
        #[arg(short, long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Wrap the instance together with the generator's ground truth.
        #[arg(long)]
        truth: bool,
        #[command(flatten)]
        out: OutArgs,
    },
}

/// Where the subspace comes from: an instance file, or a curve and a list
/// of elements on the command line.
#[derive(Args, Debug)]
pub struct InputArgs {
    /// Instance JSON file; `-` reads standard input.
    #[arg(short = 'i', long = "instance", value_name = "PATH", conflicts_with_all = ["curve", "elements"])]
    pub instance: Option<String>,
    #[arg(long)]
    pub curve: Option<String>,
    #[arg(long, default_value = "Fp:10007")]
    pub field: BaseField,
    /// Generators of S, used with `--curve`.
    #[arg(value_name = "EXPR")]
    pub elements: Vec<String>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct OutArgs {
    /// Write the JSON report here instead of standard output.
    #[arg(long = "json", value_name = "PATH")]
    pub json: Option<PathBuf>,
}

/// How a command ended, before mapping to an exit code.
enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TheoremViolation(_) => Failure::Verification(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl InputArgs {
    fn spec(&self) -> Result<InstanceSpec> {
        match (&self.instance, &self.curve) {
            (Some(path), _) => {
                let mut buf = Vec::new();
                if path == "-" {
                    std::io::stdin().read_to_end(&mut buf)
                } else {
                    std::fs::File::open(path).and_then(|mut f| f.read_to_end(&mut buf))
                }
                .map_err(|e| Error::Io(format!("{path}: {e}")))?;
                parse_instance(&buf)
            }
            (None, Some(curve)) => {
                let spec = InstanceSpec::new(self.field, curve.clone(), self.elements.clone());
                spec.build()?;
                Ok(spec)
            }
            (None, None) => Err(Error::Invalid("give an instance with -i or a curve with --curve".into())),
        }
    }
}

fn emit(out: &OutArgs, report: &Value) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(report).expect("reports serialize") + "\n";
    match &out.json {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Failure::Input(e.to_string()))
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn pick_place(curve: &Arc<Curve>, id: Option<&str>) -> Result<Place> {
    if let Some(id) = id {
        return Place::from_id(curve, id);
    }
    match default_place(curve) {
        PlaceSearch::Found(p) => Ok(p),
        PlaceSearch::None => Err(Error::Hypothesis("the curve has no place of degree 1".into())),
        PlaceSearch::NotFound => Err(Error::Hypothesis("no place of degree 1 found; pass --place".into())),
    }
}

fn write_csv(path: &PathBuf, l: &LatticeReport) -> Result<()> {
    let io = |e: csv::Error| Error::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    let mut header = vec!["i".to_string()];
    header.extend((1..=l.n).map(|j| format!("j={j}")));
    w.write_record(&header).map_err(io)?;
    for i in 1..=l.n {
        let mut row = vec![i.to_string()];
        row.extend((1..=l.n).map(|j| l.dim(i, j).to_string()));
        w.write_record(&row).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    match cli.command {
        Command::Gamma(input) => {
            let spec = input.spec()?;
            let (_, s) = spec.build()?;
            let report = json!({
                "command": "gamma",
                "instance": spec,
                "dim": s.dim(),
                "dim_square": s.square().dim(),
                "gamma": s.gamma(),
            });
            emit(&input.out, &report)
        }
        Command::Product { input, with } => {
            let spec = input.spec()?;
            let (curve, s) = spec.build()?;
            let exprs: Vec<&str> = with.iter().map(String::as_str).collect();
            let t = Subspace::parse(&curve, &exprs)?;
            let st = s.product(&t)?;
            let report = json!({
                "command": "product",
                "instance": spec,
                "with": with,
                "dim_s": s.dim(),
                "dim_t": t.dim(),
                "dim_product": st.dim(),
                "basis": st.basis_strings(),
            });
            emit(&input.out, &report)
        }
        Command::Rr { curve, divisor, field, out } => {
            let c = Curve::parse(&curve, field.validated()?)?;
            let d = Divisor::parse(&c, &divisor)?;
            let rr = rr_space(&c, &d)?;
            let report = json!({
                "command": "rr",
                "field": field,
                "curve": c.model(),
                "result": to_value(&rr.to_report()),
            });
            emit(&out, &report)
        }
        Command::Lattice { input, place, csv } => {
            let spec = input.spec()?;
            let (curve, s) = spec.build()?;
            let p = pick_place(&curve, place.as_deref())?;
            let l = lattice(&s, &p)?;
            if let Some(path) = &csv {
                write_csv(path, &l)?;
            }
            let report = json!({
                "command": "lattice",
                "instance": spec,
                "consistent": l.weights_consistent() && l.codim1_holds,
                "lattice": to_value(&l),
            });
            emit(&input.out, &report)?;
            l.ensure_consistent().map_err(Failure::from)
        }
        Command::Classify(input) => {
            let spec = input.spec()?;
            let (_, s) = spec.build()?;
            let c = classify(&s)?;
            let report = json!({
                "command": "classify",
                "instance": spec,
                "dim_square": s.square().dim(),
                "classification": to_value(&c.to_report()),
            });
            emit(&input.out, &report)
        }
        Command::Verify { seed, quick, out } => {
            let results = run_suite(&SuiteConfig { seed, quick });
            for r in &results {
                eprintln!("{}", r.line());
                for f in r.failures.iter().take(5) {
                    eprintln!("    {f}");
                }
            }
            let passed = results.iter().filter(|r| r.passed()).count();
            let report = json!({
                "command": "verify",
                "seed": seed,
                "quick": quick,
                "passed": passed,
                "failed": results.len() - passed,
                "criteria": to_value(&results),
            });
            emit(&out, &report)?;
            if passed == results.len() {
                Ok(())
            } else {
                Err(Failure::Verification(format!("{} of {} criteria failed", results.len() - passed, results.len())))
            }
        }
        Command::Generate { kind, curve, field, n, seed, truth, out } => {
            let c = Curve::parse(&curve, field.validated()?)?;
            let g = generate_random(kind, &c, n, seed)?;
            let report = if truth {
                json!({ "instance": g.spec, "truth": g.truth })
            } else {
                to_value(&g.spec)
            };
            emit(&out, &report)
        }
    }
}

/// Parses arguments, runs the command and maps the outcome to an exit
/// code: 0 on success, 1 on a failed verification, 2 on bad input.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

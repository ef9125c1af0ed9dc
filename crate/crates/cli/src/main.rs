//! `dehn`: curves, twists and factorizations on preset surfaces from the
//! command line.
//!
//! Exit status: 0 success, 2 usage, 3 invalid input, 4 computation or
//! certificate failure, 5 a checked bound failed.

mod args;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use dehn_core::curve::CurveRecord;
use dehn_core::curve_calculus::{algebraic_intersection, classify_pair, geometric_intersection, PairClass};
use dehn_core::hyperbolic_metrics::{
    build_from_input, estimate_constant, run_suite, svg_histogram, write_csv, ConstantEstimate, FnInput, Suite,
};
use dehn_core::lickorish_reduction::{reduce_pair, ReductionStep};
use dehn_core::positive_factorization::{factorize, Certificate, StepLog};
use dehn_core::surface_model::{CurveJson, SurfaceJson, FORMAT};
use dehn_core::twist_engine::{apply_twist, LetterJson, WordJson};
use dehn_core::{build_preset, Error};

use args::CurveArg;
use output::Emitter;

#[derive(Parser)]
#[command(name = "dehn", version, about = "Simple closed curves, Dehn twists and positive factorizations")]
struct Cli {
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the machine-readable result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the parallel parts.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Also write an SVG histogram of the report ratios.
    #[arg(long, global = true)]
    emit_svg: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(clap::Subcommand)]
enum Command {
    /// Print a preset surface with its pants system.
    Surface {
        #[arg(long)]
        surface: String,
    },
    /// Print the geometric intersection number of two curves.
    Intersect {
        #[arg(long)]
        surface: String,
        #[arg(long, allow_hyphen_values = true)]
        a: CurveArg,
        #[arg(long, allow_hyphen_values = true)]
        b: CurveArg,
    },
    /// Apply `D_a^n` to `b`.
    Twist {
        #[arg(long)]
        surface: String,
        #[arg(long, allow_hyphen_values = true)]
        a: CurveArg,
        #[arg(long, allow_hyphen_values = true)]
        b: CurveArg,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        n: i32,
    },
    /// Reduce `b` against `a` by positive twists.
    Reduce {
        #[arg(long)]
        surface: String,
        #[arg(long, allow_hyphen_values = true)]
        a: CurveArg,
        #[arg(long, allow_hyphen_values = true)]
        b: CurveArg,
        /// Per-step crossing counts as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Write a twist word as a positive word times pants twists.
    Factorize {
        #[arg(long)]
        surface: String,
        /// Word JSON.
        #[arg(long)]
        word: PathBuf,
    },
    /// Check the length and intersection inequalities on a hyperbolic structure.
    Verify {
        suite: Suite,
        /// Fenchel–Nielsen structure JSON.
        #[arg(long = "fn")]
        structure: PathBuf,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Bound the twist count of a factorization in genus `g`.
    Estimate {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        radius: f64,
    },
}

/// Why a command stopped.
enum Failure {
    Input(String),
    Compute(String),
    Bound(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Geometry(_) | Error::Terminal(_) | Error::Budget(_) | Error::Certificate(_) => {
                Failure::Compute(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

#[derive(Serialize)]
struct SurfaceOut {
    format: u32,
    surface: SurfaceJson,
    generators: Vec<String>,
    interior: usize,
    pants_curves: Vec<CurveJson>,
    dual_curves: Vec<CurveJson>,
}

#[derive(Serialize)]
struct IntersectOut {
    format: u32,
    surface: String,
    geometric: usize,
    algebraic: Option<i64>,
    class: PairClass,
}

#[derive(Serialize)]
struct ReduceOut {
    format: u32,
    surface: String,
    word: Vec<LetterJson>,
    steps: Vec<ReductionStep>,
    class: PairClass,
    b_final: CurveRecord,
}

#[derive(Serialize)]
struct FactorizeOut {
    format: u32,
    surface: String,
    p: Vec<LetterJson>,
    q_exponents: Vec<i64>,
    certificate: Certificate,
    step_log: Vec<StepLog>,
}

#[derive(Serialize)]
struct EstimateOut {
    format: u32,
    #[serde(flatten)]
    estimate: ConstantEstimate,
    display: String,
}

fn surface_name(name: &str) -> Result<String, Failure> {
    let (s, _) = build_preset(name)?;
    Ok(s.name.clone())
}

fn run(cli: Cli) -> Outcome {
    let out = Emitter::new(cli.out.clone());
    match cli.cmd {
        Command::Surface { surface } => {
            let (s, sys) = build_preset(&surface)?;
            let curves = |cs: &[dehn_core::EmbeddedCurve]| -> Result<Vec<CurveJson>, Error> {
                cs.iter().map(CurveJson::from_curve).collect()
            };
            out.json(&SurfaceOut {
                format: FORMAT,
                surface: SurfaceJson::from_surface(&s),
                generators: s.generator_names.clone(),
                interior: sys.interior,
                pants_curves: curves(&sys.pants_curves)?,
                dual_curves: curves(&sys.dual_curves)?,
            })?;
        }
        Command::Intersect { surface, a, b } => {
            let (a, b) = (a.resolve(&surface)?, b.resolve(&surface)?);
            let geometric = geometric_intersection(&a, &b)?;
            let algebraic = if a.oriented && b.oriented { Some(algebraic_intersection(&a, &b)?) } else { None };
            println!("{geometric}");
            if cli.out.is_some() {
                out.json(&IntersectOut {
                    format: FORMAT,
                    surface: surface_name(&surface)?,
                    geometric,
                    algebraic,
                    class: classify_pair(&a, &b)?,
                })?;
            }
        }
        Command::Twist { surface, a, b, n } => {
            let (a, b) = (a.resolve(&surface)?, b.resolve(&surface)?);
            out.json(&CurveJson::from_curve(&apply_twist(&a, n, &b)?)?)?;
        }
        Command::Reduce { surface, a, b, csv } => {
            let (a, b) = (a.resolve(&surface)?, b.resolve(&surface)?);
            let red = reduce_pair(&a, &b)?;
            let name = surface_name(&surface)?;
            if let Some(path) = csv {
                output::write_steps_csv(&red.steps, &path)?;
            }
            out.json(&ReduceOut {
                format: FORMAT,
                word: WordJson::from_word(&name, &red.word).letters,
                surface: name,
                steps: red.steps,
                class: red.class,
                b_final: CurveRecord::from(&red.b_final),
            })?;
        }
        Command::Factorize { surface, word } => {
            let w: WordJson = serde_json::from_slice(&std::fs::read(&word)?)?;
            let name = surface_name(&surface)?;
            if surface_name(&w.surface)? != name {
                return Err(Failure::Input(format!("word lives on `{}`, not `{name}`", w.surface)));
            }
            let (_, sys) = build_preset(&name)?;
            let res = factorize(&w.to_word()?, &sys)?;
            out.json(&FactorizeOut {
                format: FORMAT,
                p: WordJson::from_word(&name, &res.p).letters,
                surface: name,
                q_exponents: res.q_exponents,
                certificate: res.certificate,
                step_log: res.step_log,
            })?;
        }
        Command::Verify { suite, structure, samples } => {
            let input: FnInput = serde_json::from_slice(&std::fs::read(&structure)?)?;
            let (st, _, sys) = build_from_input(&input)?;
            let rows = run_suite(&st, &sys, suite, cli.seed, samples)?;
            let mut buf = vec![];
            write_csv(&rows, &mut buf)?;
            out.bytes(&buf)?;
            if let Some(path) = &cli.emit_svg {
                std::fs::write(path, svg_histogram(&rows))?;
            }
            let failed = rows.iter().filter(|r| !r.pass).count();
            log::info!("{} rows, {failed} failed", rows.len());
            if failed > 0 {
                return Err(Failure::Bound(format!("{failed} of {} checks failed", rows.len())));
            }
        }
        Command::Estimate { genus, radius } => {
            let estimate = estimate_constant(genus, radius)?;
            out.json(&EstimateOut {
                format: FORMAT,
                display: format!("log C <= {}", estimate.log_value),
                estimate,
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("TWIST_LOG", "warn")).init();
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(4)
        }
        Err(Failure::Bound(m)) => {
            eprintln!("bound failure: {m}");
            ExitCode::from(5)
        }
    }
}

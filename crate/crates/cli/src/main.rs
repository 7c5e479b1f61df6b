mod args;
mod config;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use rainbow_core::harness::{DegreeCheck, DoublingCheck, Harness};
use rainbow_core::report::{emit_results, Results};
use rainbow_core::{engine, io, theory, Error, Model, ModelParams, SeedPlan, ThresholdEstimate};
use serde::Serialize;

use args::{Cli, Command, ScanArgs};

/// Why a run stopped early; each kind has its own exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(String),
    Io(String),
    NotConnected,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::NotConnected => 1,
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Domain(_) | Error::Capacity { .. } | Error::InvalidGraph(_) => {
                Failure::Domain(e.to_string())
            }
            _ => Failure::Io(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Domain(m) | Failure::Io(m) => eprintln!("error: {m}"),
                Failure::NotConnected => {}
            }
            ExitCode::from(f.code())
        }
    }
}

fn run() -> Result<(), Failure> {
    let argv = config::merge(std::env::args_os().collect())?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Sample { graph, trial } => {
            let params = graph
                .density
                .density()
                .params(graph.n, graph.s, graph.model.into())?;
            let plan = SeedPlan::new(cli.seed);
            let sampled: rainbow_core::AnyGraph = match params.model() {
                Model::Family => rainbow_core::sample_family(&params, &plan, *trial)?.into(),
                Model::Uniform => rainbow_core::sample_uniform(&params, &plan, *trial)?.into(),
            };
            match out {
                Some(path) => io::write_graph(&sampled, path)?,
                None => print_text(&io::format_graph(&sampled))?,
            }
        }
        Command::Check { file } => {
            let graph = io::read_graph(file)?;
            match engine::is_rainbow_connected(&graph)?.witness() {
                None => print_text("rainbow connected\n")?,
                Some((u, v)) => {
                    print_text(&format!(
                        "not rainbow connected: no rainbow path between {u} and {v}\n"
                    ))?;
                    return Err(Failure::NotConnected);
                }
            }
        }
        Command::Bounds { n, c } => write_json(&theory::bounds_report(*n, *c)?, out)?,
        Command::Firstmoment { n, s, density } => {
            let p = match (density.c, density.p) {
                (Some(c), _) => ModelParams::derive(*n as usize, *s, c, Model::Family)?.p(),
                (None, Some(p)) => p,
                (None, None) => unreachable!("clap requires one of --c and --p"),
            };
            write_json(&theory::expected_rainbow_paths(*n, *s, p)?, out)?;
        }
        Command::Threshold { scan, model } => {
            let harness = harness(&cli, scan)?;
            let outcome = harness.scan_threshold(
                scan.n,
                scan.density.density(),
                (*model).into(),
                scan.trials,
                cli.seed,
                scan.s_range,
            )?;
            if let Some(path) = out {
                emit_results(Results::Records(&outcome.records), path, cli.format.into())?;
            }
            write_json(&outcome.estimate, None)?;
        }
        Command::Compare { scan } => {
            let harness = harness(&cli, scan)?;
            let (family, uniform) = harness.compare_models(
                scan.n,
                scan.density.density(),
                scan.trials,
                cli.seed,
                scan.s_range,
            )?;
            let estimates = [family.estimate, uniform.estimate];
            if let Some(path) = out {
                emit_results(Results::Estimates(&estimates), path, cli.format.into())?;
            }
            let gap = estimates[0]
                .s_star
                .zip(estimates[1].s_star)
                .map(|(a, b)| a.abs_diff(b));
            if gap.is_none_or(|g| g > 1) {
                eprintln!(
                    "warning: thresholds differ by more than one (family {:?}, uniform {:?})",
                    estimates[0].s_star, estimates[1].s_star
                );
            }
            let [family, uniform] = estimates;
            write_json(
                &Comparison {
                    family,
                    uniform,
                    s_star_gap: gap,
                },
                None,
            )?;
        }
        Command::Lemmas {
            n,
            c,
            trials,
            sources,
            exclude,
            p,
        } => {
            let harness = Harness::new(cli.threads, false)?;
            let degree = harness.check_degree_lemma(*n, *c, *trials, cli.seed, *p)?;
            let doubling = harness.check_doubling_lemma(
                *n,
                *c,
                sources.unwrap_or(*trials as usize),
                *exclude,
                cli.seed,
                *p,
            )?;
            let doubling_held = doubling.iter().filter(|d| d.all_held()).count();
            write_json(
                &Lemmas {
                    degree,
                    doubling_held,
                    doubling,
                },
                out,
            )?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Comparison {
    family: ThresholdEstimate,
    uniform: ThresholdEstimate,
    s_star_gap: Option<usize>,
}

#[derive(Serialize)]
struct Lemmas {
    degree: DegreeCheck,
    doubling_held: usize,
    doubling: Vec<DoublingCheck>,
}

fn harness(cli: &Cli, scan: &ScanArgs) -> Result<Harness, Failure> {
    Ok(Harness::new(cli.threads, scan.timing)?)
}

fn print_text(text: &str) -> Result<(), Failure> {
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(text.as_bytes())
        .and_then(|()| stdout.flush())
        .map_err(|e| Failure::Io(format!("stdout: {e}")))
}

fn write_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => print_text(&text),
    }
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rainbow_core::harness::Density;
use rainbow_core::report::Format;
use rainbow_core::Model;

const GLOBAL: &str = "Global options";

/// Random edge-colored graphs and rainbow connectivity experiments.
#[derive(Debug, Parser)]
#[command(name = "rainbow", version, args_override_self = true)]
pub struct Cli {
    /// Worker threads for trial batches [default: available parallelism]
    #[arg(long, global = true, value_name = "K", help_heading = GLOBAL)]
    pub threads: Option<usize>,

    /// Master seed for all sampling
    #[arg(long, global = true, env = "RAINBOW_SEED", hide_env_values = true, default_value_t = 0, help_heading = GLOBAL)]
    pub seed: u64,

    /// File of `key = value` lines using the long flag names; flags given on
    /// the command line take precedence
    #[arg(long, global = true, value_name = "FILE", help_heading = GLOBAL)]
    pub config: Option<PathBuf>,

    /// Write results to FILE instead of stdout
    #[arg(long, global = true, value_name = "FILE", help_heading = GLOBAL)]
    pub out: Option<PathBuf>,

    /// Format of files written with --out
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv, help_heading = GLOBAL)]
    pub format: FormatArg,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample one graph and write it in edge-list form
    Sample {
        #[command(flatten)]
        graph: GraphArgs,
        /// Trial index within the seed plan
        #[arg(long, default_value_t = 0)]
        trial: u64,
    },
    /// Decide whether a graph file is rainbow connected (exit 1 if not)
    Check {
        /// Graph in edge-list form
        file: PathBuf,
    },
    /// Closed-form threshold bounds as JSON
    Bounds {
        /// Number of vertices (at least 16)
        #[arg(long)]
        n: u64,
        /// Density constant (greater than 1)
        #[arg(long)]
        c: f64,
    },
    /// Expected number of rainbow paths between two vertices, as JSON
    Firstmoment {
        /// Number of vertices
        #[arg(long)]
        n: u64,
        /// Number of colors
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        density: DensityArgs,
    },
    /// Success curve over a range of palette sizes
    Threshold {
        #[command(flatten)]
        scan: ScanArgs,
        /// Random model
        #[arg(long, value_enum, default_value_t = ModelArg::Family)]
        model: ModelArg,
    },
    /// Success curves of both models with paired seeds
    Compare {
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Layer-degree and sphere-doubling checks at s = s0(n, c)
    Lemmas {
        /// Number of vertices (at least 16)
        #[arg(long)]
        n: usize,
        /// Density constant (greater than 1)
        #[arg(long)]
        c: f64,
        /// Samples for the degree check
        #[arg(long)]
        trials: u64,
        /// Sources for the doubling check [default: --trials]
        #[arg(long)]
        sources: Option<usize>,
        /// Number of colors excluded in the doubling check
        #[arg(long, default_value_t = 0)]
        exclude: usize,
        /// Sample with this edge probability instead of the one c implies
        #[arg(long)]
        p: Option<f64>,
    },
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Number of vertices
    #[arg(long)]
    pub n: usize,
    /// Number of colors
    #[arg(long)]
    pub s: usize,
    #[command(flatten)]
    pub density: DensityArgs,
    /// Random model
    #[arg(long, value_enum, default_value_t = ModelArg::Family)]
    pub model: ModelArg,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct DensityArgs {
    /// Density constant; the edge probability follows the model
    #[arg(long)]
    pub c: Option<f64>,
    /// Edge probability, used as is
    #[arg(long)]
    pub p: Option<f64>,
}

impl DensityArgs {
    pub fn density(&self) -> Density {
        match (self.c, self.p) {
            (Some(c), _) => Density::Constant(c),
            (None, Some(p)) => Density::Probability(p),
            (None, None) => unreachable!("clap requires one of --c and --p"),
        }
    }
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Number of vertices
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub density: DensityArgs,
    /// Trials per palette size
    #[arg(long)]
    pub trials: u64,
    /// Palette sizes LO:HI (inclusive) [default: hint range for n]
    #[arg(long, value_name = "LO:HI", value_parser = parse_range)]
    pub s_range: Option<(usize, usize)>,
    /// Record wall-clock time per trial (makes output nondeterministic)
    #[arg(long)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModelArg {
    Family,
    Uniform,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Family => Model::Family,
            ModelArg::Uniform => Model::Uniform,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = text
        .split_once(':')
        .or_else(|| text.split_once("..="))
        .ok_or_else(|| format!("expected LO:HI, got {text:?}"))?;
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower end {lo:?}"))?;
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper end {hi:?}"))?;
    if lo == 0 || lo > hi {
        return Err(format!("range {lo}:{hi} must satisfy 1 <= LO <= HI"));
    }
    Ok((lo, hi))
}

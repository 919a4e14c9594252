use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use segskel_cli::{execute, CliError, GraphKind, RunConfig};
use segskel_core::{Closure, Variant};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphArg {
    Beta,
    Gg,
    Dt,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Lune,
    Circle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClosureArg {
    Open,
    Closed,
    Default,
}

/// Beta-skeletons, Gabriel graphs and Delaunay graphs of disjoint segments.
#[derive(Debug, Parser)]
#[command(name = "segskel", version)]
struct Args {
    /// Scene file: JSON {"segments": [[x1, y1, x2, y2], ...]} or text lines "x1 y1 x2 y2".
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "beta")]
    graph: GraphArg,
    /// Required with --graph beta.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, value_enum, default_value = "lune")]
    variant: VariantArg,
    #[arg(long, value_enum, default_value = "default")]
    closure: ClosureArg,
    /// Parameter-space resolution of the witness search, in (0, 0.5).
    #[arg(long, default_value_t = segskel_core::DEFAULT_EPSILON)]
    epsilon: f64,
    /// Intervals per generator axis in oracle mode.
    #[arg(long, default_value_t = 256)]
    grid: usize,
    /// Also write an SVG rendering here.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Write JSON here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Use the brute-force grid oracle instead of the solver.
    #[arg(long)]
    oracle: bool,
    /// Map the scene into the unit square before building the graph.
    #[arg(long)]
    normalize: bool,
}

impl From<Args> for RunConfig {
    fn from(a: Args) -> Self {
        RunConfig {
            input: a.input,
            graph: match a.graph {
                GraphArg::Beta => GraphKind::Beta,
                GraphArg::Gg => GraphKind::Gg,
                GraphArg::Dt => GraphKind::Dt,
            },
            beta: a.beta,
            variant: match a.variant {
                VariantArg::Lune => Variant::Lune,
                VariantArg::Circle => Variant::Circle,
            },
            closure: match a.closure {
                ClosureArg::Open => Some(Closure::Open),
                ClosureArg::Closed => Some(Closure::Closed),
                ClosureArg::Default => None,
            },
            epsilon: a.epsilon,
            grid: a.grid,
            svg: a.svg,
            output: a.output,
            oracle: a.oracle,
            normalize: a.normalize,
        }
    }
}

fn write(path: &PathBuf, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))
}

fn run(cfg: &RunConfig) -> Result<(), (i32, String)> {
    let out = execute(cfg).map_err(|e: CliError| (e.exit_code(), e.to_string()))?;
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    let emit = || -> anyhow::Result<()> {
        if let (Some(path), Some(svg)) = (&cfg.svg, &out.svg) {
            write(path, svg)?;
        }
        match &cfg.output {
            Some(path) => write(path, &out.json)?,
            None => print!("{}", out.json),
        }
        Ok(())
    };
    emit().map_err(|e| (1, e.to_string()))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&args.into()) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
    }
}

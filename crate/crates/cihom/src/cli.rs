//! Command-line front end. Every subcommand takes an experiment file; the
//! named grid subcommands simply restrict execution to blocks of that
//! kind, while `run` executes the whole file in order.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::experiment::parse_spec;
use crate::runner::{run_spec, RunOptions, RunOutcome};

#[derive(Parser, Debug)]
#[command(
    name = "cihom",
    version,
    about = "Depth, grade, and Bass-number grids for Ext modules over complete intersections"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug)]
struct FileArgs {
    /// Experiment file declaring the ring, ideals, modules, and commands.
    file: PathBuf,

    /// Worker threads for grid evaluation. Output is identical for any
    /// value; only wall-clock time changes.
    #[arg(long, default_value_t = 1)]
    threads: usize,

    /// Directory artifact paths in the file are resolved against
    /// (default: the directory containing the experiment file).
    #[arg(long)]
    out_dir: Option<PathBuf>,

    /// Internal degree bound for probe resolutions; the engine extends
    /// past it on demand, so this only pre-sizes caches.
    #[arg(long, default_value_t = 8)]
    probe_degree: usize,

    /// Reserved for randomized self-checks; accepted and recorded but not
    /// used by any current command.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Execute every command block in the file, in order.
    Run(FileArgs),
    /// Execute only the depth-grid blocks.
    DepthGrid(FileArgs),
    /// Execute only the grade-grid blocks.
    GradeGrid(FileArgs),
    /// Execute only the bass-grid blocks.
    BassGrid(FileArgs),
    /// Execute only the series-check blocks.
    SeriesCheck(FileArgs),
    /// Execute only the fit blocks.
    Fit(FileArgs),
    /// Execute only the ext blocks.
    Ext(FileArgs),
    /// Execute only the resolve blocks.
    Resolve(FileArgs),
    /// Execute only the gb blocks.
    Gb(FileArgs),
}

impl Cmd {
    fn split(self) -> (Option<&'static str>, FileArgs) {
        match self {
            Cmd::Run(a) => (None, a),
            Cmd::DepthGrid(a) => (Some("depth-grid"), a),
            Cmd::GradeGrid(a) => (Some("grade-grid"), a),
            Cmd::BassGrid(a) => (Some("bass-grid"), a),
            Cmd::SeriesCheck(a) => (Some("series-check"), a),
            Cmd::Fit(a) => (Some("fit"), a),
            Cmd::Ext(a) => (Some("ext"), a),
            Cmd::Resolve(a) => (Some("resolve"), a),
            Cmd::Gb(a) => (Some("gb"), a),
        }
    }
}

fn execute(only: Option<&'static str>, args: FileArgs) -> Result<RunOutcome, Error> {
    let text = std::fs::read_to_string(&args.file).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("cannot read {}: {}", args.file.display(), e),
        ))
    })?;
    let spec = parse_spec(&text)?;
    let out_dir = match args.out_dir {
        Some(d) => d,
        None => args
            .file
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .map(|p| p.to_path_buf())
            .unwrap_or_else(|| PathBuf::from(".")),
    };
    let opts = RunOptions {
        threads: args.threads.max(1),
        only: only.map(|s| s.to_string()),
        out_dir,
    };
    run_spec(&spec, &opts)
}

/// Binary entry point: 0 on success, 1 on any engine or input error, 2
/// when every block ran but some stability or check verdict was negative.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let (only, args) = cli.command.split();
    match execute(only, args) {
        Ok(outcome) => {
            for line in &outcome.lines {
                println!("{}", line);
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use viscdamp::io::{diagnostics_csv, parse_config, spectral_csv, write_snapshot, write_text, FailureRecord, RunConfig, Snapshot};
use viscdamp::solver::{init, residual, run_observed, BoundarySet, Discretization, Grid2D};
use viscdamp::spectral::{spectral_table, DEFAULT_SAMPLES};
use viscdamp::{Error, SchemeKind, SchemeSpec};

/// Sixth-order viscous schemes: spectral analysis and a 2D compressible
/// Navier-Stokes solver.
#[derive(Parser)]
#[command(name = "viscdamp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Configuration file (alternative to the positional argument).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Directory for output files, overriding `output_dir`.
    #[arg(long, global = true, value_name = "PATH")]
    output_dir: Option<PathBuf>,

    /// Viscous scheme, overriding the configuration.
    #[arg(long, global = true, value_name = "SCHEME")]
    viscous: Option<SchemeKind>,

    /// Suppress progress output.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation and write snapshots and diagnostics.
    Run {
        #[arg(value_name = "CONFIG")]
        file: Option<PathBuf>,
    },
    /// Write the Fourier symbols of the viscous schemes as CSV.
    Analyze {
        /// Comma-separated scheme names.
        #[arg(long, value_delimiter = ',', default_value = "shen6,alpha6,alpha4")]
        schemes: Vec<SchemeKind>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Output file (default: spectral.csv in the output directory).
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Apply each viscous operator to an odd-even velocity field and print
    /// the residual amplitude in units of μ·A/Δy².
    DemoOddeven {
        #[arg(value_name = "CONFIG")]
        file: Option<PathBuf>,
    },
}

enum Failure {
    Error(Error),
    /// The run halted; the record has already been written.
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Runtime(msg)) => {
            eprintln!("error[runtime]: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Error(e)) => {
            let (tag, code) = match &e {
                Error::Config { .. } | Error::Usage(_) => ("config", 2),
                e if e.is_runtime_failure() => ("runtime", 3),
                Error::Io { .. } => ("io", 1),
                _ => ("error", 1),
            };
            eprintln!("error[{tag}]: {e}");
            ExitCode::from(code)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Run { file } => run(cli, load_config(cli, file.as_deref())?),
        Command::Analyze { schemes, samples, output } => analyze(cli, schemes, *samples, output.as_deref()),
        Command::DemoOddeven { file } => demo_oddeven(cli, &load_config(cli, file.as_deref())?),
    }
}

fn load_config(cli: &Cli, positional: Option<&Path>) -> Result<RunConfig, Error> {
    let path = match (positional, cli.config.as_deref()) {
        (Some(p), None) | (None, Some(p)) => p,
        (Some(_), Some(_)) => return Err(Error::Usage("give the configuration either positionally or with --config".into())),
        (None, None) => return Err(Error::Usage("a configuration file is required".into())),
    };
    let text = fs::read_to_string(path).map_err(|e| Error::Io { path: path.to_path_buf(), source: e })?;
    let mut config = parse_config(&text)?;
    if let Some(kind) = cli.viscous {
        config = config.with_viscous(kind)?;
    }
    if let Some(dir) = &cli.output_dir {
        config.output_dir = dir.clone();
    }
    Ok(config)
}

fn create_dir(dir: &Path) -> Result<(), Error> {
    fs::create_dir_all(dir).map_err(|e| Error::Io { path: dir.to_path_buf(), source: e })
}

fn run(cli: &Cli, config: RunConfig) -> Result<(), Failure> {
    let disc = config.discretization();
    let initial = config.initial_state()?;
    let dir = &config.output_dir;
    create_dir(dir)?;
    let quiet = cli.quiet;
    let report = run_observed(initial, &disc, &config.run_options(), |step, state| {
        if !quiet && step % 100 == 0 {
            eprintln!("step {step:>6}  t = {:.6}", state.time);
        }
    })?;
    if config.formats.snapshots {
        for s in &report.snapshots {
            let path = dir.join(format!("snapshot_t{:.4}.csv", s.time));
            write_snapshot(&Snapshot::from_state(s, &config.gas), &path)?;
        }
    }
    if config.formats.diagnostics {
        write_text(&dir.join("diagnostics.csv"), &diagnostics_csv(&report.diagnostics))?;
    }
    if let Some(failure) = &report.failure {
        write_snapshot(&Snapshot::from_state(&report.final_state, &config.gas), &dir.join("snapshot_failure.csv"))?;
        let record = FailureRecord::new(failure, config.viscous.name());
        write_text(&dir.join("failure.json"), &record.to_json())?;
        return Err(Failure::Runtime(format!(
            "run halted at step {} after t = {}: {}",
            failure.step, failure.time, failure.error
        )));
    }
    if !quiet {
        println!(
            "{} steps to t = {}; {} snapshot(s) in {}",
            report.steps,
            report.final_state.time,
            report.snapshots.len(),
            dir.display()
        );
    }
    Ok(())
}

fn analyze(cli: &Cli, schemes: &[SchemeKind], samples: usize, output: Option<&Path>) -> Result<(), Failure> {
    let specs: Vec<SchemeSpec> = schemes.iter().map(|&k| SchemeSpec::default_for(k)).collect();
    let table = spectral_table(&specs, samples)?;
    let path = match output {
        Some(p) => p.to_path_buf(),
        None => {
            let dir = cli.output_dir.clone().unwrap_or_else(|| PathBuf::from("."));
            create_dir(&dir)?;
            dir.join("spectral.csv")
        }
    };
    write_text(&path, &spectral_csv(&table))?;
    if !cli.quiet {
        println!("wrote {} samples for {} scheme(s) to {}", samples, specs.len(), path.display());
    }
    Ok(())
}

fn demo_oddeven(cli: &Cli, config: &RunConfig) -> Result<(), Failure> {
    let mu = config.gas.mu;
    if !(mu > 0.0) {
        return Err(Error::Config { line: None, key: "mu".into(), message: "the odd-even demo needs a positive viscosity".into() }.into());
    }
    let kinds: Vec<SchemeKind> = match cli.viscous {
        Some(k) => vec![k],
        None => vec![SchemeKind::Shen6, SchemeKind::AlphaDamping6, SchemeKind::AlphaDamping4],
    };
    let ghost = kinds.iter().map(|k| k.radius()).max().unwrap_or(3);
    let ny = config.ny + config.ny % 2;
    let grid = Grid2D::new(config.nx.max(ghost), ny.max(2 * ghost), config.x_bounds, config.y_bounds, ghost)?;
    let amplitude = if config.amplitude != 0.0 { config.amplitude } else { 0.01 };
    let state = init::checkerboard(grid, &config.gas, amplitude)?;
    let unit = mu * amplitude / grid.dy().powi(2);
    for kind in kinds {
        let disc = Discretization {
            convective: false,
            ..Discretization::navier_stokes(config.gas, SchemeSpec::default_for(kind), BoundarySet::periodic())
        };
        let res = residual(&state, &disc)?;
        let amp = res.iter().map(|r| r[1].abs()).fold(0.0, f64::max) / unit;
        println!("{} {:?}", kind.name(), amp);
    }
    Ok(())
}

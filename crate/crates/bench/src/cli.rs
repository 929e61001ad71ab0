//! `evrp bench` and `evrp gen`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use evrp_core::instance::serialize_instance;
use evrp_core::{generate_random_instance, parse_instance, Instance64};

use crate::report::Solver;
use crate::runner::{run_grid, SolverSettings};
use crate::BenchError;

#[derive(Debug, Parser)]
#[command(
    name = "evrp",
    version,
    about = "Electric vehicle routing solvers and benchmark harness"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run solvers over instance files and print a CSV report.
    Bench(Box<BenchArgs>),
    /// Write a random instance file.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated instance files.
    #[arg(long, value_delimiter = ',', required = true)]
    pub instances: Vec<PathBuf>,
    /// Comma-separated solvers: ga, nn, tabu, aco, exact.
    #[arg(long, value_delimiter = ',', required = true)]
    pub solvers: Vec<String>,
    /// Number of seeds; runs seeds 0..n.
    #[arg(long)]
    pub seeds: u64,
    #[arg(long)]
    pub pop: Option<usize>,
    #[arg(long)]
    pub generations: Option<usize>,
    /// Tabu and ant colony iterations.
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub ants: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long = "tournament-k")]
    pub tournament_k: Option<usize>,
    #[arg(long = "crossover-rate")]
    pub crossover_rate: Option<f64>,
    #[arg(long = "mutation-rate")]
    pub mutation_rate: Option<f64>,
    #[arg(long)]
    pub elite: Option<usize>,
    #[arg(long)]
    pub tenure: Option<usize>,
    /// Swap moves sampled per tabu iteration.
    #[arg(long)]
    pub neighborhood: Option<usize>,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Evaluate candidate solutions concurrently (results are unchanged).
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub customers: usize,
    #[arg(long)]
    pub stations: usize,
    #[arg(long)]
    pub seed: u64,
    /// Side of the square the nodes are scattered on.
    #[arg(long, default_value_t = 100.0)]
    pub side: f64,
    #[arg(long)]
    pub out: PathBuf,
}

impl BenchArgs {
    pub fn settings(&self) -> SolverSettings {
        let mut s = SolverSettings::default().with_parallel(self.parallel);
        macro_rules! set {
            ($flag:ident => $($field:expr),+) => {
                if let Some(v) = self.$flag {
                    $($field = v;)+
                }
            };
        }
        set!(pop => s.ga.population_size);
        set!(generations => s.ga.generations);
        set!(tournament_k => s.ga.tournament_k);
        set!(crossover_rate => s.ga.crossover_rate);
        set!(mutation_rate => s.ga.mutation_rate);
        set!(elite => s.ga.elite_count);
        set!(iterations => s.tabu.iterations, s.aco.iterations);
        set!(tenure => s.tabu.tenure);
        set!(neighborhood => s.tabu.neighborhood_sample);
        set!(ants => s.aco.ants);
        set!(alpha => s.aco.alpha);
        set!(beta => s.aco.beta);
        set!(rho => s.aco.rho);
        s
    }
}

pub fn load_instance(path: &Path) -> Result<Instance64, BenchError> {
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => BenchError::FileNotFound(path.to_path_buf()),
        _ => BenchError::Io(e),
    })?;
    parse_instance(&text).map_err(|source| BenchError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn check_settings(settings: &SolverSettings, solvers: &[Solver]) -> Result<(), BenchError> {
    let flag = |e: evrp_core::Error| BenchError::InvalidFlagValue(e.to_string());
    for solver in solvers {
        match solver {
            Solver::Ga => settings.ga.validate().map_err(flag)?,
            Solver::Tabu => settings.tabu.validate().map_err(flag)?,
            Solver::Aco => settings.aco.validate().map_err(flag)?,
            Solver::Nn | Solver::Exact => {}
        }
    }
    Ok(())
}

/// Returns true when every cell succeeded.
pub fn bench(
    args: &BenchArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<bool, BenchError> {
    let solvers = args
        .solvers
        .iter()
        .map(|s| s.parse::<Solver>())
        .collect::<Result<Vec<_>, _>>()?;
    if args.seeds == 0 {
        return Err(BenchError::InvalidFlagValue(
            "--seeds must be at least 1".into(),
        ));
    }
    let settings = args.settings();
    check_settings(&settings, &solvers)?;
    let instances = args
        .instances
        .iter()
        .map(|p| Ok((p.display().to_string(), load_instance(p)?)))
        .collect::<Result<Vec<_>, BenchError>>()?;
    let seeds: Vec<u64> = (0..args.seeds).collect();

    let (report, failures) = run_grid(&instances, &solvers, &seeds, &settings);
    let csv = report.to_csv()?;
    match &args.out {
        Some(path) => std::fs::write(path, &csv)?,
        None => out.write_all(csv.as_bytes())?,
    }
    for f in &failures {
        writeln!(
            err,
            "error: {} / {} / seed {}: {}",
            f.instance, f.solver, f.seed, f.error
        )?;
    }
    Ok(failures.is_empty())
}

pub fn gen(args: &GenArgs, out: &mut dyn Write) -> Result<(), BenchError> {
    let instance: Instance64 =
        generate_random_instance(args.customers, args.stations, args.seed, args.side)?;
    std::fs::write(&args.out, serialize_instance(&instance))?;
    writeln!(out, "{}", args.out.display())?;
    Ok(())
}

/// Runs the CLI and returns the process exit code: 0 on success, 1 on any
/// error.
pub fn run<I, A>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            if informational {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{e}");
            return 1;
        }
    };
    let result = match &cli.command {
        Command::Bench(a) => bench(a, out, err),
        Command::Gen(a) => gen(a, out).map(|()| true),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

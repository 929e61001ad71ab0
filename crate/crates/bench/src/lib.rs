//! Benchmark harness for the EVRP solvers: runs a grid of
//! (instance, solver, seed) cells and reports fitness and wall time as CSV.

pub mod cli;
pub mod report;
pub mod runner;

use std::path::PathBuf;

use thiserror::Error;

pub use report::{mask_wall_time, BenchReport, BenchRow, Solver};
pub use runner::{run_grid, run_solver, SolverSettings};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),
    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        source: evrp_core::ParseError,
    },
    #[error("unknown solver `{0}` (expected one of ga, nn, tabu, aco, exact)")]
    UnknownSolver(String),
    #[error("invalid flag value: {0}")]
    InvalidFlagValue(String),
    #[error(transparent)]
    Solver(#[from] evrp_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("malformed report: {0}")]
    BadReport(String),
}

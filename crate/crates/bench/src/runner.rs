use std::time::Instant;

use evrp_core::aco::AcoConfig;
use evrp_core::ga::GaConfig;
use evrp_core::tabu::TabuConfig;
use evrp_core::{
    brute_force_best, evaluate_genome, nearest_neighbor_genome, run_aco, run_ga, run_tabu,
    Evaluation, Instance64,
};

use crate::report::{BenchReport, BenchRow, Solver};
use crate::BenchError;

/// Hyperparameters for every solver; seeds are overridden per cell.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolverSettings {
    pub ga: GaConfig,
    pub tabu: TabuConfig,
    pub aco: AcoConfig,
}

impl SolverSettings {
    /// Turns concurrent fitness evaluation on or off for all solvers.
    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.ga.parallel = parallel;
        self.tabu.parallel = parallel;
        self.aco.parallel = parallel;
        self
    }
}

/// Best evaluation of one solver run, and the solver's wall time in seconds.
pub fn run_solver(
    instance: &Instance64,
    solver: Solver,
    seed: u64,
    settings: &SolverSettings,
) -> Result<(Evaluation<f64>, f64), BenchError> {
    let start = Instant::now();
    let evaluation = match solver {
        Solver::Ga => {
            let cfg = GaConfig {
                seed,
                ..settings.ga.clone()
            };
            *run_ga(instance, &cfg)?.best.evaluation()
        }
        Solver::Tabu => {
            let cfg = TabuConfig {
                seed,
                ..settings.tabu.clone()
            };
            *run_tabu(instance, &cfg)?.best.evaluation()
        }
        Solver::Aco => {
            let cfg = AcoConfig {
                seed,
                ..settings.aco.clone()
            };
            *run_aco(instance, &cfg)?.best.evaluation()
        }
        Solver::Nn => evaluate_genome(instance, &nearest_neighbor_genome(instance))?,
        Solver::Exact => brute_force_best(instance)?.1,
    };
    Ok((evaluation, start.elapsed().as_secs_f64()))
}

/// A cell that could not be computed.
#[derive(Debug)]
pub struct CellFailure {
    pub instance: String,
    pub solver: Solver,
    pub seed: u64,
    pub error: BenchError,
}

/// Runs every (instance, solver, seed) cell in report order: instances as
/// listed, then solvers as listed, then ascending seed. Failed cells are
/// left out of the report and returned separately.
pub fn run_grid(
    instances: &[(String, Instance64)],
    solvers: &[Solver],
    seeds: &[u64],
    settings: &SolverSettings,
) -> (BenchReport, Vec<CellFailure>) {
    let mut seeds = seeds.to_vec();
    seeds.sort_unstable();
    let mut report = BenchReport::default();
    let mut failures = Vec::new();
    for (name, instance) in instances {
        for &solver in solvers {
            for &seed in &seeds {
                match run_solver(instance, solver, seed, settings) {
                    Ok((eval, secs)) => report.rows.push(BenchRow::new(
                        name.clone(),
                        solver,
                        seed,
                        eval.fitness,
                        eval.is_feasible(),
                        secs,
                    )),
                    Err(error) => failures.push(CellFailure {
                        instance: name.clone(),
                        solver,
                        seed,
                        error,
                    }),
                }
            }
        }
    }
    (report, failures)
}

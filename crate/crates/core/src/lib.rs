//! Electric vehicle routing (EVRP) solvers over a shared permutation encoding.
//!
//! Every solver searches the space of customer permutations ([`Genome`]s).
//! A deterministic battery-aware decoder turns a genome into depot-delimited
//! routes with charging-station detours, and the evaluator scores the routes
//! as distance plus penalties for battery and cargo violations.
//!
//! - [`instance`]: problem model, text format, random generator.
//! - [`solution`]: genome, decoder, evaluation.
//! - [`constructive`]: nearest-neighbor construction.
//! - [`ga`]: generational genetic algorithm (the main solver).
//! - [`tabu`]: tabu search over swap moves.
//! - [`aco`]: ant colony optimization.
//! - [`oracle`]: brute-force optimum for small instances.
//!
//! The numeric core is generic over the [`Scalar`] float type. The aliases
//! below pin the common `f64` and `f32` instantiations.

pub mod aco;
pub mod constructive;
mod error;
pub mod ga;
pub mod instance;
pub mod oracle;
pub mod rng;
mod scalar;
pub mod solution;
pub mod tabu;

pub use error::{Error, ParseError, ParseErrorKind};
pub use scalar::Scalar;

pub use aco::{run_aco, AcoConfig, PheromoneMatrix};
pub use constructive::nearest_neighbor_genome;
pub use ga::{run_ga, GaConfig, GaResult, Individual, Population};
pub use instance::{generate_random_instance, parse_instance, Instance, Node, NodeId, NodeKind};
pub use oracle::brute_force_best;
pub use solution::{decode, evaluate, evaluate_genome, Evaluation, Genome, RoutePlan};
pub use tabu::{run_tabu, TabuConfig, TabuMemory};

/// Result of a trajectory-based solver run (tabu search, ant colony).
pub use solution::SearchResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub type Instance64 = Instance<f64>;
pub type Instance32 = Instance<f32>;
pub type Node64 = Node<f64>;
pub type Node32 = Node<f32>;
pub type Evaluation64 = Evaluation<f64>;
pub type Evaluation32 = Evaluation<f32>;
pub type Individual64 = Individual<f64>;
pub type Individual32 = Individual<f32>;
pub type Population64 = Population<f64>;
pub type Population32 = Population<f32>;
pub type GaResult64 = GaResult<f64>;
pub type GaResult32 = GaResult<f32>;
pub type SearchResult64 = SearchResult<f64>;
pub type SearchResult32 = SearchResult<f32>;
pub type PheromoneMatrix64 = PheromoneMatrix<f64>;
pub type PheromoneMatrix32 = PheromoneMatrix<f32>;

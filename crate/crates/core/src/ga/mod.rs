//! Generational genetic algorithm over customer permutations.
//!
//! Tournament selection, order crossover, swap mutation and elitist
//! replacement. The population is re-sorted canonically (fitness, then
//! genome) every generation, so a run depends only on the instance and the
//! configuration, including the seed.
//!
//! All random draws for a generation happen up front on the calling thread.
//! Per offspring the order is: `k` tournament indices for parent 1, `k` for
//! parent 2, the crossover coin, two cut points (only if crossover fires),
//! the mutation coin, two swap positions (only if mutation fires and the
//! genome has at least two genes). Offspring are then scored, optionally in
//! parallel, and merged in index order.

mod operators;
mod population;

pub use operators::{order_crossover, swap_mutation};
pub use population::{Individual, Population};

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::constructive::nearest_neighbor_genome;
use crate::instance::Instance;
use crate::rng::{self, SolverRng};
use crate::solution::{evaluate_batch, Genome, SearchResult};
use crate::{Error, Result, Scalar};

pub type GaResult<T = f64> = SearchResult<T>;

#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub tournament_k: usize,
    pub crossover_rate: f64,
    /// Probability that an offspring receives one swap.
    pub mutation_rate: f64,
    pub elite_count: usize,
    pub seed: u64,
    /// Score offspring on the rayon pool. Results are identical either way.
    pub parallel: bool,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            generations: 1000,
            tournament_k: 3,
            crossover_rate: 0.9,
            mutation_rate: 0.2,
            elite_count: 2,
            seed: 0,
            parallel: false,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 1 {
            return Err(Error::PopulationTooSmall);
        }
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return bad("crossover rate must be in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return bad("mutation rate must be in [0, 1]");
        }
        if self.tournament_k < 1 || self.tournament_k > self.population_size {
            return bad("tournament size must be in [1, population size]");
        }
        if self.elite_count >= self.population_size {
            return bad("elite count must be below the population size");
        }
        Ok(())
    }
}

/// Initial population from the stream seeded with `config.seed`.
pub fn init_population<T: Scalar>(
    instance: &Instance<T>,
    config: &GaConfig,
) -> Result<Population<T>> {
    init_population_with(instance, config, &mut rng::seeded(config.seed))
}

/// Member 0 is the nearest-neighbor genome; the rest are uniform shuffles
/// of the customer list, drawn in member order from `rng`.
pub fn init_population_with<T: Scalar>(
    instance: &Instance<T>,
    config: &GaConfig,
    rng: &mut SolverRng,
) -> Result<Population<T>> {
    config.validate()?;
    let mut genomes = Vec::with_capacity(config.population_size);
    genomes.push(nearest_neighbor_genome(instance));
    for _ in 1..config.population_size {
        let mut order = instance.customers().to_vec();
        order.shuffle(rng);
        genomes.push(Genome::new(order));
    }
    Ok(Population::new(
        evaluate_batch(instance, genomes, config.parallel),
        0,
    ))
}

/// Index of the winner among `k` uniform draws with replacement.
///
/// The population is canonically sorted, so the lowest drawn index is also
/// the fittest contestant, earliest on ties.
pub fn tournament_index<T: Scalar>(
    population: &Population<T>,
    k: usize,
    rng: &mut SolverRng,
) -> usize {
    let n = population.len();
    (0..k.max(1))
        .map(|_| rng.gen_range(0..n))
        .min_by(|&a, &b| {
            let (ia, ib) = (&population.members()[a], &population.members()[b]);
            ia.canonical_cmp(ib).then(a.cmp(&b))
        })
        .expect("at least one draw")
}

pub fn tournament_select<'p, T: Scalar>(
    population: &'p Population<T>,
    k: usize,
    rng: &mut SolverRng,
) -> &'p Individual<T> {
    &population.members()[tournament_index(population, k, rng)]
}

/// Breeds one offspring genome. See the module docs for the draw order.
fn breed<T: Scalar>(
    population: &Population<T>,
    config: &GaConfig,
    bound: usize,
    rng: &mut SolverRng,
) -> Genome {
    let p1 = tournament_index(population, config.tournament_k, rng);
    let p2 = tournament_index(population, config.tournament_k, rng);
    let a = population.members()[p1].genome().order();
    let b = population.members()[p2].genome().order();
    let n = a.len();

    let mut child = if rng.gen::<f64>() < config.crossover_rate {
        let x = rng.gen_range(0..=n);
        let y = rng.gen_range(0..=n);
        operators::ox_fill(a, b, x.min(y), x.max(y), bound)
    } else {
        a.to_vec()
    };
    if rng.gen::<f64>() < config.mutation_rate && n >= 2 {
        let (i, j) = rng::distinct_pair(rng, n);
        child.swap(i, j);
    }
    Genome::new(child)
}

/// One generation: keep the elites, breed the rest, re-sort.
pub fn evolve_generation<T: Scalar>(
    instance: &Instance<T>,
    population: &Population<T>,
    config: &GaConfig,
    rng: &mut SolverRng,
) -> Population<T> {
    let size = population.len();
    let elites = config.elite_count.min(size);
    let bound = instance.node_count();
    let offspring: Vec<Genome> = (elites..size)
        .map(|_| breed(population, config, bound, rng))
        .collect();

    let mut members = population.members()[..elites].to_vec();
    members.extend(evaluate_batch(instance, offspring, config.parallel));
    Population::new(members, population.generation() + 1)
}

/// Runs the GA for `config.generations` generations.
///
/// `history[0]` is the best initial fitness, followed by one entry per
/// generation. Entries are best-so-far values, so they never increase.
pub fn run_ga<T: Scalar>(instance: &Instance<T>, config: &GaConfig) -> Result<GaResult<T>> {
    let start = Instant::now();
    let mut rng = rng::seeded(config.seed);
    let mut population = init_population_with(instance, config, &mut rng)?;
    let mut best = population.best().clone();
    let mut history = Vec::with_capacity(config.generations + 1);
    history.push(best.fitness());
    for _ in 0..config.generations {
        population = evolve_generation(instance, &population, config, &mut rng);
        if population.best().canonical_cmp(&best).is_lt() {
            best = population.best().clone();
        }
        history.push(best.fitness());
    }
    Ok(GaResult {
        best,
        history,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

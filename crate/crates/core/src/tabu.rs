//! Tabu search over sampled swap moves.
//!
//! Starts from the nearest-neighbor genome. Every iteration samples a fixed
//! number of position swaps, takes the best admissible one even when it
//! worsens the current solution, and forbids swapping the same two
//! customers again for `tenure` iterations. A forbidden move is still
//! admissible if it beats the best solution found so far.

use std::collections::HashMap;
use std::time::Instant;

use crate::constructive::nearest_neighbor_genome;
use crate::ga::Individual;
use crate::instance::{Instance, NodeId};
use crate::rng::{self, SolverRng};
use crate::solution::{evaluate_batch, evaluate_valid, Genome, SearchResult};
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct TabuConfig {
    pub iterations: usize,
    /// Swap moves sampled per iteration.
    pub neighborhood_sample: usize,
    pub tenure: usize,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for TabuConfig {
    fn default() -> Self {
        Self {
            iterations: 1000,
            neighborhood_sample: 50,
            tenure: 10,
            seed: 0,
            parallel: false,
        }
    }
}

impl TabuConfig {
    pub fn validate(&self) -> Result<()> {
        if self.neighborhood_sample < 1 {
            return Err(Error::InvalidConfig(
                "neighborhood sample must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Unordered pair of customer ids.
pub type MovePair = (NodeId, NodeId);

fn pair(a: NodeId, b: NodeId) -> MovePair {
    (a.min(b), a.max(b))
}

/// Swapped customer pairs and the iteration at which each stops being tabu.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TabuMemory {
    forbidden: HashMap<MovePair, usize>,
}

impl TabuMemory {
    pub fn new() -> Self {
        Self::default()
    }

    /// Forbids swapping `a` and `b` during iterations `iteration + 1 ..=
    /// iteration + tenure`.
    pub fn forbid(&mut self, a: NodeId, b: NodeId, iteration: usize, tenure: usize) {
        self.forbidden.insert(pair(a, b), iteration + tenure + 1);
        // keep the table from growing without bound on long runs
        if self.forbidden.len() > 4096 {
            self.forbidden.retain(|_, &mut expiry| expiry > iteration);
        }
    }

    pub fn is_tabu(&self, a: NodeId, b: NodeId, iteration: usize) -> bool {
        self.forbidden
            .get(&pair(a, b))
            .is_some_and(|&expiry| expiry > iteration)
    }
}

/// A sampled neighbor: the customers it swaps and its fitness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate<T> {
    pub swapped: MovePair,
    pub fitness: T,
}

/// Index of the best admissible candidate, earliest on ties. Tabu candidates
/// are admissible only when strictly better than `best_fitness`.
pub fn select_move<T: Scalar>(
    candidates: &[Candidate<T>],
    memory: &TabuMemory,
    iteration: usize,
    best_fitness: T,
) -> Option<usize> {
    let mut chosen: Option<usize> = None;
    for (k, cand) in candidates.iter().enumerate() {
        let (a, b) = cand.swapped;
        if memory.is_tabu(a, b, iteration) && cand.fitness >= best_fitness {
            continue;
        }
        if chosen.is_none_or(|c| cand.fitness < candidates[c].fitness) {
            chosen = Some(k);
        }
    }
    chosen
}

/// Runs tabu search. `history[0]` is the starting fitness, then one
/// best-so-far value per iteration.
pub fn run_tabu<T: Scalar>(instance: &Instance<T>, config: &TabuConfig) -> Result<SearchResult<T>> {
    config.validate()?;
    let start = Instant::now();
    let mut rng = rng::seeded(config.seed);
    let start_genome = nearest_neighbor_genome(instance);
    let start_eval = evaluate_valid(instance, &start_genome);
    let mut current = Individual::from_parts(start_genome, start_eval);
    let mut best = current.clone();
    let mut memory = TabuMemory::new();
    let mut history = Vec::with_capacity(config.iterations + 1);
    history.push(best.fitness());

    let n = current.genome().len();
    for iteration in 1..=config.iterations {
        if n >= 2 {
            if let Some(next) = step(
                instance,
                config,
                &current,
                &best,
                &mut memory,
                iteration,
                &mut rng,
            ) {
                current = next;
                if current.fitness() < best.fitness() {
                    best = current.clone();
                }
            }
        }
        history.push(best.fitness());
    }
    Ok(SearchResult {
        best,
        history,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

fn step<T: Scalar>(
    instance: &Instance<T>,
    config: &TabuConfig,
    current: &Individual<T>,
    best: &Individual<T>,
    memory: &mut TabuMemory,
    iteration: usize,
    rng: &mut SolverRng,
) -> Option<Individual<T>> {
    let order = current.genome().order();
    let mut swaps = Vec::with_capacity(config.neighborhood_sample);
    let mut neighbors = Vec::with_capacity(config.neighborhood_sample);
    for _ in 0..config.neighborhood_sample {
        let (i, j) = rng::distinct_pair(rng, order.len());
        let mut next = order.to_vec();
        next.swap(i, j);
        swaps.push(pair(order[i], order[j]));
        neighbors.push(Genome::new(next));
    }
    let mut scored = evaluate_batch(instance, neighbors, config.parallel);
    let candidates: Vec<Candidate<T>> = swaps
        .iter()
        .zip(&scored)
        .map(|(&swapped, ind)| Candidate {
            swapped,
            fitness: ind.fitness(),
        })
        .collect();
    let k = select_move(&candidates, memory, iteration, best.fitness())?;
    let (a, b) = candidates[k].swapped;
    memory.forbid(a, b, iteration, config.tenure);
    Some(scored.swap_remove(k))
}

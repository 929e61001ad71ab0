//! Ant colony optimization over customer orders.
//!
//! Trails live on arcs between the depot and customers; stations are left to
//! the decoder. Each iteration every ant builds a tour with the
//! random-proportional rule, all trails evaporate, and the best tour found so
//! far gets a deposit of `1 / fitness` on each of its arcs, including the two
//! depot arcs. Trails never drop below `tau_min`.

use std::time::Instant;

use rand::Rng;

use crate::constructive::nearest_neighbor_genome;
use crate::ga::Individual;
use crate::instance::{Instance, NodeId, NodeKind, DEPOT};
use crate::rng::{self, SolverRng};
use crate::solution::{evaluate_batch, evaluate_valid, Genome, SearchResult};
use crate::{Error, Result, Scalar};

const MIN_ARC_LENGTH: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct AcoConfig {
    pub ants: usize,
    pub iterations: usize,
    /// Pheromone exponent.
    pub alpha: f64,
    /// Inverse-distance exponent.
    pub beta: f64,
    /// Fraction of trail lost per iteration.
    pub rho: f64,
    pub tau_min: f64,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for AcoConfig {
    fn default() -> Self {
        Self {
            ants: 20,
            iterations: 500,
            alpha: 1.0,
            beta: 2.0,
            rho: 0.5,
            tau_min: 1e-4,
            seed: 0,
            parallel: false,
        }
    }
}

impl AcoConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.iterations < 1 {
            return Err(Error::MinimumOneIteration);
        }
        if self.ants < 1 {
            return bad("at least one ant is required");
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return bad("rho must be in (0, 1)");
        }
        if !(self.alpha >= 0.0 && self.beta >= 0.0) {
            return bad("alpha and beta must be non-negative");
        }
        if !(self.tau_min > 0.0 && self.tau_min.is_finite()) {
            return bad("tau_min must be positive");
        }
        Ok(())
    }
}

/// Symmetric trail intensities over depot and customer arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneMatrix<T = f64> {
    // node id -> dense row, `None` for stations
    slot: Vec<Option<usize>>,
    size: usize,
    tau: Vec<T>,
    tau_min: T,
}

impl<T: Scalar> PheromoneMatrix<T> {
    /// Every arc starts at `max(initial, tau_min)`.
    pub fn new(instance: &Instance<T>, initial: T, tau_min: T) -> Self {
        let mut slot = vec![None; instance.node_count()];
        let mut size = 0;
        for node in instance.nodes() {
            if node.kind != NodeKind::Station {
                slot[node.id] = Some(size);
                size += 1;
            }
        }
        Self {
            slot,
            size,
            tau: vec![initial.max(tau_min); size * size],
            tau_min,
        }
    }

    fn index(&self, i: NodeId, j: NodeId) -> usize {
        let a = self.slot[i].expect("pheromone arcs join depot and customers");
        let b = self.slot[j].expect("pheromone arcs join depot and customers");
        a * self.size + b
    }

    pub fn get(&self, i: NodeId, j: NodeId) -> T {
        self.tau[self.index(i, j)]
    }

    /// Sets both directions of an arc, clamped at `tau_min`.
    pub fn set(&mut self, i: NodeId, j: NodeId, value: T) {
        let v = value.max(self.tau_min);
        let (ij, ji) = (self.index(i, j), self.index(j, i));
        self.tau[ij] = v;
        self.tau[ji] = v;
    }

    pub fn tau_min(&self) -> T {
        self.tau_min
    }

    /// Every entry becomes `max(tau_min, (1 - rho) * tau)`.
    pub fn evaporate(&mut self, rho: T) {
        let keep = T::one() - rho;
        let floor = self.tau_min;
        for t in &mut self.tau {
            *t = (keep * *t).max(floor);
        }
    }

    /// Adds `amount` to every arc of the closed tour depot -> order -> depot.
    pub fn deposit(&mut self, order: &[NodeId], amount: T) {
        let Some((&first, &last)) = order.first().zip(order.last()) else {
            return;
        };
        let arcs = std::iter::once((DEPOT, first))
            .chain(order.windows(2).map(|w| (w[0], w[1])))
            .chain(std::iter::once((last, DEPOT)));
        for (i, j) in arcs {
            let v = self.get(i, j) + amount;
            self.set(i, j, v);
        }
    }

    /// All entries, row-major over the dense depot+customer index.
    pub fn values(&self) -> &[T] {
        &self.tau
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size)
            .all(|a| (0..a).all(|b| self.tau[a * self.size + b] == self.tau[b * self.size + a]))
    }
}

/// Random-proportional rule: `p(j) ∝ tau(current, j)^alpha * d(current, j)^-beta`,
/// with distances floored at 1e-12.
///
/// Computed in log space, so very large exponents concentrate the mass on
/// the best candidates instead of overflowing.
pub fn transition_probabilities<T: Scalar>(
    matrix: &PheromoneMatrix<T>,
    current: NodeId,
    candidates: &[NodeId],
    alpha: T,
    beta: T,
    instance: &Instance<T>,
) -> Result<Vec<T>> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let floor = T::of(MIN_ARC_LENGTH);
    let logs: Vec<T> = candidates
        .iter()
        .map(|&j| {
            let d = instance.dist(current, j).max(floor);
            alpha * matrix.get(current, j).ln() - beta * d.ln()
        })
        .collect();
    let top = logs.iter().copied().fold(T::neg_infinity(), T::max);
    let weights: Vec<T> = logs.iter().map(|&l| (l - top).exp()).collect();
    let total = weights.iter().fold(T::zero(), |acc, &w| acc + w);
    Ok(weights.into_iter().map(|w| w / total).collect())
}

/// Builds one ant's customer order, starting from the depot.
pub fn construct_ant_tour<T: Scalar>(
    matrix: &PheromoneMatrix<T>,
    instance: &Instance<T>,
    config: &AcoConfig,
    rng: &mut SolverRng,
) -> Genome {
    let (alpha, beta) = (T::of(config.alpha), T::of(config.beta));
    let mut remaining = instance.customers().to_vec();
    let mut order = Vec::with_capacity(remaining.len());
    let mut current = DEPOT;
    while !remaining.is_empty() {
        let pick = if remaining.len() == 1 {
            0
        } else {
            let probs =
                transition_probabilities(matrix, current, &remaining, alpha, beta, instance)
                    .expect("candidates are non-empty");
            roulette(&probs, rng)
        };
        current = remaining.remove(pick);
        order.push(current);
    }
    Genome::new(order)
}

fn roulette<T: Scalar>(probs: &[T], rng: &mut SolverRng) -> usize {
    let u = T::of(rng.gen::<f64>());
    let mut acc = T::zero();
    for (k, &p) in probs.iter().enumerate() {
        acc = acc + p;
        if u < acc {
            return k;
        }
    }
    // rounding left `acc` just under 1: fall back to the last live candidate
    probs
        .iter()
        .rposition(|&p| p > T::zero())
        .unwrap_or(probs.len() - 1)
}

/// Colony state between iterations.
#[derive(Debug, Clone)]
pub struct Colony<'a, T = f64> {
    instance: &'a Instance<T>,
    config: AcoConfig,
    rng: SolverRng,
    pheromones: PheromoneMatrix<T>,
    best: Option<Individual<T>>,
}

impl<'a, T: Scalar> Colony<'a, T> {
    /// Trails start at `1 / (n * L)` where `n` is the customer count and `L`
    /// the nearest-neighbor fitness.
    pub fn new(instance: &'a Instance<T>, config: &AcoConfig) -> Result<Self> {
        config.validate()?;
        let nn = nearest_neighbor_genome(instance);
        let nn_eval = evaluate_valid(instance, &nn);
        let n = T::of(instance.customers().len() as f64);
        let scale = nn_eval.fitness.max(T::of(MIN_ARC_LENGTH));
        let pheromones =
            PheromoneMatrix::new(instance, T::one() / (n * scale), T::of(config.tau_min));
        Ok(Self {
            instance,
            config: config.clone(),
            rng: rng::seeded(config.seed),
            pheromones,
            best: None,
        })
    }

    pub fn pheromones(&self) -> &PheromoneMatrix<T> {
        &self.pheromones
    }

    /// Best tour sampled so far; `None` before the first iteration.
    pub fn best(&self) -> Option<&Individual<T>> {
        self.best.as_ref()
    }

    /// Builds and scores one tour per ant, then updates trails.
    pub fn iterate(&mut self) {
        let streams = rng::split(&mut self.rng, self.config.ants);
        let tours: Vec<Genome> = if self.config.parallel {
            use rayon::prelude::*;
            streams
                .into_par_iter()
                .map(|mut r| {
                    construct_ant_tour(&self.pheromones, self.instance, &self.config, &mut r)
                })
                .collect()
        } else {
            streams
                .into_iter()
                .map(|mut r| {
                    construct_ant_tour(&self.pheromones, self.instance, &self.config, &mut r)
                })
                .collect()
        };
        for ant in evaluate_batch(self.instance, tours, self.config.parallel) {
            if self
                .best
                .as_ref()
                .is_none_or(|b| ant.fitness() < b.fitness())
            {
                self.best = Some(ant);
            }
        }
        let best = self.best.as_ref().expect("at least one ant ran");
        self.pheromones.evaporate(T::of(self.config.rho));
        let amount = T::one() / best.fitness().max(T::of(MIN_ARC_LENGTH));
        self.pheromones.deposit(best.genome().order(), amount);
    }
}

/// Runs the colony. Needs at least one iteration; `history` holds the
/// best-so-far fitness after each one.
pub fn run_aco<T: Scalar>(instance: &Instance<T>, config: &AcoConfig) -> Result<SearchResult<T>> {
    let start = Instant::now();
    let mut colony = Colony::new(instance, config)?;
    let mut history = Vec::with_capacity(config.iterations);
    for _ in 0..config.iterations {
        colony.iterate();
        history.extend(colony.best().map(Individual::fitness));
    }
    Ok(SearchResult {
        best: colony.best.expect("iterations >= 1"),
        history,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate_random_instance, Node};

    fn square() -> Instance<f64> {
        // two customers at equal distance from the depot, plus a station
        Instance::new(
            "sq",
            vec![
                Node::new(0, NodeKind::Depot, 0.0, 0.0, 0.0),
                Node::new(1, NodeKind::Customer, 1.0, 0.0, 1.0),
                Node::new(2, NodeKind::Station, 5.0, 5.0, 0.0),
                Node::new(3, NodeKind::Customer, 0.0, 1.0, 1.0),
            ],
            100.0,
            1.0,
            10.0,
        )
        .unwrap()
    }

    #[test]
    fn evaporation_examples() {
        let inst = square();
        let mut m = PheromoneMatrix::new(&inst, 1.0, 1e-4);
        m.evaporate(0.5);
        assert_eq!(m.get(0, 1), 0.5);
        assert_eq!(m.get(1, 0), m.get(3, 0));

        let mut floor = PheromoneMatrix::new(&inst, 1e-4, 1e-4);
        floor.evaporate(0.5);
        assert_eq!(floor.get(1, 3), 1e-4);
    }

    #[test]
    fn probability_examples() {
        let inst = square();
        let mut m = PheromoneMatrix::new(&inst, 1.0, 1e-4);
        assert_eq!(
            transition_probabilities(&m, 0, &[1], 1.0, 2.0, &inst).unwrap(),
            vec![1.0]
        );
        m.set(0, 3, 3.0);
        let p = transition_probabilities(&m, 0, &[1, 3], 1.0, 0.0, &inst).unwrap();
        assert!((p[0] - 0.25).abs() < 1e-15 && (p[1] - 0.75).abs() < 1e-15);
        assert_eq!(
            transition_probabilities(&m, 0, &[], 1.0, 1.0, &inst),
            Err(Error::EmptyCandidates)
        );
    }

    #[test]
    fn zero_length_arcs_are_floored() {
        let inst = Instance::new(
            "dup",
            vec![
                Node::new(0, NodeKind::Depot, 0.0, 0.0, 0.0),
                Node::new(1, NodeKind::Customer, 0.0, 0.0, 1.0),
                Node::new(2, NodeKind::Customer, 3.0, 0.0, 1.0),
            ],
            100.0,
            1.0,
            10.0,
        )
        .unwrap();
        let m = PheromoneMatrix::new(&inst, 1.0, 1e-4);
        let p = transition_probabilities(&m, 0, &[1, 2], 1.0, 2.0, &inst).unwrap();
        assert!(p.iter().all(|v: &f64| v.is_finite()));
        assert!(p[0] > 0.999);
    }

    #[test]
    fn single_customer_tour() {
        let inst = generate_random_instance::<f64>(1, 2, 0, 50.0).unwrap();
        let m = PheromoneMatrix::new(&inst, 1.0, 1e-4);
        let tour = construct_ant_tour(&m, &inst, &AcoConfig::default(), &mut rng::seeded(1));
        assert_eq!(tour.order(), &[1]);
    }

    #[test]
    fn huge_beta_follows_nearest_neighbor() {
        for seed in 0..10 {
            let inst = generate_random_instance::<f64>(9, 2, seed, 100.0).unwrap();
            let m = PheromoneMatrix::new(&inst, 1.0, 1e-4);
            let cfg = AcoConfig {
                beta: 1e6,
                ..AcoConfig::default()
            };
            let tour = construct_ant_tour(&m, &inst, &cfg, &mut rng::seeded(seed));
            assert_eq!(tour, nearest_neighbor_genome(&inst));
        }
    }

    #[test]
    fn deposit_reinforces_best_tour() {
        let inst = generate_random_instance::<f64>(6, 2, 3, 100.0).unwrap();
        let cfg = AcoConfig::default();
        let mut colony = Colony::new(&inst, &cfg).unwrap();
        let before = colony.pheromones().get(0, 1);
        colony.iterate();
        let baseline = (before * (1.0 - cfg.rho)).max(cfg.tau_min);
        let order = colony.best().unwrap().genome().order().to_vec();
        let m = colony.pheromones();
        assert!(m.get(0, order[0]) > baseline);
        assert!(m.get(*order.last().unwrap(), 0) > baseline);
        for w in order.windows(2) {
            assert!(m.get(w[0], w[1]) > baseline);
        }
        assert!(m.is_symmetric());
        assert!(m.values().iter().all(|&t| t >= cfg.tau_min));
    }

    #[test]
    fn config_guards() {
        let inst = square();
        let zero = AcoConfig {
            iterations: 0,
            ..AcoConfig::default()
        };
        assert_eq!(
            run_aco(&inst, &zero).unwrap_err(),
            Error::MinimumOneIteration
        );
        let rho = AcoConfig {
            rho: 1.0,
            ..AcoConfig::default()
        };
        assert!(matches!(run_aco(&inst, &rho), Err(Error::InvalidConfig(_))));
        let ants = AcoConfig {
            ants: 0,
            ..AcoConfig::default()
        };
        assert!(matches!(
            run_aco(&inst, &ants),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn run_is_reproducible_and_monotone() {
        let inst = generate_random_instance::<f64>(10, 2, 6, 100.0).unwrap();
        let cfg = AcoConfig {
            iterations: 50,
            seed: 4,
            ..AcoConfig::default()
        };
        let a = run_aco(&inst, &cfg).unwrap();
        let b = run_aco(&inst, &cfg).unwrap();
        assert_eq!(a.history, b.history);
        assert_eq!(a.best, b.best);
        assert!(a.history.windows(2).all(|w| w[1] <= w[0]));
        let par = run_aco(
            &inst,
            &AcoConfig {
                parallel: true,
                ..cfg
            },
        )
        .unwrap();
        assert_eq!(par.history, a.history);
    }
}

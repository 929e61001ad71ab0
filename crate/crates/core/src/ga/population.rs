use std::cmp::Ordering;

use crate::instance::Instance;
use crate::solution::{evaluate_genome, Evaluation, Genome};
use crate::{Result, Scalar};

/// A genome together with its cached evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual<T = f64> {
    genome: Genome,
    evaluation: Evaluation<T>,
}

impl<T: Scalar> Individual<T> {
    /// Evaluates `genome` on `instance`.
    pub fn new(instance: &Instance<T>, genome: Genome) -> Result<Self> {
        let evaluation = evaluate_genome(instance, &genome)?;
        Ok(Self { genome, evaluation })
    }

    pub(crate) fn from_parts(genome: Genome, evaluation: Evaluation<T>) -> Self {
        Self { genome, evaluation }
    }

    pub fn genome(&self) -> &Genome {
        &self.genome
    }

    pub fn evaluation(&self) -> &Evaluation<T> {
        &self.evaluation
    }

    pub fn fitness(&self) -> T {
        self.evaluation.fitness
    }

    /// Ascending fitness, then lexicographic genome.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.fitness()
            .partial_cmp(&other.fitness())
            .unwrap_or(Ordering::Equal)
            .then_with(|| self.genome.cmp(&other.genome))
    }
}

/// Fixed-size set of individuals kept in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct Population<T = f64> {
    members: Vec<Individual<T>>,
    generation: usize,
}

impl<T: Scalar> Population<T> {
    /// Sorts `members` canonically.
    pub fn new(mut members: Vec<Individual<T>>, generation: usize) -> Self {
        members.sort_by(Individual::canonical_cmp);
        Self {
            members,
            generation,
        }
    }

    pub fn members(&self) -> &[Individual<T>] {
        &self.members
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Lowest-fitness member.
    pub fn best(&self) -> &Individual<T> {
        &self.members[0]
    }
}

//! Exhaustive search over customer orders for small instances.
//!
//! The optimum is taken over the genome space under the fixed decoder, the
//! same space every solver searches. It is not a global EVRP optimum.

use rayon::prelude::*;

use crate::instance::{Instance, NodeId};
use crate::solution::{evaluate_valid, Evaluation, Genome};
use crate::{Error, Result, Scalar};

pub const MAX_ORACLE_CUSTOMERS: usize = 10;

/// Rearranges `v` into the next lexicographic permutation. Returns false
/// (leaving `v` sorted ascending) after the last one.
pub fn next_permutation<V: Ord>(v: &mut [V]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        v.reverse();
        return false;
    };
    let j = v
        .iter()
        .rposition(|x| *x > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Minimum over `prefix` followed by every ordering of `rest` (which must
/// start sorted). Lexicographically first among equal fitness.
fn best_with_prefix<T: Scalar>(
    instance: &Instance<T>,
    prefix: NodeId,
    mut rest: Vec<NodeId>,
) -> (Genome, Evaluation<T>) {
    let mut order = Vec::with_capacity(rest.len() + 1);
    let mut best: Option<(Genome, Evaluation<T>)> = None;
    loop {
        order.clear();
        order.push(prefix);
        order.extend_from_slice(&rest);
        let genome = Genome::new(order.clone());
        let eval = evaluate_valid(instance, &genome);
        if best.as_ref().is_none_or(|(_, b)| eval.fitness < b.fitness) {
            best = Some((genome, eval));
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    best.expect("at least one permutation")
}

/// Best genome by exhaustive enumeration, at most 10 customers.
///
/// Permutations are visited in lexicographic order and only strict
/// improvements replace the incumbent, so ties resolve to the
/// lexicographically smallest genome. The work is split by first customer
/// across threads; the merge keeps the same tie rule.
pub fn brute_force_best<T: Scalar>(instance: &Instance<T>) -> Result<(Genome, Evaluation<T>)> {
    let customers = instance.customers();
    if customers.len() > MAX_ORACLE_CUSTOMERS {
        return Err(Error::TooManyCustomers {
            count: customers.len(),
            limit: MAX_ORACLE_CUSTOMERS,
        });
    }
    let partials: Vec<(Genome, Evaluation<T>)> = customers
        .par_iter()
        .map(|&first| {
            let rest: Vec<NodeId> = customers.iter().copied().filter(|&c| c != first).collect();
            best_with_prefix(instance, first, rest)
        })
        .collect();
    // partials are ordered by first customer, i.e. lexicographically
    let best = partials
        .into_iter()
        .reduce(|acc, next| {
            if next.1.fitness < acc.1.fitness {
                next
            } else {
                acc
            }
        })
        .expect("instances have at least one customer");
    Ok(best)
}

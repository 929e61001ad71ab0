//! Permutation-preserving variation operators.

use crate::instance::NodeId;
use crate::solution::Genome;
use crate::{Error, Result};

/// Order crossover (OX).
///
/// The child keeps `parent1[cut1..cut2]` in place. The remaining positions,
/// starting at `cut2` and wrapping around, are filled with `parent2`'s genes
/// read cyclically from index `cut2`, skipping genes already in the segment.
pub fn order_crossover(
    parent1: &Genome,
    parent2: &Genome,
    cut1: usize,
    cut2: usize,
) -> Result<Genome> {
    let (a, b) = (parent1.order(), parent2.order());
    if a.len() != b.len() {
        return Err(Error::MismatchedCustomerSets);
    }
    if cut2 > a.len() {
        return Err(Error::IndexOutOfRange {
            index: cut2,
            len: a.len(),
        });
    }
    if cut1 > cut2 {
        return Err(Error::IndexOutOfRange {
            index: cut1,
            len: cut2,
        });
    }
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb || sa.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::MismatchedCustomerSets);
    }
    let bound = sa.last().map_or(0, |&m| m + 1);
    Ok(Genome::new(ox_fill(a, b, cut1, cut2, bound)))
}

/// OX without input validation. `bound` exceeds every gene value.
pub(crate) fn ox_fill(
    a: &[NodeId],
    b: &[NodeId],
    cut1: usize,
    cut2: usize,
    bound: usize,
) -> Vec<NodeId> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let mut taken = vec![false; bound];
    let mut child = a.to_vec();
    for &gene in &a[cut1..cut2] {
        taken[gene] = true;
    }
    let mut slot = cut2 % n;
    for k in 0..n {
        let gene = b[(cut2 + k) % n];
        if taken[gene] {
            continue;
        }
        child[slot] = gene;
        slot = (slot + 1) % n;
    }
    child
}

/// Exchanges positions `i` and `j`.
pub fn swap_mutation(genome: &Genome, i: usize, j: usize) -> Result<Genome> {
    let len = genome.len();
    for index in [i, j] {
        if index >= len {
            return Err(Error::IndexOutOfRange { index, len });
        }
    }
    let mut order = genome.order().to_vec();
    order.swap(i, j);
    Ok(Genome::new(order))
}

//! Nearest-neighbor construction.

use crate::instance::{Instance, DEPOT};
use crate::solution::Genome;
use crate::Scalar;

/// Greedy tour from the depot: always move to the closest unvisited
/// customer, lowest id on ties. Battery and cargo are left to the decoder.
pub fn nearest_neighbor_genome<T: Scalar>(instance: &Instance<T>) -> Genome {
    let mut remaining = instance.customers().to_vec();
    let mut order = Vec::with_capacity(remaining.len());
    let mut current = DEPOT;
    while !remaining.is_empty() {
        // `remaining` stays sorted by id, so strict `<` keeps the lowest id
        let mut pick = 0;
        for k in 1..remaining.len() {
            if instance.dist(current, remaining[k]) < instance.dist(current, remaining[pick]) {
                pick = k;
            }
        }
        current = remaining.remove(pick);
        order.push(current);
    }
    Genome::new(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate_random_instance, Node, NodeKind};

    fn inst(points: &[(f64, f64)]) -> Instance<f64> {
        let mut nodes = vec![Node::new(0, NodeKind::Depot, 0.0, 0.0, 0.0)];
        for (i, &(x, y)) in points.iter().enumerate() {
            nodes.push(Node::new(i + 1, NodeKind::Customer, x, y, 1.0));
        }
        Instance::new("nn", nodes, 100.0, 1.0, 10.0).unwrap()
    }

    #[test]
    fn triangle_visits_closer_customer_first() {
        let i = inst(&[(0.0, 3.0), (4.0, 0.0)]);
        assert_eq!(nearest_neighbor_genome(&i).order(), &[1, 2]);
    }

    #[test]
    fn single_customer() {
        assert_eq!(nearest_neighbor_genome(&inst(&[(5.0, 5.0)])).order(), &[1]);
    }

    #[test]
    fn ties_go_to_lower_id() {
        let i = inst(&[(0.0, 2.0), (2.0, 0.0)]);
        assert_eq!(nearest_neighbor_genome(&i).order(), &[1, 2]);
        let i = inst(&[(-2.0, 0.0), (0.0, -2.0), (9.0, 9.0)]);
        assert_eq!(nearest_neighbor_genome(&i).order()[0], 1);
    }

    #[test]
    fn follows_chain_not_depot_distance() {
        // 1 is nearest the depot; from 1, 3 is nearer than 2
        let i = inst(&[(1.0, 0.0), (0.0, -3.0), (3.0, 0.0)]);
        assert_eq!(nearest_neighbor_genome(&i).order(), &[1, 3, 2]);
    }

    #[test]
    fn output_is_a_permutation_and_deterministic() {
        for seed in 0..20 {
            let i = generate_random_instance::<f64>(15, 3, seed, 100.0).unwrap();
            let g = nearest_neighbor_genome(&i);
            g.validate(&i).unwrap();
            assert_eq!(g, nearest_neighbor_genome(&i));
        }
    }
}

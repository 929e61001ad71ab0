use rand::Rng;

use super::{Instance, Node, NodeKind, DEPOT};
use crate::{rng, Error, Result, Scalar};

/// Cargo capacity given to generated instances.
pub const GENERATED_CARGO_CAPACITY: f64 = 20.0;

const GENERATED_CONSUMPTION: f64 = 1.0;

/// Rounds to 6 decimals so the value survives the text format unchanged.
fn micro(v: f64) -> f64 {
    (v * 1e6).round() / 1e6
}

/// Deterministic random instance on the square `[0, side]²`.
///
/// Layout: depot at the centre (id 0), then `n_customers` customers, then
/// `n_stations` stations. Draw order is x, y, demand per customer, then x, y
/// per station. Demands are integers in `[1, 5]`; the battery holds 1.5 times
/// the energy needed to cross the square's diagonal.
pub fn generate_random_instance<T: Scalar>(
    n_customers: usize,
    n_stations: usize,
    seed: u64,
    side: f64,
) -> Result<Instance<T>> {
    if n_customers == 0 {
        return Err(Error::ZeroCustomers);
    }
    if !(side > 0.0 && side.is_finite()) {
        return Err(Error::InvalidConfig("side must be positive".into()));
    }
    let mut rng = rng::seeded(seed);
    let mut nodes = Vec::with_capacity(1 + n_customers + n_stations);
    let centre = T::of(micro(side / 2.0));
    nodes.push(Node::new(DEPOT, NodeKind::Depot, centre, centre, T::zero()));
    for id in 1..=n_customers {
        let x = micro(rng.gen_range(0.0..=side));
        let y = micro(rng.gen_range(0.0..=side));
        let demand = rng.gen_range(1..=5u32);
        nodes.push(Node::new(
            id,
            NodeKind::Customer,
            T::of(x),
            T::of(y),
            T::of(f64::from(demand)),
        ));
    }
    for id in n_customers + 1..=n_customers + n_stations {
        let x = micro(rng.gen_range(0.0..=side));
        let y = micro(rng.gen_range(0.0..=side));
        nodes.push(Node::new(
            id,
            NodeKind::Station,
            T::of(x),
            T::of(y),
            T::zero(),
        ));
    }
    let diameter = side * std::f64::consts::SQRT_2;
    Instance::new(
        format!("rand-c{n_customers}-s{n_stations}-seed{seed}"),
        nodes,
        T::of(1.5 * diameter * GENERATED_CONSUMPTION),
        T::of(GENERATED_CONSUMPTION),
        T::of(GENERATED_CARGO_CAPACITY),
    )
}

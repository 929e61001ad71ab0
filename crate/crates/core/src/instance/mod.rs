//! EVRP problem instances.
//!
//! An [`Instance`] is immutable once built: the depot is node 0, node ids are
//! dense, and the pairwise Euclidean distances are precomputed. Energy spent
//! on an arc is `consumption_rate * distance`.

mod format;
mod generate;

pub use format::{parse_instance, serialize_instance};
pub use generate::{generate_random_instance, GENERATED_CARGO_CAPACITY};

use crate::{Error, Result, Scalar};

pub type NodeId = usize;

pub const DEPOT: NodeId = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Depot,
    Customer,
    Station,
}

impl NodeKind {
    pub fn code(self) -> char {
        match self {
            NodeKind::Depot => 'D',
            NodeKind::Customer => 'C',
            NodeKind::Station => 'S',
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        match code {
            "D" => Some(NodeKind::Depot),
            "C" => Some(NodeKind::Customer),
            "S" => Some(NodeKind::Station),
            _ => None,
        }
    }

    /// Depots and stations refill the battery.
    pub fn recharges(self) -> bool {
        !matches!(self, NodeKind::Customer)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node<T = f64> {
    pub id: NodeId,
    pub kind: NodeKind,
    pub x: T,
    pub y: T,
    pub demand: T,
}

impl<T: Scalar> Node<T> {
    pub fn new(id: NodeId, kind: NodeKind, x: T, y: T, demand: T) -> Self {
        Self {
            id,
            kind,
            x,
            y,
            demand,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance<T = f64> {
    name: String,
    nodes: Vec<Node<T>>,
    battery_capacity: T,
    consumption_rate: T,
    cargo_capacity: T,
    customers: Vec<NodeId>,
    stations: Vec<NodeId>,
    // row-major, nodes.len() squared
    dist: Vec<T>,
    // distance from each node to its closest depot-or-station
    nearest_recharge: Vec<T>,
}

impl<T: Scalar> Instance<T> {
    /// Builds and validates an instance.
    ///
    /// `nodes` may be given in any order; they are stored by id.
    pub fn new(
        name: impl Into<String>,
        mut nodes: Vec<Node<T>>,
        battery_capacity: T,
        consumption_rate: T,
        cargo_capacity: T,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidInstance(msg));
        if !(battery_capacity > T::zero() && battery_capacity.is_finite()) {
            return invalid("battery capacity must be positive".into());
        }
        if !(consumption_rate > T::zero() && consumption_rate.is_finite()) {
            return invalid("consumption rate must be positive".into());
        }
        if !(cargo_capacity > T::zero() && cargo_capacity.is_finite()) {
            return invalid("cargo capacity must be positive".into());
        }
        nodes.sort_by_key(|n| n.id);
        for (expected, node) in nodes.iter().enumerate() {
            if node.id != expected {
                return invalid(format!("node ids must be exactly 0..{}", nodes.len()));
            }
            if !(node.x.is_finite() && node.y.is_finite() && node.demand.is_finite()) {
                return invalid(format!("node {} has a non-finite field", node.id));
            }
            match node.kind {
                NodeKind::Customer => {
                    if node.demand <= T::zero() {
                        return invalid(format!("customer {} needs a positive demand", node.id));
                    }
                    if node.demand > cargo_capacity {
                        return invalid(format!("customer {} demand exceeds capacity", node.id));
                    }
                }
                NodeKind::Depot | NodeKind::Station => {
                    if node.demand != T::zero() {
                        return invalid(format!("node {} must have zero demand", node.id));
                    }
                }
            }
        }
        let depots = nodes.iter().filter(|n| n.kind == NodeKind::Depot).count();
        if depots != 1 || nodes.first().map(|n| n.kind) != Some(NodeKind::Depot) {
            return invalid("exactly one depot is required, at node 0".into());
        }
        if !nodes.iter().any(|n| n.kind == NodeKind::Customer) {
            return invalid("at least one customer is required".into());
        }
        Ok(Self::build(
            name.into(),
            nodes,
            battery_capacity,
            consumption_rate,
            cargo_capacity,
        ))
    }

    /// Assembles derived tables. Callers have already validated.
    fn build(
        name: String,
        nodes: Vec<Node<T>>,
        battery_capacity: T,
        consumption_rate: T,
        cargo_capacity: T,
    ) -> Self {
        let n = nodes.len();
        let ids_of = |kind| {
            nodes
                .iter()
                .filter(|node: &&Node<T>| node.kind == kind)
                .map(|node| node.id)
                .collect::<Vec<_>>()
        };
        let customers = ids_of(NodeKind::Customer);
        let stations = ids_of(NodeKind::Station);
        let mut dist = vec![T::zero(); n * n];
        for a in &nodes {
            for b in &nodes {
                dist[a.id * n + b.id] = (a.x - b.x).hypot(a.y - b.y);
            }
        }
        let nearest_recharge = (0..n)
            .map(|i| {
                std::iter::once(DEPOT)
                    .chain(stations.iter().copied())
                    .map(|r| dist[i * n + r])
                    .fold(T::infinity(), T::min)
            })
            .collect();
        Self {
            name,
            nodes,
            battery_capacity,
            consumption_rate,
            cargo_capacity,
            customers,
            stations,
            dist,
            nearest_recharge,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn nodes(&self) -> &[Node<T>] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Option<&Node<T>> {
        self.nodes.get(id)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn battery_capacity(&self) -> T {
        self.battery_capacity
    }

    pub fn consumption_rate(&self) -> T {
        self.consumption_rate
    }

    pub fn cargo_capacity(&self) -> T {
        self.cargo_capacity
    }

    /// Customer ids in ascending order.
    pub fn customers(&self) -> &[NodeId] {
        &self.customers
    }

    /// Station ids in ascending order.
    pub fn stations(&self) -> &[NodeId] {
        &self.stations
    }

    pub fn kind(&self, id: NodeId) -> NodeKind {
        self.nodes[id].kind
    }

    pub fn demand(&self, id: NodeId) -> T {
        self.nodes[id].demand
    }

    /// Euclidean distance between two nodes.
    pub fn distance(&self, i: NodeId, j: NodeId) -> Result<T> {
        let n = self.nodes.len();
        if i >= n {
            return Err(Error::InvalidNodeId(i));
        }
        if j >= n {
            return Err(Error::InvalidNodeId(j));
        }
        Ok(self.dist[i * n + j])
    }

    /// Unchecked variant of [`Instance::distance`] for hot loops.
    #[inline]
    pub fn dist(&self, i: NodeId, j: NodeId) -> T {
        self.dist[i * self.nodes.len() + j]
    }

    /// Battery energy spent travelling from `i` to `j`.
    #[inline]
    pub fn energy(&self, i: NodeId, j: NodeId) -> T {
        self.consumption_rate * self.dist(i, j)
    }

    /// Distance from `id` to the closest depot or station.
    #[inline]
    pub fn nearest_recharge_distance(&self, id: NodeId) -> T {
        self.nearest_recharge[id]
    }
}

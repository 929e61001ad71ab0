//! Permutation encoding, battery-aware decoder and fitness.
//!
//! A [`Genome`] fixes only the order customers are served in. [`decode`]
//! splits that order into depot-to-depot routes and inserts charging-station
//! detours; [`evaluate`] scores the result. Every solver goes through
//! [`evaluate_genome`], so they all search the same space.

use std::fmt;

use crate::ga::Individual;
use crate::instance::{Instance, NodeId, NodeKind, DEPOT};
use crate::{Error, Result, Scalar};

/// Weight applied per unit of battery or cargo violation.
pub const PENALTY_WEIGHT: f64 = 1e4;

/// Customer visiting order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Genome(Vec<NodeId>);

impl Genome {
    pub fn new(order: Vec<NodeId>) -> Self {
        Self(order)
    }

    pub fn order(&self) -> &[NodeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<NodeId> {
        self.0
    }

    /// Checks that the genome is a permutation of `instance`'s customers.
    pub fn validate<T: Scalar>(&self, instance: &Instance<T>) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGenome(msg));
        if self.0.len() != instance.customers().len() {
            return bad(format!(
                "length {} but the instance has {} customers",
                self.0.len(),
                instance.customers().len()
            ));
        }
        let mut seen = vec![false; instance.node_count()];
        for &id in &self.0 {
            match instance.node(id) {
                Some(n) if n.kind == NodeKind::Customer => {}
                _ => return bad(format!("{id} is not a customer")),
            }
            if std::mem::replace(&mut seen[id], true) {
                return bad(format!("customer {id} appears twice"));
            }
        }
        Ok(())
    }
}

impl From<Vec<NodeId>> for Genome {
    fn from(order: Vec<NodeId>) -> Self {
        Self(order)
    }
}

impl fmt::Display for Genome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, id) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, "]")
    }
}

/// Decoded routes; each starts and ends at the depot.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RoutePlan {
    pub routes: Vec<Vec<NodeId>>,
}

impl RoutePlan {
    /// Customer ids in visiting order across all routes.
    pub fn customer_sequence<T: Scalar>(&self, instance: &Instance<T>) -> Vec<NodeId> {
        self.routes
            .iter()
            .flatten()
            .copied()
            .filter(|&id| instance.kind(id) == NodeKind::Customer)
            .collect()
    }

    /// Checks the structural invariants of a plan: depot at both ends only,
    /// valid ids, and every station flanked by non-station visits.
    pub fn check<T: Scalar>(&self, instance: &Instance<T>) -> std::result::Result<(), String> {
        for (r, route) in self.routes.iter().enumerate() {
            if route.len() < 2 || route[0] != DEPOT || route[route.len() - 1] != DEPOT {
                return Err(format!("route {r} does not start and end at the depot"));
            }
            let inner = &route[1..route.len() - 1];
            for (k, &id) in inner.iter().enumerate() {
                match instance.node(id).map(|n| n.kind) {
                    None => return Err(format!("route {r} visits unknown node {id}")),
                    Some(NodeKind::Depot) => {
                        return Err(format!("route {r} passes the depot mid-route"))
                    }
                    Some(NodeKind::Station) => {
                        // neighbours in the full route are route[k] and route[k + 2]
                        let before = instance.kind(route[k]);
                        let after = instance.kind(route[k + 2]);
                        if before == NodeKind::Station || after == NodeKind::Station {
                            return Err(format!("route {r} has adjacent stations"));
                        }
                    }
                    Some(NodeKind::Customer) => {}
                }
            }
        }
        Ok(())
    }
}

/// Score of a route plan. Lower fitness is better.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation<T = f64> {
    pub total_distance: T,
    /// Sum of energy deficits at arrivals, over all routes.
    pub battery_violation: T,
    /// Sum over routes of demand in excess of cargo capacity.
    pub capacity_violation: T,
    pub fitness: T,
}

impl<T: Scalar> Evaluation<T> {
    pub fn new(total_distance: T, battery_violation: T, capacity_violation: T) -> Self {
        let w = T::of(PENALTY_WEIGHT);
        Self {
            total_distance,
            battery_violation,
            capacity_violation,
            fitness: total_distance + w * battery_violation + w * capacity_violation,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.battery_violation == T::zero() && self.capacity_violation == T::zero()
    }
}

/// Outcome of a solver run: best individual, best fitness per step (entry 0
/// is the starting point), and elapsed wall-clock seconds.
#[derive(Debug, Clone)]
pub struct SearchResult<T = f64> {
    pub best: Individual<T>,
    pub history: Vec<T>,
    pub wall_time: f64,
}

struct Decoder<'a, T> {
    inst: &'a Instance<T>,
    full: T,
    routes: Vec<Vec<NodeId>>,
    route: Vec<NodeId>,
    pos: NodeId,
    battery: T,
    load: T,
}

impl<'a, T: Scalar> Decoder<'a, T> {
    fn new(inst: &'a Instance<T>) -> Self {
        Self {
            inst,
            full: inst.battery_capacity(),
            routes: Vec::new(),
            route: vec![DEPOT],
            pos: DEPOT,
            battery: inst.battery_capacity(),
            load: T::zero(),
        }
    }

    /// Can we drive `from -> c` on `battery` and still reach some recharge
    /// point from `c`? Subtractions mirror [`evaluate`] so both agree exactly.
    fn fits(&self, from: NodeId, battery: T, c: NodeId) -> bool {
        let at_c = battery - self.inst.energy(from, c);
        at_c >= T::zero()
            && at_c - self.inst.consumption_rate() * self.inst.nearest_recharge_distance(c)
                >= T::zero()
    }

    fn reaches(&self, from: NodeId, battery: T, to: NodeId) -> bool {
        battery - self.inst.energy(from, to) >= T::zero()
    }

    /// Reachable station minimising the added distance of `pos -> s -> target`
    /// among those satisfying `ok` after a full recharge. Ties go to the
    /// lowest id.
    fn best_station(&self, target: NodeId, ok: impl Fn(NodeId) -> bool) -> Option<NodeId> {
        let inst = self.inst;
        let direct = inst.dist(self.pos, target);
        let mut best: Option<(T, NodeId)> = None;
        for &s in inst.stations() {
            if !self.reaches(self.pos, self.battery, s) || !ok(s) {
                continue;
            }
            let added = inst.dist(self.pos, s) + inst.dist(s, target) - direct;
            if best.is_none_or(|(b, _)| added < b) {
                best = Some((added, s));
            }
        }
        best.map(|(_, s)| s)
    }

    fn go(&mut self, next: NodeId) {
        let left = self.battery - self.inst.energy(self.pos, next);
        self.battery = if self.inst.kind(next).recharges() {
            self.full
        } else {
            left.max(T::zero())
        };
        self.load = self.load + self.inst.demand(next);
        self.route.push(next);
        self.pos = next;
    }

    fn close_route(&mut self) {
        if self.pos == DEPOT {
            return;
        }
        if !self.reaches(self.pos, self.battery, DEPOT) {
            let full = self.full;
            if let Some(s) = self.best_station(DEPOT, |s| self.reaches(s, full, DEPOT)) {
                self.go(s);
            }
        }
        self.go(DEPOT);
        self.routes
            .push(std::mem::replace(&mut self.route, vec![DEPOT]));
        self.pos = DEPOT;
        self.battery = self.full;
        self.load = T::zero();
    }

    /// Tries to reach `c` from the current position, directly or through one
    /// station. Returns false if neither works.
    fn try_visit(&mut self, c: NodeId) -> bool {
        if self.fits(self.pos, self.battery, c) {
            self.go(c);
            return true;
        }
        let full = self.full;
        if let Some(s) = self.best_station(c, |s| self.fits(s, full, c)) {
            self.go(s);
            self.go(c);
            return true;
        }
        false
    }

    fn visit(&mut self, c: NodeId) {
        if self.pos != DEPOT && self.load + self.inst.demand(c) > self.inst.cargo_capacity() {
            self.close_route();
        }
        if self.try_visit(c) {
            return;
        }
        if self.pos != DEPOT {
            self.close_route();
            if self.try_visit(c) {
                return;
            }
        }
        // Unreachable even from a fresh route: keep the leg, let evaluation
        // charge the deficit.
        self.go(c);
    }

    fn finish(mut self) -> RoutePlan {
        self.close_route();
        RoutePlan {
            routes: self.routes,
        }
    }
}

/// Splits a genome into routes with station detours.
///
/// Walks the order left to right with a running load and battery level.
/// Before each customer `c`:
/// 1. if the load would exceed cargo capacity, the route returns to the depot
///    and a new one starts;
/// 2. if the battery cannot cover `pos -> c` plus the hop from `c` to its
///    nearest recharge point, the vehicle detours through the station with the
///    least added distance that makes the test pass after recharging (lowest
///    id on ties); failing that, the route is closed and `c` is retried from
///    the depot;
/// 3. if even a fresh route cannot reach `c` feasibly the leg is kept as is.
///
/// Returning to the depot detours through a station the same way when needed.
pub fn decode<T: Scalar>(instance: &Instance<T>, genome: &Genome) -> Result<RoutePlan> {
    genome.validate(instance)?;
    Ok(decode_valid(instance, genome))
}

fn decode_valid<T: Scalar>(instance: &Instance<T>, genome: &Genome) -> RoutePlan {
    let mut decoder = Decoder::new(instance);
    for &c in genome.order() {
        decoder.visit(c);
    }
    decoder.finish()
}

/// Scores a plan: distance plus weighted battery and capacity violations.
///
/// Each route starts with a full battery. On every arrival the arc's energy
/// is subtracted; a negative level adds its magnitude to the battery
/// violation and is clamped to zero. Depot and stations refill to full.
///
/// # Panics
///
/// If the plan references node ids outside the instance.
pub fn evaluate<T: Scalar>(instance: &Instance<T>, plan: &RoutePlan) -> Evaluation<T> {
    let full = instance.battery_capacity();
    let mut distance = T::zero();
    let mut battery_violation = T::zero();
    let mut capacity_violation = T::zero();
    for route in &plan.routes {
        let mut level = full;
        let mut demand = T::zero();
        for leg in route.windows(2) {
            let (a, b) = (leg[0], leg[1]);
            distance = distance + instance.dist(a, b);
            level = level - instance.energy(a, b);
            if level < T::zero() {
                battery_violation = battery_violation - level;
                level = T::zero();
            }
            if instance.kind(b).recharges() {
                level = full;
            }
        }
        for &id in route {
            if instance.kind(id) == NodeKind::Customer {
                demand = demand + instance.demand(id);
            }
        }
        if demand > instance.cargo_capacity() {
            capacity_violation = capacity_violation + (demand - instance.cargo_capacity());
        }
    }
    Evaluation::new(distance, battery_violation, capacity_violation)
}

/// `evaluate(decode(genome))`.
pub fn evaluate_genome<T: Scalar>(
    instance: &Instance<T>,
    genome: &Genome,
) -> Result<Evaluation<T>> {
    Ok(evaluate(instance, &decode(instance, genome)?))
}

/// [`evaluate_genome`] for genomes already known to be valid permutations.
pub(crate) fn evaluate_valid<T: Scalar>(instance: &Instance<T>, genome: &Genome) -> Evaluation<T> {
    debug_assert!(genome.validate(instance).is_ok());
    evaluate(instance, &decode_valid(instance, genome))
}

/// Scores a batch of valid genomes, concurrently when `parallel` is set.
/// Results are returned in input order either way.
pub(crate) fn evaluate_batch<T: Scalar>(
    instance: &Instance<T>,
    genomes: Vec<Genome>,
    parallel: bool,
) -> Vec<Individual<T>> {
    use rayon::prelude::*;
    let score = |genome: Genome| {
        let evaluation = evaluate_valid(instance, &genome);
        Individual::from_parts(genome, evaluation)
    };
    if parallel {
        genomes.into_par_iter().map(score).collect()
    } else {
        genomes.into_iter().map(score).collect()
    }
}

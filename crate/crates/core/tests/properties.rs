use evrp_core::aco::Colony;
use evrp_core::ga::{order_crossover, swap_mutation, tournament_index};
use evrp_core::instance::serialize_instance;
use evrp_core::rng;
use evrp_core::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn instance(customers: usize, stations: usize, seed: u64) -> Instance64 {
    generate_random_instance(customers, stations, seed, 100.0).unwrap()
}

fn shuffled(inst: &Instance64, seed: u64) -> Genome {
    let mut order = inst.customers().to_vec();
    order.shuffle(&mut rng::seeded(seed));
    Genome::new(order)
}

fn is_permutation_of(order: &[NodeId], n: usize) -> bool {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    sorted == (1..=n).collect::<Vec<_>>()
}

/// Straightforward OX used as the reference trace.
fn ox_reference(p1: &[NodeId], p2: &[NodeId], cut1: usize, cut2: usize) -> Vec<NodeId> {
    let n = p1.len();
    let segment = &p1[cut1..cut2];
    let mut fill = (0..n)
        .map(|k| p2[(cut2 + k) % n])
        .filter(|g| !segment.contains(g));
    let mut child = vec![0; n];
    child[cut1..cut2].copy_from_slice(segment);
    for pos in (cut2..n).chain(0..cut1) {
        child[pos] = fill.next().unwrap();
    }
    child
}

proptest! {
    #[test]
    fn distances_form_a_metric(c in 1usize..12, s in 0usize..4, seed in any::<u64>()) {
        let inst = instance(c, s, seed);
        let n = inst.node_count();
        for i in 0..n {
            prop_assert_eq!(inst.distance(i, i).unwrap(), 0.0);
            for j in 0..n {
                let dij = inst.distance(i, j).unwrap();
                prop_assert!(dij >= 0.0);
                prop_assert_eq!(dij, inst.distance(j, i).unwrap());
                for k in 0..n {
                    prop_assert!(inst.dist(i, k) <= dij + inst.dist(j, k) + 1e-9);
                }
            }
        }
        prop_assert!(inst.distance(0, n).is_err());
    }

    #[test]
    fn text_format_round_trips(c in 1usize..20, s in 0usize..5, seed in any::<u64>(), side in 1.0f64..1e4) {
        let inst: Instance64 = generate_random_instance(c, s, seed, side).unwrap();
        let text = serialize_instance(&inst);
        let back: Instance64 = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(serialize_instance(&back), text);
    }

    #[test]
    fn evaluation_is_deterministic_and_self_consistent(
        c in 1usize..10, s in 0usize..4, seed in any::<u64>(), shuffle in any::<u64>(), scale in 0.3f64..1.0,
    ) {
        let base = instance(c, s, seed);
        let inst = Instance64::new(
            base.name(),
            base.nodes().to_vec(),
            base.battery_capacity() * scale,
            base.consumption_rate(),
            base.cargo_capacity(),
        )
        .unwrap();
        let genome = shuffled(&inst, shuffle);
        let a = evaluate_genome(&inst, &genome).unwrap();
        let b = evaluate_genome(&inst, &genome).unwrap();
        prop_assert_eq!(a.fitness.to_bits(), b.fitness.to_bits());
        prop_assert_eq!(a, b);

        if a.is_feasible() {
            let plan = decode(&inst, &genome).unwrap();
            for route in &plan.routes {
                let mut level = inst.battery_capacity();
                let mut load = 0.0;
                for w in route.windows(2) {
                    level -= inst.energy(w[0], w[1]);
                    prop_assert!(level >= 0.0);
                    if inst.kind(w[1]).recharges() {
                        level = inst.battery_capacity();
                    }
                    load += inst.demand(w[1]);
                }
                prop_assert!(load <= inst.cargo_capacity());
            }
        }
    }

    #[test]
    fn penalties_are_monotone(d in 0.0f64..1e4, bv in 0.0f64..100.0, cv in 0.0f64..100.0, extra in 1e-3f64..10.0) {
        let e = Evaluation::new(d, bv, cv);
        prop_assert!(Evaluation::new(d, bv + extra, cv).fitness > e.fitness);
        prop_assert!(Evaluation::new(d, bv, cv + extra).fitness > e.fitness);
    }

    #[test]
    fn ox_matches_reference_trace(n in 1usize..40, s1 in any::<u64>(), s2 in any::<u64>(), a in any::<usize>(), b in any::<usize>()) {
        let inst = instance(n, 0, 0);
        let (p1, p2) = (shuffled(&inst, s1), shuffled(&inst, s2));
        let (cut1, cut2) = { let (x, y) = (a % (n + 1), b % (n + 1)); (x.min(y), x.max(y)) };
        let child = order_crossover(&p1, &p2, cut1, cut2).unwrap();
        prop_assert_eq!(child.order(), &ox_reference(p1.order(), p2.order(), cut1, cut2)[..]);
        prop_assert!(is_permutation_of(child.order(), n));
    }

    #[test]
    fn swap_mutation_exchanges_two_positions(n in 2usize..40, s in any::<u64>(), a in any::<usize>(), b in any::<usize>()) {
        let inst = instance(n, 0, 0);
        let g = shuffled(&inst, s);
        let (i, j) = (a % n, b % n);
        let m = swap_mutation(&g, i, j).unwrap();
        prop_assert_eq!(m.order()[i], g.order()[j]);
        prop_assert_eq!(m.order()[j], g.order()[i]);
        let unchanged = (0..n).filter(|&k| k != i && k != j).all(|k| m.order()[k] == g.order()[k]);
        prop_assert!(unchanged);
        prop_assert!(swap_mutation(&g, n, 0).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn decoded_plans_are_well_formed(
        c in 1usize..9, s in 0usize..4, seed in any::<u64>(), shuffle in any::<u64>(), scale in 0.2f64..1.2,
    ) {
        let base = instance(c, s, seed);
        let inst = Instance64::new(
            base.name(),
            base.nodes().to_vec(),
            base.battery_capacity() * scale,
            base.consumption_rate(),
            base.cargo_capacity(),
        )
        .unwrap();
        let genome = shuffled(&inst, shuffle);
        let plan = decode(&inst, &genome).unwrap();
        prop_assert!(plan.check(&inst).is_ok(), "{:?}", plan.check(&inst));
        prop_assert_eq!(plan.customer_sequence(&inst), genome.order().to_vec());
    }
}

fn population(inst: &Instance64, size: usize) -> Population64 {
    let members = (0..size as u64)
        .map(|s| Individual::new(inst, shuffled(inst, s)).unwrap())
        .collect();
    Population::new(members, 0)
}

#[test]
fn tournament_of_one_is_uniform() {
    let inst = instance(9, 2, 5);
    let pop = population(&inst, 10);
    let trials = 100_000;
    let mut counts = [0usize; 10];
    let mut r = rng::seeded(11);
    for _ in 0..trials {
        counts[tournament_index(&pop, 1, &mut r)] += 1;
    }
    let p = 0.1;
    let mean = trials as f64 * p;
    let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
    for (i, &c) in counts.iter().enumerate() {
        assert!((c as f64 - mean).abs() <= 3.0 * sigma, "member {i}: {c}");
    }
}

#[test]
fn full_tournament_picks_best_when_drawn() {
    let inst = instance(9, 2, 5);
    let n = 10;
    let pop = population(&inst, n);
    let trials = 100_000;
    let mut r = rng::seeded(12);
    let wins = (0..trials)
        .filter(|_| tournament_index(&pop, n, &mut r) == 0)
        .count();
    let p = 1.0 - ((n as f64 - 1.0) / n as f64).powi(n as i32);
    let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
    assert!(
        (wins as f64 - trials as f64 * p).abs() <= 3.0 * sigma,
        "{wins}"
    );
}

#[test]
fn pheromones_stay_bounded_and_symmetric() {
    for seed in 0..5 {
        let inst = instance(8, 2, seed);
        let cfg = AcoConfig {
            ants: 8,
            rho: 0.9,
            seed,
            ..AcoConfig::default()
        };
        let mut colony = Colony::new(&inst, &cfg).unwrap();
        for _ in 0..40 {
            colony.iterate();
            let tau = colony.pheromones();
            assert!(tau.is_symmetric());
            assert!(tau
                .values()
                .iter()
                .all(|&v| v >= cfg.tau_min && v.is_finite()));
        }
    }
}

#[test]
fn oracle_bounds_every_solver() {
    for seed in 0..6 {
        let inst = instance(6, 2, 100 + seed);
        let (genome, best) = brute_force_best(&inst).unwrap();
        assert_eq!(evaluate_genome(&inst, &genome).unwrap(), best);
        let nn = evaluate_genome(&inst, &nearest_neighbor_genome(&inst)).unwrap();
        let ga = run_ga(
            &inst,
            &GaConfig {
                generations: 30,
                seed,
                ..GaConfig::default()
            },
        )
        .unwrap();
        let tabu = run_tabu(
            &inst,
            &TabuConfig {
                iterations: 100,
                seed,
                ..TabuConfig::default()
            },
        )
        .unwrap();
        let aco = run_aco(
            &inst,
            &AcoConfig {
                iterations: 20,
                seed,
                ..AcoConfig::default()
            },
        )
        .unwrap();
        assert!(best.fitness <= nn.fitness);
        for f in [ga.best.fitness(), tabu.best.fitness(), aco.best.fitness()] {
            assert!(best.fitness <= f);
        }
        assert!(ga.best.fitness() <= nn.fitness);
        assert!(tabu.best.fitness() <= nn.fitness);
    }
}

#[test]
fn single_precision_instances_work() {
    let inst: Instance32 = generate_random_instance(6, 2, 3, 100.0).unwrap();
    let (_, best) = brute_force_best(&inst).unwrap();
    let ga = run_ga(
        &inst,
        &GaConfig {
            generations: 20,
            ..GaConfig::default()
        },
    )
    .unwrap();
    assert!(best.fitness <= ga.best.fitness());
}

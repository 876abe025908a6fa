use itertools::Itertools;
use kpack::oracles::{best_k_tour_on_set, optimal_k_packing};
use kpack::{generate_instance, exact_max_tsp, GeneratorSpec, PackingKind, WeightClass, WeightedCompleteGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Best block on `set` by trying every vertex order.
fn best_block(g: &WeightedCompleteGraph<i64>, set: &[usize], kind: PackingKind) -> i64 {
    set.iter()
        .copied()
        .permutations(set.len())
        .map(|o| match kind {
            PackingKind::Cycle => g.cycle_weight(&o),
            PackingKind::Path => g.path_weight(&o),
        })
        .max()
        .unwrap()
}

/// Maximum over every partition of `rest` into blocks of size `k`.
fn partition_optimum(g: &WeightedCompleteGraph<i64>, rest: &[usize], k: usize, kind: PackingKind) -> i64 {
    if rest.is_empty() {
        return 0;
    }
    let (first, others) = (rest[0], &rest[1..]);
    others
        .iter()
        .copied()
        .combinations(k - 1)
        .map(|mates| {
            let mut block = vec![first];
            block.extend(&mates);
            let left: Vec<usize> = others.iter().copied().filter(|v| !mates.contains(v)).collect();
            best_block(g, &block, kind) + partition_optimum(g, &left, k, kind)
        })
        .max()
        .unwrap()
}

#[test]
fn dp_agrees_with_partition_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cases = [(6, 3), (9, 3), (8, 4), (10, 5), (6, 2), (8, 2), (10, 2), (4, 4), (6, 6)];
    for (i, &(n, k)) in cases.iter().cycle().take(27).enumerate() {
        let g = WeightedCompleteGraph::from_fn(n, |_, _| rng.gen_range(0..20i64)).unwrap();
        for kind in [PackingKind::Cycle, PackingKind::Path] {
            if kind == PackingKind::Cycle && k < 3 {
                continue;
            }
            let opt = optimal_k_packing(&g, k, kind).unwrap();
            let all: Vec<usize> = (0..n).collect();
            assert_eq!(opt.weight, partition_optimum(&g, &all, k, kind), "case {i} n={n} k={k} {kind}");
            assert_eq!(opt.packing.weight(&g), opt.weight);
            opt.packing.validate(n).unwrap();
        }
    }
}

#[test]
fn tour_on_set_matches_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 3..=7 {
        let g = WeightedCompleteGraph::from_fn(9, |_, _| rng.gen_range(0..30i64)).unwrap();
        let set: Vec<usize> = (0..k).map(|i| i + 1).collect();
        for kind in [PackingKind::Cycle, PackingKind::Path] {
            let (seq, w) = best_k_tour_on_set(&g, &set, kind).unwrap();
            assert_eq!(w, best_block(&g, &set, kind));
            assert_eq!(seq.iter().copied().sorted().collect::<Vec<_>>(), set);
        }
    }
}

#[test]
fn cycle_optimum_dominates_path_optimum_and_tour_dominates_paths() {
    for seed in 0..10 {
        let g = generate_instance(&GeneratorSpec::new(12, WeightClass::Metric, seed)).unwrap();
        for k in [3, 4, 6] {
            let c = optimal_k_packing(&g, k, PackingKind::Cycle).unwrap().weight;
            let p = optimal_k_packing(&g, k, PackingKind::Path).unwrap().weight;
            assert!(c >= p);
            assert!(exact_max_tsp(&g).unwrap().weight(&g) >= p);
        }
    }
}

#[test]
fn caps_are_enforced() {
    let g = WeightedCompleteGraph::uniform(20, 1i64).unwrap();
    assert!(optimal_k_packing(&g, 4, PackingKind::Cycle).is_err());
    let g = WeightedCompleteGraph::uniform(10, 1i64).unwrap();
    assert!(optimal_k_packing(&g, 4, PackingKind::Cycle).is_err());
}

//! k-path packing algorithms.

use crate::cycle_packing::{
    alg6_general_4cp, build_groups, check_divisible, warn_unless_metric, ContractionTrace, GroupTrace,
};
use crate::error::{Error, Result};
use crate::graph::{HamiltonianCycle, Matching, WeightedCompleteGraph};
use crate::grouping::{EdgeGroupPlan, OrientationMethod};
use crate::matching::max_weight_matching_of_size;
use crate::packing::KPathPacking;
use crate::tsp::{split_cycle_best_offset, OffsetSplit, SplitObjective, TspSolver};
use crate::weight::{total, Weight};

/// Intermediates of the tour-based path algorithm.
#[derive(Clone, Debug)]
pub struct TourPathTrace<W> {
    pub tour: HamiltonianCycle,
    pub tour_weight: W,
    pub split: OffsetSplit<W>,
    pub packing: KPathPacking,
    pub weight: W,
}

/// Tour followed by the best plain offset split.
pub fn alg4_tsp_kpp<W: Weight>(g: &WeightedCompleteGraph<W>, k: usize, tsp: TspSolver) -> Result<TourPathTrace<W>> {
    check_divisible(g.n(), k)?;
    if k < 2 {
        return Err(Error::UnsupportedK { k, reason: "paths need k >= 2" });
    }
    let tour = tsp.solve(g)?;
    let split = split_cycle_best_offset(g, &tour, k, SplitObjective::Plain)?;
    let packing = split.packing.clone();
    Ok(TourPathTrace { tour_weight: tour.weight(g), weight: packing.weight(g), tour, split, packing })
}

/// Matching-based construction for even k: group a maximum matching of
/// size `(n/k)(k-2)/2`, two isolated vertices per group, path
/// `u t1 h1 .. tm hm v`.
pub fn alg5_matching_kpp_even<W: Weight>(
    g: &WeightedCompleteGraph<W>,
    k: usize,
    plan: Option<EdgeGroupPlan>,
) -> Result<GroupTrace<W, KPathPacking>> {
    if !k.is_multiple_of(2) || k < 4 {
        return Err(Error::UnsupportedK { k, reason: "alg5 needs even k >= 4" });
    }
    check_divisible(g.n(), k)?;
    let metric = warn_unless_metric(g, "alg5");
    let (matching, plan, blocks) = build_groups(g, k, (k - 2) / 2, 2, plan, OrientationMethod::Auto)?;
    let group_weights = plan.groups().iter().map(|e| total(e.iter().map(|&(a, b)| g.w(a, b)))).collect();
    let block_weights = blocks.iter().map(|p| g.path_weight(p)).collect();
    let packing = KPathPacking::new(g.n(), k, blocks)?;
    Ok(GroupTrace {
        matching_weight: matching.weight(g),
        matching,
        plan,
        group_weights,
        block_weights,
        weight: packing.weight(g),
        packing,
        metric,
    })
}

/// Both candidates of the combined even-k path algorithm.
#[derive(Clone, Debug)]
pub struct CombinedTrace<W> {
    pub tour_based: TourPathTrace<W>,
    pub matching_based: GroupTrace<W, KPathPacking>,
    /// Whether the matching-based packing was strictly heavier.
    pub chose_matching: bool,
    pub packing: KPathPacking,
    pub weight: W,
}

/// Heavier of [`alg4_tsp_kpp`] and [`alg5_matching_kpp_even`]; ties to the
/// tour-based packing.
pub fn metric_kpp_combined<W: Weight>(
    g: &WeightedCompleteGraph<W>,
    k: usize,
    tsp: TspSolver,
) -> Result<CombinedTrace<W>> {
    if !k.is_multiple_of(2) || k < 4 {
        return Err(Error::UnsupportedK { k, reason: "the combined algorithm needs even k >= 4" });
    }
    let a = alg4_tsp_kpp(g, k, tsp)?;
    let b = alg5_matching_kpp_even(g, k, None)?;
    let chose_matching = b.weight > a.weight;
    let (packing, weight) = if chose_matching {
        (b.packing.clone(), b.weight)
    } else {
        (a.packing.clone(), a.weight)
    };
    Ok(CombinedTrace { tour_based: a, matching_based: b, chose_matching, packing, weight })
}

/// The 4-path packing built inside [`alg6_general_4cp`].
pub fn general_4pp<W: Weight>(
    g: &WeightedCompleteGraph<W>,
    matching_override: Option<Matching>,
) -> Result<(KPathPacking, ContractionTrace<W>)> {
    let trace = alg6_general_4cp(g, matching_override)?;
    let paths = trace.paths.clone().expect("alg6 records its paths");
    Ok((paths, trace))
}

/// Intermediates of the metric 4PP algorithm.
#[derive(Clone, Debug)]
pub struct Alg8Trace<W> {
    pub contraction: ContractionTrace<W>,
    pub p4: KPathPacking,
    pub p4_weight: W,
    /// Maximum matching of size `n/4`.
    pub middle: Matching,
    pub middle_weight: W,
    pub p4_prime: KPathPacking,
    pub p4_prime_weight: W,
    pub packing: KPathPacking,
    pub weight: W,
    pub metric: bool,
}

/// Metric 4PP: the heavier of the contraction paths and the paths built
/// around a maximum matching of size `n/4` (ties to the former).
pub fn alg8_metric_4pp<W: Weight>(g: &WeightedCompleteGraph<W>) -> Result<Alg8Trace<W>> {
    alg8_with_override(g, None)
}

pub fn alg8_with_override<W: Weight>(
    g: &WeightedCompleteGraph<W>,
    matching_override: Option<Matching>,
) -> Result<Alg8Trace<W>> {
    let n = g.n();
    check_divisible(n, 4)?;
    let metric = warn_unless_metric(g, "alg8");
    let (p4, contraction) = general_4pp(g, matching_override)?;
    let middle = max_weight_matching_of_size(g, n / 4)?;
    let free = middle.uncovered(n);
    let paths: Vec<Vec<usize>> = middle
        .edges()
        .iter()
        .zip(free.chunks(2))
        .map(|(&(x, y), pair)| {
            let (mut u, mut z) = (pair[0], pair[1]);
            if g.w(u, x) + g.w(y, z) < g.w(z, x) + g.w(y, u) {
                std::mem::swap(&mut u, &mut z);
            }
            vec![u, x, y, z]
        })
        .collect();
    let p4_prime = KPathPacking::new(n, 4, paths)?;
    let (p4_weight, p4_prime_weight) = (p4.weight(g), p4_prime.weight(g));
    let (packing, weight) = if p4_prime_weight > p4_weight {
        (p4_prime.clone(), p4_prime_weight)
    } else {
        (p4.clone(), p4_weight)
    };
    Ok(Alg8Trace {
        contraction,
        p4,
        p4_weight,
        middle_weight: middle.weight(g),
        middle,
        p4_prime,
        p4_prime_weight,
        packing,
        weight,
        metric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_weights_are_optimal() {
        let g = WeightedCompleteGraph::uniform(12, 2i64).unwrap();
        // (1 - 1/k) n c
        assert_eq!(alg4_tsp_kpp(&g, 6, TspSolver::Exact).unwrap().weight, 20);
        assert_eq!(alg5_matching_kpp_even(&g, 6, None).unwrap().weight, 20);
        assert_eq!(metric_kpp_combined(&g, 4, TspSolver::Exact).unwrap().weight, 18);
        assert_eq!(general_4pp(&g, None).unwrap().0.weight(&g), 18);
        assert_eq!(alg8_metric_4pp(&g).unwrap().weight, 18);
    }

    #[test]
    fn k4_matching_paths_double_the_middle_edge() {
        let g = crate::generate::generate_instance(&crate::GeneratorSpec::new(12, crate::WeightClass::Metric, 5)).unwrap();
        let t = alg5_matching_kpp_even(&g, 4, None).unwrap();
        for (w, s) in t.block_weights.iter().zip(&t.group_weights) {
            assert!(*w >= 2 * s);
        }
    }

    #[test]
    fn alg8_orientation_condition() {
        let g = crate::generate::generate_instance(&crate::GeneratorSpec::new(8, crate::WeightClass::Metric, 9)).unwrap();
        let t = alg8_metric_4pp(&g).unwrap();
        for p in t.p4_prime.paths() {
            let [u, x, y, z] = [p[0], p[1], p[2], p[3]];
            assert!(g.w(u, x) + g.w(y, z) >= g.w(z, x) + g.w(y, u));
            assert!(g.path_weight(p) >= 2 * g.w(x, y));
        }
        assert!(t.p4_prime_weight >= 2 * t.middle_weight);
    }

    #[test]
    fn odd_k_rejected() {
        let g = WeightedCompleteGraph::uniform(10, 1i64).unwrap();
        assert!(matches!(alg5_matching_kpp_even(&g, 5, None), Err(Error::UnsupportedK { .. })));
        assert!(matches!(metric_kpp_combined(&g, 5, TspSolver::Exact), Err(Error::UnsupportedK { .. })));
    }
}

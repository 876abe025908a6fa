//! k-cycle packing algorithms.

use crate::error::{Error, Result};
use crate::graph::{HamiltonianCycle, Matching, WeightedCompleteGraph};
use crate::grouping::{arrange_group, orient, EdgeGroupPlan, GroupFrame, OrientationMethod};
use crate::matching::{max_weight_matching_of_size, max_weight_perfect_matching};
use crate::packing::{KCyclePacking, KPathPacking};
use crate::tsp::{split_cycle_best_offset, OffsetSplit, SplitObjective, TspSolver};
use crate::weight::{total, Weight};

pub(crate) fn check_divisible(n: usize, k: usize) -> Result<()> {
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::NotDivisible { n, k });
    }
    Ok(())
}

/// Logs a warning when `g` breaks the triangle inequality. Returns whether
/// `g` is metric.
pub(crate) fn warn_unless_metric<W: Weight>(g: &WeightedCompleteGraph<W>, algorithm: &str) -> bool {
    match g.metric_violation() {
        None => true,
        Some(t) => {
            log::warn!("{algorithm}: input is not metric ({t}); the ratio guarantee does not apply");
            false
        }
    }
}

/// Closes every path into a cycle.
pub fn complete_paths<W: Weight>(g: &WeightedCompleteGraph<W>, paths: &KPathPacking) -> Result<KCyclePacking> {
    KCyclePacking::new(g.n(), paths.k(), paths.paths().to_vec())
}

/// The heaviest of the `k - 1` cycles `v1..vj vk v(k-1)..v(j+1)` built from
/// one path.
#[derive(Clone, Debug, PartialEq)]
pub struct PathCycle<W> {
    pub cycle: Vec<usize>,
    pub weight: W,
    /// The winning `j` (1-based); ties go to the smallest.
    pub j: usize,
}

pub fn best_cycle_from_path<W: Weight>(g: &WeightedCompleteGraph<W>, path: &[usize]) -> Result<PathCycle<W>> {
    let k = path.len();
    if k < 3 {
        return Err(Error::UnsupportedK { k, reason: "a cycle needs at least 3 vertices" });
    }
    let mut best: Option<PathCycle<W>> = None;
    for j in 1..k {
        let mut cycle = path[..j].to_vec();
        cycle.extend(path[j..].iter().rev());
        let weight = g.cycle_weight(&cycle);
        if best.as_ref().is_none_or(|b| weight > b.weight) {
            best = Some(PathCycle { cycle, weight, j });
        }
    }
    Ok(best.expect("k >= 3"))
}

/// Intermediates of the tour-based cycle algorithms.
#[derive(Clone, Debug)]
pub struct TourCycleTrace<W> {
    pub tour: HamiltonianCycle,
    pub tour_weight: W,
    pub split: OffsetSplit<W>,
    pub packing: KCyclePacking,
    pub weight: W,
    pub metric: bool,
}

/// Tour, best plain offset split, then close each path.
pub fn alg1_metric_kcp<W: Weight>(g: &WeightedCompleteGraph<W>, k: usize, tsp: TspSolver) -> Result<TourCycleTrace<W>> {
    check_divisible(g.n(), k)?;
    if k < 3 {
        return Err(Error::UnsupportedK { k, reason: "cycles need k >= 3" });
    }
    let metric = warn_unless_metric(g, "alg1");
    let tour = tsp.solve(g)?;
    let split = split_cycle_best_offset(g, &tour, k, SplitObjective::Plain)?;
    let packing = complete_paths(g, &split.packing)?;
    Ok(TourCycleTrace {
        tour_weight: tour.weight(g),
        weight: packing.weight(g),
        tour,
        split,
        packing,
        metric,
    })
}

/// Tour, best offset under `(k-2) w + 2 w~`, then the best of the `k - 1`
/// candidate cycles per path.
pub fn alg2_metric_kcp_even<W: Weight>(
    g: &WeightedCompleteGraph<W>,
    k: usize,
    tsp: TspSolver,
) -> Result<TourCycleTrace<W>> {
    if !k.is_multiple_of(2) || k < 4 {
        return Err(Error::UnsupportedK { k, reason: "alg2 needs even k >= 4" });
    }
    check_divisible(g.n(), k)?;
    let metric = warn_unless_metric(g, "alg2");
    let tour = tsp.solve(g)?;
    let split = split_cycle_best_offset(g, &tour, k, SplitObjective::Tilde)?;
    let cycles = split
        .packing
        .paths()
        .iter()
        .map(|p| best_cycle_from_path(g, p).map(|c| c.cycle))
        .collect::<Result<Vec<_>>>()?;
    let packing = KCyclePacking::new(g.n(), k, cycles)?;
    Ok(TourCycleTrace {
        tour_weight: tour.weight(g),
        weight: packing.weight(g),
        tour,
        split,
        packing,
        metric,
    })
}

/// Intermediates of the matching-based group constructions.
#[derive(Clone, Debug)]
pub struct GroupTrace<W, P> {
    /// The size-`p` matching whose edges are grouped.
    pub matching: Matching,
    pub matching_weight: W,
    /// Groups in construction order (after [`arrange_group`]).
    pub plan: EdgeGroupPlan,
    /// `w(S_i)` per group.
    pub group_weights: Vec<W>,
    /// Weight of the block built from each group.
    pub block_weights: Vec<W>,
    pub packing: P,
    pub weight: W,
    pub metric: bool,
}

/// Shared body of the odd-k cycle and even-k path group constructions.
pub(crate) fn build_groups<W: Weight>(
    g: &WeightedCompleteGraph<W>,
    k: usize,
    m: usize,
    per_group: usize,
    plan: Option<EdgeGroupPlan>,
    method: OrientationMethod,
) -> Result<(Matching, EdgeGroupPlan, Vec<Vec<usize>>)> {
    let n = g.n();
    let count = n / k;
    let p = count * m;
    let best = max_weight_matching_of_size(g, p)?;
    let plan = match plan {
        None => EdgeGroupPlan::round_robin(g, &best, count, per_group),
        Some(plan) => {
            plan.validate(n, count, m, per_group)?;
            let given = plan.matching(n)?;
            let (gw, bw) = (given.weight(g), best.weight(g));
            if gw != bw {
                return Err(Error::InconsistentPlan(format!(
                    "plan matching weighs {gw}, a maximum matching of size {p} weighs {bw}"
                )));
            }
            plan
        }
    };
    let matching = plan.matching(n)?;
    let arranged: Vec<Vec<(usize, usize)>> = plan.groups().iter().map(|e| arrange_group(g, e)).collect();
    let mut blocks = Vec::with_capacity(count);
    for (edges, iso) in arranged.iter().zip(plan.isolated()) {
        let frame = GroupFrame { start: iso[0], edges, end: iso.get(1).copied() };
        let flips = orient(g, &frame, method);
        blocks.push(frame.sequence(&flips));
    }
    let lines = arranged
        .into_iter()
        .zip(plan.isolated())
        .map(|(edges, iso)| crate::io::PlanLine { edges, isolated: iso.clone() })
        .collect();
    Ok((matching, EdgeGroupPlan::from_lines(lines), blocks))
}

/// Matching-based construction for odd k: group a maximum matching of size
/// `(n/k)(k-1)/2`, one isolated vertex per group, cycle `v t1 h1 .. tm hm v`.
pub fn alg3_matching_kcp_odd<W: Weight>(
    g: &WeightedCompleteGraph<W>,
    k: usize,
    plan: Option<EdgeGroupPlan>,
) -> Result<GroupTrace<W, KCyclePacking>> {
    alg3_with_orientation(g, k, plan, OrientationMethod::Auto)
}

pub fn alg3_with_orientation<W: Weight>(
    g: &WeightedCompleteGraph<W>,
    k: usize,
    plan: Option<EdgeGroupPlan>,
    method: OrientationMethod,
) -> Result<GroupTrace<W, KCyclePacking>> {
    if k.is_multiple_of(2) || k < 3 {
        return Err(Error::UnsupportedK { k, reason: "alg3 needs odd k >= 3" });
    }
    check_divisible(g.n(), k)?;
    let metric = warn_unless_metric(g, "alg3");
    let (matching, plan, blocks) = build_groups(g, k, (k - 1) / 2, 1, plan, method)?;
    let group_weights = plan.groups().iter().map(|e| total(e.iter().map(|&(a, b)| g.w(a, b)))).collect();
    let block_weights = blocks.iter().map(|c| g.cycle_weight(c)).collect();
    let packing = KCyclePacking::new(g.n(), k, blocks)?;
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

/// The perfect matching used by the 4-packing algorithms: `over` after
/// validation, else a maximum one.
pub(crate) fn base_matching<W: Weight>(g: &WeightedCompleteGraph<W>, over: Option<Matching>) -> Result<Matching> {
    let n = g.n();
    match over {
        None => max_weight_perfect_matching(g),
        Some(m) => {
            let m = Matching::new(n, m.edges().iter().copied())?;
            if !m.is_perfect(n) {
                return Err(Error::InvalidMatching(format!(
                    "override has {} edges, a perfect matching needs {}",
                    m.size(),
                    n / 2
                )));
            }
            Ok(m)
        }
    }
}

/// Contracts each edge of `base` to a super-vertex, joins super-vertices by
/// `pair_value(e_s, e_t)` and returns a maximum perfect matching of the
/// contracted graph as pairs `(s, t)` with `s < t`.
pub(crate) fn contracted_matching<W: Weight>(
    base: &Matching,
    mut pair_value: impl FnMut((usize, usize), (usize, usize)) -> W,
) -> Result<Vec<(usize, usize)>> {
    let e = base.edges();
    let h = WeightedCompleteGraph::from_fn(e.len(), |s, t| pair_value(e[s], e[t]))?;
    Ok(max_weight_perfect_matching(&h)?.edges().to_vec())
}

/// Best of the four connectors between `(a, b)` and `(c, d)`, scanned in the
/// order a-c, a-d, b-c, b-d; returns the 4-path `u x y z` with `x y` the
/// connector.
pub(crate) fn best_connector<W: Weight>(g: &WeightedCompleteGraph<W>, (a, b): (usize, usize), (c, d): (usize, usize)) -> [usize; 4] {
    let options = [[b, a, c, d], [b, a, d, c], [a, b, c, d], [a, b, d, c]];
    let mut best = options[0];
    for o in &options[1..] {
        if g.w(o[1], o[2]) > g.w(best[1], best[2]) {
            best = *o;
        }
    }
    best
}

/// Intermediates of the contraction-based 4-packing algorithms.
#[derive(Clone, Debug)]
pub struct ContractionTrace<W> {
    /// The perfect matching `M*` that was contracted.
    pub matching: Matching,
    pub matching_weight: W,
    /// Weight of the perfect matching on the contracted graph.
    pub contracted_weight: W,
    /// 4-paths `u x y z` with `u x`, `y z` in `M*` (general algorithm only).
    pub paths: Option<KPathPacking>,
    pub packing: KCyclePacking,
    pub weight: W,
    pub metric: bool,
}

/// General 4CP: contract a maximum perfect matching, keep the heaviest of
/// the four connectors per super-pair, match, expand to 4-paths and close
/// them.
pub fn alg6_general_4cp<W: Weight>(
    g: &WeightedCompleteGraph<W>,
    matching_override: Option<Matching>,
) -> Result<ContractionTrace<W>> {
    let n = g.n();
    check_divisible(n, 4)?;
    let base = base_matching(g, matching_override)?;
    let pairs = contracted_matching(&base, |e, f| {
        let p = best_connector(g, e, f);
        g.w(p[1], p[2])
    })?;
    let e = base.edges();
    let paths: Vec<Vec<usize>> = pairs.iter().map(|&(s, t)| best_connector(g, e[s], e[t]).to_vec()).collect();
    let contracted_weight = total(paths.iter().map(|p| g.w(p[1], p[2])));
    let paths = KPathPacking::new(n, 4, paths)?;
    let packing = complete_paths(g, &paths)?;
    Ok(ContractionTrace {
        matching_weight: base.weight(g),
        matching: base,
        contracted_weight,
        paths: Some(paths),
        weight: packing.weight(g),
        packing,
        metric: g.is_metric(),
    })
}

/// Of the two 4-cycles through `(u, x)` and `(y, z)`, `u x y z` and
/// `u x z y`, the heavier (ties to the first).
pub(crate) fn best_closing<W: Weight>(g: &WeightedCompleteGraph<W>, (u, x): (usize, usize), (y, z): (usize, usize)) -> [usize; 4] {
    if g.w(u, y) + g.w(x, z) > g.w(u, z) + g.w(x, y) {
        [u, x, z, y]
    } else {
        [u, x, y, z]
    }
}

/// Metric 4CP: the maximum-weight 4-cycle packing containing every edge of
/// a maximum perfect matching.
pub fn alg7_metric_4cp<W: Weight>(
    g: &WeightedCompleteGraph<W>,
    matching_override: Option<Matching>,
) -> Result<ContractionTrace<W>> {
    let n = g.n();
    check_divisible(n, 4)?;
    let metric = warn_unless_metric(g, "alg7");
    let base = base_matching(g, matching_override)?;
    let pairs = contracted_matching(&base, |e, f| {
        let c = best_closing(g, e, f);
        g.w(c[1], c[2]) + g.w(c[3], c[0])
    })?;
    let e = base.edges();
    let cycles: Vec<Vec<usize>> = pairs.iter().map(|&(s, t)| best_closing(g, e[s], e[t]).to_vec()).collect();
    let contracted_weight = total(cycles.iter().map(|c| g.w(c[1], c[2]) + g.w(c[3], c[0])));
    let packing = KCyclePacking::new(n, 4, cycles)?;
    Ok(ContractionTrace {
        matching_weight: base.weight(g),
        matching: base,
        contracted_weight,
        paths: None,
        weight: packing.weight(g),
        packing,
        metric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completion_adds_closing_edge() {
        let g = WeightedCompleteGraph::from_fn(4, |u, v| if (u, v) == (0, 3) { 5i64 } else { 1 }).unwrap();
        let p = KPathPacking::new(4, 4, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(complete_paths(&g, &p).unwrap().weight(&g), p.weight(&g) + 5);
    }

    #[test]
    fn four_vertex_path_candidates() {
        // path a-b-c-d; only {ab,bd,dc,ca} and {ab,bc,cd,da} are distinct
        let (a, b, c, d) = (0, 1, 2, 3);
        let g = WeightedCompleteGraph::from_fn(4, |u, v| match (u, v) {
            (0, 2) | (1, 3) => 10i64,
            _ => 1,
        })
        .unwrap();
        let best = best_cycle_from_path(&g, &[a, b, c, d]).unwrap();
        assert_eq!(best.j, 2);
        assert_eq!(best.cycle, vec![a, b, d, c]);
        assert_eq!(best.weight, 1 + 10 + 1 + 10);
        let flat = WeightedCompleteGraph::uniform(4, 2i64).unwrap();
        let plain = best_cycle_from_path(&flat, &[a, b, c, d]).unwrap();
        assert_eq!((plain.j, plain.weight), (1, 8));
    }

    #[test]
    fn uniform_weights_are_optimal() {
        let g = WeightedCompleteGraph::uniform(12, 3i64).unwrap();
        assert_eq!(alg1_metric_kcp(&g, 4, TspSolver::Exact).unwrap().weight, 36);
        assert_eq!(alg2_metric_kcp_even(&g, 6, TspSolver::Exact).unwrap().weight, 36);
        assert_eq!(alg3_matching_kcp_odd(&g, 3, None).unwrap().weight, 36);
        assert_eq!(alg6_general_4cp(&g, None).unwrap().weight, 36);
        assert_eq!(alg7_metric_4cp(&g, None).unwrap().weight, 36);
    }

    #[test]
    fn preconditions() {
        let g = WeightedCompleteGraph::uniform(10, 1i64).unwrap();
        assert!(matches!(alg1_metric_kcp(&g, 4, TspSolver::Exact), Err(Error::NotDivisible { .. })));
        assert!(matches!(alg2_metric_kcp_even(&g, 5, TspSolver::Exact), Err(Error::UnsupportedK { .. })));
        assert!(matches!(alg3_matching_kcp_odd(&g, 2, None), Err(Error::UnsupportedK { .. })));
        assert!(matches!(alg6_general_4cp(&g, None), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn override_must_be_perfect() {
        let g = WeightedCompleteGraph::uniform(8, 1i64).unwrap();
        let partial = Matching::new(8, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(alg7_metric_4cp(&g, Some(partial)), Err(Error::InvalidMatching(_))));
    }

    #[test]
    fn inconsistent_plan_is_rejected() {
        let g = WeightedCompleteGraph::from_fn(5, |u, v| if (u, v) == (0, 1) { 2i64 } else { 1 }).unwrap();
        let light = EdgeGroupPlan::from_lines(vec![crate::io::PlanLine { edges: vec![(2, 3), (1, 4)], isolated: vec![0] }]);
        assert!(matches!(alg3_matching_kcp_odd(&g, 5, Some(light)), Err(Error::InconsistentPlan(_))));
        let heavy = EdgeGroupPlan::from_lines(vec![crate::io::PlanLine { edges: vec![(2, 3), (0, 1)], isolated: vec![4] }]);
        let t = alg3_matching_kcp_odd(&g, 5, Some(heavy)).unwrap();
        assert_eq!(t.plan.groups()[0], vec![(0, 1), (2, 3)]);
    }
}

//! Maximum-weight Hamiltonian cycles and offset splitting of a tour into
//! k-paths.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{HamiltonianCycle, WeightedCompleteGraph};
use crate::packing::KPathPacking;
use crate::weight::Weight;

/// Largest `n` accepted by [`exact_max_tsp`].
pub const EXACT_TSP_CAP: usize = 18;

/// Maximum-weight Hamiltonian cycle by dynamic programming over
/// `(visited subset, endpoint)`, anchored at vertex 0.
pub fn exact_max_tsp<W: Weight>(g: &WeightedCompleteGraph<W>) -> Result<HamiltonianCycle> {
    exact_max_tsp_capped(g, EXACT_TSP_CAP)
}

pub fn exact_max_tsp_capped<W: Weight>(g: &WeightedCompleteGraph<W>, cap: usize) -> Result<HamiltonianCycle> {
    let n = g.n();
    if n > cap {
        return Err(Error::CapExceeded { what: "exact TSP", size: n, cap });
    }
    if n <= 3 {
        return HamiltonianCycle::new(n, (0..n).collect());
    }
    // Vertex v >= 1 is bit v-1; vertex 0 is the fixed start.
    let m = n - 1;
    let full = (1usize << m) - 1;
    let mut dp = vec![W::zero(); (full + 1) * m];
    let mut parent = vec![u8::MAX; (full + 1) * m];
    for j in 0..m {
        dp[(1 << j) * m + j] = g.w(0, j + 1);
    }
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        let mut bits = mask;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let prev = mask & !(1 << j);
            let mut best = None::<(W, usize)>;
            let mut pbits = prev;
            while pbits != 0 {
                let i = pbits.trailing_zeros() as usize;
                pbits &= pbits - 1;
                let cand = dp[prev * m + i] + g.w(i + 1, j + 1);
                if best.is_none_or(|(b, _)| cand > b) {
                    best = Some((cand, i));
                }
            }
            let (b, i) = best.expect("prev is non-empty");
            dp[mask * m + j] = b;
            parent[mask * m + j] = i as u8;
        }
    }
    let mut best = None::<(W, usize)>;
    for j in 0..m {
        let cand = dp[full * m + j] + g.w(j + 1, 0);
        if best.is_none_or(|(b, _)| cand > b) {
            best = Some((cand, j));
        }
    }
    let (_, mut j) = best.expect("n >= 4");
    let mut mask = full;
    let mut rev = Vec::with_capacity(n);
    loop {
        rev.push(j + 1);
        let p = parent[mask * m + j];
        mask &= !(1 << j);
        if p == u8::MAX {
            break;
        }
        j = p as usize;
    }
    rev.push(0);
    rev.reverse();
    HamiltonianCycle::new(n, rev)
}

fn weight_desc<W: Weight>(a: W, b: W) -> Ordering {
    b.partial_cmp(&a).unwrap_or(Ordering::Equal)
}

/// Greedy tour: scan edges from heaviest to lightest (ties by vertex ids),
/// keep an edge when both ends have degree below two and it closes no
/// premature cycle, then close the resulting Hamiltonian path.
pub fn heuristic_max_tsp<W: Weight>(g: &WeightedCompleteGraph<W>) -> Result<HamiltonianCycle> {
    let n = g.n();
    if n <= 3 {
        return HamiltonianCycle::new(n, (0..n).collect());
    }
    let mut edges: Vec<(usize, usize)> = g.pairs().collect();
    edges.sort_by(|&(a, b), &(c, d)| weight_desc(g.w(a, b), g.w(c, d)).then((a, b).cmp(&(c, d))));

    let mut comp: Vec<usize> = (0..n).collect();
    fn find(comp: &mut [usize], mut x: usize) -> usize {
        while comp[x] != x {
            comp[x] = comp[comp[x]];
            x = comp[x];
        }
        x
    }
    let mut adj = vec![Vec::with_capacity(2); n];
    let mut taken = 0;
    for (u, v) in edges {
        if taken == n - 1 {
            break;
        }
        if adj[u].len() >= 2 || adj[v].len() >= 2 {
            continue;
        }
        let (ru, rv) = (find(&mut comp, u), find(&mut comp, v));
        if ru == rv {
            continue;
        }
        comp[ru] = rv;
        adj[u].push(v);
        adj[v].push(u);
        taken += 1;
    }
    let start = (0..n).find(|&v| adj[v].len() < 2).expect("a Hamiltonian path has endpoints");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < n {
        let next = *adj[cur].iter().find(|&&x| x != prev).expect("path continues");
        order.push(next);
        prev = cur;
        cur = next;
    }
    HamiltonianCycle::new(n, order)
}

/// Black-box tour solver used by the TSP-based algorithms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TspSolver {
    #[default]
    Exact,
    Greedy,
}

impl TspSolver {
    pub fn solve<W: Weight>(self, g: &WeightedCompleteGraph<W>) -> Result<HamiltonianCycle> {
        match self {
            Self::Exact => exact_max_tsp(g),
            Self::Greedy => heuristic_max_tsp(g),
        }
    }
}

impl fmt::Display for TspSolver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exact => "exact",
            Self::Greedy => "greedy",
        })
    }
}

impl FromStr for TspSolver {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "greedy" => Ok(Self::Greedy),
            other => Err(Error::Unsupported(format!("TSP solver '{other}'"))),
        }
    }
}

/// Score used to pick the splitting offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitObjective {
    /// `sum w(P)`.
    Plain,
    /// `(k - 2) * sum w(P) + 2 * sum w~(P)`; even k only.
    Tilde,
}

/// Result of [`split_cycle_best_offset`].
#[derive(Clone, Debug, PartialEq)]
pub struct OffsetSplit<W> {
    pub packing: KPathPacking,
    pub offset: usize,
    /// Objective value of the chosen offset.
    pub value: W,
    /// Objective value of every offset `0..k`.
    pub offset_values: Vec<W>,
}

/// Paths obtained from `tour` by deleting the edges entering positions
/// `offset, offset + k, ...`.
pub fn split_at_offset(tour: &HamiltonianCycle, k: usize, offset: usize) -> Vec<Vec<usize>> {
    let order = tour.order();
    let n = order.len();
    (0..n / k)
        .map(|j| (0..k).map(|i| order[(offset + j * k + i) % n]).collect())
        .collect()
}

/// Splits `tour` into `n/k` k-paths at the offset maximising `objective`;
/// ties go to the smallest offset.
pub fn split_cycle_best_offset<W: Weight>(
    g: &WeightedCompleteGraph<W>,
    tour: &HamiltonianCycle,
    k: usize,
    objective: SplitObjective,
) -> Result<OffsetSplit<W>> {
    let n = g.n();
    if tour.len() != n {
        return Err(Error::InvalidTour(format!("tour has {} vertices, graph has {n}", tour.len())));
    }
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::NotDivisible { n, k });
    }
    if objective == SplitObjective::Tilde && !k.is_multiple_of(2) {
        return Err(Error::UnsupportedK { k, reason: "the tilde objective needs even k" });
    }
    let score = |paths: &[Vec<usize>]| -> W {
        let plain = paths.iter().fold(W::zero(), |acc, p| acc + g.path_weight(p));
        match objective {
            SplitObjective::Plain => plain,
            SplitObjective::Tilde => {
                let tilde = paths
                    .iter()
                    .fold(W::zero(), |acc, p| acc + g.tilde_weight(p).expect("k is even"));
                W::of(k as i64 - 2) * plain + W::of(2) * tilde
            }
        }
    };
    let mut offset_values = Vec::with_capacity(k);
    let mut best = (0, W::zero());
    for r in 0..k {
        let v = score(&split_at_offset(tour, k, r));
        if r == 0 || v > best.1 {
            best = (r, v);
        }
        offset_values.push(v);
    }
    let packing = KPathPacking::new(n, k, split_at_offset(tour, k, best.0))?;
    Ok(OffsetSplit { packing, offset: best.0, value: best.1, offset_values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_heavy_edges_on_four_vertices() {
        let g = WeightedCompleteGraph::from_fn(4, |u, v| match (u, v) {
            (0, 1) | (2, 3) => 10i64,
            _ => 1,
        })
        .unwrap();
        let h = exact_max_tsp(&g).unwrap();
        assert_eq!(h.weight(&g), 22);
    }

    #[test]
    fn tiny_and_uniform_tours() {
        let g = WeightedCompleteGraph::from_upper_triangle(3, &[1i64, 2, 3]).unwrap();
        assert_eq!(exact_max_tsp(&g).unwrap().weight(&g), 6);
        assert_eq!(heuristic_max_tsp(&g).unwrap().weight(&g), 6);
        let u = WeightedCompleteGraph::uniform(9, 4i64).unwrap();
        assert_eq!(exact_max_tsp(&u).unwrap().weight(&u), 36);
        assert_eq!(heuristic_max_tsp(&u).unwrap().weight(&u), 36);
    }

    #[test]
    fn cap_is_enforced() {
        let g = WeightedCompleteGraph::uniform(19, 1i64).unwrap();
        assert!(matches!(exact_max_tsp(&g), Err(Error::CapExceeded { .. })));
        assert!(heuristic_max_tsp(&g).is_ok());
    }

    #[test]
    fn plain_split_keeps_the_heavy_edge() {
        let n = 12;
        let tour = HamiltonianCycle::new(n, (0..n).collect()).unwrap();
        let g = WeightedCompleteGraph::from_fn(n, |u, v| if (u, v) == (4, 5) { 100i64 } else { 1 }).unwrap();
        let s = split_cycle_best_offset(&g, &tour, 4, SplitObjective::Plain).unwrap();
        assert!(s.packing.paths().iter().any(|p| p.windows(2).any(|e| e == [4, 5])));
        assert_eq!(s.value, 100 + 8);
    }

    #[test]
    fn uniform_split_is_tight() {
        let n = 12;
        let tour = HamiltonianCycle::new(n, (0..n).collect()).unwrap();
        let g = WeightedCompleteGraph::uniform(n, 3i64).unwrap();
        let s = split_cycle_best_offset(&g, &tour, 4, SplitObjective::Plain).unwrap();
        assert_eq!(s.offset, 0);
        assert_eq!(s.value * 4, 3 * 36);
    }

    #[test]
    fn split_preconditions() {
        let tour = HamiltonianCycle::new(6, (0..6).collect()).unwrap();
        let g = WeightedCompleteGraph::uniform(6, 1i64).unwrap();
        assert!(matches!(
            split_cycle_best_offset(&g, &tour, 4, SplitObjective::Plain),
            Err(Error::NotDivisible { n: 6, k: 4 })
        ));
        assert!(matches!(
            split_cycle_best_offset(&g, &tour, 3, SplitObjective::Tilde),
            Err(Error::UnsupportedK { k: 3, .. })
        ));
    }

    #[test]
    fn offsets_rotate_the_tour() {
        let tour = HamiltonianCycle::new(6, vec![5, 4, 3, 2, 1, 0]).unwrap();
        assert_eq!(split_at_offset(&tour, 3, 1), vec![vec![4, 3, 2], vec![1, 0, 5]]);
    }
}

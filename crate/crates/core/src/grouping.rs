//! Edge-group plans for the matching-based constructions, and the choice of
//! edge orientations inside a group.
//!
//! A group is a list of matching edges `e_1..e_m` plus one isolated vertex
//! (cycles, `v t1 h1 .. tm hm v`) or two (paths, `u t1 h1 .. tm hm v`).
//! Only the connector edges depend on the orientations.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{Matching, WeightedCompleteGraph};
use crate::io::PlanLine;
use crate::weight::Weight;

/// Partition of a size-`p` matching into `n/k` groups of `m` edges, each
/// with its isolated vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGroupPlan {
    groups: Vec<Vec<(usize, usize)>>,
    isolated: Vec<Vec<usize>>,
}

fn norm((a, b): (usize, usize)) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn by_weight_desc<W: Weight>(g: &WeightedCompleteGraph<W>, a: (usize, usize), b: (usize, usize)) -> Ordering {
    g.w(b.0, b.1).partial_cmp(&g.w(a.0, a.1)).unwrap_or(Ordering::Equal)
}

impl EdgeGroupPlan {
    /// Sorts the matching by weight (descending, ties by edge), deals the
    /// edges round-robin into `groups` groups and hands out the uncovered
    /// vertices in ascending order, `per_group` at a time.
    pub fn round_robin<W: Weight>(
        g: &WeightedCompleteGraph<W>,
        matching: &Matching,
        groups: usize,
        per_group: usize,
    ) -> Self {
        let mut edges = matching.edges().to_vec();
        edges.sort_by(|&a, &b| by_weight_desc(g, a, b).then(a.cmp(&b)));
        let mut out = vec![Vec::new(); groups];
        for (t, e) in edges.into_iter().enumerate() {
            out[t % groups].push(e);
        }
        let free = matching.uncovered(g.n());
        let isolated = free.chunks(per_group.max(1)).map(<[usize]>::to_vec).collect();
        Self { groups: out, isolated }
    }

    pub fn from_lines(lines: Vec<PlanLine>) -> Self {
        let (groups, isolated) = lines
            .into_iter()
            .map(|l| (l.edges.into_iter().map(norm).collect(), l.isolated))
            .unzip();
        Self { groups, isolated }
    }

    pub fn to_lines(&self) -> Vec<PlanLine> {
        self.groups
            .iter()
            .zip(&self.isolated)
            .map(|(e, i)| PlanLine { edges: e.clone(), isolated: i.clone() })
            .collect()
    }

    pub fn groups(&self) -> &[Vec<(usize, usize)>] {
        &self.groups
    }

    pub fn isolated(&self) -> &[Vec<usize>] {
        &self.isolated
    }

    /// The matching formed by all group edges.
    pub fn matching(&self, n: usize) -> Result<Matching> {
        Matching::new(n, self.groups.iter().flatten().copied())
            .map_err(|e| Error::InconsistentPlan(e.to_string()))
    }

    /// Checks the shape: `count` groups of `m` edges, `per_group` isolated
    /// vertices each, and every vertex of `0..n` used exactly once.
    pub fn validate(&self, n: usize, count: usize, m: usize, per_group: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InconsistentPlan(msg));
        if self.groups.len() != count || self.isolated.len() != count {
            return bad(format!("expected {count} groups, found {}", self.groups.len()));
        }
        for (i, (e, iso)) in self.groups.iter().zip(&self.isolated).enumerate() {
            if e.len() != m {
                return bad(format!("group {i} has {} edges, expected {m}", e.len()));
            }
            if iso.len() != per_group {
                return bad(format!("group {i} has {} isolated vertices, expected {per_group}", iso.len()));
            }
        }
        let mut seen = vec![false; n];
        let all = self.groups.iter().flatten().flat_map(|&(a, b)| [a, b]);
        for v in all.chain(self.isolated.iter().flatten().copied()) {
            if v >= n {
                return bad(format!("vertex {v} out of range"));
            }
            if std::mem::replace(&mut seen[v], true) {
                return bad(format!("vertex {v} used twice"));
            }
        }
        match seen.iter().position(|s| !s) {
            Some(v) => bad(format!("vertex {v} not used")),
            None => Ok(()),
        }
    }
}

/// Reorders a group so the heaviest edge comes first, the second heaviest
/// last, and the rest follow in descending weight. Stable for ties.
pub fn arrange_group<W: Weight>(g: &WeightedCompleteGraph<W>, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut sorted = edges.to_vec();
    sorted.sort_by(|&a, &b| by_weight_desc(g, a, b));
    if sorted.len() >= 3 {
        let second = sorted.remove(1);
        sorted.push(second);
    }
    sorted
}

/// How orientations are chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OrientationMethod {
    /// Exhaustive for `m <= 12`, conditional expectations above.
    #[default]
    Auto,
    Exhaustive,
    ConditionalExpectation,
}

/// Largest group size searched exhaustively under [`OrientationMethod::Auto`].
pub const EXHAUSTIVE_ORIENTATION_MAX: usize = 12;

/// A group together with its fixed endpoints. `end = None` closes the
/// sequence back to `start` (cycle).
#[derive(Clone, Copy, Debug)]
pub struct GroupFrame<'a> {
    pub start: usize,
    pub edges: &'a [(usize, usize)],
    pub end: Option<usize>,
}

impl GroupFrame<'_> {
    fn end_vertex(&self) -> usize {
        self.end.unwrap_or(self.start)
    }

    fn oriented(&self, i: usize, flip: bool) -> (usize, usize) {
        let (a, b) = self.edges[i];
        if flip {
            (b, a)
        } else {
            (a, b)
        }
    }

    /// Vertex sequence for the given orientations (`flips[i]` reverses `e_i`).
    pub fn sequence(&self, flips: &[bool]) -> Vec<usize> {
        let mut seq = vec![self.start];
        for (i, &f) in flips.iter().enumerate() {
            let (t, h) = self.oriented(i, f);
            seq.push(t);
            seq.push(h);
        }
        if let Some(e) = self.end {
            seq.push(e);
        }
        seq
    }

    /// Total weight of the connector edges `start-t1`, `h_i-t_{i+1}`,
    /// `h_m-end`.
    pub fn connector_weight<W: Weight>(&self, g: &WeightedCompleteGraph<W>, flips: &[bool]) -> W {
        let m = self.edges.len();
        let mut acc = g.w(self.start, self.oriented(0, flips[0]).0);
        for i in 0..m - 1 {
            acc += g.w(self.oriented(i, flips[i]).1, self.oriented(i + 1, flips[i + 1]).0);
        }
        acc + g.w(self.oriented(m - 1, flips[m - 1]).1, self.end_vertex())
    }

    /// Four times the expected connector weight when orientations `0..fixed`
    /// are set by `flips` and the others are uniform.
    pub fn expected_connector_x4<W: Weight>(&self, g: &WeightedCompleteGraph<W>, flips: &[bool], fixed: usize) -> W {
        let m = self.edges.len();
        let choices = |i: usize| -> Vec<(usize, usize)> {
            if i < fixed {
                vec![self.oriented(i, flips[i])]
            } else {
                vec![self.oriented(i, false), self.oriented(i, true)]
            }
        };
        // sum over choices scaled so every term carries total multiplicity 4
        let pair = |xs: Vec<usize>, ys: Vec<usize>| -> W {
            let mult = W::of(4 / (xs.len() * ys.len()) as i64);
            let mut s = W::zero();
            for &x in &xs {
                for &y in &ys {
                    s += g.w(x, y);
                }
            }
            s * mult
        };
        let tails = |i: usize| choices(i).into_iter().map(|e| e.0).collect::<Vec<_>>();
        let heads = |i: usize| choices(i).into_iter().map(|e| e.1).collect::<Vec<_>>();
        let mut acc = pair(vec![self.start], tails(0));
        for i in 0..m - 1 {
            acc += pair(heads(i), tails(i + 1));
        }
        acc + pair(heads(m - 1), vec![self.end_vertex()])
    }
}

/// Orientations maximising the connector weight over all `2^m` choices;
/// the first maximiser in binary-counting order wins.
pub fn orient_exhaustive<W: Weight>(g: &WeightedCompleteGraph<W>, frame: &GroupFrame<'_>) -> Vec<bool> {
    let m = frame.edges.len();
    let mut best = (W::zero(), vec![false; m]);
    for mask in 0u64..(1u64 << m) {
        let flips: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
        let w = frame.connector_weight(g, &flips);
        if mask == 0 || w > best.0 {
            best = (w, flips);
        }
    }
    best.1
}

/// Derandomised uniform orientation: fixes `e_1, e_2, ...` in turn, keeping
/// the choice with the larger conditional expectation (ties keep `e_i` as
/// given).
pub fn orient_conditional_expectation<W: Weight>(g: &WeightedCompleteGraph<W>, frame: &GroupFrame<'_>) -> Vec<bool> {
    let m = frame.edges.len();
    let mut flips = vec![false; m];
    for i in 0..m {
        flips[i] = false;
        let keep = frame.expected_connector_x4(g, &flips, i + 1);
        flips[i] = true;
        let flip = frame.expected_connector_x4(g, &flips, i + 1);
        flips[i] = flip > keep;
    }
    flips
}

pub fn orient<W: Weight>(g: &WeightedCompleteGraph<W>, frame: &GroupFrame<'_>, method: OrientationMethod) -> Vec<bool> {
    match method {
        OrientationMethod::Exhaustive => orient_exhaustive(g, frame),
        OrientationMethod::ConditionalExpectation => orient_conditional_expectation(g, frame),
        OrientationMethod::Auto if frame.edges.len() <= EXHAUSTIVE_ORIENTATION_MAX => orient_exhaustive(g, frame),
        OrientationMethod::Auto => orient_conditional_expectation(g, frame),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(n: usize) -> WeightedCompleteGraph<i64> {
        WeightedCompleteGraph::from_fn(n, |u, v| (v - u) as i64).unwrap()
    }

    #[test]
    fn arrange_puts_two_heaviest_at_the_ends() {
        let g = WeightedCompleteGraph::from_fn(8, |u, v| (u + v) as i64).unwrap();
        let edges = [(0, 1), (2, 3), (4, 5), (6, 7)];
        assert_eq!(arrange_group(&g, &edges), vec![(6, 7), (2, 3), (0, 1), (4, 5)]);
        assert_eq!(arrange_group(&g, &edges[..2]), vec![(2, 3), (0, 1)]);
    }

    #[test]
    fn round_robin_plan() {
        let g = WeightedCompleteGraph::from_fn(10, |u, v| (u * v) as i64).unwrap();
        let m = Matching::new(10, [(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap();
        let plan = EdgeGroupPlan::round_robin(&g, &m, 2, 1);
        assert_eq!(plan.groups(), &[vec![(6, 7), (2, 3)], vec![(4, 5), (0, 1)]]);
        assert_eq!(plan.isolated(), &[vec![8], vec![9]]);
        plan.validate(10, 2, 2, 1).unwrap();
        assert!(plan.validate(10, 2, 2, 2).is_err());
        assert!(plan.validate(12, 2, 2, 1).is_err());
    }

    #[test]
    fn frame_sequences() {
        let edges = [(1, 2), (3, 4)];
        let cyc = GroupFrame { start: 0, edges: &edges, end: None };
        assert_eq!(cyc.sequence(&[false, true]), vec![0, 1, 2, 4, 3]);
        let path = GroupFrame { start: 0, edges: &edges, end: Some(5) };
        assert_eq!(path.sequence(&[true, false]), vec![0, 2, 1, 3, 4, 5]);
        let g = line(6);
        // 0-2, 1-3, 4-5
        assert_eq!(path.connector_weight(&g, &[true, false]), 2 + 2 + 1);
    }

    #[test]
    fn expectation_matches_average() {
        let g = WeightedCompleteGraph::from_fn(9, |u, v| ((u * 7 + v * 5) % 11) as i64).unwrap();
        let edges = [(1, 2), (3, 4), (5, 6), (7, 8)];
        let frame = GroupFrame { start: 0, edges: &edges, end: None };
        let mut sum = 0;
        for mask in 0..16u32 {
            let flips: Vec<bool> = (0..4).map(|i| mask >> i & 1 == 1).collect();
            sum += frame.connector_weight(&g, &flips);
        }
        // 4 * E = 4 * sum / 16
        assert_eq!(frame.expected_connector_x4(&g, &[false; 4], 0) * 4, sum);
        let ce = orient_conditional_expectation(&g, &frame);
        let ex = orient_exhaustive(&g, &frame);
        assert!(frame.connector_weight(&g, &ce) * 16 >= sum);
        assert!(frame.connector_weight(&g, &ex) >= frame.connector_weight(&g, &ce));
    }
}

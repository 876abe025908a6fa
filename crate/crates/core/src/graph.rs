//! Complete weighted graphs, tours and matchings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::{total, Weight};

/// Declared weight class of an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightClass {
    General,
    Metric,
    ZeroOne,
    OneTwo,
    Unknown,
}

impl WeightClass {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::General => "general",
            Self::Metric => "metric",
            Self::ZeroOne => "zero_one",
            Self::OneTwo => "one_two",
            Self::Unknown => "unknown",
        }
    }
}

impl fmt::Display for WeightClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WeightClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(Self::General),
            "metric" => Ok(Self::Metric),
            "zero_one" | "01" => Ok(Self::ZeroOne),
            "one_two" | "12" => Ok(Self::OneTwo),
            "unknown" => Ok(Self::Unknown),
            other => Err(Error::WeightClass(format!("unknown class tag '{other}'"))),
        }
    }
}

/// A triple `(u, via, v)` with `w(u, v) > w(u, via) + w(via, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricViolation {
    pub u: usize,
    pub via: usize,
    pub v: usize,
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "w({u},{v}) exceeds w({u},{x}) + w({x},{v})",
            u = self.u,
            v = self.v,
            x = self.via
        )
    }
}

/// Undirected complete graph with symmetric non-negative weights.
///
/// Weights live in a dense `n x n` table with a zero diagonal. `denom` is the
/// per-instance scale of the text format: the real weight of an edge is
/// `w(u, v) / denom`. Ratios between packings are scale-free, so algorithms
/// never consult it.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedCompleteGraph<W> {
    n: usize,
    table: Vec<W>,
    class_tag: WeightClass,
    denom: i64,
}

impl<W: Weight> WeightedCompleteGraph<W> {
    /// Builds a graph from `f(u, v)` evaluated once per pair `u < v`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> W) -> Result<Self> {
        let mut table = vec![W::zero(); n * n];
        for u in 0..n {
            for v in u + 1..n {
                let w = f(u, v);
                if w < W::zero() {
                    return Err(Error::NegativeWeight(u, v));
                }
                table[u * n + v] = w;
                table[v * n + u] = w;
            }
        }
        Ok(Self { n, table, class_tag: WeightClass::Unknown, denom: 1 })
    }

    /// Builds a graph from the strict upper triangle listed row by row.
    pub fn from_upper_triangle(n: usize, weights: &[W]) -> Result<Self> {
        let expected = n * n.saturating_sub(1) / 2;
        if weights.len() != expected {
            return Err(Error::EntryCount { expected, found: weights.len() });
        }
        let mut it = weights.iter().copied();
        Self::from_fn(n, |_, _| it.next().expect("length checked"))
    }

    /// Builds a graph from a full square matrix; rejects asymmetry and
    /// negative entries. The diagonal is ignored.
    pub fn from_matrix(rows: &[Vec<W>]) -> Result<Self> {
        let n = rows.len();
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::EntryCount { expected: n, found: row.len() });
            }
            for (v, other) in rows.iter().enumerate().skip(u + 1) {
                if row[v] != other[u] {
                    return Err(Error::Asymmetric(u, v));
                }
            }
        }
        Self::from_fn(n, |u, v| rows[u][v])
    }

    /// Graph with every edge weight equal to `c`.
    pub fn uniform(n: usize, c: W) -> Result<Self> {
        Self::from_fn(n, |_, _| c)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Weight of edge `uv`; zero when `u == v`.
    #[inline]
    pub fn w(&self, u: usize, v: usize) -> W {
        self.table[u * self.n + v]
    }

    pub fn class_tag(&self) -> WeightClass {
        self.class_tag
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn with_denom(mut self, denom: i64) -> Self {
        assert!(denom > 0, "denominator must be positive");
        self.denom = denom;
        self
    }

    /// Sets the class tag without validation.
    pub fn with_class_unchecked(mut self, class: WeightClass) -> Self {
        self.class_tag = class;
        self
    }

    /// Sets the class tag after checking the weights against it.
    pub fn with_class(self, class: WeightClass) -> Result<Self> {
        self.check_class(class)?;
        Ok(self.with_class_unchecked(class))
    }

    /// Checks that the weights satisfy `class` (`general`/`unknown` always pass).
    pub fn check_class(&self, class: WeightClass) -> Result<()> {
        match class {
            WeightClass::General | WeightClass::Unknown => Ok(()),
            WeightClass::Metric => match self.metric_violation() {
                None => Ok(()),
                Some(t) => Err(Error::WeightClass(format!("not metric: {t}"))),
            },
            WeightClass::ZeroOne => self.check_values(&[W::zero(), W::one()], "{0,1}"),
            WeightClass::OneTwo => self.check_values(&[W::one(), W::of(2)], "{1,2}"),
        }
    }

    fn check_values(&self, allowed: &[W], label: &str) -> Result<()> {
        for (u, v) in self.pairs() {
            let w = self.w(u, v);
            if !allowed.contains(&w) {
                return Err(Error::WeightClass(format!("w({u},{v}) = {w} is outside {label}")));
            }
        }
        Ok(())
    }

    /// Whether every weight lies in `values`.
    pub fn weights_within(&self, values: &[W]) -> bool {
        self.pairs().all(|(u, v)| values.contains(&self.w(u, v)))
    }

    /// All unordered pairs `u < v`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
    }

    /// Strict upper triangle, row by row.
    pub fn upper_triangle(&self) -> Vec<W> {
        self.pairs().map(|(u, v)| self.w(u, v)).collect()
    }

    pub fn total_weight(&self) -> W {
        total(self.pairs().map(|(u, v)| self.w(u, v)))
    }

    pub fn max_weight(&self) -> W {
        self.pairs().map(|(u, v)| self.w(u, v)).fold(W::zero(), W::max_of)
    }

    /// First triple breaking the triangle inequality, scanning `(u, v)` in
    /// lexicographic order and `via` ascending.
    pub fn metric_violation(&self) -> Option<MetricViolation> {
        let n = self.n;
        for u in 0..n {
            for v in u + 1..n {
                let direct = self.w(u, v);
                for via in 0..n {
                    if via == u || via == v {
                        continue;
                    }
                    if !(self.w(u, via) + self.w(via, v)).approx_ge(direct) {
                        return Some(MetricViolation { u, via, v });
                    }
                }
            }
        }
        None
    }

    pub fn is_metric(&self) -> bool {
        self.metric_violation().is_none()
    }

    /// Weight of the path `seq[0] - seq[1] - ... - seq[last]`.
    pub fn path_weight(&self, seq: &[usize]) -> W {
        total(seq.windows(2).map(|e| self.w(e[0], e[1])))
    }

    /// Weight of the closed walk `seq[0] - ... - seq[last] - seq[0]`.
    /// Sequences shorter than three vertices are treated as paths.
    pub fn cycle_weight(&self, seq: &[usize]) -> W {
        let path = self.path_weight(seq);
        if seq.len() >= 3 {
            path + self.w(seq[seq.len() - 1], seq[0])
        } else {
            path
        }
    }

    /// Sum of the odd-position edges `v1v2, v3v4, ...` of an even-length path.
    pub fn tilde_weight(&self, path: &[usize]) -> Result<W> {
        if !path.len().is_multiple_of(2) {
            return Err(Error::UnsupportedK {
                k: path.len(),
                reason: "tilde weight is defined for even-length paths only",
            });
        }
        Ok(total(path.chunks(2).map(|p| self.w(p[0], p[1]))))
    }

    /// Applies `f` to every edge weight (class tag reset to unknown).
    pub fn map_weights<V: Weight>(&self, mut f: impl FnMut(W) -> V) -> Result<WeightedCompleteGraph<V>> {
        WeightedCompleteGraph::from_fn(self.n, |u, v| f(self.w(u, v)))
            .map(|g| g.with_denom(self.denom))
    }

    /// Induced subgraph on `vertices` (relabelled `0..len`).
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        Self::from_fn(vertices.len(), |a, b| self.w(vertices[a], vertices[b]))
    }
}

/// Checks that `order` is a permutation of `0..n`.
pub(crate) fn check_permutation(n: usize, order: &[usize]) -> std::result::Result<(), String> {
    if order.len() != n {
        return Err(format!("expected {n} vertices, got {}", order.len()));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n {
            return Err(format!("vertex {v} out of range"));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(format!("vertex {v} repeated"));
        }
    }
    Ok(())
}

/// A Hamiltonian cycle given by its vertex order; closes from last to first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonianCycle {
    order: Vec<usize>,
}

impl HamiltonianCycle {
    pub fn new(n: usize, order: Vec<usize>) -> Result<Self> {
        check_permutation(n, &order).map_err(Error::InvalidTour)?;
        Ok(Self { order })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn weight<W: Weight>(&self, g: &WeightedCompleteGraph<W>) -> W {
        g.cycle_weight(&self.order)
    }

    /// Tour edges `(order[i], order[i+1 mod n])`, indexed by `i`.
    pub fn edge(&self, i: usize) -> (usize, usize) {
        let n = self.order.len();
        (self.order[i % n], self.order[(i + 1) % n])
    }
}

/// Pairwise vertex-disjoint edges. Each edge is stored as `(min, max)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut used = vec![false; n];
        let mut out = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidMatching(format!("self-loop at {a}")));
            }
            for v in [a, b] {
                if v >= n {
                    return Err(Error::InvalidMatching(format!("vertex {v} out of range")));
                }
                if std::mem::replace(&mut used[v], true) {
                    return Err(Error::InvalidMatching(format!("vertex {v} covered twice")));
                }
            }
            out.push((a.min(b), a.max(b)));
        }
        Ok(Self { edges: out })
    }

    pub fn empty() -> Self {
        Self { edges: Vec::new() }
    }

    /// Reads a matching from a mate array (`mate[v] = Some(u)` iff `uv` matched).
    pub fn from_mates(mates: &[Option<usize>]) -> Self {
        let edges = mates
            .iter()
            .enumerate()
            .filter_map(|(v, m)| m.filter(|&u| v < u).map(|u| (v, u)))
            .collect();
        Self { edges }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn weight<W: Weight>(&self, g: &WeightedCompleteGraph<W>) -> W {
        total(self.edges.iter().map(|&(a, b)| g.w(a, b)))
    }

    pub fn is_perfect(&self, n: usize) -> bool {
        2 * self.edges.len() == n
    }

    /// `covered[v]` is true iff some edge touches `v`.
    pub fn covered(&self, n: usize) -> Vec<bool> {
        let mut c = vec![false; n];
        for &(a, b) in &self.edges {
            c[a] = true;
            c[b] = true;
        }
        c
    }

    /// Vertices not touched by the matching, ascending.
    pub fn uncovered(&self, n: usize) -> Vec<usize> {
        let c = self.covered(n);
        (0..n).filter(|&v| !c[v]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle(ab: i64, ac: i64, bc: i64) -> WeightedCompleteGraph<i64> {
        WeightedCompleteGraph::from_upper_triangle(3, &[ab, ac, bc]).unwrap()
    }

    #[test]
    fn upper_triangle_transcription() {
        let g = triangle(1, 2, 3);
        assert_eq!(g.w(0, 1), 1);
        assert_eq!(g.w(0, 2), 2);
        assert_eq!(g.w(1, 2), 3);
        assert_eq!(g.w(2, 1), 3);
        assert_eq!(g.upper_triangle(), vec![1, 2, 3]);
    }

    #[test]
    fn metric_violation_reports_triple() {
        // a=0, b=1, c=2; w(a,b)=5 > w(a,c)+w(c,b)=2.
        let g = triangle(5, 1, 1);
        assert!(!g.is_metric());
        assert_eq!(g.metric_violation(), Some(MetricViolation { u: 0, via: 2, v: 1 }));
        assert!(triangle(2, 1, 1).is_metric());
    }

    #[test]
    fn one_two_graphs_are_metric() {
        let g = WeightedCompleteGraph::from_fn(7, |u, v| 1 + ((u * 3 + v) % 2) as i64).unwrap();
        assert!(g.is_metric());
        assert!(g.with_class(WeightClass::OneTwo).is_ok());
    }

    #[test]
    fn class_checks() {
        let g = triangle(1, 1, 3);
        assert!(g.check_class(WeightClass::Metric).is_err());
        assert!(g.check_class(WeightClass::ZeroOne).is_err());
        assert!(g.check_class(WeightClass::General).is_ok());
        assert!(triangle(0, 1, 1).check_class(WeightClass::ZeroOne).is_ok());
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(
            WeightedCompleteGraph::from_upper_triangle(3, &[1i64, 2]).unwrap_err(),
            Error::EntryCount { expected: 3, found: 2 }
        );
        assert_eq!(
            WeightedCompleteGraph::from_upper_triangle(3, &[1i64, -2, 3]).unwrap_err(),
            Error::NegativeWeight(0, 2)
        );
        let rows = vec![vec![0i64, 1], vec![2, 0]];
        assert_eq!(WeightedCompleteGraph::from_matrix(&rows).unwrap_err(), Error::Asymmetric(0, 1));
    }

    #[test]
    fn tilde_weight_examples() {
        // a-b-c-d with w(a,b)=2, w(c,d)=3.
        let g = WeightedCompleteGraph::from_fn(4, |u, v| match (u, v) {
            (0, 1) => 2i64,
            (2, 3) => 3,
            _ => 7,
        })
        .unwrap();
        assert_eq!(g.tilde_weight(&[0, 1, 2, 3]).unwrap(), 5);

        let ones = WeightedCompleteGraph::uniform(4, 1i64).unwrap();
        assert_eq!(ones.tilde_weight(&[0, 1, 2, 3]).unwrap(), 2);

        let g6 = WeightedCompleteGraph::from_fn(6, |u, v| match (u, v) {
            (0, 1) => 1i64,
            (2, 3) => 4,
            (4, 5) => 9,
            _ => 100,
        })
        .unwrap();
        assert_eq!(g6.tilde_weight(&[0, 1, 2, 3, 4, 5]).unwrap(), 14);
        assert!(g6.tilde_weight(&[0, 1, 2]).is_err());
    }

    #[test]
    fn matching_rejects_overlap() {
        assert!(Matching::new(4, [(0, 1), (1, 2)]).is_err());
        assert!(Matching::new(4, [(0, 0)]).is_err());
        let m = Matching::new(4, [(3, 2), (0, 1)]).unwrap();
        assert_eq!(m.edges(), &[(2, 3), (0, 1)]);
        assert!(m.is_perfect(4));
    }

    #[test]
    fn tour_validation() {
        assert!(HamiltonianCycle::new(3, vec![0, 2, 1]).is_ok());
        assert!(HamiltonianCycle::new(3, vec![0, 2, 2]).is_err());
        assert!(HamiltonianCycle::new(3, vec![0, 1]).is_err());
    }
}

//! k-path and k-cycle packings and their validation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, PackingViolation, Result};
use crate::graph::WeightedCompleteGraph;
use crate::weight::{total, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PackingKind {
    Cycle,
    Path,
}

impl fmt::Display for PackingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Cycle => "cycle",
            Self::Path => "path",
        })
    }
}

impl FromStr for PackingKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycle" => Ok(Self::Cycle),
            "path" => Ok(Self::Path),
            other => Err(Error::Unsupported(format!("packing kind '{other}'"))),
        }
    }
}

/// Checks that `blocks` partition `0..n` into `n/k` sequences of length `k`.
pub fn validate_packing(
    n: usize,
    blocks: &[Vec<usize>],
    k: usize,
    kind: PackingKind,
) -> std::result::Result<(), PackingViolation> {
    if kind == PackingKind::Cycle && k < 3 {
        return Err(PackingViolation::CycleTooShort(k));
    }
    if k == 0 || !n.is_multiple_of(k) {
        return Err(PackingViolation::NotDivisible { n, k });
    }
    let mut seen = vec![false; n];
    for (i, block) in blocks.iter().enumerate() {
        if block.len() != k {
            return Err(PackingViolation::WrongLength { block: i, len: block.len(), k });
        }
        for &v in block {
            if v >= n {
                return Err(PackingViolation::VertexOutOfRange(v));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(PackingViolation::DuplicatedVertex(v));
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(PackingViolation::MissingVertex(v));
    }
    if blocks.len() != n / k {
        return Err(PackingViolation::WrongBlockCount { found: blocks.len(), expected: n / k });
    }
    Ok(())
}

/// `n/k` vertex-disjoint k-paths covering every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KPathPacking {
    k: usize,
    paths: Vec<Vec<usize>>,
}

impl KPathPacking {
    pub fn new(n: usize, k: usize, paths: Vec<Vec<usize>>) -> Result<Self> {
        validate_packing(n, &paths, k, PackingKind::Path)?;
        Ok(Self { k, paths })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn weight<W: Weight>(&self, g: &WeightedCompleteGraph<W>) -> W {
        total(self.paths.iter().map(|p| g.path_weight(p)))
    }

    /// Sum of [`WeightedCompleteGraph::tilde_weight`] over all paths (even k).
    pub fn tilde_weight<W: Weight>(&self, g: &WeightedCompleteGraph<W>) -> Result<W> {
        let mut acc = W::zero();
        for p in &self.paths {
            acc += g.tilde_weight(p)?;
        }
        Ok(acc)
    }

    pub fn into_paths(self) -> Vec<Vec<usize>> {
        self.paths
    }
}

/// `n/k` vertex-disjoint k-cycles covering every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KCyclePacking {
    k: usize,
    cycles: Vec<Vec<usize>>,
}

impl KCyclePacking {
    pub fn new(n: usize, k: usize, cycles: Vec<Vec<usize>>) -> Result<Self> {
        validate_packing(n, &cycles, k, PackingKind::Cycle)?;
        Ok(Self { k, cycles })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn weight<W: Weight>(&self, g: &WeightedCompleteGraph<W>) -> W {
        total(self.cycles.iter().map(|c| g.cycle_weight(c)))
    }

    /// Whether every edge `(a, b)` joins two cyclically adjacent vertices of
    /// some cycle.
    pub fn contains_edges(&self, edges: &[(usize, usize)]) -> bool {
        edges.iter().all(|&(a, b)| {
            self.cycles.iter().any(|c| {
                let k = c.len();
                (0..k).any(|i| {
                    let (x, y) = (c[i], c[(i + 1) % k]);
                    (x == a && y == b) || (x == b && y == a)
                })
            })
        })
    }

    pub fn into_cycles(self) -> Vec<Vec<usize>> {
        self.cycles
    }
}

/// Either kind of packing, for code that handles both uniformly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Packing {
    Cycle(KCyclePacking),
    Path(KPathPacking),
}

impl Packing {
    pub fn kind(&self) -> PackingKind {
        match self {
            Self::Cycle(_) => PackingKind::Cycle,
            Self::Path(_) => PackingKind::Path,
        }
    }

    pub fn k(&self) -> usize {
        match self {
            Self::Cycle(c) => c.k(),
            Self::Path(p) => p.k(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        match self {
            Self::Cycle(c) => c.cycles(),
            Self::Path(p) => p.paths(),
        }
    }

    pub fn weight<W: Weight>(&self, g: &WeightedCompleteGraph<W>) -> W {
        match self {
            Self::Cycle(c) => c.weight(g),
            Self::Path(p) => p.weight(g),
        }
    }

    /// Rebuilds a packing of `kind` from raw blocks, validating them.
    pub fn from_blocks(n: usize, k: usize, kind: PackingKind, blocks: Vec<Vec<usize>>) -> Result<Self> {
        Ok(match kind {
            PackingKind::Cycle => Self::Cycle(KCyclePacking::new(n, k, blocks)?),
            PackingKind::Path => Self::Path(KPathPacking::new(n, k, blocks)?),
        })
    }

    pub fn validate(&self, n: usize) -> std::result::Result<(), PackingViolation> {
        validate_packing(n, self.blocks(), self.k(), self.kind())
    }
}

impl From<KCyclePacking> for Packing {
    fn from(c: KCyclePacking) -> Self {
        Self::Cycle(c)
    }
}

impl From<KPathPacking> for Packing {
    fn from(p: KPathPacking) -> Self {
        Self::Path(p)
    }
}

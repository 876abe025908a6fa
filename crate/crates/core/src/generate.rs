//! Seeded random instances.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{WeightClass, WeightedCompleteGraph};

/// How weights are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distribution {
    /// Independent integers in `0..=max_weight` (general class).
    Uniform,
    /// Unit-square points, distances scaled by 1000 and rounded, then
    /// repaired by shortest-path closure (metric class).
    Euclidean,
    /// Shortest-path closure of independent integers in `1..=max_weight`
    /// (metric class).
    MetricClosure,
    /// Fair coin per edge: `{0,1}` or `{1,2}`.
    Bernoulli,
}

impl Distribution {
    pub fn default_for(class: WeightClass) -> Option<Self> {
        match class {
            WeightClass::General => Some(Self::Uniform),
            WeightClass::Metric => Some(Self::Euclidean),
            WeightClass::ZeroOne | WeightClass::OneTwo => Some(Self::Bernoulli),
            WeightClass::Unknown => None,
        }
    }

    fn supports(self, class: WeightClass) -> bool {
        matches!(
            (class, self),
            (WeightClass::General, Self::Uniform)
                | (WeightClass::Metric, Self::Euclidean | Self::MetricClosure)
                | (WeightClass::ZeroOne | WeightClass::OneTwo, Self::Bernoulli)
        )
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Uniform => "uniform",
            Self::Euclidean => "euclidean",
            Self::MetricClosure => "closure",
            Self::Bernoulli => "bernoulli",
        })
    }
}

impl FromStr for Distribution {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Self::Uniform),
            "euclidean" => Ok(Self::Euclidean),
            "closure" | "metric_closure" | "metric-closure" => Ok(Self::MetricClosure),
            "bernoulli" => Ok(Self::Bernoulli),
            other => Err(Error::Unsupported(format!("distribution '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub n: usize,
    pub class: WeightClass,
    /// `None` picks [`Distribution::default_for`] the class.
    pub distribution: Option<Distribution>,
    pub seed: u64,
    /// Upper end of the uniform draws; ignored by euclidean and bernoulli.
    pub max_weight: i64,
}

impl GeneratorSpec {
    pub fn new(n: usize, class: WeightClass, seed: u64) -> Self {
        Self { n, class, distribution: None, seed, max_weight: 100 }
    }

    pub fn with_distribution(mut self, d: Distribution) -> Self {
        self.distribution = Some(d);
        self
    }
}

/// Builds the instance described by `spec`; equal specs give equal graphs.
pub fn generate_instance(spec: &GeneratorSpec) -> Result<WeightedCompleteGraph<i64>> {
    let GeneratorSpec { n, class, seed, max_weight, .. } = *spec;
    if n < 3 {
        return Err(Error::Unsupported(format!("n = {n}, need at least 3 vertices")));
    }
    let dist = spec
        .distribution
        .or_else(|| Distribution::default_for(class))
        .ok_or_else(|| Error::Unsupported(format!("class '{class}'")))?;
    if !dist.supports(class) {
        return Err(Error::Unsupported(format!("class '{class}' with distribution '{dist}'")));
    }
    if max_weight < 1 {
        return Err(Error::Unsupported(format!("max weight {max_weight}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = match dist {
        Distribution::Uniform => WeightedCompleteGraph::from_fn(n, |_, _| rng.gen_range(0..=max_weight))?,
        Distribution::Bernoulli => {
            let base = if class == WeightClass::OneTwo { 1 } else { 0 };
            WeightedCompleteGraph::from_fn(n, |_, _| base + i64::from(rng.gen_bool(0.5)))?
        }
        Distribution::Euclidean => {
            let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
            let raw = WeightedCompleteGraph::from_fn(n, |u, v| {
                let (dx, dy) = (pts[u].0 - pts[v].0, pts[u].1 - pts[v].1);
                (1000.0 * dx.hypot(dy)).round() as i64
            })?;
            shortest_path_closure(&raw)?
        }
        Distribution::MetricClosure => {
            let raw = WeightedCompleteGraph::from_fn(n, |_, _| rng.gen_range(1..=max_weight))?;
            shortest_path_closure(&raw)?
        }
    };
    g.with_class(class)
}

/// Replaces every weight by the shortest-path distance (Floyd-Warshall).
/// The result satisfies the triangle inequality and never exceeds the input.
pub fn shortest_path_closure(g: &WeightedCompleteGraph<i64>) -> Result<WeightedCompleteGraph<i64>> {
    let n = g.n();
    let mut d: Vec<i64> = (0..n * n).map(|i| g.w(i / n, i % n)).collect();
    for x in 0..n {
        for u in 0..n {
            let ux = d[u * n + x];
            for v in 0..n {
                let via = ux + d[x * n + v];
                if via < d[u * n + v] {
                    d[u * n + v] = via;
                }
            }
        }
    }
    WeightedCompleteGraph::from_fn(n, |u, v| d[u * n + v])
}

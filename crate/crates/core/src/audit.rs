//! Running algorithms against the exact oracles and checking every
//! applicable inequality instance by instance.

use std::cell::OnceCell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::cycle_packing::{
    alg1_metric_kcp, alg2_metric_kcp_even, alg3_matching_kcp_odd, alg6_general_4cp, alg7_metric_4cp,
    best_cycle_from_path, ContractionTrace, GroupTrace, TourCycleTrace,
};
use crate::error::{Error, Result};
use crate::graph::{Matching, WeightedCompleteGraph};
use crate::grouping::EdgeGroupPlan;
use crate::matching::max_weight_perfect_matching;
use crate::oracles::optimal_k_packing;
use crate::packing::{KCyclePacking, KPathPacking, Packing, PackingKind};
use crate::path_packing::{
    alg4_tsp_kpp, alg5_matching_kpp_even, alg8_with_override, general_4pp, metric_kpp_combined, Alg8Trace,
    CombinedTrace, TourPathTrace,
};
use crate::reductions::{solve_12_via_01, three_cp_9_11, transferred_ratio, PluggableSolver, ReductionTrace};
use crate::tsp::{exact_max_tsp, TspSolver};
use crate::weight::{Coef, Fraction, Weight};

/// The algorithms exposed for auditing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Alg1,
    Alg2,
    Alg3,
    Alg4,
    Alg5,
    KppCombined,
    Alg6,
    Alg7,
    Alg8,
    General4pp,
    Reduce12,
    ThreeCp911,
}

impl Algorithm {
    pub const ALL: [Algorithm; 12] = [
        Self::Alg1,
        Self::Alg2,
        Self::Alg3,
        Self::Alg4,
        Self::Alg5,
        Self::KppCombined,
        Self::Alg6,
        Self::Alg7,
        Self::Alg8,
        Self::General4pp,
        Self::Reduce12,
        Self::ThreeCp911,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Alg1 => "alg1",
            Self::Alg2 => "alg2",
            Self::Alg3 => "alg3",
            Self::Alg4 => "alg4",
            Self::Alg5 => "alg5",
            Self::KppCombined => "kpp-combined",
            Self::Alg6 => "alg6",
            Self::Alg7 => "alg7",
            Self::Alg8 => "alg8",
            Self::General4pp => "general4pp",
            Self::Reduce12 => "reduce12",
            Self::ThreeCp911 => "3cp911",
        }
    }

    /// Packing kind produced; `reduce12` follows its plug.
    pub fn kind<W>(self, cfg: &RunConfig<W>) -> PackingKind {
        match self {
            Self::Alg1 | Self::Alg2 | Self::Alg3 | Self::Alg6 | Self::Alg7 | Self::ThreeCp911 => PackingKind::Cycle,
            Self::Alg4 | Self::Alg5 | Self::KppCombined | Self::Alg8 | Self::General4pp => PackingKind::Path,
            Self::Reduce12 => cfg.plug.as_ref().map_or(cfg.reduce_kind, |p| p.kind),
        }
    }

    /// Whether the algorithm's packing comes from a tour solver.
    pub fn uses_tsp(self) -> bool {
        matches!(self, Self::Alg1 | Self::Alg2 | Self::Alg4 | Self::KppCombined)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown algorithm '{s}'")))
    }
}

impl Serialize for Algorithm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Properties of an instance that decide which guarantees apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceTraits {
    pub metric: bool,
    pub one_two: bool,
}

impl InstanceTraits {
    pub fn of<W: Weight>(g: &WeightedCompleteGraph<W>) -> Self {
        Self { metric: g.is_metric(), one_two: g.weights_within(&[W::one(), W::of(2)]) }
    }
}

fn c(num: i64, den: i64) -> Coef {
    Coef::new(num, den)
}

/// Guaranteed ratio of `alg` on an instance with `traits`, or `None` when no
/// guarantee applies (wrong class, heuristic tours, no standalone bound).
pub fn ratio_bound(alg: Algorithm, k: usize, traits: InstanceTraits, tsp: TspSolver, plug_ratio: Coef) -> Option<Coef> {
    let k = k as i64;
    let exact_tour = tsp == TspSolver::Exact;
    let one = Coef::from_integer(1);
    match alg {
        Algorithm::Alg1 if traits.metric && exact_tour => Some(if k % 2 == 1 {
            (c(7, 8) - c(1, 8 * k)) * (one - c(1, k))
        } else {
            c(7, 8) * (one - c(1, 2 * k)) * (one - c(1, k))
        }),
        Algorithm::Alg2 if traits.metric && exact_tour => Some(c(7, 8) * (one - c(1, k) + c(1, k * (k - 1)))),
        Algorithm::Alg3 if traits.metric => Some(c(3, 4) - c(1, 4 * k)),
        Algorithm::Alg4 if traits.metric && exact_tour => Some(c(7, 8) * (one - c(1, k))),
        Algorithm::KppCombined if traits.metric && exact_tour && k >= 4 && k % 2 == 0 => {
            Some(c(27 * k * k - 48 * k + 16, 32 * k * k - 36 * k - 24))
        }
        Algorithm::Alg6 | Algorithm::General4pp => Some(c(3, 4)),
        Algorithm::Alg7 if traits.one_two => Some(c(7, 8)),
        Algorithm::Alg7 if traits.metric => Some(c(5, 6)),
        Algorithm::Alg8 if traits.metric => Some(c(14, 17)),
        Algorithm::Reduce12 if traits.one_two => Some(transferred_ratio(plug_ratio)),
        Algorithm::ThreeCp911 if traits.one_two && plug_ratio == one => Some(c(9, 11)),
        _ => None,
    }
}

/// Knobs shared by every algorithm run.
#[derive(Clone, Debug)]
pub struct RunConfig<W> {
    pub tsp: TspSolver,
    /// Perfect matching used by alg6, alg7, alg8 and general4pp.
    pub matching_override: Option<Matching>,
    /// Edge groups used by alg3 and alg5.
    pub plan_override: Option<EdgeGroupPlan>,
    /// Plug for reduce12 and 3cp911; the exact oracle when absent.
    pub plug: Option<PluggableSolver<W>>,
    /// Kind solved by reduce12 when no plug is given.
    pub reduce_kind: PackingKind,
}

impl<W> Default for RunConfig<W> {
    fn default() -> Self {
        Self {
            tsp: TspSolver::Exact,
            matching_override: None,
            plan_override: None,
            plug: None,
            reduce_kind: PackingKind::Cycle,
        }
    }
}

impl<W: Weight> RunConfig<W> {
    fn plug_for(&self, kind: PackingKind, k: usize) -> PluggableSolver<W> {
        self.plug.clone().unwrap_or_else(|| PluggableSolver::exact(kind, k))
    }

    fn plug_ratio(&self) -> Coef {
        self.plug.as_ref().map_or(Coef::from_integer(1), |p| p.claimed_ratio)
    }
}

/// Algorithm-specific intermediates kept for the lemma audits.
#[derive(Clone, Debug)]
pub enum Trace<W> {
    TourCycle(TourCycleTrace<W>),
    TourPath(TourPathTrace<W>),
    CycleGroups(GroupTrace<W, KCyclePacking>),
    PathGroups(GroupTrace<W, KPathPacking>),
    Combined(CombinedTrace<W>),
    Contraction(ContractionTrace<W>),
    Alg8(Alg8Trace<W>),
    Reduction(ReductionTrace<W>),
}

/// Output of [`run_algorithm`].
#[derive(Clone, Debug)]
pub struct RunOutcome<W> {
    pub algorithm: Algorithm,
    pub packing: Packing,
    pub weight: W,
    pub trace: Trace<W>,
}

pub fn run_algorithm<W: Weight>(
    g: &WeightedCompleteGraph<W>,
    k: usize,
    alg: Algorithm,
    cfg: &RunConfig<W>,
) -> Result<RunOutcome<W>> {
    let need_k4 = || {
        if k == 4 {
            Ok(())
        } else {
            Err(Error::UnsupportedK { k, reason: "this algorithm packs 4-vertex blocks" })
        }
    };
    let (packing, trace) = match alg {
        Algorithm::Alg1 => {
            let t = alg1_metric_kcp(g, k, cfg.tsp)?;
            (Packing::Cycle(t.packing.clone()), Trace::TourCycle(t))
        }
        Algorithm::Alg2 => {
            let t = alg2_metric_kcp_even(g, k, cfg.tsp)?;
            (Packing::Cycle(t.packing.clone()), Trace::TourCycle(t))
        }
        Algorithm::Alg3 => {
            let t = alg3_matching_kcp_odd(g, k, cfg.plan_override.clone())?;
            (Packing::Cycle(t.packing.clone()), Trace::CycleGroups(t))
        }
        Algorithm::Alg4 => {
            let t = alg4_tsp_kpp(g, k, cfg.tsp)?;
            (Packing::Path(t.packing.clone()), Trace::TourPath(t))
        }
        Algorithm::Alg5 => {
            let t = alg5_matching_kpp_even(g, k, cfg.plan_override.clone())?;
            (Packing::Path(t.packing.clone()), Trace::PathGroups(t))
        }
        Algorithm::KppCombined => {
            let t = metric_kpp_combined(g, k, cfg.tsp)?;
            (Packing::Path(t.packing.clone()), Trace::Combined(t))
        }
        Algorithm::Alg6 => {
            need_k4()?;
            let t = alg6_general_4cp(g, cfg.matching_override.clone())?;
            (Packing::Cycle(t.packing.clone()), Trace::Contraction(t))
        }
        Algorithm::Alg7 => {
            need_k4()?;
            let t = alg7_metric_4cp(g, cfg.matching_override.clone())?;
            (Packing::Cycle(t.packing.clone()), Trace::Contraction(t))
        }
        Algorithm::Alg8 => {
            need_k4()?;
            let t = alg8_with_override(g, cfg.matching_override.clone())?;
            (Packing::Path(t.packing.clone()), Trace::Alg8(t))
        }
        Algorithm::General4pp => {
            need_k4()?;
            let (p, t) = general_4pp(g, cfg.matching_override.clone())?;
            (Packing::Path(p), Trace::Contraction(t))
        }
        Algorithm::Reduce12 => {
            let t = solve_12_via_01(g, &cfg.plug_for(cfg.reduce_kind, k))?;
            (t.packing.clone(), Trace::Reduction(t))
        }
        Algorithm::ThreeCp911 => {
            if k != 3 {
                return Err(Error::UnsupportedK { k, reason: "3cp911 packs triangles" });
            }
            let (p, t) = three_cp_9_11(g, &cfg.plug_for(PackingKind::Cycle, 3))?;
            (Packing::Cycle(p), Trace::Reduction(t))
        }
    };
    Ok(RunOutcome { algorithm: alg, weight: packing.weight(g), packing, trace })
}

fn ser_frac<S: Serializer>(f: &Option<Fraction>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match f {
        Some(f) => s.serialize_str(&f.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_coef<S: Serializer>(f: &Option<Coef>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match f {
        Some(f) => s.serialize_str(&f.to_string()),
        None => s.serialize_none(),
    }
}

fn decimal(f: &Fraction) -> f64 {
    *f.numer() as f64 / *f.denom() as f64
}

/// One checked inequality `lhs >= rhs` (or equality for identities).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditEntry {
    pub name: String,
    #[serde(serialize_with = "ser_frac")]
    pub lhs: Option<Fraction>,
    #[serde(serialize_with = "ser_frac")]
    pub rhs: Option<Fraction>,
    pub lhs_decimal: f64,
    pub rhs_decimal: f64,
    /// `true` for `lhs == rhs` checks.
    pub equality: bool,
    pub holds: bool,
}

/// `lhs` and each `rhs` term as exact fractions (when representable) and
/// floats.
struct Side {
    exact: Option<Fraction>,
    approx: f64,
}

fn side<W: Weight>(terms: &[(Coef, W)]) -> Side {
    let mut exact = Some(Fraction::from_integer(0));
    let mut approx = 0.0;
    for &(coef, w) in terms {
        let cf = Fraction::new(*coef.numer() as i128, *coef.denom() as i128);
        exact = exact.and_then(|acc| w.to_fraction().map(|f| acc + cf * f));
        approx += decimal(&cf) * w.to_f64().unwrap_or(f64::NAN);
    }
    Side { exact, approx }
}

fn entry<W: Weight>(name: impl Into<String>, lhs: &[(Coef, W)], rhs: &[(Coef, W)], equality: bool) -> AuditEntry {
    let (l, r) = (side(lhs), side(rhs));
    let holds = match (W::EXACT, &l.exact, &r.exact) {
        (true, Some(a), Some(b)) => {
            if equality {
                a == b
            } else {
                a >= b
            }
        }
        _ => {
            let slack = 1e-9 * (1.0 + l.approx.abs().max(r.approx.abs()));
            if equality {
                (l.approx - r.approx).abs() <= slack
            } else {
                l.approx >= r.approx - slack
            }
        }
    };
    AuditEntry {
        name: name.into(),
        lhs_decimal: l.exact.as_ref().map_or(l.approx, decimal),
        rhs_decimal: r.exact.as_ref().map_or(r.approx, decimal),
        lhs: l.exact,
        rhs: r.exact,
        equality,
        holds,
    }
}

fn one<W>(w: W) -> [(Coef, W); 1] {
    [(Coef::from_integer(1), w)]
}

fn ge<W: Weight>(name: impl Into<String>, lhs: W, coef: Coef, rhs: W) -> AuditEntry {
    entry(name, &one(lhs), &[(coef, rhs)], false)
}

/// Lazily computed reference values of one instance.
pub struct OracleCache<'g, W> {
    g: &'g WeightedCompleteGraph<W>,
    pub traits: InstanceTraits,
    optima: HashMap<(usize, PackingKind), W>,
    perfect_matching: OnceCell<Option<W>>,
    tour: OnceCell<Option<W>>,
}

impl<'g, W: Weight> OracleCache<'g, W> {
    pub fn new(g: &'g WeightedCompleteGraph<W>) -> Self {
        Self {
            g,
            traits: InstanceTraits::of(g),
            optima: HashMap::new(),
            perfect_matching: OnceCell::new(),
            tour: OnceCell::new(),
        }
    }

    /// Supplies an optimum proven elsewhere (instances beyond the DP cap).
    pub fn with_known_optimum(mut self, k: usize, kind: PackingKind, value: W) -> Self {
        self.optima.insert((k, kind), value);
        self
    }

    pub fn optimum(&mut self, k: usize, kind: PackingKind) -> Result<W> {
        if let Some(&w) = self.optima.get(&(k, kind)) {
            return Ok(w);
        }
        let w = optimal_k_packing(self.g, k, kind)?.weight;
        self.optima.insert((k, kind), w);
        Ok(w)
    }

    /// Weight of a maximum perfect matching; `None` for odd `n`.
    pub fn perfect_matching(&self) -> Option<W> {
        *self.perfect_matching.get_or_init(|| max_weight_perfect_matching(self.g).ok().map(|m| m.weight(self.g)))
    }

    /// Weight of a maximum tour; `None` beyond the exact solver's cap.
    pub fn max_tour(&self) -> Option<W> {
        *self.tour.get_or_init(|| exact_max_tsp(self.g).ok().map(|t| t.weight(self.g)))
    }
}

/// Outcome of one algorithm on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct RatioReport {
    pub instance: String,
    pub algorithm: Algorithm,
    pub k: usize,
    pub n: usize,
    #[serde(serialize_with = "ser_frac")]
    pub weight: Option<Fraction>,
    #[serde(serialize_with = "ser_frac")]
    pub optimum: Option<Fraction>,
    /// `weight / optimum`; `None` when the optimum is zero.
    #[serde(serialize_with = "ser_frac")]
    pub ratio: Option<Fraction>,
    pub ratio_decimal: Option<f64>,
    #[serde(serialize_with = "ser_coef")]
    pub bound: Option<Coef>,
    pub bound_holds: bool,
    pub audits: Vec<AuditEntry>,
    #[serde(skip)]
    pub packing: Option<Packing>,
}

impl RatioReport {
    /// Ratio bound and every audit hold.
    pub fn passed(&self) -> bool {
        self.bound_holds && self.audits.iter().all(|a| a.holds)
    }

    pub fn failed_audits(&self) -> impl Iterator<Item = &AuditEntry> {
        self.audits.iter().filter(|a| !a.holds)
    }
}

/// Runs `alg`, compares it with the oracle and records its audits.
pub fn audit_run<W: Weight>(
    cache: &mut OracleCache<'_, W>,
    instance: &str,
    k: usize,
    alg: Algorithm,
    cfg: &RunConfig<W>,
) -> Result<RatioReport> {
    let g = cache.g;
    let out = run_algorithm(g, k, alg, cfg)?;
    let kind = out.packing.kind();
    let opt = cache.optimum(k, kind)?;
    let bound = ratio_bound(alg, k, cache.traits, cfg.tsp, cfg.plug_ratio());
    let bound_holds = match bound {
        Some(b) => crate::weight::ge_scaled(out.weight, opt, b),
        None => true,
    };
    let (wf, of) = (out.weight.to_fraction(), opt.to_fraction());
    let ratio = match (wf, of) {
        (Some(w), Some(o)) if o != Fraction::from_integer(0) => Some(w / o),
        _ => None,
    };
    let ratio_decimal = ratio.as_ref().map(decimal).or_else(|| {
        let o = opt.to_f64()?;
        (o != 0.0).then(|| out.weight.to_f64().unwrap_or(f64::NAN) / o)
    });
    let mut audits = lemma_audits(cache, k, &out, cfg)?;
    audits.push(entry("weight is recomputable", &one(out.weight), &one(out.packing.weight(g)), true));
    Ok(RatioReport {
        instance: instance.to_string(),
        algorithm: alg,
        k,
        n: g.n(),
        weight: wf,
        optimum: of,
        ratio,
        ratio_decimal,
        bound,
        bound_holds,
        audits,
        packing: Some(out.packing),
    })
}

/// [`audit_run`] for each algorithm in turn, sharing the oracle values.
pub fn audit_instance<W: Weight>(
    g: &WeightedCompleteGraph<W>,
    instance: &str,
    k: usize,
    algorithms: &[Algorithm],
    cfg: &RunConfig<W>,
) -> Result<Vec<RatioReport>> {
    let mut cache = OracleCache::new(g);
    algorithms.iter().map(|&a| audit_run(&mut cache, instance, k, a, cfg)).collect()
}

fn tour_audits<W: Weight>(
    cache: &mut OracleCache<'_, W>,
    k: usize,
    tsp: TspSolver,
    tour_weight: W,
    split_value: W,
    tilde: bool,
    audits: &mut Vec<AuditEntry>,
) -> Result<()> {
    let kk = k as i64;
    if tilde {
        audits.push(ge("offset split, tilde objective", split_value, c((kk - 1) * (kk - 1) + 1, kk), tour_weight));
    } else {
        audits.push(ge("offset split, plain objective", split_value, c(kk - 1, kk), tour_weight));
    }
    if tsp == TspSolver::Exact && cache.traits.metric && k >= 3 {
        let opt_c = cache.optimum(k, PackingKind::Cycle)?;
        audits.push(ge("tour vs cycle optimum", tour_weight, Coef::from_integer(1) - c(1, 2 * kk), opt_c));
    }
    Ok(())
}

fn lb2<W: Weight>(cache: &mut OracleCache<'_, W>, k: usize, audits: &mut Vec<AuditEntry>) -> Result<()> {
    if k.is_multiple_of(2) {
        if let Some(m) = cache.perfect_matching() {
            let opt_c = cache.optimum(k, PackingKind::Cycle)?;
            audits.push(ge("perfect matching vs cycle optimum", m, c(1, 2), opt_c));
        }
    }
    Ok(())
}

fn group_audits<W: Weight>(name: &str, blocks: &[W], groups: &[W], coef: Coef, audits: &mut Vec<AuditEntry>) {
    for (i, (&b, &s)) in blocks.iter().zip(groups).enumerate() {
        audits.push(ge(format!("{name}, group {i}"), b, coef, s));
    }
}

fn contraction_audits<W: Weight>(
    cache: &mut OracleCache<'_, W>,
    t: &ContractionTrace<W>,
    audits: &mut Vec<AuditEntry>,
) -> Result<()> {
    let g = cache.g;
    let paths = match &t.paths {
        Some(p) => p.clone(),
        None => general_4pp(g, Some(t.matching.clone()))?.0,
    };
    let p4 = paths.weight(g);
    let half = c(1, 2);
    if t.paths.is_some() {
        audits.push(entry(
            "path weight equals both matchings",
            &one(p4),
            &[(Coef::from_integer(1), t.matching_weight), (Coef::from_integer(1), t.contracted_weight)],
            true,
        ));
    }
    let opt_c = cache.optimum(4, PackingKind::Cycle)?;
    audits.push(entry("contraction paths vs matching and optimum", &one(p4), &[(half, t.matching_weight), (half, opt_c)], false));
    Ok(())
}

fn lemma_audits<W: Weight>(
    cache: &mut OracleCache<'_, W>,
    k: usize,
    out: &RunOutcome<W>,
    cfg: &RunConfig<W>,
) -> Result<Vec<AuditEntry>> {
    let g = cache.g;
    let metric = cache.traits.metric;
    let kk = k as i64;
    let mut audits = Vec::new();
    match &out.trace {
        Trace::TourCycle(t) => {
            let tilde = out.algorithm == Algorithm::Alg2;
            tour_audits(cache, k, cfg.tsp, t.tour_weight, t.split.value, tilde, &mut audits)?;
            if tilde {
                if metric {
                    for (i, p) in t.split.packing.paths().iter().enumerate() {
                        let best = best_cycle_from_path(g, p)?.weight;
                        let rhs = [(c(kk - 2, kk - 1), g.path_weight(p)), (c(2, kk - 1), g.tilde_weight(p)?)];
                        audits.push(entry(format!("path-cycle, path {i}"), &one(best), &rhs, false));
                    }
                }
                lb2(cache, k, &mut audits)?;
                if metric && cfg.tsp == TspSolver::Exact {
                    if let Some(m) = cache.perfect_matching() {
                        let opt_c = cache.optimum(k, PackingKind::Cycle)?;
                        audits.push(entry(
                            "tour vs cycle optimum and matching",
                            &one(t.tour_weight),
                            &[(c(5, 8), opt_c), (c(1, 2), m)],
                            false,
                        ));
                    }
                }
            } else {
                audits.push(ge("closing edges are non-negative", t.weight, Coef::from_integer(1), t.split.packing.weight(g)));
            }
        }
        Trace::TourPath(t) => {
            tour_audits(cache, k, cfg.tsp, t.tour_weight, t.split.value, false, &mut audits)?;
            if cfg.tsp == TspSolver::Exact {
                let opt_p = cache.optimum(k, PackingKind::Path)?;
                audits.push(ge("tour vs path optimum", t.tour_weight, Coef::from_integer(1), opt_p));
            }
        }
        Trace::CycleGroups(t) => {
            if metric {
                let m = (kk - 1) / 2;
                group_audits("odd-k group", &t.block_weights, &t.group_weights, c(3 * m + 1, 2 * m), &mut audits);
            }
        }
        Trace::PathGroups(t) => {
            if metric {
                group_audits("even-k group", &t.block_weights, &t.group_weights, c(3 * kk - 4, 2 * kk - 4), &mut audits);
            }
        }
        Trace::Combined(t) => {
            tour_audits(cache, k, cfg.tsp, t.tour_based.tour_weight, t.tour_based.split.value, false, &mut audits)?;
            if metric {
                let mb = &t.matching_based;
                group_audits("even-k group", &mb.block_weights, &mb.group_weights, c(3 * kk - 4, 2 * kk - 4), &mut audits);
            }
            lb2(cache, k, &mut audits)?;
        }
        Trace::Contraction(t) => {
            contraction_audits(cache, t, &mut audits)?;
            if out.algorithm == Algorithm::Alg7 {
                let paths = general_4pp(g, Some(t.matching.clone()))?.0;
                let closing: W = crate::weight::total(paths.paths().iter().map(|p| g.w(p[0], p[3])));
                let opt_c = cache.optimum(4, PackingKind::Cycle)?;
                let unit = Coef::from_integer(1);
                audits.push(entry(
                    "4-cycles vs three quarters of optimum plus closing edges",
                    &one(t.weight),
                    &[(c(3, 4), opt_c), (unit, closing)],
                    false,
                ));
                if metric {
                    audits.push(entry(
                        "4-cycles vs optimum minus twice the closing edges",
                        &[(unit, t.weight), (Coef::from_integer(2), closing)],
                        &one(opt_c),
                        false,
                    ));
                }
            }
            lb2(cache, 4, &mut audits)?;
        }
        Trace::Alg8(t) => {
            contraction_audits(cache, &t.contraction, &mut audits)?;
            if metric {
                audits.push(ge("middle-matching paths vs middle matching", t.p4_prime_weight, Coef::from_integer(2), t.middle_weight));
            }
        }
        Trace::Reduction(t) => {
            let n_k = c(t.offset as i64, 1);
            audits.push(entry(
                "lifted weight identity",
                &one(t.weight),
                &[(Coef::from_integer(1), t.lifted_weight), (n_k, W::one())],
                true,
            ));
            let kind = out.packing.kind();
            let lifted_opt = optimal_k_packing(&t.lifted, k, kind)?.weight;
            let opt = cache.optimum(k, kind)?;
            // 2 * alg * lifted_opt >= (lifted_opt + lifted_weight) * opt
            let unit = Coef::from_integer(1);
            audits.push(entry(
                "ratio transfer from the lifted instance",
                &[(Coef::from_integer(2), out.weight * lifted_opt)],
                &[(unit, lifted_opt * opt), (unit, t.lifted_weight * opt)],
                false,
            ));
        }
    }
    Ok(audits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{generate_instance, GeneratorSpec, WeightClass};

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("alg9".parse::<Algorithm>().is_err());
    }

    #[test]
    fn bounds_match_their_closed_forms() {
        let m = InstanceTraits { metric: true, one_two: false };
        let e = TspSolver::Exact;
        let one = Coef::from_integer(1);
        assert_eq!(ratio_bound(Algorithm::Alg1, 7, m, e, one), Some(c(36, 49)));
        assert_eq!(ratio_bound(Algorithm::Alg2, 6, m, e, one), Some(c(91, 120)));
        assert_eq!(ratio_bound(Algorithm::Alg3, 5, m, e, one), Some(c(7, 10)));
        assert_eq!(ratio_bound(Algorithm::KppCombined, 6, m, e, one), Some(c(175, 228)));
        assert_eq!(ratio_bound(Algorithm::KppCombined, 4, m, e, one), Some(c(32, 43)));
        assert_eq!(ratio_bound(Algorithm::Alg8, 4, m, e, one), Some(c(14, 17)));
        assert_eq!(ratio_bound(Algorithm::Alg1, 7, m, TspSolver::Greedy, one), None);
        let general = InstanceTraits { metric: false, one_two: false };
        assert_eq!(ratio_bound(Algorithm::Alg7, 4, general, e, one), None);
        assert_eq!(ratio_bound(Algorithm::Alg6, 4, general, e, one), Some(c(3, 4)));
        let ot = InstanceTraits { metric: true, one_two: true };
        assert_eq!(ratio_bound(Algorithm::Alg7, 4, ot, e, one), Some(c(7, 8)));
        assert_eq!(ratio_bound(Algorithm::Reduce12, 4, ot, e, c(3, 5)), Some(c(4, 5)));
    }

    #[test]
    fn entries_are_exact_for_integers() {
        let a = ge("x", 5i64, c(5, 6), 6);
        assert!(a.holds);
        assert_eq!(a.rhs, Some(Fraction::from_integer(5)));
        assert!(!ge("x", 4i64, c(5, 6), 6).holds);
        assert!(entry("eq", &one(3i64), &[(c(1, 1), 1), (c(2, 1), 1)], true).holds);
    }

    #[test]
    fn random_audits_hold() {
        let cfg = RunConfig::default();
        for seed in 0..4 {
            let g = generate_instance(&GeneratorSpec::new(8, WeightClass::Metric, seed)).unwrap();
            let reports =
                audit_instance(&g, "r", 4, &[Algorithm::Alg1, Algorithm::Alg2, Algorithm::Alg4, Algorithm::Alg5, Algorithm::KppCombined, Algorithm::Alg6, Algorithm::Alg7, Algorithm::Alg8, Algorithm::General4pp], &cfg)
                    .unwrap();
            for r in reports {
                assert!(r.passed(), "{} {:?}", r.algorithm, r.failed_audits().collect::<Vec<_>>());
            }
            let g = generate_instance(&GeneratorSpec::new(9, WeightClass::OneTwo, seed)).unwrap();
            for r in audit_instance(&g, "r", 3, &[Algorithm::Alg1, Algorithm::Alg3, Algorithm::Reduce12, Algorithm::ThreeCp911], &cfg).unwrap() {
                assert!(r.passed(), "{} {:?}", r.algorithm, r.failed_audits().collect::<Vec<_>>());
                if matches!(r.algorithm, Algorithm::Reduce12 | Algorithm::ThreeCp911) {
                    assert_eq!(r.ratio, Some(Fraction::from_integer(1)));
                }
            }
        }
    }
}

//! Solving `{1,2}`-weighted instances through `{0,1}`-weighted ones.
//!
//! Every k-cycle packing has exactly `n` edges and every k-path packing
//! `n - n/k`, so subtracting one from every weight shifts all packings of a
//! kind by the same constant and preserves their order.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{WeightClass, WeightedCompleteGraph};
use crate::oracles::optimal_k_packing;
use crate::packing::{KCyclePacking, Packing, PackingKind};
use crate::weight::{Coef, Weight};

type SolveFn<W> = dyn Fn(&WeightedCompleteGraph<W>) -> Result<Packing> + Send + Sync;

/// A packing procedure with its claimed ratio `rho`.
#[derive(Clone)]
pub struct PluggableSolver<W> {
    pub name: String,
    pub kind: PackingKind,
    pub k: usize,
    pub claimed_ratio: Coef,
    solve: Arc<SolveFn<W>>,
}

impl<W> fmt::Debug for PluggableSolver<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PluggableSolver")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("k", &self.k)
            .field("claimed_ratio", &self.claimed_ratio)
            .finish()
    }
}

impl<W: Weight> PluggableSolver<W> {
    pub fn new(
        name: impl Into<String>,
        kind: PackingKind,
        k: usize,
        claimed_ratio: Coef,
        solve: impl Fn(&WeightedCompleteGraph<W>) -> Result<Packing> + Send + Sync + 'static,
    ) -> Self {
        Self { name: name.into(), kind, k, claimed_ratio, solve: Arc::new(solve) }
    }

    /// The exact oracle (`rho = 1`).
    pub fn exact(kind: PackingKind, k: usize) -> Self {
        Self::new("exact", kind, k, Coef::from_integer(1), move |g| Ok(optimal_k_packing(g, k, kind)?.packing))
    }

    /// Runs the plug and checks its output.
    pub fn run(&self, g: &WeightedCompleteGraph<W>) -> Result<Packing> {
        let p = (self.solve)(g)?;
        if p.kind() != self.kind || p.k() != self.k {
            return Err(Error::Unsupported(format!(
                "plug '{}' returned a {}-{} packing, expected {}-{}",
                self.name,
                p.k(),
                p.kind(),
                self.k,
                self.kind
            )));
        }
        p.validate(g.n())?;
        Ok(p)
    }
}

/// `w'(u, v) = w(u, v) - 1`; rejects weights outside `{1, 2}`.
pub fn lift_12_to_01<W: Weight>(g: &WeightedCompleteGraph<W>) -> Result<WeightedCompleteGraph<W>> {
    g.check_class(WeightClass::OneTwo)?;
    Ok(g.map_weights(|w| w - W::one())?.with_class_unchecked(WeightClass::ZeroOne))
}

/// Number of edges in any k-packing of `kind` on `n` vertices; the weight
/// offset between a `{1,2}` instance and its lift.
pub fn edge_count(n: usize, k: usize, kind: PackingKind) -> usize {
    match kind {
        PackingKind::Cycle => n,
        PackingKind::Path => n - n / k,
    }
}

/// Intermediates of [`solve_12_via_01`].
#[derive(Clone, Debug)]
pub struct ReductionTrace<W> {
    pub lifted: WeightedCompleteGraph<W>,
    pub packing: Packing,
    /// Weight on the lifted instance.
    pub lifted_weight: W,
    /// Weight on the original instance.
    pub weight: W,
    pub offset: usize,
}

/// Lift, solve with the plug, read the same packing on `g`.
pub fn solve_12_via_01<W: Weight>(g: &WeightedCompleteGraph<W>, solver: &PluggableSolver<W>) -> Result<ReductionTrace<W>> {
    let lifted = lift_12_to_01(g)?;
    if !g.n().is_multiple_of(solver.k) {
        return Err(Error::NotDivisible { n: g.n(), k: solver.k });
    }
    let packing = solver.run(&lifted)?;
    let lifted_weight = packing.weight(&lifted);
    let weight = packing.weight(g);
    let offset = edge_count(g.n(), solver.k, solver.kind);
    debug_assert!(!W::EXACT || weight == lifted_weight + W::of(offset as i64));
    Ok(ReductionTrace { lifted, packing, lifted_weight, weight, offset })
}

/// 3CP on `{1,2}` instances through a `{0,1}` 3CP plug.
pub fn three_cp_9_11<W: Weight>(
    g: &WeightedCompleteGraph<W>,
    plug: &PluggableSolver<W>,
) -> Result<(KCyclePacking, ReductionTrace<W>)> {
    if plug.kind != PackingKind::Cycle || plug.k != 3 {
        return Err(Error::Unsupported(format!("plug '{}' is not a 3-cycle solver", plug.name)));
    }
    if !g.n().is_multiple_of(3) {
        return Err(Error::NotDivisible { n: g.n(), k: 3 });
    }
    let trace = solve_12_via_01(g, plug)?;
    let cycles = match &trace.packing {
        Packing::Cycle(c) => c.clone(),
        Packing::Path(_) => unreachable!("run() checked the kind"),
    };
    Ok((cycles, trace))
}

/// Ratio guaranteed on `{1,2}` instances by a `rho` plug: `(1 + rho) / 2`.
pub fn transferred_ratio(rho: Coef) -> Coef {
    (Coef::from_integer(1) + rho) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifting_shifts_by_one() {
        let ones = WeightedCompleteGraph::uniform(6, 1i64).unwrap();
        assert_eq!(lift_12_to_01(&ones).unwrap().total_weight(), 0);
        let twos = WeightedCompleteGraph::uniform(6, 2i64).unwrap();
        let l = lift_12_to_01(&twos).unwrap();
        assert!(l.weights_within(&[1]));
        assert_eq!(l.class_tag(), WeightClass::ZeroOne);
        let bad = WeightedCompleteGraph::uniform(6, 3i64).unwrap();
        assert!(matches!(lift_12_to_01(&bad), Err(Error::WeightClass(_))));
    }

    #[test]
    fn identity_on_a_mixed_instance() {
        let g = WeightedCompleteGraph::from_fn(6, |u, v| 1 + ((u + v) % 2) as i64).unwrap();
        let l = lift_12_to_01(&g).unwrap();
        let c = KCyclePacking::new(6, 3, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(c.weight(&g), c.weight(&l) + 6);
        let p = crate::KPathPacking::new(6, 3, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(p.weight(&g), p.weight(&l) + 4);
    }

    #[test]
    fn uniform_inputs_reach_the_optimum() {
        let plug = PluggableSolver::exact(PackingKind::Cycle, 3);
        for c in [1i64, 2] {
            let g = WeightedCompleteGraph::uniform(9, c).unwrap();
            let (cycles, _) = three_cp_9_11(&g, &plug).unwrap();
            assert_eq!(cycles.weight(&g), 9 * c);
        }
    }

    #[test]
    fn plug_shape_is_checked() {
        let g = WeightedCompleteGraph::uniform(8, 1i64).unwrap();
        let wrong = PluggableSolver::exact(PackingKind::Path, 4);
        assert!(three_cp_9_11(&g, &wrong).is_err());
        assert_eq!(transferred_ratio(Coef::new(3, 5)), Coef::new(4, 5));
    }
}

//! Exact optimal packings for small instances.

use crate::error::{Error, Result};
use crate::graph::WeightedCompleteGraph;
use crate::packing::{Packing, PackingKind};
use crate::weight::Weight;

/// Largest block handled by [`best_k_tour_on_set`].
pub const TOUR_ON_SET_CAP: usize = 10;

/// Default vertex cap of [`optimal_k_packing`] for block length `k`.
pub fn default_packing_cap(k: usize) -> usize {
    if k == 3 || k == 5 {
        15
    } else {
        16
    }
}

/// Hard limit of the subset tables.
const SUBSET_TABLE_MAX: usize = 18;

/// Heaviest k-cycle (or k-path) through exactly the vertices of `set`, by
/// enumerating orders. Cycles fix `set[0]` first; paths keep only orders
/// whose first vertex precedes the last in `set`.
pub fn best_k_tour_on_set<W: Weight>(
    g: &WeightedCompleteGraph<W>,
    set: &[usize],
    kind: PackingKind,
) -> Result<(Vec<usize>, W)> {
    let k = set.len();
    if k > TOUR_ON_SET_CAP {
        return Err(Error::CapExceeded { what: "tour enumeration on a vertex set", size: k, cap: TOUR_ON_SET_CAP });
    }
    if k <= 1 {
        return Ok((set.to_vec(), W::zero()));
    }

    struct Walk<'a, W> {
        g: &'a WeightedCompleteGraph<W>,
        set: &'a [usize],
        kind: PackingKind,
        used: Vec<bool>,
        cur: Vec<usize>,
        best: Option<(Vec<usize>, W)>,
    }

    impl<W: Weight> Walk<'_, W> {
        fn go(&mut self, acc: W) {
            let k = self.set.len();
            if self.cur.len() == k {
                let (first, last) = (self.cur[0], self.cur[k - 1]);
                let value = match self.kind {
                    PackingKind::Cycle => acc + self.g.w(last, first),
                    PackingKind::Path => acc,
                };
                let canonical = self.kind == PackingKind::Cycle || position(self.set, first) < position(self.set, last);
                if canonical && self.best.as_ref().is_none_or(|(_, b)| value > *b) {
                    self.best = Some((self.cur.clone(), value));
                }
                return;
            }
            for i in 0..k {
                if self.used[i] {
                    continue;
                }
                let v = self.set[i];
                let step = self.cur.last().map_or(W::zero(), |&u| self.g.w(u, v));
                self.used[i] = true;
                self.cur.push(v);
                self.go(acc + step);
                self.cur.pop();
                self.used[i] = false;
            }
        }
    }

    fn position(set: &[usize], v: usize) -> usize {
        set.iter().position(|&x| x == v).expect("member")
    }

    let mut walk = Walk { g, set, kind, used: vec![false; k], cur: Vec::with_capacity(k), best: None };
    if kind == PackingKind::Cycle {
        walk.used[0] = true;
        walk.cur.push(set[0]);
    }
    walk.go(W::zero());
    Ok(walk.best.expect("k >= 2"))
}

/// An optimal packing and its weight.
#[derive(Clone, Debug, PartialEq)]
pub struct Optimum<W> {
    pub packing: Packing,
    pub weight: W,
}

/// Optimal k-cycle or k-path packing under [`default_packing_cap`].
pub fn optimal_k_packing<W: Weight>(g: &WeightedCompleteGraph<W>, k: usize, kind: PackingKind) -> Result<Optimum<W>> {
    optimal_k_packing_capped(g, k, kind, default_packing_cap(k))
}

/// Best block value for every `k`-subset, from a DP over subsets of size at
/// most `k`: `best[mask][v]` is the heaviest path through `mask` ending at
/// `v` (cycles: starting at the lowest vertex of `mask`).
struct BlockTable<W> {
    n: usize,
    best: Vec<W>,
    prev: Vec<u8>,
    kind: PackingKind,
}

const NO_PREV: u8 = u8::MAX;

impl<W: Weight> BlockTable<W> {
    fn build(g: &WeightedCompleteGraph<W>, k: usize, kind: PackingKind) -> Self {
        let n = g.n();
        let size = 1usize << n;
        let mut best = vec![W::zero(); size * n];
        let mut prev = vec![NO_PREV; size * n];
        let mut reach = vec![false; size * n];
        for v in 0..n {
            reach[(1 << v) * n + v] = true;
        }
        for mask in 1..size {
            let c = mask.count_ones() as usize;
            if c < 2 || c > k {
                continue;
            }
            let anchor = mask.trailing_zeros() as usize;
            let mut bits = mask;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if kind == PackingKind::Cycle && v == anchor {
                    continue;
                }
                let rest = mask & !(1 << v);
                let mut cand = None::<(W, usize)>;
                let mut rbits = rest;
                while rbits != 0 {
                    let u = rbits.trailing_zeros() as usize;
                    rbits &= rbits - 1;
                    if !reach[rest * n + u] {
                        continue;
                    }
                    let val = best[rest * n + u] + g.w(u, v);
                    if cand.is_none_or(|(b, _)| val > b) {
                        cand = Some((val, u));
                    }
                }
                if let Some((val, u)) = cand {
                    best[mask * n + v] = val;
                    prev[mask * n + v] = u as u8;
                    reach[mask * n + v] = true;
                }
            }
        }
        // unreachable entries stay zero and are never selected as ends
        for (i, r) in reach.iter().enumerate() {
            if !r {
                prev[i] = NO_PREV - 1;
            }
        }
        Self { n, best, prev, kind }
    }

    fn valid_end(&self, mask: usize, v: usize) -> bool {
        self.prev[mask * self.n + v] != NO_PREV - 1
    }

    /// Best block value on `mask` and its last vertex.
    fn value<Wg: Fn(usize, usize) -> W>(&self, mask: usize, w: Wg) -> (W, usize) {
        let anchor = mask.trailing_zeros() as usize;
        let mut out = None::<(W, usize)>;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if !self.valid_end(mask, v) || (self.kind == PackingKind::Cycle && v == anchor && mask.count_ones() > 1) {
                continue;
            }
            let mut val = self.best[mask * self.n + v];
            if self.kind == PackingKind::Cycle {
                val += w(v, anchor);
            }
            if out.is_none_or(|(b, _)| val > b) {
                out = Some((val, v));
            }
        }
        out.expect("non-empty block")
    }

    fn sequence(&self, mut mask: usize, mut v: usize) -> Vec<usize> {
        let mut rev = vec![v];
        loop {
            let p = self.prev[mask * self.n + v];
            if p == NO_PREV {
                break;
            }
            mask &= !(1 << v);
            v = p as usize;
            rev.push(v);
        }
        rev.reverse();
        rev
    }
}

pub fn optimal_k_packing_capped<W: Weight>(
    g: &WeightedCompleteGraph<W>,
    k: usize,
    kind: PackingKind,
    cap: usize,
) -> Result<Optimum<W>> {
    let n = g.n();
    if kind == PackingKind::Cycle && k < 3 {
        return Err(Error::UnsupportedK { k, reason: "cycles need k >= 3" });
    }
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::NotDivisible { n, k });
    }
    let limit = cap.min(SUBSET_TABLE_MAX);
    if n > limit {
        return Err(Error::CapExceeded { what: "optimal packing DP", size: n, cap: limit });
    }
    let table = BlockTable::build(g, k, kind);
    let full = (1usize << n) - 1;
    // f[S] for |S| divisible by k, each block anchored at min(S)
    let mut f: Vec<Option<(W, usize)>> = vec![None; full + 1];
    f[0] = Some((W::zero(), 0));
    let mut block_cache: Vec<Option<W>> = vec![None; full + 1];

    fn solve<W: Weight>(
        s: usize,
        k: usize,
        g: &WeightedCompleteGraph<W>,
        table: &BlockTable<W>,
        f: &mut Vec<Option<(W, usize)>>,
        cache: &mut Vec<Option<W>>,
    ) -> W {
        if let Some((v, _)) = f[s] {
            return v;
        }
        let anchor = s.trailing_zeros() as usize;
        let others: Vec<usize> = (0..g.n()).filter(|&v| v != anchor && s >> v & 1 == 1).collect();
        let mut best = None::<(W, usize)>;
        let mut pick = Vec::with_capacity(k);
        let mut choose = |t: usize, f: &mut Vec<Option<(W, usize)>>, cache: &mut Vec<Option<W>>| {
            let block = *cache[t].get_or_insert_with(|| table.value(t, |a, b| g.w(a, b)).0);
            let val = block + solve(s & !t, k, g, table, f, cache);
            if best.is_none_or(|(b, _)| val > b) {
                best = Some((val, t));
            }
        };
        combinations(&others, k - 1, 0, &mut pick, &mut |c| {
            let t = c.iter().fold(1usize << anchor, |m, &v| m | 1 << v);
            choose(t, f, cache);
        });
        let (v, t) = best.expect("|S| >= k");
        f[s] = Some((v, t));
        v
    }

    fn combinations(items: &[usize], r: usize, from: usize, pick: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
        if pick.len() == r {
            out(pick);
            return;
        }
        for i in from..items.len() {
            if items.len() - i < r - pick.len() {
                break;
            }
            pick.push(items[i]);
            combinations(items, r, i + 1, pick, out);
            pick.pop();
        }
    }

    let weight = solve(full, k, g, &table, &mut f, &mut block_cache);
    let mut blocks = Vec::with_capacity(n / k);
    let mut s = full;
    while s != 0 {
        let (_, t) = f[s].expect("solved");
        let (_, last) = table.value(t, |a, b| g.w(a, b));
        blocks.push(table.sequence(t, last));
        s &= !t;
    }
    let packing = Packing::from_blocks(n, k, kind, blocks)?;
    debug_assert!(!W::EXACT || packing.weight(g) == weight);
    Ok(Optimum { packing, weight })
}

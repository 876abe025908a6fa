//! Exact maximum-weight matchings on complete graphs.

pub mod blossom;

use crate::error::{Error, Result};
use crate::graph::{Matching, WeightedCompleteGraph};
use crate::weight::Weight;

/// Default cap on the number of candidate matchings [`brute_force_matching`]
/// may enumerate.
pub const BRUTE_FORCE_CAP: u128 = 20_000_000;

fn all_edges<W: Weight>(g: &WeightedCompleteGraph<W>) -> Vec<(usize, usize, W)> {
    g.pairs().map(|(u, v)| (u, v, g.w(u, v))).collect()
}

/// Maximum-weight matching of size `n/2`.
pub fn max_weight_perfect_matching<W: Weight>(g: &WeightedCompleteGraph<W>) -> Result<Matching> {
    let n = g.n();
    if !n.is_multiple_of(2) {
        return Err(Error::OddVertexCount(n));
    }
    let mates = blossom::max_weight_matching(n, &all_edges(g), true);
    let m = Matching::from_mates(&mates);
    debug_assert!(m.is_perfect(n));
    Ok(m)
}

/// Maximum-weight matching among those with exactly `p` edges.
///
/// `n - 2p` auxiliary vertices join every real vertex with weight
/// `1 + sum of all weights` and each other with weight 0; a maximum perfect
/// matching of the enlarged graph pairs every auxiliary vertex with a real
/// one, and its real edges form the answer.
pub fn max_weight_matching_of_size<W: Weight>(g: &WeightedCompleteGraph<W>, p: usize) -> Result<Matching> {
    let n = g.n();
    if 2 * p > n {
        return Err(Error::MatchingTooLarge { p, n });
    }
    if p == 0 {
        return Ok(Matching::empty());
    }
    let dummies = n - 2 * p;
    let big = W::one() + g.total_weight();
    let nn = n + dummies;
    let mut edges = all_edges(g);
    for d in n..nn {
        for u in 0..n {
            edges.push((u, d, big));
        }
        for e in d + 1..nn {
            edges.push((d, e, W::zero()));
        }
    }
    let mates = blossom::max_weight_matching(nn, &edges, true);
    let real: Vec<Option<usize>> = mates[..n].iter().map(|m| m.filter(|&u| u < n)).collect();
    let m = Matching::from_mates(&real);
    debug_assert_eq!(m.size(), p);
    Ok(m)
}

/// Number of matchings of size `p` in `K_n`: `C(n, 2p) * (2p - 1)!!`.
pub fn matching_count(n: usize, p: usize) -> u128 {
    if 2 * p > n {
        return 0;
    }
    let mut c: u128 = 1;
    for i in 0..2 * p {
        c = c.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    for odd in (1..2 * p).step_by(2) {
        c = c.saturating_mul(odd as u128);
    }
    c
}

/// Exhaustive maximum over all matchings with exactly `p` edges; the first
/// maximiser in enumeration order wins.
pub fn brute_force_matching<W: Weight>(g: &WeightedCompleteGraph<W>, p: usize, cap: u128) -> Result<Matching> {
    let n = g.n();
    if 2 * p > n {
        return Err(Error::MatchingTooLarge { p, n });
    }
    let count = matching_count(n, p);
    if count > cap {
        return Err(Error::CapExceeded {
            what: "brute-force matching enumeration",
            size: usize::try_from(count).unwrap_or(usize::MAX),
            cap: usize::try_from(cap).unwrap_or(usize::MAX),
        });
    }

    struct Search<'a, W> {
        g: &'a WeightedCompleteGraph<W>,
        used: Vec<bool>,
        cur: Vec<(usize, usize)>,
        best: Option<(W, Vec<(usize, usize)>)>,
    }

    impl<W: Weight> Search<'_, W> {
        // `skips` = how many more vertices may stay unmatched.
        fn go(&mut self, from: usize, left: usize, skips: usize, acc: W) {
            if left == 0 {
                if self.best.as_ref().is_none_or(|(b, _)| acc > *b) {
                    self.best = Some((acc, self.cur.clone()));
                }
                return;
            }
            let n = self.g.n();
            let Some(v) = (from..n).find(|&v| !self.used[v]) else { return };
            self.used[v] = true;
            for u in v + 1..n {
                if !self.used[u] {
                    self.used[u] = true;
                    self.cur.push((v, u));
                    self.go(v + 1, left - 1, skips, acc + self.g.w(v, u));
                    self.cur.pop();
                    self.used[u] = false;
                }
            }
            if skips > 0 {
                self.go(v + 1, left, skips - 1, acc);
            }
            self.used[v] = false;
        }
    }

    let mut s = Search { g, used: vec![false; n], cur: Vec::new(), best: None };
    s.go(0, p, n - 2 * p, W::zero());
    let (_, edges) = s.best.unwrap_or((W::zero(), Vec::new()));
    Matching::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g4(ab: i64, ac: i64, ad: i64, bc: i64, bd: i64, cd: i64) -> WeightedCompleteGraph<i64> {
        WeightedCompleteGraph::from_upper_triangle(4, &[ab, ac, ad, bc, bd, cd]).unwrap()
    }

    #[test]
    fn unique_perfect_maximiser() {
        let g = g4(5, 1, 1, 1, 1, 5);
        let m = max_weight_perfect_matching(&g).unwrap();
        assert_eq!(m.edges(), &[(0, 1), (2, 3)]);
        assert_eq!(m.weight(&g), 10);
    }

    #[test]
    fn perfect_matching_prefers_total_over_heaviest_edge() {
        // a-b is the heaviest edge but forces c-d = 0.
        let g = g4(10, 8, 0, 0, 8, 0);
        assert_eq!(max_weight_perfect_matching(&g).unwrap().weight(&g), 16);
    }

    #[test]
    fn odd_vertex_count_rejected() {
        let g = WeightedCompleteGraph::uniform(5, 1i64).unwrap();
        assert_eq!(max_weight_perfect_matching(&g).unwrap_err(), Error::OddVertexCount(5));
    }

    #[test]
    fn brute_force_small_cases() {
        let g = g4(1, 2, 3, 4, 5, 6);
        // pairings: ab+cd = 7, ac+bd = 7, ad+bc = 7
        assert_eq!(brute_force_matching(&g, 2, BRUTE_FORCE_CAP).unwrap().weight(&g), 7);
        let m1 = brute_force_matching(&g, 1, BRUTE_FORCE_CAP).unwrap();
        assert_eq!(m1.edges(), &[(2, 3)]);
        assert_eq!(brute_force_matching(&g, 0, BRUTE_FORCE_CAP).unwrap().size(), 0);
        assert!(brute_force_matching(&g, 3, BRUTE_FORCE_CAP).is_err());
        assert!(matches!(brute_force_matching(&g, 2, 2), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn size_constrained_matching() {
        let g = g4(1, 2, 3, 4, 5, 6);
        let m = max_weight_matching_of_size(&g, 1).unwrap();
        assert_eq!(m.edges(), &[(2, 3)]);
        assert_eq!(max_weight_matching_of_size(&g, 0).unwrap(), Matching::empty());
        assert_eq!(
            max_weight_matching_of_size(&g, 3).unwrap_err(),
            Error::MatchingTooLarge { p: 3, n: 4 }
        );
    }

    #[test]
    fn counts() {
        assert_eq!(matching_count(4, 2), 3);
        assert_eq!(matching_count(4, 1), 6);
        assert_eq!(matching_count(12, 6), 10395);
        assert_eq!(matching_count(5, 3), 0);
    }

    #[test]
    fn rational_weights() {
        use num_rational::Ratio;
        let g = WeightedCompleteGraph::from_fn(6, |u, v| Ratio::new((u * v + 1) as i64, 3)).unwrap();
        let exact = max_weight_perfect_matching(&g).unwrap().weight(&g);
        let brute = brute_force_matching(&g, 3, BRUTE_FORCE_CAP).unwrap().weight(&g);
        assert_eq!(exact, brute);
    }
}

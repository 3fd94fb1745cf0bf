//! Ball sizes in the Cayley graph by breadth-first search.

use std::collections::HashSet;

use serde::Serialize;

use super::model::{GroupModel, ModelVisitor, WalkConfig};

/// Default cap on distinct elements held by the search.
pub const DEFAULT_ELEMENT_BUDGET: usize = 4_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthStats {
    /// `|W_{<=N}|` for `N = 0..=n_reached`.
    pub ball_sizes: Vec<u64>,
    /// True if the element budget stopped the search before `n_max`.
    pub truncated: bool,
}

impl GrowthStats {
    /// `log |W_{<=N}| / N` for `N >= 1`, paired with `N`.
    pub fn log_volume_quotients(&self) -> Vec<(usize, f64)> {
        self.ball_sizes
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, &b)| (n, (b as f64).ln() / n as f64))
            .collect()
    }

    /// `min_N log |W_{<=N}| / N`; ball sizes are submultiplicative, so every
    /// quotient bounds the volume growth rate from above.
    pub fn v_upper(&self) -> Option<f64> {
        self.log_volume_quotients().into_iter().map(|(_, q)| q).reduce(f64::min)
    }
}

struct Bfs {
    n_max: usize,
    budget: usize,
}

impl ModelVisitor for Bfs {
    type Output = GrowthStats;

    fn visit<M: GroupModel>(self, model: &M) -> GrowthStats {
        let letters: Vec<i32> = (1..=model.generators() as i32).flat_map(|g| [g, -g]).collect();
        let mut seen: HashSet<M::Element> = HashSet::from([model.identity()]);
        let mut frontier = vec![model.identity()];
        let mut ball_sizes = vec![1];
        for _ in 0..self.n_max {
            let mut next = Vec::new();
            for g in &frontier {
                for &l in &letters {
                    let mut h = g.clone();
                    model.push(&mut h, l);
                    if !seen.contains(&h) {
                        if seen.len() >= self.budget {
                            return GrowthStats { ball_sizes, truncated: true };
                        }
                        seen.insert(h.clone());
                        next.push(h);
                    }
                }
            }
            frontier = next;
            ball_sizes.push(seen.len() as u64);
        }
        GrowthStats { ball_sizes, truncated: false }
    }
}

/// `|W_{<=N}|` for `N <= n_max`, stopping early once more than `budget`
/// elements would be stored.
pub fn sphere_sizes(cfg: &WalkConfig, n_max: usize, budget: usize) -> GrowthStats {
    cfg.with_model(Bfs { n_max, budget })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::Variety;

    #[test]
    fn small_balls() {
        let ab = sphere_sizes(&WalkConfig::new(Variety::Abelian, 2, None).unwrap(), 5, 1 << 20);
        assert_eq!(ab.ball_sizes, vec![1, 5, 13, 25, 41, 61]);
        let fr = sphere_sizes(&WalkConfig::new(Variety::Free, 2, None).unwrap(), 4, 1 << 20);
        assert_eq!(fr.ball_sizes, vec![1, 5, 17, 53, 161]);
        assert!(!fr.truncated);
    }

    #[test]
    fn truncation_is_flagged() {
        let g = sphere_sizes(&WalkConfig::new(Variety::Free, 2, None).unwrap(), 10, 100);
        assert!(g.truncated);
        assert_eq!(g.ball_sizes, vec![1, 5, 17, 53]);
    }
}

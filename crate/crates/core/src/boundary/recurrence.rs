//! Single-edge statistics across many walks: traversal counts, stabilization
//! of the net flow, and mean flows on a few edges.

use rayon::prelude::*;
use serde::Serialize;

use super::window::Window;
use crate::lattice::{Edge, LatticePoint};
use crate::walk::{Estimate, Trajectory};

/// Net flow and unsigned traversal count of one edge up to some step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeProbe {
    pub net: i64,
    pub traversals: u64,
}

/// Edge statistics of the base walk of `traj` at each checkpoint
/// (checkpoints must be nondecreasing and at most the trajectory length).
pub fn edge_history(traj: &Trajectory, edge: &Edge, checkpoints: &[u64]) -> Vec<EdgeProbe> {
    let d = traj.generators();
    let radius = edge.base.coords().iter().map(|x| x.unsigned_abs()).max().unwrap_or(0) + 1;
    let window = Window::new(d, radius as u32);
    let target = window.edge_slot(edge).expect("edge fits its window");
    let mut t = window.tracker();
    let mut probe = EdgeProbe { net: 0, traversals: 0 };
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut letters = traj.letters();
    let mut step = 0;
    for &c in checkpoints {
        letters.feed(c - step, |l| {
            if let Some((slot, s)) = t.step(l) {
                if slot == target {
                    probe.net += s;
                    probe.traversals += 1;
                }
            }
        });
        step = c;
        out.push(probe);
    }
    out
}

fn median(mut xs: Vec<u64>) -> f64 {
    xs.sort_unstable();
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2] as f64
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) as f64 / 2.0
    }
}

fn probes(d: usize, edge: &Edge, checkpoints: &[u64], seeds: u64, seed: u64) -> Vec<Vec<EdgeProbe>> {
    let horizon = checkpoints.iter().copied().max().unwrap_or(0);
    (0..seeds)
        .into_par_iter()
        .map(|i| edge_history(&Trajectory::new(seed, i, d, horizon), edge, checkpoints))
        .collect()
}

fn first_axis_edge(d: usize) -> Edge {
    Edge { base: LatticePoint::origin(d), axis: 1 }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecurrenceReport {
    pub d: usize,
    pub seeds: u64,
    pub checkpoints: Vec<u64>,
    /// Median traversal count of edge `(0, axis 1)` at each checkpoint.
    pub medians: Vec<f64>,
    /// For consecutive checkpoints, the share of seeds whose count did not
    /// change in between.
    pub constant_fraction: Vec<f64>,
}

impl RecurrenceReport {
    pub fn medians_strictly_increasing(&self) -> bool {
        self.medians.windows(2).all(|w| w[0] < w[1])
    }
}

pub fn recurrence_probe(d: usize, checkpoints: &[u64], seeds: u64, seed: u64) -> RecurrenceReport {
    let all = probes(d, &first_axis_edge(d), checkpoints, seeds, seed);
    let medians = (0..checkpoints.len())
        .map(|k| median(all.iter().map(|p| p[k].traversals).collect()))
        .collect();
    let constant_fraction = (1..checkpoints.len())
        .map(|k| {
            let same = all.iter().filter(|p| p[k].traversals == p[k - 1].traversals).count();
            same as f64 / seeds as f64
        })
        .collect();
    RecurrenceReport { d, seeds, checkpoints: checkpoints.to_vec(), medians, constant_fraction }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilizationReport {
    pub d: usize,
    pub seeds: u64,
    pub horizons: Vec<u64>,
    /// Share of seeds whose net flow on `(0, axis 1)` is equal at `N/2` and
    /// `N`, per horizon `N`.
    pub fractions: Vec<f64>,
}

pub fn stabilization_probe(d: usize, horizons: &[u64], seeds: u64, seed: u64) -> StabilizationReport {
    let mut checkpoints: Vec<u64> = horizons.iter().flat_map(|&n| [n / 2, n]).collect();
    checkpoints.sort_unstable();
    checkpoints.dedup();
    let all = probes(d, &first_axis_edge(d), &checkpoints, seeds, seed);
    let at = |p: &[EdgeProbe], n: u64| p[checkpoints.binary_search(&n).expect("checkpoint recorded")].net;
    let fractions = horizons
        .iter()
        .map(|&n| {
            let stable = all.iter().filter(|p| at(p, n / 2) == at(p, n)).count();
            stable as f64 / seeds as f64
        })
        .collect();
    StabilizationReport { d, seeds, horizons: horizons.to_vec(), fractions }
}

/// Mean net flow at step `n` on each edge over `seeds` walks.
pub fn edge_flow_means(d: usize, edges: &[Edge], n: u64, seeds: u64, seed: u64) -> Vec<Estimate> {
    let radius = edges
        .iter()
        .flat_map(|e| [e.base.clone(), e.head()])
        .flat_map(|p| p.into_coords())
        .map(i64::unsigned_abs)
        .max()
        .unwrap_or(0);
    let window = Window::new(d, radius as u32);
    let slots: Vec<usize> = edges.iter().map(|e| window.edge_slot(e).expect("edge in window")).collect();
    let values: Vec<Vec<i64>> = (0..seeds)
        .into_par_iter()
        .map(|i| {
            let traj = Trajectory::new(seed, i, d, n);
            let mut t = window.tracker();
            let mut flow = vec![0i64; window.slot_count()];
            traj.letters().for_each(|l| {
                if let Some((slot, s)) = t.step(l) {
                    flow[slot] += s;
                }
            });
            slots.iter().map(|&s| flow[s]).collect()
        })
        .collect();
    (0..edges.len())
        .map(|k| Estimate::from_samples(&values.iter().map(|v| v[k] as f64).collect::<Vec<_>>()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{flow_of_path, LatticePath};

    #[test]
    fn history_matches_path_flow() {
        let traj = Trajectory::new(11, 2, 2, 400);
        let e = Edge::new(LatticePoint::new(vec![-1, 1]), 2).unwrap();
        let h = edge_history(&traj, &e, &[0, 100, 400]);
        assert_eq!(h[0], EdgeProbe { net: 0, traversals: 0 });
        let letters: Vec<i32> = traj.letters().collect();
        for (k, &c) in [100usize, 400].iter().enumerate() {
            let path = LatticePath::from_origin(2, letters[..c].to_vec()).unwrap();
            assert_eq!(h[k + 1].net, flow_of_path(&path).get(&e));
        }
    }

    #[test]
    fn one_dimensional_counts_grow() {
        let r = recurrence_probe(1, &[100, 1000, 10000], 200, 1);
        assert!(r.medians_strictly_increasing(), "{:?}", r.medians);
    }

    #[test]
    fn median_rule() {
        assert_eq!(median(vec![3, 1, 2]), 2.0);
        assert_eq!(median(vec![4, 1, 2, 3]), 2.5);
    }
}

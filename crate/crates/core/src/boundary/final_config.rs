//! Lamp configurations of lamplighter walks inside a window.

use rayon::prelude::*;
use serde::Serialize;

use super::window::Window;
use crate::lattice::LatticePoint;
use crate::metabelian::MetabelianElement;
use crate::quotient::{ll_project, LampGroupSpec};
use crate::walk::Trajectory;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FinalConfigReport {
    pub d: usize,
    pub m: u64,
    pub radius: u32,
    pub seeds: u64,
    pub horizons: Vec<u64>,
    /// Mean over seeds of the share of window nodes whose lamp is equal at
    /// `N/2` and `N`, per horizon.
    pub node_fraction: Vec<f64>,
    /// Share of seeds whose whole window configuration is equal at `N/2`
    /// and `N`, per horizon.
    pub seed_fraction: Vec<f64>,
    /// Seeds whose window lamps were compared against the projection of the
    /// free metabelian element of the same word.
    pub projection_checked: u64,
    pub projection_consistent: bool,
}

/// Window lamps of trajectory `traj` (over `d + 1` generators) at each
/// checkpoint.
pub fn window_lamps(traj: &Trajectory, spec: LampGroupSpec, window: &Window, checkpoints: &[u64]) -> Vec<Vec<i64>> {
    let d = window.d();
    assert_eq!(traj.generators(), d + 1, "lamplighter trajectories have d + 1 generators");
    let lamp = (d + 1) as i32;
    let mut t = window.tracker();
    let mut lamps = vec![0i64; window.vertex_count()];
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut letters = traj.letters();
    let mut step = 0;
    for &c in checkpoints {
        letters.feed(c - step, |l| {
            if l.abs() == lamp {
                if let Some(v) = t.vertex_slot() {
                    lamps[v] = spec.reduce(lamps[v] + i64::from(l.signum()));
                }
            } else {
                t.step(l);
            }
        });
        step = c;
        out.push(lamps.clone());
    }
    out
}

/// Window lamps read off the free metabelian element of the first `n`
/// letters, through the column-sum projection.
pub fn projected_window_lamps(traj: &Trajectory, spec: LampGroupSpec, window: &Window, n: u64) -> Vec<i64> {
    let mut g = MetabelianElement::identity(window.d() + 1);
    for l in traj.letters().take(n as usize) {
        g.push_letter(l);
    }
    let p = ll_project(&g, spec).expect("dimension at least two");
    window.vertices().map(|v: LatticePoint| p.lamp(&v)).collect()
}

/// Runs `seeds` lamplighter walks and compares window configurations at
/// `N/2` and `N` for every horizon `N`. The first `check_seeds` seeds are
/// also checked against [`projected_window_lamps`] at the largest horizon.
pub fn final_config_stability(
    d: usize,
    spec: LampGroupSpec,
    horizons: &[u64],
    radius: u32,
    seeds: u64,
    seed: u64,
    check_seeds: u64,
) -> FinalConfigReport {
    let window = Window::new(d, radius);
    let mut checkpoints: Vec<u64> = horizons.iter().flat_map(|&n| [n / 2, n]).collect();
    checkpoints.sort_unstable();
    checkpoints.dedup();
    let horizon = checkpoints.last().copied().unwrap_or(0);
    let idx = |n: u64| checkpoints.binary_search(&n).expect("checkpoint recorded");
    let per_seed: Vec<(Vec<(f64, bool)>, Option<bool>)> = (0..seeds)
        .into_par_iter()
        .map(|i| {
            let traj = Trajectory::new(seed, i, d + 1, horizon);
            let snaps = window_lamps(&traj, spec, &window, &checkpoints);
            let stats = horizons
                .iter()
                .map(|&n| {
                    let (a, b) = (&snaps[idx(n / 2)], &snaps[idx(n)]);
                    let same = a.iter().zip(b).filter(|(x, y)| x == y).count();
                    (same as f64 / a.len() as f64, same == a.len())
                })
                .collect();
            let check = (i < check_seeds).then(|| {
                projected_window_lamps(&traj, spec, &window, horizon) == snaps[idx(horizon)]
            });
            (stats, check)
        })
        .collect();
    let node_fraction = (0..horizons.len())
        .map(|k| per_seed.iter().map(|(s, _)| s[k].0).sum::<f64>() / seeds as f64)
        .collect();
    let seed_fraction = (0..horizons.len())
        .map(|k| per_seed.iter().filter(|(s, _)| s[k].1).count() as f64 / seeds as f64)
        .collect();
    let checks: Vec<bool> = per_seed.iter().filter_map(|(_, c)| *c).collect();
    FinalConfigReport {
        d,
        m: spec.modulus(),
        radius,
        seeds,
        horizons: horizons.to_vec(),
        node_fraction,
        seed_fraction,
        projection_checked: checks.len() as u64,
        projection_consistent: checks.iter().all(|&c| c),
    }
}

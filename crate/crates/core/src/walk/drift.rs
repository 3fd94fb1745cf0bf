//! Escape rate: word length of the walk divided by the number of steps.

use rayon::prelude::*;
use serde::Serialize;

use super::model::{GroupModel, ModelVisitor, WalkConfig};
use super::rng::Trajectory;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Sample mean with a normal-approximation 95% half-width.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub half_width: f64,
}

impl Estimate {
    /// Mean and `Z95 * sd / sqrt(n)` in a fixed summation order.
    pub fn from_samples(xs: &[f64]) -> Estimate {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        if xs.len() < 2 {
            return Estimate { mean, half_width: f64::INFINITY };
        }
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
        Estimate { mean, half_width: Z95 * (var / n).sqrt() }
    }

    pub fn low(&self) -> f64 {
        self.mean - self.half_width
    }

    pub fn high(&self) -> f64 {
        self.mean + self.half_width
    }

    /// Standard error implied by the half-width.
    pub fn std_error(&self) -> f64 {
        self.half_width / Z95
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DriftPoint {
    pub n: u64,
    /// Lower bound on `L(g_N) / N`.
    pub lower: Estimate,
    /// Upper bound on `L(g_N) / N` from explicit words.
    pub upper: Estimate,
    /// Exact `L(g_N) / N` when every sample could be solved exactly.
    pub exact: Option<Estimate>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DriftStats {
    pub samples: usize,
    pub points: Vec<DriftPoint>,
}

struct Drift<'a> {
    checkpoints: &'a [u64],
    samples: usize,
    seed: u64,
}

type SampleRow = Vec<(u64, u64, Option<u64>)>;

impl ModelVisitor for Drift<'_> {
    type Output = DriftStats;

    fn visit<M: GroupModel>(self, model: &M) -> DriftStats {
        let horizon = self.checkpoints.iter().copied().max().unwrap_or(0);
        let rows: Vec<SampleRow> = (0..self.samples as u64)
            .into_par_iter()
            .map(|i| {
                let traj = Trajectory::new(self.seed, i, model.generators(), horizon);
                let mut g = model.identity();
                let mut row = Vec::with_capacity(self.checkpoints.len());
                let mut step = 0;
                let mut letters = traj.letters();
                for &n in self.checkpoints {
                    while step < n {
                        model.push(&mut g, letters.next().expect("trajectory long enough"));
                        step += 1;
                    }
                    let (lo, hi) = model.length_bounds(&g);
                    row.push((lo, hi, model.exact_length(&g, n)));
                }
                row
            })
            .collect();
        let points = self
            .checkpoints
            .iter()
            .enumerate()
            .map(|(k, &n)| {
                let scale = n.max(1) as f64;
                let col = |f: &dyn Fn(&(u64, u64, Option<u64>)) -> Option<u64>| -> Option<Vec<f64>> {
                    rows.iter().map(|r| f(&r[k]).map(|x| x as f64 / scale)).collect()
                };
                DriftPoint {
                    n,
                    lower: Estimate::from_samples(&col(&|r| Some(r.0)).expect("always present")),
                    upper: Estimate::from_samples(&col(&|r| Some(r.1)).expect("always present")),
                    exact: col(&|r| r.2).map(|xs| Estimate::from_samples(&xs)),
                }
            })
            .collect();
        DriftStats { samples: self.samples, points }
    }
}

/// Length statistics of `samples` independent walks at each checkpoint.
/// Sample `i` uses trajectory index `i` under `seed`.
pub fn drift_estimate(cfg: &WalkConfig, checkpoints: &[u64], samples: usize, seed: u64) -> DriftStats {
    assert!(samples >= 1, "need at least one sample");
    cfg.with_model(Drift { checkpoints, samples, seed })
}

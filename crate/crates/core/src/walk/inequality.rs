//! Side-by-side bounds for entropy, escape rate and volume growth.

use serde::Serialize;

use super::drift::{drift_estimate, DriftPoint};
use super::entropy::{entropy_series, max_exact_steps, EntropyEntry};
use super::growth::{sphere_sizes, GrowthStats, DEFAULT_ELEMENT_BUDGET};
use super::model::{Variety, WalkConfig};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityParams {
    pub entropy_n_max: usize,
    pub growth_n_max: usize,
    pub growth_budget: usize,
    pub drift_n: u64,
    pub drift_samples: usize,
    pub seed: u64,
}

impl InequalityParams {
    /// Desk-scale settings for `cfg`.
    pub fn default_for(cfg: &WalkConfig) -> Self {
        let growth_n_max = match cfg.variety {
            Variety::Abelian => 20,
            Variety::Free => 12,
            _ => 8,
        };
        InequalityParams {
            entropy_n_max: max_exact_steps(cfg).min(12),
            growth_n_max,
            growth_budget: DEFAULT_ELEMENT_BUDGET,
            drift_n: 1000,
            drift_samples: 1000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    pub config: WalkConfig,
    pub params: InequalityParams,
    pub entropy: Vec<EntropyEntry>,
    /// `min_N H_N / N`.
    pub h_upper: f64,
    /// `H_N - H_{N-1}` at the largest computed `N`; informational.
    pub h_increment: Option<f64>,
    pub drift: DriftPoint,
    /// `[lower-bound mean - half-width, upper-bound mean + half-width]`.
    pub c_interval: (f64, f64),
    pub c_upper: f64,
    pub growth: GrowthStats,
    /// `min_N log |W_{<=N}| / N`.
    pub v_upper: f64,
    /// Whether `h_upper <= c_upper * v_upper`.
    pub holds: bool,
    /// `c_upper * v_upper - h_upper`.
    pub gap: f64,
    /// `gap / h_upper`.
    pub relative_gap: f64,
}

pub fn inequality_report(cfg: &WalkConfig, params: &InequalityParams) -> Result<InequalityReport> {
    let entropy = entropy_series(cfg, params.entropy_n_max)?.entries;
    let h_upper = entropy.iter().map(|e| e.per_step).fold(f64::INFINITY, f64::min);
    let h_increment = match entropy.as_slice() {
        [.., a, b] => Some(b.entropy - a.entropy),
        [a] => Some(a.entropy),
        [] => None,
    };
    let drift = drift_estimate(cfg, &[params.drift_n], params.drift_samples, params.seed)
        .points
        .remove(0);
    let c_interval = (drift.lower.low().max(0.0), drift.upper.high());
    let c_upper = c_interval.1;
    let growth = sphere_sizes(cfg, params.growth_n_max, params.growth_budget);
    let v_upper = growth.v_upper().unwrap_or(f64::INFINITY);
    let gap = c_upper * v_upper - h_upper;
    Ok(InequalityReport {
        config: *cfg,
        params: *params,
        entropy,
        h_upper,
        h_increment,
        drift,
        c_interval,
        c_upper,
        growth,
        v_upper,
        holds: h_upper <= c_upper * v_upper,
        gap,
        relative_gap: gap / h_upper,
    })
}

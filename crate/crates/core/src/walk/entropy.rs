//! Exact entropy of the convolution powers of the uniform step measure.

use std::collections::HashMap;

use serde::Serialize;

use super::model::{GroupModel, ModelVisitor, WalkConfig};
use crate::error::{Error, Result};

/// Largest number of words `(2g)^N` an exact entropy computation may cover.
pub const ENUMERATION_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EntropyEntry {
    pub n: usize,
    /// `H(mu^{*N})` in nats.
    pub entropy: f64,
    /// `H_N / N`, an upper bound for the asymptotic entropy.
    pub per_step: f64,
    /// Number of distinct elements reached.
    pub atoms: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyStats {
    pub entries: Vec<EntropyEntry>,
}

impl EntropyStats {
    /// `min_N H_N / N`.
    pub fn h_upper(&self) -> Option<f64> {
        self.entries.iter().map(|e| e.per_step).reduce(f64::min)
    }
}

/// Largest `N` with `(2g)^N` within the enumeration budget.
pub fn max_exact_steps(cfg: &WalkConfig) -> usize {
    let a = cfg.alphabet_size() as u64;
    let mut n = 0;
    let mut words: u64 = 1;
    while let Some(next) = words.checked_mul(a).filter(|&w| w <= ENUMERATION_BUDGET) {
        words = next;
        n += 1;
    }
    n
}

/// Shannon entropy of a distribution given by integer counts summing to
/// `total`. Counts are summed in sorted order so the result does not depend
/// on hash iteration order.
pub fn entropy_of_counts(mut counts: Vec<u64>, total: f64) -> f64 {
    counts.sort_unstable();
    let s: f64 = counts.iter().map(|&k| if k > 1 { k as f64 * (k as f64).ln() } else { 0.0 }).sum();
    total.ln() - s / total
}

struct Series {
    n_max: usize,
}

impl ModelVisitor for Series {
    type Output = Vec<EntropyEntry>;

    fn visit<M: GroupModel>(self, model: &M) -> Vec<EntropyEntry> {
        let letters: Vec<i32> = (1..=model.generators() as i32).flat_map(|g| [g, -g]).collect();
        let mut layer: HashMap<M::Element, u64> = HashMap::from([(model.identity(), 1)]);
        let mut total: f64 = 1.0;
        let mut out = Vec::with_capacity(self.n_max);
        for n in 1..=self.n_max {
            let mut next: HashMap<M::Element, u64> = HashMap::with_capacity(layer.len() * 2);
            for (g, &k) in &layer {
                for &l in &letters {
                    let mut h = g.clone();
                    model.push(&mut h, l);
                    *next.entry(h).or_insert(0) += k;
                }
            }
            layer = next;
            total *= letters.len() as f64;
            let entropy = entropy_of_counts(layer.values().copied().collect(), total);
            out.push(EntropyEntry { n, entropy, per_step: entropy / n as f64, atoms: layer.len() });
        }
        out
    }
}

fn check_budget(cfg: &WalkConfig, n: usize) -> Result<()> {
    if n > max_exact_steps(cfg) {
        return Err(Error::BudgetExceeded(format!(
            "{}^{n} words exceed the enumeration budget of {ENUMERATION_BUDGET}",
            cfg.alphabet_size()
        )));
    }
    Ok(())
}

/// `H_1, ..., H_{n_max}` by exact convolution: the law of the walk after `N`
/// steps is the multiset of all `(2g)^N` words grouped by normal form.
pub fn entropy_series(cfg: &WalkConfig, n_max: usize) -> Result<EntropyStats> {
    check_budget(cfg, n_max)?;
    Ok(EntropyStats { entries: cfg.with_model(Series { n_max }) })
}

/// `H_N` for a single `N`.
pub fn entropy_exact(cfg: &WalkConfig, n: usize) -> Result<EntropyEntry> {
    if n == 0 {
        return Ok(EntropyEntry { n: 0, entropy: 0.0, per_step: f64::NAN, atoms: 1 });
    }
    let stats = entropy_series(cfg, n)?;
    Ok(*stats.entries.last().expect("n >= 1"))
}

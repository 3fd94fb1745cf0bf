//! Simple random walks: uniform steps over the generators and their
//! inverses, with exact entropy, ball growth and escape-rate statistics.

mod drift;
mod entropy;
mod growth;
mod inequality;
mod model;
mod rng;

pub use drift::{drift_estimate, DriftPoint, DriftStats, Estimate, Z95};
pub use entropy::{
    entropy_exact, entropy_of_counts, entropy_series, max_exact_steps, EntropyEntry, EntropyStats,
    ENUMERATION_BUDGET,
};
pub use growth::{sphere_sizes, GrowthStats, DEFAULT_ELEMENT_BUDGET};
pub use inequality::{inequality_report, InequalityParams, InequalityReport};
pub use model::{
    Abelian, Free, GroupModel, Lamplighter, Metabelian, ModelVisitor, Nilpotent2, Variety,
    WalkConfig, EXACT_LENGTH_MAX_STEPS,
};
pub use rng::{letter_of_index, Letters, Trajectory};

/// Trajectory number 0 of `cfg` under `seed`.
pub fn simulate(cfg: &WalkConfig, seed: u64, steps: u64) -> Trajectory {
    Trajectory::new(seed, 0, cfg.generators(), steps)
}

/// The group element reached by a trajectory.
pub fn endpoint_element<M: GroupModel>(model: &M, traj: &Trajectory) -> M::Element {
    let mut g = model.identity();
    for l in traj.letters() {
        model.push(&mut g, l);
    }
    g
}

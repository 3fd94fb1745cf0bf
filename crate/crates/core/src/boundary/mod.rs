//! Long-run behaviour of walks: edge flows that freeze, the Green function
//! that predicts their means, and lamp configurations that settle.

mod final_config;
mod green;
mod recurrence;
mod window;

pub use final_config::{final_config_stability, projected_window_lamps, window_lamps, FinalConfigReport};
pub use green::{
    expected_flow, green_monte_carlo, green_numeric, green_table, visit_tail, GreenTable,
    DEFAULT_TOLERANCE,
};
pub use recurrence::{
    edge_flow_means, edge_history, recurrence_probe, stabilization_probe, EdgeProbe, RecurrenceReport,
    StabilizationReport,
};
pub use window::{limit_flow, FlowRow, StableFlowReport, Window};

//! Reasoning engines used to check encodings: unit propagation,
//! failed-literal probing, a small backtracking search with projected model
//! enumeration, and verification of solver models.

mod probe;
mod propagate;
mod search;
mod verify;

pub use probe::{failed_literal_sweep, SweepOutcome, SweepResult};
pub use propagate::{unit_propagate, PropagationResult, PropagationStatus, Propagator};
pub use search::{enumerate_models, solve, solve_with_order, ModelSet, PROJECTION_LIMIT};
pub use verify::{decode_graph, edge_assignment, verify_model, Check, VerificationReport};

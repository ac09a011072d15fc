//! Rounding the relaxation to an integral optimum through two circulations, with an exact
//! search as the fallback for the second.

mod complete;
mod pipeline;
mod q;
mod recover;

pub use complete::{complete_at, y_for_x, Completion};
pub use pipeline::{
    closed_form_solution, solve_pipeline, PipelineError, PipelineOutput, Rounding, Solved, TheoremViolation,
};
pub use q::{build_q_network, QError, QNetwork, QSystem};
pub use recover::{recover_x, RecoverError};

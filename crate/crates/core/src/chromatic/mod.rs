//! Explicit colorings: bipartite edge coloring, fractional columns, and the
//! four-part optimal coloring with its verifier.

mod assemble;
mod fractional;
mod konig;
mod verify;

pub use assemble::{assemble_coloring, AssembleError};
pub use fractional::{columns_to_coloring, decompose_fractional, tight_jobs, Column, FractionalError};
pub use konig::{edge_color_bipartite, KonigError, Side, WeightedMatching};
pub use verify::verify_coloring;

use crate::lp::{chromatic_closed_form, ClosedFormError};
use crate::model::Instance;
use crate::rounding::{solve_pipeline, PipelineError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChromaticError {
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

/// The edge chromatic number `χ′`. Uses the closed form when a group is
/// empty and `Δ(𝒢₁) + Δ(𝒢₂) + (w − r)` from the rounding pipeline otherwise.
pub fn chromatic_number(inst: &Instance) -> Result<i64, ChromaticError> {
    if inst.group1.is_empty() || inst.group2.is_empty() {
        return Ok(chromatic_closed_form(inst)?);
    }
    Ok(solve_pipeline(inst)?.chromatic_number(inst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn fixture_values() {
        assert_eq!(chromatic_number(&i_a()), Ok(2));
        assert_eq!(chromatic_number(&i_b()), Ok(2));
        assert_eq!(chromatic_number(&i_c()), Ok(2));
        assert_eq!(chromatic_number(&i_d()), Ok(2));
    }
}

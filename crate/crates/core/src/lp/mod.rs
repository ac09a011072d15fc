//! Exact rational linear programming.

mod builders;
pub mod certificate;
mod problem;
mod simplex;

pub use builders::{
    build_aux, build_relaxation, build_slice, chromatic_closed_form, chromatic_fractional, solve_relaxation, ClosedFormError,
    LpBuildError, VarLayout,
};
pub use certificate::check_certificate;
pub use problem::{Constraint, LpError, LpProblem, LpSolution, LpStatus, Relation};
pub use simplex::simplex_solve;

use num_traits::One;

use crate::flow::{feasible_circulation, Circulation, ViolatedCut};
use crate::lp::{
    build_aux, check_certificate, chromatic_closed_form, simplex_solve, solve_relaxation, ClosedFormError, LpBuildError,
    LpProblem, LpSolution, VarLayout,
};
use crate::model::{validate_instance, validate_solution, Group, HypergraphSolution, Instance, Violation};
use crate::scalar::{ceil, int, to_i64, ExactScalar};

use super::q::{build_q_network, QError, QSystem};
use super::complete::complete_at;
use super::recover::{recover_x, RecoverError};

/// A result that would contradict the integrality theorem. Never expected;
/// each variant carries enough to reproduce the failure.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TheoremViolation {
    #[error("auxiliary optimum has fractional r = {0}")]
    FractionalR(ExactScalar),
    #[error("auxiliary optimum has w − r = {got}, expected {expected}")]
    GapMismatch { got: ExactScalar, expected: ExactScalar },
    #[error("fractional auxiliary optimum violates Q: {}", join(.0))]
    OutsideQ(Vec<Violation>),
    #[error("Q network at r = {r}, w = {w} cannot be built: {source}")]
    QBounds { r: i64, w: i64, source: QError },
    #[error("Q network at r = {r}, w = {w} has no feasible circulation ({} nodes on the violated cut)", .cut.nodes.len())]
    QInfeasible { r: i64, w: i64, cut: ViolatedCut },
    #[error("no integral point exists at r = {r}, w = {w} (projected y failed with: {projection})")]
    NoIntegralPoint { r: i64, w: i64, projection: RecoverError },
    #[error("rounded solution is infeasible: {}", join(.0))]
    Infeasible(Vec<Violation>),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("invalid instance: {}", join(.0))]
    InvalidInstance(Vec<Violation>),
    #[error("both machine groups must be non-empty; use the closed form")]
    EmptyGroup,
    #[error(transparent)]
    Lp(LpBuildError),
    #[error("{program} program: certificate rejected: {}", .problems.join("; "))]
    Certificate { program: &'static str, problems: Vec<String> },
    #[error(transparent)]
    Theorem(#[from] TheoremViolation),
}

impl From<LpBuildError> for PipelineError {
    fn from(e: LpBuildError) -> Self {
        match e {
            LpBuildError::InvalidInstance(v) => PipelineError::InvalidInstance(v),
            LpBuildError::EmptyGroup => PipelineError::EmptyGroup,
            e => PipelineError::Lp(e),
        }
    }
}

/// An exact linear program together with its solve.
#[derive(Debug, Clone)]
pub struct Solved {
    pub problem: LpProblem<ExactScalar>,
    pub solution: LpSolution<ExactScalar>,
}

/// How the integral `(y, x)` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// `y` from the `Q` network, then `x` from the second circulation.
    Projection,
    /// The projected `y` had no integral `x`; branch and bound over `x` at
    /// the same `(r, w)` found one.
    Search { lp_solves: usize },
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    /// Integral optimum of the integer program.
    pub solution: HypergraphSolution,
    /// Exact optimum `w* − r*` of the relaxation.
    pub lp_value: ExactScalar,
    pub relaxation: Solved,
    pub aux: Solved,
    /// The (possibly fractional) optimum of the auxiliary program.
    pub aux_point: HypergraphSolution,
    pub rounding: Rounding,
}

impl PipelineOutput {
    /// `Δ(𝒢₁) + Δ(𝒢₂) + (w − r)`.
    pub fn chromatic_number(&self, inst: &Instance) -> i64 {
        let gap = to_i64(&self.solution.objective()).expect("integral objective");
        inst.delta(Group::One) + inst.delta(Group::Two) + gap
    }
}

fn certified(program: &'static str, problem: LpProblem<ExactScalar>, solution: LpSolution<ExactScalar>) -> Result<Solved, PipelineError> {
    check_certificate(&problem, &solution).map_err(|problems| PipelineError::Certificate { program, problems })?;
    Ok(Solved { problem, solution })
}

/// Computes an integral optimum with `w − r = ⌈LP⌉`:
///
/// 1. solve the relaxation, giving `w* − r*`;
/// 2. solve the auxiliary program and require its `r` to be integral;
/// 3. set `w = r + ⌈w* − r*⌉` and find an integral `y` by a circulation in
///    the `Q` network;
/// 4. complete `y` with an integral `x` by a second circulation.
///
/// Some `y` in `Q` admit no integral `x`. In that case step 4 is replaced by
/// a branch and bound over `x` at the same `(r, w)`, recorded in
/// [`PipelineOutput::rounding`].
///
/// Every step that the integrality theorem guarantees is checked, and a
/// failure is reported as [`TheoremViolation`].
pub fn solve_pipeline(inst: &Instance) -> Result<PipelineOutput, PipelineError> {
    let violations = validate_instance(inst);
    if !violations.is_empty() {
        return Err(PipelineError::InvalidInstance(violations));
    }
    if inst.group1.is_empty() || inst.group2.is_empty() {
        return Err(PipelineError::EmptyGroup);
    }

    let (lp_value, problem, solution) = solve_relaxation(inst)?;
    let lay = VarLayout::of(inst);
    let relaxed = lay.extract(&solution.primal);
    let relaxation = certified("relaxation", problem, solution)?;

    let aux_problem = build_aux(inst, &relaxed.w, &relaxed.r);
    let aux_solution = simplex_solve(&aux_problem);
    if !aux_solution.is_optimal() {
        return Err(PipelineError::Lp(LpBuildError::NotOptimal(aux_solution.status)));
    }
    let aux_point = lay.extract(&aux_solution.primal);
    let aux = certified("auxiliary", aux_problem, aux_solution)?;

    if !aux_point.r.is_integer() {
        return Err(TheoremViolation::FractionalR(aux_point.r.clone()).into());
    }
    let gap = ceil(&lp_value);
    if &aux_point.w - &aux_point.r != gap {
        return Err(TheoremViolation::GapMismatch { got: &aux_point.w - &aux_point.r, expected: gap }.into());
    }
    let q_violations = QSystem::build(inst, aux_point.r.clone(), aux_point.w.clone()).violations(inst, &aux_point.y);
    if !q_violations.is_empty() {
        return Err(TheoremViolation::OutsideQ(q_violations).into());
    }

    let r = to_i64(&aux_point.r).expect("r is bounded by Δ");
    let w = r + to_i64(&gap).expect("gap is bounded by the instance size");
    let qn = build_q_network(inst, r, w).map_err(|source| TheoremViolation::QBounds { r, w, source })?;
    let flow = match feasible_circulation(&qn.net) {
        Circulation::Feasible(flow) => flow,
        Circulation::Infeasible(cut) => return Err(TheoremViolation::QInfeasible { r, w, cut }.into()),
    };
    let y = qn.extract_y(&flow);
    let (y, x, rounding) = match recover_x(inst, &y, r, w) {
        Ok(x) => (y, x, Rounding::Projection),
        Err(projection) => match complete_at(inst, r, w) {
            Some(c) => (c.y, c.x, Rounding::Search { lp_solves: c.lp_solves }),
            None => return Err(TheoremViolation::NoIntegralPoint { r, w, projection }.into()),
        },
    };

    let solution = HypergraphSolution {
        y: y.iter().map(|row| row.iter().map(|&v| int(v)).collect()).collect(),
        x: x.iter().map(|&[a, b]| [int(a), int(b)]).collect(),
        r: int(r),
        w: int(w),
        integral: true,
    };
    let violations = validate_solution(inst, &solution).expect("shapes come from the instance");
    if !violations.is_empty() {
        return Err(TheoremViolation::Infeasible(violations).into());
    }
    debug_assert!(solution.objective() == ceil(&lp_value) && lp_value <= solution.objective() + ExactScalar::one());
    Ok(PipelineOutput { solution, lp_value, relaxation, aux, aux_point, rounding })
}

/// The optimum when a group is empty: every edge in part (d), `y = b`,
/// `x = 0`, `r = 0` and `w` the bipartite maximum degree.
pub fn closed_form_solution(inst: &Instance) -> Result<HypergraphSolution, ClosedFormError> {
    chromatic_closed_form(inst)?;
    Ok(HypergraphSolution {
        y: inst.b.iter().map(|row| row.iter().map(|&v| int(v)).collect()).collect(),
        x: vec![[int(0), int(0)]; inst.n()],
        r: int(0),
        w: int(inst.bipartite_degree()),
        integral: true,
    })
}

//! The relaxation of the coloring integer program and the auxiliary program
//! that minimizes `r` at a fixed, rounded-up `w − r`.

use num_traits::{One, Zero};

use crate::model::{validate_instance, Group, HypergraphSolution, Instance, Violation};
use crate::scalar::{ceil, floor, int, ExactScalar};

use super::problem::{LpProblem, LpSolution, LpStatus, Relation};
use super::simplex::simplex_solve;

/// Column layout shared by the relaxation and the auxiliary program:
/// `w`, `r`, then `y` row-major, then `x` row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarLayout {
    pub n: usize,
    pub m: usize,
}

impl VarLayout {
    pub fn of(inst: &Instance) -> Self {
        VarLayout { n: inst.n(), m: inst.m() }
    }
    pub const W: usize = 0;
    pub const R: usize = 1;
    pub fn y(&self, j: usize, h: usize) -> usize {
        2 + j * self.m + h
    }
    pub fn x(&self, j: usize, g: Group) -> usize {
        2 + self.n * self.m + 2 * j + g.index()
    }
    pub fn count(&self) -> usize {
        self.n * self.m + 2 * self.n + 2
    }

    /// Reads `(y, x, r, w)` back out of a primal vector.
    pub fn extract(&self, primal: &[ExactScalar]) -> HypergraphSolution {
        let mut sol = HypergraphSolution {
            y: (0..self.n).map(|j| (0..self.m).map(|h| primal[self.y(j, h)].clone()).collect()).collect(),
            x: (0..self.n)
                .map(|j| [primal[self.x(j, Group::One)].clone(), primal[self.x(j, Group::Two)].clone()])
                .collect(),
            r: primal[Self::R].clone(),
            w: primal[Self::W].clone(),
            integral: false,
        };
        sol.integral = sol.all_integral();
        sol
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpBuildError {
    #[error("invalid instance: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidInstance(Vec<Violation>),
    #[error("both machine groups must be non-empty; use the closed form")]
    EmptyGroup,
    #[error("linear program finished with status {0:?}")]
    NotOptimal(LpStatus),
}

fn ensure_valid(inst: &Instance) -> Result<(), LpBuildError> {
    let v = validate_instance(inst);
    if v.is_empty() {
        Ok(())
    } else {
        Err(LpBuildError::InvalidInstance(v))
    }
}

fn declare_vars(inst: &Instance) -> (LpProblem<ExactScalar>, VarLayout) {
    let lay = VarLayout::of(inst);
    let mut p = LpProblem::new();
    p.add_var("w");
    p.add_var("r");
    for j in 0..inst.n() {
        for h in 0..inst.m() {
            let v = p.add_var(format!("y_{}_{}", inst.jobs[j], inst.machine_id(h)));
            p.set_bounds(v, ExactScalar::zero(), Some(int(inst.b[j][h])));
        }
    }
    for j in 0..inst.n() {
        for g in Group::BOTH {
            let v = p.add_var(format!("x_{}_{}", inst.jobs[j], g.number()));
            p.set_bounds(v, ExactScalar::zero(), Some(int(inst.a[j][g.index()])));
        }
    }
    debug_assert_eq!(p.num_vars(), lay.count());
    (p, lay)
}

/// Adds the constraint families shared by both programs. The `0 ≤ y ≤ b` and
/// `0 ≤ x ≤ a` families are carried as variable bounds.
fn add_families(p: &mut LpProblem<ExactScalar>, inst: &Instance, lay: VarLayout) {
    let one = ExactScalar::one;
    let neg = || -ExactScalar::one();
    let (w, r) = (VarLayout::W, VarLayout::R);
    let deltas = [inst.delta(Group::One), inst.delta(Group::Two)];

    for h in 0..inst.m() {
        let g = inst.group_of(h);
        let tag = if g == Group::One { "machine_g1" } else { "machine_g2" };
        let name = inst.machine_id(h);
        let ys: Vec<(usize, ExactScalar)> = (0..inst.n()).map(|j| (lay.y(j, h), one())).collect();
        // Σ_j y_jh − r ≥ Σ_j b_jh − Δ(opp)
        let mut lo = ys.clone();
        lo.push((r, neg()));
        p.add_constraint(
            format!("{tag}_{name}_lo"),
            lo,
            Relation::Ge,
            int(inst.machine_load(h) - deltas[g.opposite().index()]),
        );
        let mut up = ys;
        up.push((w, neg()));
        p.add_constraint(format!("{tag}_{name}_up"), up, Relation::Le, ExactScalar::zero());
    }

    for j in 0..inst.n() {
        let mut row: Vec<(usize, ExactScalar)> = (0..inst.m()).map(|h| (lay.y(j, h), one())).collect();
        row.push((w, neg()));
        p.add_constraint(format!("job_load_{}", inst.jobs[j]), row, Relation::Le, ExactScalar::zero());
    }

    for (tag, g) in [("part_b_g1", Group::One), ("part_b_g2", Group::Two)] {
        let mut row: Vec<(usize, ExactScalar)> = (0..inst.n()).map(|j| (lay.x(j, g), one())).collect();
        row.push((r, neg()));
        p.add_constraint(tag, row, Relation::Eq, ExactScalar::zero());
    }

    for j in 0..inst.n() {
        p.add_constraint(
            format!("job_x_{}", inst.jobs[j]),
            vec![(lay.x(j, Group::One), one()), (lay.x(j, Group::Two), one()), (r, neg())],
            Relation::Le,
            ExactScalar::zero(),
        );
    }

    // Σ_{h∈opp(ℓ)} (b_jh − y_jh) + a_jℓ − x_jℓ ≤ Δ(ℓ) − r, rearranged to
    // −Σ y_jh − x_jℓ + r ≤ Δ(ℓ) − a_jℓ − Σ b_jh.
    for (tag, g) in [("spill_g2", Group::Two), ("spill_g1", Group::One)] {
        for j in 0..inst.n() {
            let opp = g.opposite();
            let mut row: Vec<(usize, ExactScalar)> = inst.machines_in(opp).map(|h| (lay.y(j, h), neg())).collect();
            row.push((lay.x(j, g), neg()));
            row.push((r, one()));
            let rhs = deltas[g.index()] - inst.a[j][g.index()] - inst.job_group_load(j, opp);
            p.add_constraint(format!("{tag}_{}", inst.jobs[j]), row, Relation::Le, int(rhs));
        }
    }
}

/// The linear relaxation: `min w − r` over the ten constraint families, with
/// `nm + 2n + 2` variables.
pub fn build_relaxation(inst: &Instance) -> Result<LpProblem<ExactScalar>, LpBuildError> {
    ensure_valid(inst)?;
    let (mut p, lay) = declare_vars(inst);
    p.set_cost(VarLayout::W, ExactScalar::one());
    p.set_cost(VarLayout::R, -ExactScalar::one());
    add_families(&mut p, inst, lay);
    Ok(p)
}

/// The auxiliary program: `min r` subject to `w − r = ⌈w* − r*⌉`,
/// `⌊r*⌋ ≤ r`, and the same families as the relaxation.
pub fn build_aux(inst: &Instance, wstar: &ExactScalar, rstar: &ExactScalar) -> LpProblem<ExactScalar> {
    let (mut p, lay) = declare_vars(inst);
    p.set_cost(VarLayout::R, ExactScalar::one());
    let gap = ceil(&(wstar - rstar));
    p.add_constraint(
        "gap",
        vec![(VarLayout::W, ExactScalar::one()), (VarLayout::R, -ExactScalar::one())],
        Relation::Eq,
        gap,
    );
    p.add_constraint("r_floor", vec![(VarLayout::R, ExactScalar::one())], Relation::Ge, floor(rstar));
    add_families(&mut p, inst, lay);
    p
}

/// The constraint families with `r` and `w` fixed and a zero objective.
/// Its feasible points are the fractional solutions at that `(r, w)`.
pub fn build_slice(inst: &Instance, r: i64, w: i64) -> LpProblem<ExactScalar> {
    let (mut p, lay) = declare_vars(inst);
    p.set_bounds(VarLayout::W, int(w), Some(int(w)));
    p.set_bounds(VarLayout::R, int(r), Some(int(r)));
    add_families(&mut p, inst, lay);
    p
}

/// Solves the relaxation, returning the LP value `w* − r*` and the solve.
pub fn solve_relaxation(inst: &Instance) -> Result<(ExactScalar, LpProblem<ExactScalar>, LpSolution<ExactScalar>), LpBuildError> {
    let p = build_relaxation(inst)?;
    let sol = simplex_solve(&p);
    if !sol.is_optimal() {
        return Err(LpBuildError::NotOptimal(sol.status));
    }
    Ok((sol.objective.clone(), p, sol))
}

/// The fractional edge chromatic number `Δ(𝒢₁) + Δ(𝒢₂) + LP`.
pub fn chromatic_fractional(inst: &Instance) -> Result<ExactScalar, LpBuildError> {
    if inst.group1.is_empty() || inst.group2.is_empty() {
        return Err(LpBuildError::EmptyGroup);
    }
    let (lp, _, _) = solve_relaxation(inst)?;
    Ok(int(inst.delta(Group::One) + inst.delta(Group::Two)) + lp)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClosedFormError {
    #[error("both machine groups are non-empty")]
    BothGroupsNonEmpty,
    #[error("job `{job}` has hyperedges on the empty group {group}")]
    HyperedgeOnEmptyGroup { job: String, group: Group },
}

/// `χ′` when a group is empty: `Δ(non-empty group) + max degree` of the
/// plain bipartite multigraph.
pub fn chromatic_closed_form(inst: &Instance) -> Result<i64, ClosedFormError> {
    if !inst.group1.is_empty() && !inst.group2.is_empty() {
        return Err(ClosedFormError::BothGroupsNonEmpty);
    }
    for g in Group::BOTH {
        if inst.group_size(g) == 0 {
            if let Some(j) = (0..inst.n()).find(|&j| inst.a[j][g.index()] != 0) {
                return Err(ClosedFormError::HyperedgeOnEmptyGroup { job: inst.jobs[j].clone(), group: g });
            }
        }
    }
    Ok(inst.delta(Group::One) + inst.delta(Group::Two) + inst.bipartite_degree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::lp::certificate::check_certificate;
    use crate::model::validate_solution;

    #[test]
    fn relaxation_has_expected_shape() {
        let inst = i_d();
        let p = build_relaxation(&inst).unwrap();
        assert_eq!(p.num_vars(), inst.n() * inst.m() + 2 * inst.n() + 2);
        // 2m machine rows, n job rows, 2 part-(b) rows, n job_x rows, 2n spill rows
        assert_eq!(p.constraints.len(), 2 * inst.m() + 4 * inst.n() + 2);
    }

    #[test]
    fn relaxation_values_of_reference_instances() {
        for (inst, expected) in [(i_a(), 0), (i_b(), -2), (i_c(), 2), (i_d(), 0)] {
            let (lp, p, sol) = solve_relaxation(&inst).unwrap();
            assert_eq!(lp, int(expected), "{:?}", inst.jobs);
            check_certificate(&p, &sol).unwrap();
            let point = VarLayout::of(&inst).extract(&sol.primal);
            let mut relaxed = point.clone();
            relaxed.integral = false;
            assert!(validate_solution(&inst, &relaxed).unwrap().is_empty());
        }
    }

    #[test]
    fn aux_optima_of_reference_instances() {
        for (inst, r, w) in [(i_b(), 2, 0), (i_c(), 0, 2), (i_d(), 1, 1)] {
            let (_, _, relax) = solve_relaxation(&inst).unwrap();
            let lay = VarLayout::of(&inst);
            let p = build_aux(&inst, &relax.primal[VarLayout::W], &relax.primal[VarLayout::R]);
            let sol = simplex_solve(&p);
            check_certificate(&p, &sol).unwrap();
            let s = lay.extract(&sol.primal);
            assert_eq!(s.r, int(r));
            assert_eq!(s.w, int(w));
        }
    }

    #[test]
    fn aux_encodes_the_rounded_gap() {
        let p = build_aux(&i_b(), &crate::scalar::ratio(1, 3), &crate::scalar::ratio(5, 2));
        let gap_row = p.constraints.iter().find(|c| c.name == "gap").unwrap();
        // ⌈1/3 − 5/2⌉ = ⌈−13/6⌉ = −2
        assert_eq!(gap_row.rhs, int(-2));
        let rf = p.constraints.iter().find(|c| c.name == "r_floor").unwrap();
        assert_eq!(rf.rhs, int(2));
    }

    #[test]
    fn fractional_chromatic_numbers() {
        assert_eq!(chromatic_fractional(&i_b()).unwrap(), int(2));
        assert_eq!(chromatic_fractional(&i_a()).unwrap(), int(2));
        assert_eq!(chromatic_fractional(&i_c()).unwrap(), int(2));
        let mut one_group = i_c();
        one_group.group2.clear();
        for row in &mut one_group.b {
            row.pop();
        }
        assert_eq!(chromatic_fractional(&one_group), Err(LpBuildError::EmptyGroup));
    }

    #[test]
    fn closed_form_cases() {
        let inst = Instance {
            jobs: vec!["J1".into(), "J2".into()],
            group1: vec!["M1".into(), "M2".into()],
            group2: vec![],
            b: vec![vec![2, 1], vec![0, 2]],
            a: vec![[1, 0], [0, 0]],
        };
        assert_eq!(chromatic_closed_form(&inst), Ok(4));

        let zero = Instance { jobs: vec!["J1".into()], group1: vec!["M1".into()], group2: vec![], b: vec![vec![0]], a: vec![[0, 0]] };
        assert_eq!(chromatic_closed_form(&zero), Ok(0));

        let single = Instance { jobs: vec!["J1".into()], group1: vec![], group2: vec!["M1".into()], b: vec![vec![5]], a: vec![[0, 3]] };
        assert_eq!(chromatic_closed_form(&single), Ok(3 + 5));

        assert_eq!(chromatic_closed_form(&i_b()), Err(ClosedFormError::BothGroupsNonEmpty));
        let mut bad = single.clone();
        bad.a[0][0] = 1;
        assert!(matches!(chromatic_closed_form(&bad), Err(ClosedFormError::HyperedgeOnEmptyGroup { .. })));
    }
}

use crate::model::{validate_solution, ColorClass, Coloring, Group, HypergraphSolution, Instance, Part, Violation};
use crate::scalar::{int, to_i64, ExactScalar};

use super::konig::{edge_color_bipartite, KonigError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssembleError {
    #[error("solution is not integral")]
    NotIntegral,
    #[error("solution is infeasible: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Infeasible(Vec<Violation>),
    #[error("part ({part}) coloring failed: {source}")]
    Part { part: Part, source: KonigError<i64> },
}

/// Builds an explicit coloring with `Δ(𝒢₁) + Δ(𝒢₂) − r + w` colors from an
/// integral feasible solution by solving four bipartite colorings:
///
/// * (d): `y` on jobs × machines into `w` classes;
/// * (b): supernodes `γ₁`, `γ₂` with `x_j1`, `x_j2` into `r` classes;
/// * (a): `γ₁` with `a_j1 − x_j1` and `𝒢₂` machines with `b − y` into
///   `Δ(𝒢₁) − r` classes;
/// * (c): symmetric to (a) into `Δ(𝒢₂) − r` classes.
///
/// The supernode `γℓ` stands for the hyperedge `(𝒢ℓ, j)` of its matched job.
pub fn assemble_coloring(inst: &Instance, sol: &HypergraphSolution) -> Result<Coloring, AssembleError> {
    if !sol.all_integral() {
        return Err(AssembleError::NotIntegral);
    }
    let violations = validate_solution(inst, sol).map_err(|e| AssembleError::Infeasible(vec![Violation::new("shape", "-", e.to_string())]))?;
    if !violations.is_empty() {
        return Err(AssembleError::Infeasible(violations));
    }
    let as_int = |q: &ExactScalar| to_i64(q).expect("integral entries fit a machine integer");
    let sol = sol.map(as_int);
    let (n, r, w) = (inst.n(), sol.r, sol.w);

    let mut classes = hyperedge_part(inst, &sol, Part::A, Group::One)?;
    classes.extend(part_b(inst, &sol.x, r)?);
    classes.extend(hyperedge_part(inst, &sol, Part::C, Group::Two)?);

    let split = edge_color_bipartite(n, inst.m(), &sol.y, w).map_err(|source| AssembleError::Part { part: Part::D, source })?;
    for (matching, k) in split {
        let mut class = ColorClass::new(Part::D, int(k));
        class.edges = matching.into_iter().map(|(j, h)| (inst.jobs[j].clone(), inst.machine_id(h).to_string())).collect();
        classes.push(class);
    }
    Ok(Coloring { classes })
}

/// Part (a) for `g = 𝒢₁`, part (c) for `g = 𝒢₂`.
fn hyperedge_part(
    inst: &Instance,
    sol: &HypergraphSolution<i64>,
    part: Part,
    g: Group,
) -> Result<Vec<ColorClass>, AssembleError> {
    let n = inst.n();
    let opp: Vec<usize> = inst.machines_in(g.opposite()).collect();
    let mut mult = vec![(0..n).map(|j| inst.a[j][g.index()] - sol.x[j][g.index()]).collect::<Vec<i64>>()];
    for &h in &opp {
        mult.push((0..n).map(|j| inst.b[j][h] - sol.y[j][h]).collect());
    }
    let colors = inst.delta(g) - sol.r;
    let split =
        edge_color_bipartite(1 + opp.len(), n, &mult, colors).map_err(|source| AssembleError::Part { part, source })?;
    let mut classes = Vec::new();
    for (matching, k) in split {
        let mut class = ColorClass::new(part, int(k));
        for (u, j) in matching {
            if u == 0 {
                class.hyperedges.push((g, inst.jobs[j].clone()));
            } else {
                class.edges.push((inst.jobs[j].clone(), inst.machine_id(opp[u - 1]).to_string()));
            }
        }
        classes.push(class);
    }
    Ok(classes)
}

fn part_b(inst: &Instance, x: &[[i64; 2]], r: i64) -> Result<Vec<ColorClass>, AssembleError> {
    let n = inst.n();
    let mult: Vec<Vec<i64>> = Group::BOTH.iter().map(|g| (0..n).map(|j| x[j][g.index()]).collect()).collect();
    let split = edge_color_bipartite(2, n, &mult, r).map_err(|source| AssembleError::Part { part: Part::B, source })?;
    Ok(split
        .into_iter()
        .map(|(matching, k)| {
            let mut class = ColorClass::new(Part::B, int(k));
            let mut pairs: Vec<(Group, String)> =
                matching.into_iter().map(|(u, j)| (Group::BOTH[u], inst.jobs[j].clone())).collect();
            pairs.sort();
            class.hyperedges = pairs;
            class
        })
        .collect())
}

//! Exact search for an integral `(y, x)` at a fixed integral `(r, w)`.
//!
//! Used when the `y` taken from the `Q` network admits no integral `x`.
//! Branching is on `x` only: once `x` is integral the remaining system in `y`
//! is a network with integral bounds, so a fractional `y` implies an
//! integral one.

use crate::flow::{feasible_circulation, FlowNetwork};
use crate::lp::{build_slice, simplex_solve, LpStatus, VarLayout};
use crate::model::{Group, Instance};
use crate::scalar::{ceil, floor, int, to_i64, ExactScalar};

/// An integral point found by [`complete_at`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub y: Vec<Vec<i64>>,
    pub x: Vec<[i64; 2]>,
    /// Linear programs solved by the search.
    pub lp_solves: usize,
}

/// An integral `y` for the system at fixed integral `(r, w, x)`, if any.
///
/// `source → job j →[lower_jℓ, Σ_{𝒢ℓ} b_jh] (j, ℓ) → machine h → sink`, where
/// machine `h` carries between `Σ_j b_jh − Δ(opp) + r` and `w`, and
/// `lower_jℓ = Σ_{𝒢ℓ} b_jh + a_j,opp − x_j,opp − Δ(opp) + r`.
pub fn y_for_x(inst: &Instance, r: i64, w: i64, x: &[[i64; 2]]) -> Option<Vec<Vec<i64>>> {
    let deltas = [inst.delta(Group::One), inst.delta(Group::Two)];
    let mut net = FlowNetwork::new();
    let s = net.add_node("source");
    let t = net.add_node("sink");
    let machines: Vec<usize> = (0..inst.m()).map(|h| net.add_node(inst.machine_id(h))).collect();
    let mut y_arcs = vec![Vec::with_capacity(inst.m()); inst.n()];
    for j in 0..inst.n() {
        let job = net.add_node(&inst.jobs[j]);
        net.add_arc(s, job, 0, Some(w));
        let mut split = [0; 2];
        for g in Group::BOTH {
            let o = g.opposite().index();
            let cap = inst.job_group_load(j, g);
            let lower = (cap + inst.a[j][o] - x[j][o] - deltas[o] + r).max(0);
            if lower > cap {
                return None;
            }
            split[g.index()] = net.add_node(format!("{}@{g}", inst.jobs[j]));
            net.add_arc(job, split[g.index()], lower, Some(cap));
        }
        for h in 0..inst.m() {
            y_arcs[j].push(net.add_arc(split[inst.group_of(h).index()], machines[h], 0, Some(inst.b[j][h])));
        }
    }
    for h in 0..inst.m() {
        let lower = (inst.machine_load(h) - deltas[inst.group_of(h).opposite().index()] + r).max(0);
        if lower > w {
            return None;
        }
        net.add_arc(machines[h], t, lower, Some(w));
    }
    let flow = feasible_circulation(&net.with_terminals(s, t)).flow()?;
    Some(y_arcs.iter().map(|row| row.iter().map(|&a| flow.values[a]).collect()).collect())
}

/// Depth-first branch and bound over the `x` variables of the relaxation
/// with `r` and `w` fixed. Returns `None` when no integral point exists.
pub fn complete_at(inst: &Instance, r: i64, w: i64) -> Option<Completion> {
    let lay = VarLayout::of(inst);
    let root = build_slice(inst, r, w);
    let xs: Vec<usize> = (0..inst.n()).flat_map(|j| Group::BOTH.map(|g| lay.x(j, g))).collect();
    let mut stack = vec![root];
    let mut lp_solves = 0;
    while let Some(p) = stack.pop() {
        let sol = simplex_solve(&p);
        lp_solves += 1;
        if sol.status != LpStatus::Optimal {
            continue;
        }
        let frac = xs.iter().copied().filter(|&v| !sol.primal[v].is_integer()).max_by(|&u, &v| {
            let dist = |q: &ExactScalar| {
                let f = q - floor(q);
                if f > ExactScalar::new(1.into(), 2.into()) {
                    int(1) - f
                } else {
                    f
                }
            };
            dist(&sol.primal[u]).cmp(&dist(&sol.primal[v])).then(v.cmp(&u))
        });
        let Some(v) = frac else {
            let x: Vec<[i64; 2]> = (0..inst.n())
                .map(|j| Group::BOTH.map(|g| to_i64(&sol.primal[lay.x(j, g)]).expect("integral x")))
                .collect();
            match y_for_x(inst, r, w, &x) {
                Some(y) => return Some(Completion { y, x, lp_solves }),
                None => continue,
            }
        };
        let q = &sol.primal[v];
        let mut down = p.clone();
        down.set_bounds(v, p.lower[v].clone(), Some(floor(q)));
        let mut up = p;
        up.set_bounds(v, ceil(q), up.upper[v].clone());
        stack.push(up);
        stack.push(down);
    }
    None
}

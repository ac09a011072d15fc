//! The projection `Q` of the relaxation onto `(y, r, w)` and its flow model.
//!
//! Eliminating `x` from the constraint families leaves bounds on `y` only:
//!
//! * per machine: `Σ_j b_jh − (Δ(opp) − r) ≤ Σ_j y_jh ≤ w`;
//! * per job: `Σ_h y_jh ≤ w` and `0 ≤ y_jh ≤ b_jh`;
//! * per job and group: the load into `𝒢₂` is at least
//!   `Σ_{𝒢₂} b_jh + max(a_j1, r) − Δ(𝒢₁)`, symmetrically for `𝒢₁`;
//! * per job: `Σ_h y_jh ≥ Σ_h b_jh + a_j1 + a_j2 − Δ(𝒢₁) − Δ(𝒢₂) + r`;
//! * per group: the total load into `𝒢₂` is at least
//!   `Σ_j Σ_{𝒢₂} b_jh + (n − 1)(r − Δ(𝒢₁))`, symmetrically for `𝒢₁`;
//! * `0 ≤ r ≤ min(Δ(𝒢₁), Δ(𝒢₂))`.

use crate::flow::{ArcId, Flow, FlowNetwork};
use crate::model::{Group, Instance, Violation};
use crate::scalar::{pos, ExactNum};

/// The bounds of `Q` at a fixed `(r, w)`. Lower bounds are clamped at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSystem<T> {
    pub r: T,
    pub w: T,
    /// Lower bound on each machine's load; the upper bound is `w`.
    pub machine_lower: Vec<T>,
    /// Lower bound on each job's total load; the upper bound is `w`.
    pub job_lower: Vec<T>,
    /// `group_lower[j][ℓ]`: lower bound on job `j`'s load into group `ℓ`.
    pub group_lower: Vec<[T; 2]>,
    /// Lower bound on the total load into each group.
    pub aggregate_lower: [T; 2],
    /// `min(Δ(𝒢₁), Δ(𝒢₂))`.
    pub r_max: i64,
}

impl<T: ExactNum> QSystem<T> {
    pub fn build(inst: &Instance, r: T, w: T) -> Self {
        let n = inst.n();
        let t = T::from_int;
        let deltas = [inst.delta(Group::One), inst.delta(Group::Two)];
        let machine_lower = (0..inst.m())
            .map(|h| pos(t(inst.machine_load(h) - deltas[inst.group_of(h).opposite().index()]) + r.clone()))
            .collect();
        let job_lower = (0..n)
            .map(|j| pos(t(inst.job_load(j) + inst.a[j][0] + inst.a[j][1] - deltas[0] - deltas[1]) + r.clone()))
            .collect();
        // load into group g is forced by the hyperedges on the opposite group
        let group_lower = (0..n)
            .map(|j| {
                Group::BOTH.map(|g| {
                    let o = g.opposite().index();
                    let base = inst.job_group_load(j, g) - deltas[o];
                    let by_a = t(base + inst.a[j][o]);
                    let by_r = t(base) + r.clone();
                    pos(by_a.max(by_r))
                })
            })
            .collect();
        let aggregate_lower = Group::BOTH.map(|g| {
            let total: i64 = (0..n).map(|j| inst.job_group_load(j, g)).sum();
            let o = deltas[g.opposite().index()];
            pos(t(total) + t(n as i64 - 1) * (r.clone() - t(o)))
        });
        QSystem { r, w, machine_lower, job_lower, group_lower, aggregate_lower, r_max: deltas[0].min(deltas[1]) }
    }

    /// Every inequality of `Q` violated by `y` at this `(r, w)`.
    pub fn violations(&self, inst: &Instance, y: &[Vec<T>]) -> Vec<Violation> {
        let mut out = Vec::new();
        let t = T::from_int;
        let show = |v: &T| v.to_string();
        if self.r.is_negative() || self.r > t(self.r_max) {
            out.push(Violation::new("r-range", "r", format!("{} outside [0, {}]", self.r, self.r_max)));
        }
        for j in 0..inst.n() {
            for h in 0..inst.m() {
                if y[j][h].is_negative() || y[j][h] > t(inst.b[j][h]) {
                    out.push(Violation::new(
                        "edge",
                        format!("({},{})", inst.jobs[j], inst.machine_id(h)),
                        format!("y = {} outside [0, {}]", y[j][h], inst.b[j][h]),
                    ));
                }
            }
        }
        for h in 0..inst.m() {
            let load = (0..inst.n()).fold(T::zero(), |s, j| s + y[j][h].clone());
            if load < self.machine_lower[h] || load > self.w {
                out.push(Violation::new(
                    "machine",
                    inst.machine_id(h),
                    format!("load {} outside [{}, {}]", show(&load), show(&self.machine_lower[h]), show(&self.w)),
                ));
            }
        }
        let mut group_totals = [T::zero(), T::zero()];
        for j in 0..inst.n() {
            let load = y[j].iter().fold(T::zero(), |s, v| s + v.clone());
            if load < self.job_lower[j] || load > self.w {
                out.push(Violation::new(
                    "job",
                    &inst.jobs[j],
                    format!("load {} outside [{}, {}]", show(&load), show(&self.job_lower[j]), show(&self.w)),
                ));
            }
            for g in Group::BOTH {
                let gl = inst.machines_in(g).fold(T::zero(), |s, h| s + y[j][h].clone());
                if gl < self.group_lower[j][g.index()] {
                    out.push(Violation::new(
                        "job-group",
                        format!("({},{g})", inst.jobs[j]),
                        format!("load {} below {}", show(&gl), show(&self.group_lower[j][g.index()])),
                    ));
                }
                group_totals[g.index()] = group_totals[g.index()].clone() + gl;
            }
        }
        for g in Group::BOTH {
            if group_totals[g.index()] < self.aggregate_lower[g.index()] {
                out.push(Violation::new(
                    "group",
                    g.to_string(),
                    format!(
                        "total load {} below {}",
                        show(&group_totals[g.index()]),
                        show(&self.aggregate_lower[g.index()])
                    ),
                ));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QError {
    #[error("r = {r} outside [0, {max}]")]
    ROutOfRange { r: i64, max: i64 },
    #[error("w = {0} is negative")]
    NegativeW(i64),
    #[error("{what} needs at least {lower} but at most {upper} is allowed")]
    EmptyRange { what: String, lower: i64, upper: i64 },
}

/// A network for `Q` at integral `(r, w)` and the arc carrying each `y_jh`.
#[derive(Debug, Clone)]
pub struct QNetwork {
    pub net: FlowNetwork,
    pub y_arcs: Vec<Vec<ArcId>>,
}

impl QNetwork {
    pub fn extract_y(&self, flow: &Flow) -> Vec<Vec<i64>> {
        self.y_arcs.iter().map(|row| row.iter().map(|&a| flow.values[a]).collect()).collect()
    }
}

/// Builds the network whose integral source-to-sink flows are exactly the
/// integral `y` satisfying `Q` at `(r, w)`:
///
/// `source → job j → (j, ℓ) → machine h ∈ 𝒢ℓ → collector ℓ → sink`.
pub fn build_q_network(inst: &Instance, r: i64, w: i64) -> Result<QNetwork, QError> {
    let q: QSystem<i64> = QSystem::build(inst, r, w);
    if r < 0 || r > q.r_max {
        return Err(QError::ROutOfRange { r, max: q.r_max });
    }
    if w < 0 {
        return Err(QError::NegativeW(w));
    }
    let check = |what: String, lower: i64, upper: i64| {
        if lower > upper {
            Err(QError::EmptyRange { what, lower, upper })
        } else {
            Ok(())
        }
    };

    let mut net = FlowNetwork::new();
    let s = net.add_node("source");
    let t = net.add_node("sink");
    let collectors = Group::BOTH.map(|g| net.add_node(format!("collect_{g}")));
    let machines: Vec<usize> = (0..inst.m()).map(|h| net.add_node(inst.machine_id(h))).collect();
    let mut y_arcs = vec![Vec::with_capacity(inst.m()); inst.n()];

    for j in 0..inst.n() {
        let job = net.add_node(&inst.jobs[j]);
        check(format!("job {}", inst.jobs[j]), q.job_lower[j], w)?;
        net.add_arc(s, job, q.job_lower[j], Some(w));
        let mut split = [0; 2];
        for g in Group::BOTH {
            let cap = inst.job_group_load(j, g);
            let lower = q.group_lower[j][g.index()];
            check(format!("job {} into {g}", inst.jobs[j]), lower, cap)?;
            split[g.index()] = net.add_node(format!("{}@{g}", inst.jobs[j]));
            net.add_arc(job, split[g.index()], lower, Some(cap));
        }
        for h in 0..inst.m() {
            let a = net.add_arc(split[inst.group_of(h).index()], machines[h], 0, Some(inst.b[j][h]));
            y_arcs[j].push(a);
        }
    }
    for h in 0..inst.m() {
        check(format!("machine {}", inst.machine_id(h)), q.machine_lower[h], w)?;
        net.add_arc(machines[h], collectors[inst.group_of(h).index()], q.machine_lower[h], Some(w));
    }
    for g in Group::BOTH {
        net.add_arc(collectors[g.index()], t, q.aggregate_lower[g.index()], None);
    }
    Ok(QNetwork { net: net.with_terminals(s, t), y_arcs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::flow::{check_flow, feasible_circulation};

    fn solve_y(inst: &Instance, r: i64, w: i64) -> Option<Vec<Vec<i64>>> {
        let qn = build_q_network(inst, r, w).unwrap();
        let flow = feasible_circulation(&qn.net).flow()?;
        check_flow(&qn.net, &flow).unwrap();
        Some(qn.extract_y(&flow))
    }

    #[test]
    fn id_has_the_diagonal_circulation() {
        assert_eq!(solve_y(&i_d(), 1, 1), Some(vec![vec![1, 0], vec![0, 1]]));
    }

    #[test]
    fn ic_is_forced_to_saturate() {
        assert_eq!(solve_y(&i_c(), 0, 2), Some(vec![vec![1, 1], vec![1, 1]]));
        assert!(matches!(build_q_network(&i_c(), 0, 1), Err(QError::EmptyRange { .. })));
    }

    #[test]
    fn zero_hyperedges_admit_full_load() {
        let mut inst = i_c();
        inst.b = vec![vec![2, 1], vec![0, 3]];
        let w = inst.total_b();
        let y = solve_y(&inst, 0, w).unwrap();
        let q: QSystem<i64> = QSystem::build(&inst, 0, w);
        assert_eq!(q.violations(&inst, &y), vec![]);
        let full: Vec<Vec<i64>> = inst.b.clone();
        assert_eq!(q.violations(&inst, &full), vec![]);
    }

    #[test]
    fn r_outside_range_is_refused() {
        assert_eq!(build_q_network(&i_c(), 1, 2).unwrap_err(), QError::ROutOfRange { r: 1, max: 0 });
    }

    #[test]
    fn violations_name_the_broken_bound() {
        let q: QSystem<i64> = QSystem::build(&i_c(), 0, 2);
        let v = q.violations(&i_c(), &[vec![1, 0], vec![1, 1]]);
        assert!(v.iter().any(|v| v.label == "machine" && v.location == "M2"));
    }
}

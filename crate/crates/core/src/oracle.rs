//! Brute-force integer optimum for tiny instances.
//!
//! The oracle enumerates `r` and the integral `x` grids, and for each cell
//! finds the least feasible `w` by binary search on a circulation for `y`.
//! It shares nothing with the simplex or rounding code except the final
//! comparison against the LP value.

use serde::Serialize;

use crate::flow::{feasible_circulation, FlowNetwork};
use crate::model::{validate_instance, validate_solution, Group, HypergraphSolution, Instance, Violation};
use crate::rounding::{solve_pipeline, PipelineError};
use crate::scalar::{ceil, format_scalar, int, to_i64, ExactScalar};

/// Size limits for brute force.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_jobs: usize,
    pub max_machines: usize,
    /// Largest `b_jh` and `a_jℓ`.
    pub max_mult: i64,
    /// Largest `Π_j (a_j1 + 1)(a_j2 + 1) · (min Δ + 1)`.
    pub max_search: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_jobs: 4, max_machines: 4, max_mult: 2, max_search: 1_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("invalid instance: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidInstance(Vec<Violation>),
    #[error("instance exceeds oracle caps: {0}")]
    Caps(String),
    #[error("no feasible cell found")]
    NoFeasibleCell,
    #[error("y-feasibility is not monotone in w at r = {r}, w = {w}")]
    NonMonotone { r: i64, w: i64 },
    #[error("oracle witness fails validation: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    BadWitness(Vec<Violation>),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

/// Checks `caps` and returns the size of the enumeration.
pub fn check_caps(inst: &Instance, caps: &Caps) -> Result<u64, OracleError> {
    if inst.n() > caps.max_jobs {
        return Err(OracleError::Caps(format!("{} jobs > {}", inst.n(), caps.max_jobs)));
    }
    if inst.m() > caps.max_machines {
        return Err(OracleError::Caps(format!("{} machines > {}", inst.m(), caps.max_machines)));
    }
    let largest = inst.b.iter().flatten().chain(inst.a.iter().flatten()).copied().max().unwrap_or(0);
    if largest > caps.max_mult {
        return Err(OracleError::Caps(format!("multiplicity {largest} > {}", caps.max_mult)));
    }
    let r_max = inst.delta(Group::One).min(inst.delta(Group::Two));
    let size = inst
        .a
        .iter()
        .fold((r_max + 1) as u64, |acc, [a1, a2]| acc.saturating_mul(((a1 + 1) * (a2 + 1)) as u64));
    if size > caps.max_search {
        return Err(OracleError::Caps(format!("search space {size} > {}", caps.max_search)));
    }
    Ok(size)
}

/// Every `v` with `Σ v = total` and `0 ≤ v_j ≤ limits[j]`.
fn compositions(limits: &[i64], total: i64) -> Vec<Vec<i64>> {
    fn go(limits: &[i64], rest: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        match limits.split_first() {
            None => {
                if rest == 0 {
                    out.push(cur.clone());
                }
            }
            Some((&lim, tail)) => {
                let room: i64 = tail.iter().sum();
                for v in (rest - room).max(0)..=lim.min(rest) {
                    cur.push(v);
                    go(tail, rest - v, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(limits, total, &mut Vec::new(), &mut out);
    out
}

/// A `y` feasible for the integer program at fixed `(r, x, w)`, if any.
fn feasible_y(inst: &Instance, r: i64, x: &[[i64; 2]], w: i64) -> Option<Vec<Vec<i64>>> {
    let deltas = [inst.delta(Group::One), inst.delta(Group::Two)];
    let mut net = FlowNetwork::new();
    let s = net.add_node("s");
    let t = net.add_node("t");
    let machines: Vec<usize> = (0..inst.m()).map(|h| net.add_node(format!("m{h}"))).collect();
    let mut arcs = vec![Vec::new(); inst.n()];
    for j in 0..inst.n() {
        let job = net.add_node(format!("j{j}"));
        net.add_arc(s, job, 0, Some(w));
        let mut split = [0; 2];
        for g in Group::BOTH {
            // hyperedges of j on the opposite group left outside part (b)
            // must fit beside j's edges into g that are left outside part (d)
            let o = g.opposite().index();
            let cap = inst.job_group_load(j, g);
            let lower = (cap + inst.a[j][o] - x[j][o] - deltas[o] + r).max(0);
            if lower > cap {
                return None;
            }
            split[g.index()] = net.add_node(format!("j{j}g{}", g.number()));
            net.add_arc(job, split[g.index()], lower, Some(cap));
        }
        for h in 0..inst.m() {
            arcs[j].push(net.add_arc(split[inst.group_of(h).index()], machines[h], 0, Some(inst.b[j][h])));
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
    Some(arcs.iter().map(|row| row.iter().map(|&a| flow.values[a]).collect()).collect())
}

/// Exact integer optimum `min (w − r)` by enumeration, with an optimal
/// integral witness.
pub fn brute_force_ilp(inst: &Instance, caps: &Caps) -> Result<(i64, HypergraphSolution<i64>), OracleError> {
    let violations = validate_instance(inst);
    if !violations.is_empty() {
        return Err(OracleError::InvalidInstance(violations));
    }
    check_caps(inst, caps)?;
    let r_max = inst.delta(Group::One).min(inst.delta(Group::Two));
    let w_max = inst.total_b();
    let limits = Group::BOTH.map(|g| inst.a.iter().map(|a| a[g.index()]).collect::<Vec<i64>>());

    let mut best: Option<(i64, HypergraphSolution<i64>)> = None;
    for r in 0..=r_max {
        let ones = compositions(&limits[0], r);
        let twos = compositions(&limits[1], r);
        for x1 in &ones {
            for x2 in &twos {
                if x1.iter().zip(x2).any(|(a, b)| a + b > r) {
                    continue;
                }
                let x: Vec<[i64; 2]> = x1.iter().zip(x2).map(|(&a, &b)| [a, b]).collect();
                // only w with w − r below the incumbent can improve it
                let mut hi = w_max + r;
                if let Some((v, _)) = &best {
                    hi = hi.min(v + r - 1);
                }
                if hi < 0 {
                    continue;
                }
                let Some(mut y) = feasible_y(inst, r, &x, hi) else { continue };
                let (mut lo, mut w) = (0, hi);
                while lo < w {
                    let mid = lo + (w - lo) / 2;
                    match feasible_y(inst, r, &x, mid) {
                        Some(found) => {
                            w = mid;
                            y = found;
                        }
                        None => lo = mid + 1,
                    }
                }
                if feasible_y(inst, r, &x, w + 1).is_none() {
                    return Err(OracleError::NonMonotone { r, w: w + 1 });
                }
                best = Some((w - r, HypergraphSolution { y, x, r, w, integral: true }));
            }
        }
    }
    let (value, witness) = best.ok_or(OracleError::NoFeasibleCell)?;
    let violations = validate_solution(inst, &witness).expect("witness shaped from the instance");
    if !violations.is_empty() {
        return Err(OracleError::BadWitness(violations));
    }
    Ok((value, witness))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub ilp_value: i64,
    pub lp_value: ExactScalar,
    pub pipeline_value: i64,
    /// `ILP = ⌈LP⌉ = pipeline`.
    pub agree: bool,
    /// `⌈LP⌉ ≤ ILP ≤ ⌈LP⌉ + 1`.
    pub sandwich: bool,
    pub witness: HypergraphSolution<i64>,
}

#[derive(Serialize)]
struct ReportDoc {
    ilp: i64,
    lp: String,
    pipeline: i64,
    agree: bool,
}

impl OracleReport {
    /// `{"ilp":…,"lp":"p/q","pipeline":…,"agree":…}` on one line.
    pub fn to_json(&self) -> String {
        let doc = ReportDoc {
            ilp: self.ilp_value,
            lp: format_scalar(&self.lp_value),
            pipeline: self.pipeline_value,
            agree: self.agree,
        };
        serde_json::to_string(&doc).expect("report serializes")
    }

    /// True when the integer optimum is strictly above the LP optimum.
    pub fn strict_gap(&self) -> bool {
        int(self.ilp_value) > self.lp_value
    }
}

/// Compares the brute-force optimum with the LP value and the pipeline.
pub fn check_conjecture(inst: &Instance, caps: &Caps) -> Result<OracleReport, OracleError> {
    let (ilp_value, witness) = brute_force_ilp(inst, caps)?;
    let out = solve_pipeline(inst)?;
    let lp_value = out.lp_value.clone();
    let pipeline_value = to_i64(&out.solution.objective()).expect("integral objective");
    let lp_up = to_i64(&ceil(&lp_value)).expect("bounded LP value");
    Ok(OracleReport {
        ilp_value,
        lp_value,
        pipeline_value,
        agree: ilp_value == lp_up && pipeline_value == lp_up,
        sandwich: lp_up <= ilp_value && ilp_value <= lp_up + 1,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn compositions_respect_limits() {
        let c = compositions(&[1, 2, 0], 2);
        assert_eq!(c, vec![vec![0, 2, 0], vec![1, 1, 0]]);
        assert!(compositions(&[1, 1], 3).is_empty());
        assert_eq!(compositions(&[], 0), vec![Vec::<i64>::new()]);
    }

    #[test]
    fn fixture_optima() {
        let caps = Caps::default();
        let (v, wit) = brute_force_ilp(&i_a(), &caps).unwrap();
        assert_eq!((v, wit.r, wit.w), (0, 0, 0));
        assert_eq!(wit.x, vec![[0, 0]]);
        let (v, wit) = brute_force_ilp(&i_b(), &caps).unwrap();
        assert_eq!((v, wit.r, wit.w), (-2, 2, 0));
        assert_eq!(wit.x, vec![[1, 1], [1, 1]]);
        let (v, wit) = brute_force_ilp(&i_d(), &caps).unwrap();
        assert_eq!((v, wit.r, wit.w), (0, 1, 1));
        assert_eq!(brute_force_ilp(&i_c(), &caps).unwrap().0, 2);
    }

    #[test]
    fn fixtures_agree() {
        for inst in [i_a(), i_b(), i_c(), i_d()] {
            let rep = check_conjecture(&inst, &Caps::default()).unwrap();
            assert!(rep.agree && rep.sandwich, "{}", rep.to_json());
        }
        let rep = check_conjecture(&i_b(), &Caps::default()).unwrap();
        assert_eq!(rep.to_json(), r#"{"ilp":-2,"lp":"-2","pipeline":-2,"agree":true}"#);
    }

    #[test]
    fn caps_are_enforced() {
        let mut inst = i_c();
        inst.b[0][0] = 3;
        assert!(matches!(brute_force_ilp(&inst, &Caps::default()), Err(OracleError::Caps(_))));
        let tight = Caps { max_search: 1, ..Caps::default() };
        assert!(matches!(brute_force_ilp(&i_b(), &tight), Err(OracleError::Caps(_))));
    }
}

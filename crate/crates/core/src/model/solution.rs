use crate::scalar::{ExactNum, ExactScalar};

use super::instance::{Group, Instance};
use super::Violation;

/// An assignment `(y, x, r, w)` for the integer program and its relaxation.
///
/// `y[j][h]` is the amount of job `j` on machine `h` in part (d), `x[j][ℓ]`
/// the amount of job `j` on group `ℓ+1` in part (b), `w` the size of part (d)
/// and `r` the size of part (b).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergraphSolution<T = ExactScalar> {
    pub y: Vec<Vec<T>>,
    pub x: Vec<[T; 2]>,
    pub r: T,
    pub w: T,
    pub integral: bool,
}

impl<T: ExactNum> HypergraphSolution<T> {
    pub fn zero(n: usize, m: usize) -> Self {
        HypergraphSolution {
            y: vec![vec![T::zero(); m]; n],
            x: vec![[T::zero(), T::zero()]; n],
            r: T::zero(),
            w: T::zero(),
            integral: true,
        }
    }

    /// `w − r`, the objective of the integer program.
    pub fn objective(&self) -> T {
        self.w.clone() - self.r.clone()
    }

    pub fn all_integral(&self) -> bool {
        self.r.is_integral()
            && self.w.is_integral()
            && self.y.iter().flatten().all(T::is_integral)
            && self.x.iter().flatten().all(T::is_integral)
    }

    pub fn job_load(&self, j: usize) -> T {
        self.y[j].iter().fold(T::zero(), |s, v| s + v.clone())
    }

    pub fn machine_load(&self, h: usize) -> T {
        self.y.iter().fold(T::zero(), |s, row| s + row[h].clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> HypergraphSolution<U> {
        HypergraphSolution {
            y: self.y.iter().map(|row| row.iter().map(&f).collect()).collect(),
            x: self.x.iter().map(|p| [f(&p[0]), f(&p[1])]).collect(),
            r: f(&self.r),
            w: f(&self.w),
            integral: self.integral,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("solution dimensions do not match the instance: {0}")]
pub struct DimensionMismatch(pub String);

/// Checks `sol` against every constraint family of the integer program,
/// except integrality of the variables themselves (reported separately via
/// the `integral` flag).
///
/// Each violation is labelled by its constraint family, e.g. `machine_g1`, `job_x` or `spill_g2`.
pub fn validate_solution<T: ExactNum>(
    inst: &Instance,
    sol: &HypergraphSolution<T>,
) -> Result<Vec<Violation>, DimensionMismatch> {
    let (n, m) = (inst.n(), inst.m());
    if sol.y.len() != n || sol.x.len() != n {
        return Err(DimensionMismatch(format!(
            "expected {n} job rows, found y={} x={}",
            sol.y.len(),
            sol.x.len()
        )));
    }
    if let Some(row) = sol.y.iter().find(|row| row.len() != m) {
        return Err(DimensionMismatch(format!("expected {m} machine columns, found {}", row.len())));
    }

    let t = |v: i64| T::from_int(v);
    let mut out = Vec::new();
    let (r, w) = (&sol.r, &sol.w);
    let deltas = [inst.delta(Group::One), inst.delta(Group::Two)];

    // (2), (3): machine loads
    for h in 0..m {
        let g = inst.group_of(h);
        let label = if g == Group::One { "machine_g1" } else { "machine_g2" };
        let load = sol.machine_load(h);
        let lower = t(inst.machine_load(h)) - (t(deltas[g.opposite().index()]) - r.clone());
        if load < lower {
            out.push(Violation::new(
                label,
                inst.machine_id(h).to_string(),
                format!("load {load} below {lower}"),
            ));
        }
        if &load > w {
            out.push(Violation::new(
                label,
                inst.machine_id(h).to_string(),
                format!("load {load} exceeds w={w}"),
            ));
        }
    }

    // (4): job loads
    for j in 0..n {
        let load = sol.job_load(j);
        if &load > w {
            out.push(Violation::new("job_load", inst.jobs[j].clone(), format!("load {load} exceeds w={w}")));
        }
    }

    // (5): edge bounds
    for j in 0..n {
        for h in 0..m {
            let v = &sol.y[j][h];
            if v.is_negative() || v > &t(inst.b[j][h]) {
                out.push(Violation::new(
                    "edge",
                    format!("({},{})", inst.jobs[j], inst.machine_id(h)),
                    format!("y={v} outside [0,{}]", inst.b[j][h]),
                ));
            }
        }
    }

    // (6), (7): part (b) has size r on both groups
    for g in Group::BOTH {
        let total = sol.x.iter().fold(T::zero(), |s, p| s + p[g.index()].clone());
        if &total != r {
            let label = if g == Group::One { "part_b_g1" } else { "part_b_g2" };
            out.push(Violation::new(label, g.to_string(), format!("sum of x is {total}, r={r}")));
        }
    }

    for j in 0..n {
        let job = &inst.jobs[j];
        let [x1, x2] = &sol.x[j];
        // (8)
        if &(x1.clone() + x2.clone()) > r {
            out.push(Violation::new("job_x", job.clone(), format!("x1+x2={} exceeds r={r}", x1.clone() + x2.clone())));
        }
        // (9)
        for g in Group::BOTH {
            let v = &sol.x[j][g.index()];
            let cap = inst.a[j][g.index()];
            if v.is_negative() || v > &t(cap) {
                out.push(Violation::new("hyperedge", format!("({job},{g})"), format!("x={v} outside [0,{cap}]")));
            }
        }
        // (10): part (c) job bound; (11): part (a) job bound
        for (label, g) in [("spill_g2", Group::Two), ("spill_g1", Group::One)] {
            let opp = g.opposite();
            let residual = inst
                .machines_in(opp)
                .fold(T::zero(), |s, h| s + t(inst.b[j][h]) - sol.y[j][h].clone());
            let lhs = residual + t(inst.a[j][g.index()]) - sol.x[j][g.index()].clone();
            let rhs = t(deltas[g.index()]) - r.clone();
            if lhs > rhs {
                out.push(Violation::new(label, job.clone(), format!("{lhs} exceeds {rhs}")));
            }
        }
    }

    if sol.integral && !sol.all_integral() {
        out.push(Violation::new("integral", "-", "flag set but some entry is fractional"));
    }
    Ok(out)
}

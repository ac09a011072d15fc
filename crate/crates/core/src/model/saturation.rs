use std::collections::HashSet;

use num_traits::Zero;

use crate::scalar::{int, to_i64, ExactScalar};

use super::coloring::Coloring;
use super::instance::Instance;
use super::solution::HypergraphSolution;

/// Dummy jobs added by [`saturate`], one per unsaturated machine.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SaturationRecord {
    /// `(dummy job id, machine id, edge multiplicity)`.
    pub added_jobs: Vec<(String, String, i64)>,
    pub original_job_count: usize,
}

impl SaturationRecord {
    pub fn is_empty(&self) -> bool {
        self.added_jobs.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SaturationError {
    #[error("w - r = {0} is not integral; dummy multiplicities would be fractional")]
    FractionalGap(ExactScalar),
    #[error("machine {machine}: lower load bound {lower} exceeds w = {w}")]
    Infeasible { machine: String, lower: ExactScalar, w: ExactScalar },
    #[error("dummy multiplicity {0} does not fit a machine integer")]
    Overflow(ExactScalar),
}

/// Adds a dummy job `j(h)` for every machine `h` whose load lower bound
/// `Σ_j b_jh − (Δ(𝒢_opp) − r)` is below `w`, with
/// `b_{j(h),h} = w − Σ_j b_jh + (Δ(𝒢_opp) − r)` and
/// `y_{j(h),h} = w − Σ_j y_jh`. Afterwards both load bounds coincide with `w`
/// on every machine.
pub fn saturate(
    inst: &Instance,
    sol: &HypergraphSolution,
) -> Result<(Instance, HypergraphSolution, SaturationRecord), SaturationError> {
    let gap = sol.objective();
    if !gap.is_integer() {
        return Err(SaturationError::FractionalGap(gap));
    }

    let mut out_inst = inst.clone();
    let mut out_sol = sol.clone();
    let mut record = SaturationRecord { added_jobs: Vec::new(), original_job_count: inst.n() };
    let mut taken: HashSet<String> = inst.jobs.iter().cloned().collect();

    for h in 0..inst.m() {
        let opp = inst.group_of(h).opposite();
        let lower = int(inst.machine_load(h)) - (int(inst.delta(opp)) - &sol.r);
        if lower > sol.w {
            return Err(SaturationError::Infeasible {
                machine: inst.machine_id(h).to_string(),
                lower,
                w: sol.w.clone(),
            });
        }
        if lower == sol.w {
            continue;
        }
        let mult = &sol.w - &lower;
        let mult_int = to_i64(&mult).ok_or_else(|| SaturationError::Overflow(mult.clone()))?;
        let y_dummy = &sol.w - sol.machine_load(h);

        let machine = inst.machine_id(h).to_string();
        let mut id = format!("J_{machine}");
        let mut k = 1;
        while taken.contains(&id) {
            k += 1;
            id = format!("J_{machine}_{k}");
        }
        taken.insert(id.clone());

        let mut b_row = vec![0; inst.m()];
        b_row[h] = mult_int;
        out_inst.jobs.push(id.clone());
        out_inst.b.push(b_row);
        out_inst.a.push([0, 0]);

        let mut y_row = vec![ExactScalar::zero(); inst.m()];
        y_row[h] = y_dummy;
        out_sol.y.push(y_row);
        out_sol.x.push([ExactScalar::zero(), ExactScalar::zero()]);

        record.added_jobs.push((id, machine, mult_int));
    }
    out_sol.integral = out_sol.all_integral();
    Ok((out_inst, out_sol, record))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("dummy job `{0}` does not occur in the coloring")]
pub struct UnknownDummy(pub String);

/// Strips every assignment that involves a dummy job. Classes are kept even
/// when they become empty, so the class count and multiplicities are
/// unchanged.
pub fn desaturate(coloring: &Coloring, rec: &SaturationRecord) -> Result<Coloring, UnknownDummy> {
    let dummies: HashSet<&str> = rec.added_jobs.iter().map(|(id, _, _)| id.as_str()).collect();
    for (id, _, _) in &rec.added_jobs {
        let present = coloring.classes.iter().any(|c| c.edges.iter().any(|(j, _)| j == id));
        if !present {
            return Err(UnknownDummy(id.clone()));
        }
    }
    let mut out = coloring.clone();
    for class in &mut out.classes {
        class.edges.retain(|(j, _)| !dummies.contains(j.as_str()));
        class.hyperedges.retain(|(_, j)| !dummies.contains(j.as_str()));
    }
    Ok(out)
}

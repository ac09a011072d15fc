use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::model::{Coloring, Group, Instance, Part, Violation};
use crate::scalar::{format_scalar, int, ExactScalar};

/// Independent check of a coloring against an instance. Returns an empty
/// list iff every class is a valid matching with hyperedges, the classes
/// cover each edge and hyperedge exactly its multiplicity, and the part
/// totals are `(Δ(𝒢₁) − r, r, Δ(𝒢₂) − r, w)` where `r` and `w` are read off
/// parts (b) and (d).
pub fn verify_coloring(inst: &Instance, col: &Coloring) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut edge_total: BTreeMap<(usize, usize), ExactScalar> = BTreeMap::new();
    let mut hyper_total: BTreeMap<(usize, Group), ExactScalar> = BTreeMap::new();

    for (k, class) in col.classes.iter().enumerate() {
        let loc = format!("class {k}");
        if !class.multiplicity.is_positive() {
            out.push(Violation::new("multiplicity", &loc, format!("{} is not positive", format_scalar(&class.multiplicity))));
        }
        let mut machine_used = vec![false; inst.m()];
        let mut job_used = vec![false; inst.n()];
        let mut take_job = |j: usize, out: &mut Vec<Violation>| {
            if std::mem::replace(&mut job_used[j], true) {
                out.push(Violation::new("job-conflict", &loc, format!("job {} appears twice", inst.jobs[j])));
            }
        };

        for (g, job) in &class.hyperedges {
            let Some(j) = inst.job_index(job) else {
                out.push(Violation::new("unknown", &loc, format!("job {job}")));
                continue;
            };
            let allowed = match class.part {
                Part::A => *g == Group::One,
                Part::B => true,
                Part::C => *g == Group::Two,
                Part::D => false,
            };
            if !allowed {
                out.push(Violation::new("part", &loc, format!("hyperedge ({g},{job}) not allowed in part ({})", class.part)));
            }
            if inst.group_size(*g) == 0 {
                out.push(Violation::new("unknown", &loc, format!("hyperedge on empty group {g}")));
            }
            take_job(j, &mut out);
            for h in inst.machines_in(*g) {
                if std::mem::replace(&mut machine_used[h], true) {
                    out.push(Violation::new("machine-conflict", &loc, format!("machine {} used twice", inst.machine_id(h))));
                }
            }
            let e = hyper_total.entry((j, *g)).or_insert_with(ExactScalar::zero);
            *e += &class.multiplicity;
        }

        for (job, machine) in &class.edges {
            let (Some(j), Some(h)) = (inst.job_index(job), inst.machine_index(machine)) else {
                out.push(Violation::new("unknown", &loc, format!("edge ({job},{machine})")));
                continue;
            };
            if class.part == Part::B {
                out.push(Violation::new("part", &loc, format!("edge ({job},{machine}) not allowed in part (b)")));
            }
            take_job(j, &mut out);
            if std::mem::replace(&mut machine_used[h], true) {
                out.push(Violation::new("machine-conflict", &loc, format!("machine {machine} used twice")));
            }
            let e = edge_total.entry((j, h)).or_insert_with(ExactScalar::zero);
            *e += &class.multiplicity;
        }
    }

    for j in 0..inst.n() {
        for h in 0..inst.m() {
            let got = edge_total.get(&(j, h)).cloned().unwrap_or_else(ExactScalar::zero);
            if got != int(inst.b[j][h]) {
                out.push(Violation::new(
                    "edge-total",
                    format!("({},{})", inst.jobs[j], inst.machine_id(h)),
                    format!("covered {} times, b = {}", format_scalar(&got), inst.b[j][h]),
                ));
            }
        }
        for g in Group::BOTH {
            let got = hyper_total.get(&(j, g)).cloned().unwrap_or_else(ExactScalar::zero);
            if got != int(inst.a[j][g.index()]) {
                out.push(Violation::new(
                    "hyperedge-total",
                    format!("({g},{})", inst.jobs[j]),
                    format!("covered {} times, a = {}", format_scalar(&got), inst.a[j][g.index()]),
                ));
            }
        }
    }

    let [ta, tb, tc, td] = col.totals();
    let (r, w) = (tb, td);
    let d1 = int(inst.delta(Group::One));
    let d2 = int(inst.delta(Group::Two));
    for (part, got, want) in [(Part::A, &ta, &d1 - &r), (Part::C, &tc, &d2 - &r)] {
        if got != &want {
            out.push(Violation::new(
                "part-total",
                format!("part ({part})"),
                format!("total {} but expected {}", format_scalar(got), format_scalar(&want)),
            ));
        }
    }
    let want = &d1 + &d2 - &r + &w;
    if col.total() != want {
        out.push(Violation::new(
            "total",
            "-",
            format!("{} colors but Δ(𝒢₁) + Δ(𝒢₂) − r + w = {}", format_scalar(&col.total()), format_scalar(&want)),
        ));
    }
    out
}

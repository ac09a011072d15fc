use std::collections::HashSet;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::Violation;

/// One of the two hypervertices (machine groups).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    One,
    Two,
}

impl Group {
    pub const BOTH: [Group; 2] = [Group::One, Group::Two];

    pub fn opposite(self) -> Group {
        match self {
            Group::One => Group::Two,
            Group::Two => Group::One,
        }
    }

    /// Zero-based column into the `a` / `x` pairs.
    pub fn index(self) -> usize {
        match self {
            Group::One => 0,
            Group::Two => 1,
        }
    }

    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Group> {
        match n {
            1 => Some(Group::One),
            2 => Some(Group::Two),
            _ => None,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}", self.number())
    }
}

/// A two-hypervertex hypergraph.
///
/// Machines are indexed `group1 ++ group2`; `b[j][h]` is the multiplicity of
/// the edge between job `j` and machine `h`, `a[j][ℓ]` the multiplicity of the
/// hyperedge between job `j` and group `ℓ+1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub jobs: Vec<String>,
    pub group1: Vec<String>,
    pub group2: Vec<String>,
    pub b: Vec<Vec<i64>>,
    pub a: Vec<[i64; 2]>,
}

impl Instance {
    pub fn n(&self) -> usize {
        self.jobs.len()
    }

    pub fn m(&self) -> usize {
        self.group1.len() + self.group2.len()
    }

    pub fn group_size(&self, g: Group) -> usize {
        match g {
            Group::One => self.group1.len(),
            Group::Two => self.group2.len(),
        }
    }

    /// Machine indices belonging to `g`.
    pub fn machines_in(&self, g: Group) -> Range<usize> {
        match g {
            Group::One => 0..self.group1.len(),
            Group::Two => self.group1.len()..self.m(),
        }
    }

    pub fn group_of(&self, h: usize) -> Group {
        if h < self.group1.len() {
            Group::One
        } else {
            Group::Two
        }
    }

    pub fn machine_id(&self, h: usize) -> &str {
        if h < self.group1.len() {
            &self.group1[h]
        } else {
            &self.group2[h - self.group1.len()]
        }
    }

    pub fn machine_ids(&self) -> impl Iterator<Item = &String> {
        self.group1.iter().chain(self.group2.iter())
    }

    pub fn machine_index(&self, id: &str) -> Option<usize> {
        self.machine_ids().position(|m| m == id)
    }

    pub fn job_index(&self, id: &str) -> Option<usize> {
        self.jobs.iter().position(|j| j == id)
    }

    /// `Δ(𝒢ℓ) = Σ_j a_jℓ`.
    pub fn delta(&self, g: Group) -> i64 {
        self.a.iter().map(|row| row[g.index()]).sum()
    }

    /// `Σ_h b_jh`.
    pub fn job_load(&self, j: usize) -> i64 {
        self.b[j].iter().sum()
    }

    /// `Σ_j b_jh`.
    pub fn machine_load(&self, h: usize) -> i64 {
        self.b.iter().map(|row| row[h]).sum()
    }

    /// `Σ_{h∈𝒢ℓ} b_jh`.
    pub fn job_group_load(&self, j: usize, g: Group) -> i64 {
        self.machines_in(g).map(|h| self.b[j][h]).sum()
    }

    /// Maximum vertex degree of the plain bipartite multigraph `(𝓜 ∪ 𝒥, E)`.
    pub fn bipartite_degree(&self) -> i64 {
        let jobs = (0..self.n()).map(|j| self.job_load(j)).max().unwrap_or(0);
        let machines = (0..self.m()).map(|h| self.machine_load(h)).max().unwrap_or(0);
        jobs.max(machines)
    }

    pub fn total_b(&self) -> i64 {
        self.b.iter().flatten().sum()
    }

    /// True when the `b` and `a` matrices match the id lists.
    pub fn has_consistent_shape(&self) -> bool {
        self.b.len() == self.n()
            && self.a.len() == self.n()
            && self.b.iter().all(|row| row.len() == self.m())
    }
}

/// `Δ(𝒢ℓ)` for `ell ∈ {1, 2}`.
pub fn delta(inst: &Instance, ell: Group) -> i64 {
    inst.delta(ell)
}

/// Checks every structural invariant of an instance. Returns an empty list
/// iff the instance is well formed.
pub fn validate_instance(inst: &Instance) -> Vec<Violation> {
    let mut out = Vec::new();

    if inst.m() == 0 {
        out.push(Violation::new("machines", "-", "at least one machine is required"));
    }

    for (field, ids) in [("jobs", &inst.jobs), ("group1", &inst.group1), ("group2", &inst.group2)] {
        let mut seen = HashSet::new();
        for (i, id) in ids.iter().enumerate() {
            if !seen.insert(id) {
                out.push(Violation::new(field, format!("{i}"), format!("duplicate id `{id}`")));
            }
        }
    }
    let g1: HashSet<&String> = inst.group1.iter().collect();
    for id in &inst.group2 {
        if g1.contains(id) {
            out.push(Violation::new(
                "disjointness",
                id.clone(),
                "machine belongs to both group1 and group2",
            ));
        }
    }

    if inst.b.len() != inst.n() {
        out.push(Violation::new(
            "b",
            "-",
            format!("expected {} rows, found {}", inst.n(), inst.b.len()),
        ));
    }
    if inst.a.len() != inst.n() {
        out.push(Violation::new(
            "a",
            "-",
            format!("expected {} rows, found {}", inst.n(), inst.a.len()),
        ));
    }
    for (j, row) in inst.b.iter().enumerate() {
        let job = inst.jobs.get(j).map(String::as_str).unwrap_or("?");
        if row.len() != inst.m() {
            out.push(Violation::new(
                "b",
                job.to_string(),
                format!("expected {} entries, found {}", inst.m(), row.len()),
            ));
            continue;
        }
        for (h, &v) in row.iter().enumerate() {
            if v < 0 {
                out.push(Violation::new(
                    "b",
                    format!("({},{})", job, inst.machine_id(h)),
                    format!("negative multiplicity {v}"),
                ));
            }
        }
    }
    for (j, pair) in inst.a.iter().enumerate() {
        let job = inst.jobs.get(j).map(String::as_str).unwrap_or("?");
        for g in Group::BOTH {
            let v = pair[g.index()];
            if v < 0 {
                out.push(Violation::new(
                    "a",
                    format!("({},{})", job, g),
                    format!("negative multiplicity {v}"),
                ));
            }
        }
    }
    out
}

use std::collections::BTreeSet;

use crate::model::{ColorClass, Coloring, Instance, Part};
use crate::scalar::ExactScalar;

use super::konig::{edge_color_bipartite, KonigError};

/// A matching covering every machine, with a positive rational multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    /// `(job, machine)` index pairs.
    pub matching: Vec<(usize, usize)>,
    pub multiplicity: ExactScalar,
}

impl Column {
    pub fn jobs(&self) -> BTreeSet<usize> {
        self.matching.iter().map(|p| p.0).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FractionalError {
    #[error("machine {machine} has load {load}, expected w = {w}; saturate first")]
    Unsaturated { machine: String, load: ExactScalar, w: ExactScalar },
    #[error("job {0} is listed as tight but its load differs from w")]
    NotTight(String),
    #[error("job {0} has load w but is missing from the tight set")]
    MissingTight(String),
    #[error(transparent)]
    Coloring(#[from] KonigError<ExactScalar>),
}

/// Represents part (d) of a fractional solution as columns: matchings that
/// cover all machines and every tight job, with multiplicities summing to `w`
/// and reproducing `y` exactly. At most `nm + n` columns are produced.
///
/// Requires every machine load to equal `w` (see [`crate::model::saturate`]).
pub fn decompose_fractional(
    inst: &Instance,
    y: &[Vec<ExactScalar>],
    w: &ExactScalar,
    tight_jobs: &[usize],
) -> Result<Vec<Column>, FractionalError> {
    let (n, m) = (inst.n(), inst.m());
    for h in 0..m {
        let load: ExactScalar = y.iter().map(|row| &row[h]).sum();
        if &load != w {
            return Err(FractionalError::Unsaturated { machine: inst.machine_id(h).to_string(), load, w: w.clone() });
        }
    }
    let tight: BTreeSet<usize> = tight_jobs.iter().copied().collect();
    for j in 0..n {
        let load: ExactScalar = y[j].iter().sum();
        match (tight.contains(&j), &load == w) {
            (true, false) => return Err(FractionalError::NotTight(inst.jobs[j].clone())),
            (false, true) => return Err(FractionalError::MissingTight(inst.jobs[j].clone())),
            _ => {}
        }
    }

    let classes = edge_color_bipartite(n, m, y, w.clone())?;
    let columns: Vec<Column> = classes
        .into_iter()
        .map(|(matching, multiplicity)| Column { matching, multiplicity })
        .collect();
    debug_assert!(columns.iter().all(|c| c.matching.len() == m));
    Ok(columns)
}

/// Jobs whose part-(d) load equals `w`.
pub fn tight_jobs(y: &[Vec<ExactScalar>], w: &ExactScalar) -> Vec<usize> {
    y.iter()
        .enumerate()
        .filter(|(_, row)| &row.iter().sum::<ExactScalar>() == w)
        .map(|(j, _)| j)
        .collect()
}

/// Columns as part-(d) color classes.
pub fn columns_to_coloring(inst: &Instance, columns: &[Column]) -> Coloring {
    Coloring {
        classes: columns
            .iter()
            .map(|c| {
                let mut class = ColorClass::new(Part::D, c.multiplicity.clone());
                class.edges = c
                    .matching
                    .iter()
                    .map(|&(j, h)| (inst.jobs[j].clone(), inst.machine_id(h).to_string()))
                    .collect();
                class
            })
            .collect(),
    }
}

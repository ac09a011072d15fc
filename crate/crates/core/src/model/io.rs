//! JSON documents for instances, solutions and colorings.
//!
//! Rationals are written as `"p/q"` strings (`"p"` when the denominator is
//! one); both forms are accepted on input.

use serde::{Deserialize, Serialize};

use crate::scalar::{format_scalar, parse_scalar, ExactScalar};

use super::coloring::{ColorClass, Coloring, Part};
use super::instance::{Group, Instance};
use super::solution::HypergraphSolution;

#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field `{field}`: {detail}")]
    Field { field: String, detail: String },
}

fn field_err(field: impl Into<String>, detail: impl Into<String>) -> DocError {
    DocError::Field { field: field.into(), detail: detail.into() }
}

fn scalar(field: &str, s: &str) -> Result<ExactScalar, DocError> {
    parse_scalar(s).map_err(|e| field_err(field, e.to_string()))
}

pub fn parse_instance(doc: &str) -> Result<Instance, DocError> {
    Ok(serde_json::from_str(doc)?)
}

pub fn serialize_instance(inst: &Instance) -> String {
    serde_json::to_string_pretty(inst).expect("instance serialization is infallible")
}

#[derive(Debug, Serialize, Deserialize)]
struct SolutionDoc {
    r: String,
    w: String,
    x: Vec<[String; 2]>,
    y: Vec<Vec<String>>,
    integral: bool,
}

pub fn parse_solution(doc: &str) -> Result<HypergraphSolution, DocError> {
    let raw: SolutionDoc = serde_json::from_str(doc)?;
    let mut y = Vec::with_capacity(raw.y.len());
    for (j, row) in raw.y.iter().enumerate() {
        let parsed: Result<Vec<_>, _> =
            row.iter().enumerate().map(|(h, s)| scalar(&format!("y[{j}][{h}]"), s)).collect();
        y.push(parsed?);
    }
    let mut x = Vec::with_capacity(raw.x.len());
    for (j, [x1, x2]) in raw.x.iter().enumerate() {
        x.push([scalar(&format!("x[{j}][0]"), x1)?, scalar(&format!("x[{j}][1]"), x2)?]);
    }
    Ok(HypergraphSolution {
        y,
        x,
        r: scalar("r", &raw.r)?,
        w: scalar("w", &raw.w)?,
        integral: raw.integral,
    })
}

pub fn serialize_solution(sol: &HypergraphSolution) -> String {
    let doc = SolutionDoc {
        r: format_scalar(&sol.r),
        w: format_scalar(&sol.w),
        x: sol.x.iter().map(|[a, b]| [format_scalar(a), format_scalar(b)]).collect(),
        y: sol.y.iter().map(|row| row.iter().map(format_scalar).collect()).collect(),
        integral: sol.integral,
    };
    serde_json::to_string_pretty(&doc).expect("solution serialization is infallible")
}

#[derive(Debug, Serialize, Deserialize)]
struct ClassDoc {
    part: String,
    multiplicity: String,
    edges: Vec<(String, String)>,
    hyperedges: Vec<(u8, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ColoringDoc {
    classes: Vec<ClassDoc>,
}

pub fn parse_coloring(doc: &str) -> Result<Coloring, DocError> {
    let raw: ColoringDoc = serde_json::from_str(doc)?;
    let mut classes = Vec::with_capacity(raw.classes.len());
    for (i, c) in raw.classes.into_iter().enumerate() {
        let part = Part::from_tag(&c.part)
            .ok_or_else(|| field_err(format!("classes[{i}].part"), format!("unknown part `{}`", c.part)))?;
        let multiplicity = scalar(&format!("classes[{i}].multiplicity"), &c.multiplicity)?;
        let mut hyperedges = Vec::with_capacity(c.hyperedges.len());
        for (g, job) in c.hyperedges {
            let group = Group::from_number(g)
                .ok_or_else(|| field_err(format!("classes[{i}].hyperedges"), format!("unknown group {g}")))?;
            hyperedges.push((group, job));
        }
        classes.push(ColorClass { part, multiplicity, edges: c.edges, hyperedges });
    }
    Ok(Coloring { classes })
}

pub fn serialize_coloring(col: &Coloring) -> String {
    let doc = ColoringDoc {
        classes: col
            .classes
            .iter()
            .map(|c| ClassDoc {
                part: c.part.tag().to_string(),
                multiplicity: format_scalar(&c.multiplicity),
                edges: c.edges.clone(),
                hyperedges: c.hyperedges.iter().map(|(g, j)| (g.number(), j.clone())).collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("coloring serialization is infallible")
}

//! Instances, solutions, colorings and their documents.

mod coloring;
mod generate;
mod instance;
pub mod io;
mod saturation;
mod solution;

use std::fmt;

pub use coloring::{ColorClass, Coloring, Part};
pub use generate::{batch_instance, generate_one_group, generate_random, BatchShape, GenerateError};
pub use instance::{delta, validate_instance, Group, Instance};
pub use saturation::{desaturate, saturate, SaturationError, SaturationRecord, UnknownDummy};
pub use solution::{validate_solution, DimensionMismatch, HypergraphSolution};

/// A single failed check: which rule (`label`), where, and why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub label: String,
    pub location: String,
    pub detail: String,
}

impl Violation {
    pub fn new(label: impl Into<String>, location: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation { label: label.into(), location: location.into(), detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.label, self.location, self.detail)
    }
}

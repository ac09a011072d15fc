use std::fmt;

use num_traits::Zero;

use crate::scalar::ExactScalar;

use super::instance::Group;

/// Which of the four structural parts a color class belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    /// `𝒢₁` hyperedges together with `𝒢₂` edges.
    A,
    /// Paired `𝒢₁` / `𝒢₂` hyperedges.
    B,
    /// `𝒢₂` hyperedges together with `𝒢₁` edges.
    C,
    /// Edges only.
    D,
}

impl Part {
    pub const ALL: [Part; 4] = [Part::A, Part::B, Part::C, Part::D];

    pub fn tag(self) -> &'static str {
        match self {
            Part::A => "a",
            Part::B => "b",
            Part::C => "c",
            Part::D => "d",
        }
    }

    pub fn from_tag(s: &str) -> Option<Part> {
        match s {
            "a" => Some(Part::A),
            "b" => Some(Part::B),
            "c" => Some(Part::C),
            "d" => Some(Part::D),
            _ => None,
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A matching that may contain hyperedges, used `multiplicity` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorClass {
    pub part: Part,
    pub multiplicity: ExactScalar,
    /// `(job, machine)` pairs.
    pub edges: Vec<(String, String)>,
    /// `(group, job)` pairs.
    pub hyperedges: Vec<(Group, String)>,
}

impl ColorClass {
    pub fn new(part: Part, multiplicity: ExactScalar) -> Self {
        ColorClass { part, multiplicity, edges: Vec::new(), hyperedges: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty() && self.hyperedges.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coloring {
    pub classes: Vec<ColorClass>,
}

impl Coloring {
    /// Total multiplicity of the classes tagged `part`.
    pub fn part_total(&self, part: Part) -> ExactScalar {
        self.classes
            .iter()
            .filter(|c| c.part == part)
            .fold(ExactScalar::zero(), |s, c| s + &c.multiplicity)
    }

    /// Multiplicity totals for parts (a), (b), (c), (d).
    pub fn totals(&self) -> [ExactScalar; 4] {
        Part::ALL.map(|p| self.part_total(p))
    }

    /// Number of colors used: the sum of all multiplicities.
    pub fn total(&self) -> ExactScalar {
        self.classes.iter().fold(ExactScalar::zero(), |s, c| s + &c.multiplicity)
    }
}

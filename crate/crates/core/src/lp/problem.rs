use std::fmt::Write as _;

use crate::scalar::ExactNum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }

    /// Whether `lhs rel rhs` holds.
    pub fn holds<T: Ord>(self, lhs: &T, rhs: &T) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint<T> {
    pub name: String,
    /// Sparse row: `(variable index, coefficient)`.
    pub coeffs: Vec<(usize, T)>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T: ExactNum> Constraint<T> {
    pub fn activity(&self, x: &[T]) -> T {
        self.coeffs.iter().fold(T::zero(), |s, (j, c)| s + c.clone() * x[*j].clone())
    }
}

/// `min c·x` subject to linear rows and per-variable bounds `lower ≤ x ≤ upper`.
///
/// Lower bounds default to zero; an absent upper bound means `+∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem<T> {
    pub vars: Vec<String>,
    pub lower: Vec<T>,
    pub upper: Vec<Option<T>>,
    pub objective: Vec<T>,
    pub constraints: Vec<Constraint<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("constraint `{constraint}` references undeclared variable {var}")]
    UnknownVariable { constraint: String, var: usize },
    #[error("variable `{0}` has upper bound below its lower bound")]
    EmptyBounds(String),
}

impl<T: ExactNum> Default for LpProblem<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: ExactNum> LpProblem<T> {
    pub fn new() -> Self {
        LpProblem { vars: Vec::new(), lower: Vec::new(), upper: Vec::new(), objective: Vec::new(), constraints: Vec::new() }
    }

    pub fn add_var(&mut self, name: impl Into<String>) -> usize {
        self.vars.push(name.into());
        self.lower.push(T::zero());
        self.upper.push(None);
        self.objective.push(T::zero());
        self.vars.len() - 1
    }

    pub fn set_bounds(&mut self, var: usize, lower: T, upper: Option<T>) {
        self.lower[var] = lower;
        self.upper[var] = upper;
    }

    pub fn set_cost(&mut self, var: usize, cost: T) {
        self.objective[var] = cost;
    }

    pub fn add_constraint(&mut self, name: impl Into<String>, coeffs: Vec<(usize, T)>, relation: Relation, rhs: T) {
        self.constraints.push(Constraint { name: name.into(), coeffs, relation, rhs });
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn check(&self) -> Result<(), LpError> {
        for c in &self.constraints {
            if let Some(&(var, _)) = c.coeffs.iter().find(|(j, _)| *j >= self.vars.len()) {
                return Err(LpError::UnknownVariable { constraint: c.name.clone(), var });
            }
        }
        for (j, up) in self.upper.iter().enumerate() {
            if matches!(up, Some(u) if u < &self.lower[j]) {
                return Err(LpError::EmptyBounds(self.vars[j].clone()));
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[T]) -> T {
        self.objective.iter().zip(x).fold(T::zero(), |s, (c, v)| s + c.clone() * v.clone())
    }

    /// Renders the problem in the CPLEX LP text layout, with rational
    /// coefficients written as `p/q`.
    pub fn to_lp_format(&self) -> String {
        fn term<T: ExactNum>(out: &mut String, first: bool, c: &T, name: &str) {
            let (sign, mag) = if c.is_negative() { ("-", c.abs()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    out.push_str("- ");
                }
            } else {
                let _ = write!(out, " {sign} ");
            }
            if mag.is_one() {
                out.push_str(name);
            } else {
                let _ = write!(out, "{mag} {name}");
            }
        }
        fn row<T: ExactNum>(out: &mut String, vars: &[String], coeffs: &[(usize, T)]) {
            let mut first = true;
            for (j, c) in coeffs.iter().filter(|(_, c)| !c.is_zero()) {
                term(out, first, c, &vars[*j]);
                first = false;
            }
            if first {
                out.push('0');
            }
        }

        let mut out = String::from("Minimize\n obj: ");
        let obj: Vec<(usize, T)> = self.objective.iter().cloned().enumerate().collect();
        row(&mut out, &self.vars, &obj);
        out.push_str("\nSubject To\n");
        for c in &self.constraints {
            let _ = write!(out, " {}: ", c.name);
            row(&mut out, &self.vars, &c.coeffs);
            let _ = writeln!(out, " {} {}", c.relation.symbol(), c.rhs);
        }
        out.push_str("Bounds\n");
        for (j, name) in self.vars.iter().enumerate() {
            match &self.upper[j] {
                Some(u) => {
                    let _ = writeln!(out, " {} <= {name} <= {u}", self.lower[j]);
                }
                None => {
                    let _ = writeln!(out, " {name} >= {}", self.lower[j]);
                }
            }
        }
        out.push_str("End\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Outcome of a simplex solve. For optimal solves `primal` and `duals`
/// (one entry per constraint row) form an exact optimality certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    pub primal: Vec<T>,
    pub duals: Vec<T>,
    pub objective: T,
}

impl<T> LpSolution<T> {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn lp_dump_lists_rows_and_bounds() {
        let mut p: LpProblem<Ratio<i64>> = LpProblem::new();
        let x = p.add_var("x");
        let y = p.add_var("y");
        p.set_cost(x, Ratio::from_integer(1));
        p.set_cost(y, Ratio::new(-1, 2));
        p.set_bounds(y, Ratio::from_integer(0), Some(Ratio::from_integer(3)));
        p.add_constraint("c1", vec![(x, Ratio::from_integer(2)), (y, Ratio::from_integer(-1))], Relation::Ge, Ratio::new(1, 3));
        let text = p.to_lp_format();
        assert!(text.contains("obj: x - 1/2 y"), "{text}");
        assert!(text.contains("c1: 2 x - y >= 1/3"), "{text}");
        assert!(text.contains("0 <= y <= 3"), "{text}");
        assert!(text.ends_with("End\n"));
    }

    #[test]
    fn undeclared_variables_are_rejected() {
        let mut p: LpProblem<Ratio<i64>> = LpProblem::new();
        p.add_var("x");
        p.add_constraint("bad", vec![(3, Ratio::from_integer(1))], Relation::Le, Ratio::from_integer(0));
        assert!(matches!(p.check(), Err(LpError::UnknownVariable { .. })));
    }
}
